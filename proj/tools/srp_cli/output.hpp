#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "srp/matrix.hpp"

namespace srp::cli {

/// Collects output files in a hidden staging directory next to their final
/// location and moves them into place on commit(). Without a commit the
/// staging directory is removed, so a failed run leaves no artifacts behind.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path dir);
  ~StagedOutput();
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  /// Staging path for `name`; the caller writes the file there.
  std::filesystem::path stage(const std::string& name);
  void write(const std::string& name, const std::string& contents);
  /// Renames every staged file into the target directory; returns final paths.
  std::vector<std::filesystem::path> commit();

 private:
  std::filesystem::path dir_;
  std::filesystem::path staging_;
  std::vector<std::string> names_;
  bool committed_ = false;
};

/// 2-D scatter of the first two embedding rows: training points filled,
/// test points hollow, one color per class.
std::string scatter_svg(const Matrix& z_train, std::span<const int> y_train, const Matrix& z_test,
                        std::span<const int> y_test, const std::vector<std::string>& class_names,
                        const std::string& title);

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> spread;  // optional +- band, same length as y
};

/// Line chart with markers, one polyline per series.
std::string curves_svg(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool log_y);

}  // namespace srp::cli
