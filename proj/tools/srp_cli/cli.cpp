#include "srp_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "srp/datasets.hpp"
#include "srp/embeddings.hpp"
#include "srp/error.hpp"
#include "srp/eval.hpp"
#include "srp/kernels.hpp"
#include "srp/pipeline.hpp"
#include "srp/random.hpp"
#include "srp_cli/checks.hpp"
#include "srp_cli/output.hpp"

namespace srp::cli {

namespace {

namespace fs = std::filesystem;

struct DataOptions {
  std::string gen;
  std::string csv;
  std::string label_col;
  Index n = 500;
  Index noise_dims = 8;
  std::optional<std::uint64_t> data_seed;
};

struct RunOptions {
  std::string method = "ksrp";
  std::string methods = "spca,kspca,srp,ksrp";
  Index k = 2;
  std::string ks = "1,2";
  Index kx = 1000;
  std::string sigma_x = "cv";
  double sigma_y = 1e-10;
  std::string psi_backend = "rff";
  std::string ksrp_kernel = "rff";
  double split = 0.7;
  std::size_t repeats = 30;
  std::size_t cv_folds = 10;
  std::uint64_t seed = 0;
  std::string out;
  bool parallel = false;
  std::size_t threads = 0;
  std::string level = "fast";
};

void add_data_options(CLI::App& cmd, DataOptions& data) {
  auto* gen = cmd.add_option("--gen", data.gen, "Synthetic dataset")->check(CLI::IsMember({"xor", "spirals"}));
  auto* csv = cmd.add_option("--csv", data.csv, "CSV dataset path");
  gen->excludes(csv);
  cmd.add_option("--label-col", data.label_col, "Label column of the CSV (zero-based index or header name)")
      ->needs(csv);
  cmd.add_option("--n", data.n, "Samples to generate")->capture_default_str()->check(CLI::Range(Index{2}, Index{10000000}));
  cmd.add_option("--noise-dims", data.noise_dims, "Uniform noise dimensions appended to generated data")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--data-seed", data.data_seed, "Generator seed (defaults to --seed)");
}

void add_method_options(CLI::App& cmd, RunOptions& run) {
  cmd.add_option("--kx", run.kx, "Random features for the KSRP data kernel")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--sigma-x", run.sigma_x, "RBF bandwidth of the data kernel, or 'cv'")->capture_default_str();
  cmd.add_option("--sigma-y", run.sigma_y, "RBF bandwidth of the label kernel")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_option("--psi-backend", run.psi_backend, "Label factor: random features or exact factorization")
      ->capture_default_str()
      ->check(CLI::IsMember({"rff", "exact"}));
  cmd.add_option("--ksrp-kernel", run.ksrp_kernel, "KSRP data side: random features or exact kernel")
      ->capture_default_str()
      ->check(CLI::IsMember({"rff", "exact"}));
  cmd.add_option("--split", run.split, "Training fraction")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd.add_option("--cv-folds", run.cv_folds, "Folds for bandwidth cross-validation")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{2}, std::size_t{1000}));
  cmd.add_option("--seed", run.seed, "Master seed")->capture_default_str();
  cmd.add_option("--out", run.out, "Output directory")->required();
}

LabeledDataset load_data(const DataOptions& data, std::uint64_t seed) {
  if (data.gen.empty() == data.csv.empty()) {
    throw ContractError("exactly one of --gen or --csv is required");
  }
  const std::uint64_t data_seed = data.data_seed.value_or(seed);
  if (data.gen == "xor") {
    return gen_xor(data.n, data.noise_dims, data_seed);
  }
  if (data.gen == "spirals") {
    return gen_spirals(data.n, data.noise_dims, data_seed);
  }
  if (data.label_col.empty()) {
    throw ContractError("--csv needs --label-col");
  }
  const bool numeric = std::all_of(data.label_col.begin(), data.label_col.end(), [](unsigned char c) { return std::isdigit(c); });
  LabelColumn column = data.label_col;
  if (numeric) {
    column = static_cast<std::size_t>(std::stoull(data.label_col));
  }
  return load_csv(data.csv, column);
}

std::optional<double> parse_sigma(const std::string& text) {
  if (text == "cv") {
    return std::nullopt;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(value > 0.0) || !std::isfinite(value)) {
    throw ContractError("--sigma-x must be 'cv' or a positive number, got '" + text + "'");
  }
  return value;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, const std::string& flag, Parse parse) {
  std::vector<T> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (item.empty()) {
      throw ContractError(flag + ": empty list entry");
    }
    out.push_back(parse(item));
  }
  if (out.empty()) {
    throw ContractError(flag + ": empty list");
  }
  return out;
}

std::vector<Index> parse_ks(const std::string& text) {
  return parse_list<Index>(text, "--ks", [](const std::string& item) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || v < 1) {
      throw ContractError("--ks: '" + item + "' is not a positive integer");
    }
    return static_cast<Index>(v);
  });
}

LabelFactorBackend psi_backend(const RunOptions& run) {
  return run.psi_backend == "exact" ? LabelFactorBackend::exact : LabelFactorBackend::rff;
}

CvEmbedding cv_embedding(Method method, const RunOptions& run) {
  if (method == Method::kspca) {
    return CvEmbedding::kspca;
  }
  return run.ksrp_kernel == "exact" ? CvEmbedding::ksrp_exact : CvEmbedding::ksrp_rff;
}

std::string embedding_csv(const Matrix& z, std::span<const int> labels) {
  std::ostringstream out;
  out << std::setprecision(17);
  for (Index r = 0; r < z.rows(); ++r) {
    out << 'z' << r + 1;
    for (Index j = 0; j < z.cols(); ++j) {
      out << ',' << z(r, j);
    }
    out << '\n';
  }
  out << "label";
  for (const int y : labels) {
    out << ',' << y;
  }
  out << '\n';
  return out.str();
}

void report_outputs(std::ostream& out, const std::vector<fs::path>& files) {
  for (const fs::path& f : files) {
    out << "wrote " << f.string() << '\n';
  }
}

int cmd_gen(const DataOptions& data, const RunOptions& run, std::ostream& out) {
  if (data.gen.empty()) {
    throw ContractError("gen needs --gen xor|spirals");
  }
  const LabeledDataset ds = load_data(data, run.seed);
  StagedOutput staged(run.out);
  write_dataset_csv(ds, staged.stage(data.gen + ".csv"));
  out << ds.provenance << ": " << ds.dim() << " x " << ds.size() << '\n';
  report_outputs(out, staged.commit());
  return kExitOk;
}

int cmd_embed(const DataOptions& data, const RunOptions& run, std::ostream& out, std::ostream& err) {
  const Method method = parse_method(run.method);
  const std::optional<double> fixed_sigma = parse_sigma(run.sigma_x);
  const LabeledDataset ds = load_data(data, run.seed);

  const TrainTestSplit parts = split(ds, run.split, derive_seed(run.seed, 0));
  for (const std::string& w : parts.warnings) {
    err << "warning: " << w << '\n';
  }
  const NormalizedPair norm = normalize01(parts.train, parts.test);
  if (const std::string reason = infeasibility(method, run.k, norm.train.dim(), norm.train.size()); !reason.empty()) {
    throw ContractError(reason);
  }

  MethodParams params;
  params.kx = run.kx;
  params.sigma_y = run.sigma_y;
  params.psi_backend = psi_backend(run);
  params.ksrp_exact_kernel = run.ksrp_kernel == "exact";
  params.seed = derive_seed(run.seed, 100 + static_cast<std::uint64_t>(run.k));
  if (is_kernel_method(method)) {
    if (fixed_sigma) {
      params.sigma_x = *fixed_sigma;
    } else {
      SigmaCvOptions cv;
      cv.folds = std::min<std::size_t>(run.cv_folds, static_cast<std::size_t>(norm.train.size()));
      cv.embedding = cv_embedding(method, run);
      cv.k = run.k;
      cv.kx = run.kx;
      cv.sigma_y = run.sigma_y;
      cv.seed = derive_seed(run.seed, 1000 + static_cast<std::uint64_t>(method));
      params.sigma_x = select_sigma_cv(norm.train.x, norm.train.labels, cv);
    }
  }

  const FitOutcome fit = fit_method(method, norm.train.x, norm.train.labels, run.k, params);
  const Matrix& z_train = training_embedding(fit.model);
  const Matrix z_test = transform(fit.model, norm.test.x);
  const double accuracy =
      norm.test.size() > 0 ? one_nn_accuracy(z_train, norm.train.labels, z_test, norm.test.labels) : 0.0;

  StagedOutput staged(run.out);
  staged.write("embedding_train.csv", embedding_csv(z_train, norm.train.labels));
  staged.write("embedding_test.csv", embedding_csv(z_test, norm.test.labels));
  if (run.k == 2) {
    const std::string title = std::string(to_string(method)) + " embedding of " + ds.provenance;
    staged.write("embedding.svg",
                 scatter_svg(z_train, norm.train.labels, z_test, norm.test.labels, ds.class_names, title));
  }
  out << "dataset   " << ds.provenance << " (" << ds.dim() << " x " << ds.size() << ")\n";
  out << "method    " << to_string(method) << ", k = " << run.k << '\n';
  out << "split     " << norm.train.size() << " train / " << norm.test.size() << " test\n";
  if (is_kernel_method(method)) {
    out << "sigma_x   " << params.sigma_x << (fixed_sigma ? "" : " (cross-validated)") << '\n';
  }
  out << "fit       " << static_cast<double>(fit.fit_ns()) * 1e-6 << " ms\n";
  out << "1-NN test " << accuracy << '\n';
  report_outputs(out, staged.commit());
  return kExitOk;
}

std::vector<Series> series_by_method(const BenchReport& report, bool time) {
  std::vector<Series> out;
  for (Method m : report.config.methods) {
    Series s;
    s.name = std::string(to_string(m));
    for (Index k : report.config.ks) {
      const BenchAggregate* a = report.find(m, k);
      if (a == nullptr || a->runs == 0) {
        continue;
      }
      s.x.push_back(static_cast<double>(k));
      s.y.push_back(time ? a->fit_ns_mean * 1e-6 : a->accuracy_mean);
      s.spread.push_back(time ? a->fit_ns_std * 1e-6 : a->accuracy_std);
    }
    out.push_back(std::move(s));
  }
  return out;
}

int cmd_bench(const DataOptions& data, const RunOptions& run, std::ostream& out, std::ostream& err) {
  BenchConfig config;
  config.methods = parse_list<Method>(run.methods, "--methods", [](const std::string& m) { return parse_method(m); });
  config.ks = parse_ks(run.ks);
  config.repeats = run.repeats;
  config.seed = run.seed;
  config.train_fraction = run.split;
  config.sigma_x = parse_sigma(run.sigma_x);
  config.cv_folds = run.cv_folds;
  config.kx = run.kx;
  config.sigma_y = run.sigma_y;
  config.psi_backend = psi_backend(run);
  config.ksrp_exact_kernel = run.ksrp_kernel == "exact";
  config.parallel = run.parallel;
  config.threads = run.threads;
  if (config.repeats == 0) {
    throw ContractError("--repeats must be >= 1");
  }
  const LabeledDataset ds = load_data(data, run.seed);
  const BenchReport report = run_benchmark(ds, config);

  std::ostringstream csv;
  write_report_csv(report, csv);
  std::ostringstream json;
  write_report_json(report, json);
  StagedOutput staged(run.out);
  staged.write("report.csv", csv.str());
  staged.write("report.json", json.str());
  staged.write("accuracy_vs_k.svg", curves_svg(series_by_method(report, false), "1-NN test accuracy, " + ds.provenance,
                                               "k", "accuracy", false));
  staged.write("time_vs_k.svg",
               curves_svg(series_by_method(report, true), "fit time, " + ds.provenance, "k", "fit time [ms]", true));

  std::size_t skipped = 0;
  for (const BenchRow& row : report.rows) {
    skipped += row.skipped ? 1 : 0;
  }
  out << "dataset " << ds.provenance << " (" << ds.dim() << " x " << ds.size() << "), " << report.rows.size()
      << " runs, " << skipped << " skipped\n";
  for (const auto& [m, sigma] : report.sigma_x) {
    out << "sigma_x[" << to_string(m) << "] = " << sigma << '\n';
  }
  out << std::left << std::setw(8) << "method" << std::setw(5) << "k" << std::setw(18) << "accuracy"
      << "fit [ms]\n";
  for (const BenchAggregate& a : report.aggregates) {
    std::ostringstream acc;
    acc << std::fixed << std::setprecision(3) << a.accuracy_mean << " +- " << a.accuracy_std;
    out << std::left << std::setw(8) << to_string(a.method) << std::setw(5) << a.k;
    if (a.runs == 0) {
      out << "skipped\n";
      continue;
    }
    out << std::setw(18) << acc.str() << std::fixed << std::setprecision(3) << a.fit_ns_mean * 1e-6 << '\n';
    out.unsetf(std::ios::fixed);
  }
  if (config.parallel) {
    err << "note: repeats ran in parallel; timings are flagged as contended\n";
  }
  report_outputs(out, staged.commit());
  return kExitOk;
}

int cmd_check(const RunOptions& run, std::ostream& out) {
  const CheckLevel level = run.level == "full" ? CheckLevel::full : CheckLevel::fast;
  const std::vector<CheckResult> results = run_checks(level);
  std::size_t width = 5;
  for (const auto& r : results) {
    width = std::max(width, r.name.size());
  }
  bool all = true;
  for (const auto& r : results) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << r.name << (r.passed ? "PASS  " : "FAIL  ") << r.detail
        << '\n';
    all = all && r.passed;
  }
  out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supervised random projections: embeddings, benchmarks and self-checks", "srp"};
  app.require_subcommand(1);
  DataOptions data;
  RunOptions options;

  auto* gen = app.add_subcommand("gen", "Write a synthetic dataset as CSV");
  add_data_options(*gen, data);
  gen->add_option("--seed", options.seed, "Master seed")->capture_default_str();
  gen->add_option("--out", options.out, "Output directory")->required();

  auto* embed = app.add_subcommand("embed", "Fit one method and write train/test embeddings");
  add_data_options(*embed, data);
  add_method_options(*embed, options);
  embed->add_option("--method", options.method, "Embedding method")
      ->capture_default_str()
      ->check(CLI::IsMember({"pca", "spca", "kspca", "srp", "ksrp"}));
  embed->add_option("--k", options.k, "Embedding dimension")->capture_default_str()->check(CLI::PositiveNumber);

  auto* bench = app.add_subcommand("bench", "Benchmark methods over repeated train/test splits");
  add_data_options(*bench, data);
  add_method_options(*bench, options);
  bench->add_option("--methods", options.methods, "Comma-separated methods")->capture_default_str();
  bench->add_option("--ks", options.ks, "Comma-separated embedding dimensions")->capture_default_str();
  bench->add_option("--repeats", options.repeats, "Repeats per (method, k)")->capture_default_str();
  bench->add_flag("--parallel", options.parallel, "Run repeats concurrently (timings flagged as contended)");
  bench->add_option("--threads", options.threads, "Worker threads with --parallel (0 = all cores)");

  auto* check = app.add_subcommand("check", "Run the numerical self-checks");
  check->add_option("level", options.level, "fast or full")->capture_default_str()->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (app.get_subcommands().empty()) {
      err << "run 'srp --help' for usage\n";
    }
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(data, options, out);
    }
    if (embed->parsed()) {
      return cmd_embed(data, options, out, err);
    }
    if (bench->parsed()) {
      return cmd_bench(data, options, out, err);
    }
    return cmd_check(options, out);
  } catch (const ContractError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace srp::cli
