#include "srp/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "srp/error.hpp"
#include "srp/random.hpp"

namespace srp {

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(class_names.size(), 0);
  for (int label : labels) {
    ++counts.at(static_cast<std::size_t>(label));
  }
  return counts;
}

LabeledDataset LabeledDataset::subset(const std::vector<Index>& columns) const {
  LabeledDataset out;
  out.x.resize(x.rows(), static_cast<Index>(columns.size()));
  out.labels.reserve(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    out.x.col(static_cast<Index>(j)) = x.col(columns[j]);
    out.labels.push_back(labels[static_cast<std::size_t>(columns[j])]);
  }
  out.class_names = class_names;
  out.feature_names = feature_names;
  out.provenance = provenance;
  return out;
}

namespace {

void append_noise(LabeledDataset& ds, Index signal_dims, Index noise_dims, Rng& rng) {
  const Index n = ds.x.cols();
  Matrix full(signal_dims + noise_dims, n);
  full.topRows(signal_dims) = ds.x;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < noise_dims; ++i) {
      full(signal_dims + i, j) = rng.uniform();
    }
  }
  ds.x = std::move(full);
  ds.feature_names.clear();
  for (Index i = 0; i < signal_dims; ++i) {
    ds.feature_names.push_back("signal" + std::to_string(i));
  }
  for (Index i = 0; i < noise_dims; ++i) {
    ds.feature_names.push_back("noise" + std::to_string(i));
  }
}

}  // namespace

LabeledDataset gen_xor(Index n, Index noise_dims, std::uint64_t seed) {
  if (n < 4) {
    throw ContractError("gen_xor: need n >= 4");
  }
  if (noise_dims < 0) {
    throw ContractError("gen_xor: noise_dims must be non-negative");
  }
  constexpr double kClusterStd = 0.25;
  constexpr double kCenters[4][2] = {{1.0, 1.0}, {-1.0, -1.0}, {1.0, -1.0}, {-1.0, 1.0}};
  constexpr int kClass[4] = {0, 0, 1, 1};

  Rng rng(seed);
  LabeledDataset ds;
  ds.x.resize(2, n);
  ds.labels.resize(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const auto cluster = static_cast<std::size_t>(j % 4);
    ds.x(0, j) = kCenters[cluster][0] + kClusterStd * rng.normal();
    ds.x(1, j) = kCenters[cluster][1] + kClusterStd * rng.normal();
    ds.labels[static_cast<std::size_t>(j)] = kClass[cluster];
  }
  append_noise(ds, 2, noise_dims, rng);
  ds.class_names = {"0", "1"};
  ds.provenance = "xor(n=" + std::to_string(n) + ", noise_dims=" + std::to_string(noise_dims) +
                  ", seed=" + std::to_string(seed) + ")";
  return ds;
}

LabeledDataset gen_spirals(Index n, Index noise_dims, std::uint64_t seed, const SpiralParams& params) {
  if (n < 2) {
    throw ContractError("gen_spirals: need n >= 2");
  }
  if (noise_dims < 0) {
    throw ContractError("gen_spirals: noise_dims must be non-negative");
  }
  constexpr double kTurns = 3.0 * std::numbers::pi;
  constexpr double kMaxRadius = 1.0;
  const double jitter = params.jitter * kMaxRadius;

  Rng rng(seed);
  LabeledDataset ds;
  ds.x.resize(2, n);
  ds.labels.resize(static_cast<std::size_t>(n));
  const Index per_arm[2] = {(n + 1) / 2, n / 2};
  Index col = 0;
  for (int arm = 0; arm < 2; ++arm) {
    const Index m = per_arm[arm];
    for (Index i = 0; i < m; ++i) {
      const double theta = kTurns * std::sqrt(static_cast<double>(i + 1) / static_cast<double>(m));
      const double radius = kMaxRadius * theta / kTurns;
      const double angle = theta + std::numbers::pi * arm;
      ds.x(0, col) = radius * std::cos(angle) + jitter * rng.normal();
      ds.x(1, col) = radius * std::sin(angle) + jitter * rng.normal();
      ds.labels[static_cast<std::size_t>(col)] = arm;
      ++col;
    }
  }
  append_noise(ds, 2, noise_dims, rng);
  ds.class_names = {"0", "1"};
  ds.provenance = "spirals(n=" + std::to_string(n) + ", noise_dims=" + std::to_string(noise_dims) +
                  ", seed=" + std::to_string(seed) + ")";
  return ds;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? std::string::npos
                                                                                         : comma - start)));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

bool parse_number(const std::string& cell, double& value) {
  if (cell.empty()) {
    return false;
  }
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (*begin == '+') {
    ++begin;
  }
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc() && ptr == end && std::isfinite(value);
}

}  // namespace

LabeledDataset load_csv(const std::filesystem::path& path, const LabelColumn& label_column) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("load_csv: cannot open '" + path.string() + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (trim(line).empty()) {
      continue;
    }
    rows.push_back(split_fields(line));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) {
    throw DataError("load_csv: '" + path.string() + "' is empty");
  }
  const std::size_t arity = rows.front().size();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != arity) {
      throw ParseError("load_csv: expected " + std::to_string(arity) + " fields, found " +
                           std::to_string(rows[r].size()),
                       line_numbers[r], std::min(rows[r].size(), arity));
    }
  }

  std::size_t label_index = 0;
  double scratch = 0.0;
  bool has_header = false;
  if (const auto* index = std::get_if<std::size_t>(&label_column)) {
    label_index = *index;
    if (label_index >= arity) {
      throw ParseError("load_csv: label column " + std::to_string(label_index) + " out of range", line_numbers[0],
                       label_index);
    }
    for (std::size_t c = 0; c < arity; ++c) {
      if (c != label_index && !parse_number(rows[0][c], scratch)) {
        has_header = true;
      }
    }
  } else {
    const auto& name = std::get<std::string>(label_column);
    const auto it = std::find(rows[0].begin(), rows[0].end(), name);
    if (it == rows[0].end()) {
      throw ParseError("load_csv: no header column named '" + name + "'", line_numbers[0], 0);
    }
    label_index = static_cast<std::size_t>(it - rows[0].begin());
    has_header = true;
  }
  if (arity < 2) {
    throw ParseError("load_csv: need at least one feature column besides the label", line_numbers[0], 0);
  }

  const std::size_t first_data = has_header ? 1 : 0;
  const std::size_t n = rows.size() - first_data;
  if (n == 0) {
    throw DataError("load_csv: '" + path.string() + "' has a header but no data rows");
  }

  LabeledDataset ds;
  ds.x.resize(static_cast<Index>(arity - 1), static_cast<Index>(n));
  std::map<std::string, int> class_ids;
  std::vector<std::string> raw_labels;
  raw_labels.reserve(n);
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    Index feature = 0;
    for (std::size_t c = 0; c < arity; ++c) {
      if (c == label_index) {
        continue;
      }
      double value = 0.0;
      if (!parse_number(rows[r][c], value)) {
        throw ParseError("load_csv: non-numeric feature value '" + rows[r][c] + "'", line_numbers[r], c);
      }
      ds.x(feature++, static_cast<Index>(r - first_data)) = value;
    }
    if (rows[r][label_index].empty()) {
      throw ParseError("load_csv: empty label", line_numbers[r], label_index);
    }
    raw_labels.push_back(rows[r][label_index]);
    class_ids.emplace(rows[r][label_index], 0);
  }
  int next = 0;
  for (auto& [name, id] : class_ids) {
    id = next++;
    ds.class_names.push_back(name);
  }
  ds.labels.reserve(n);
  for (const auto& raw : raw_labels) {
    ds.labels.push_back(class_ids.at(raw));
  }
  if (has_header) {
    for (std::size_t c = 0; c < arity; ++c) {
      if (c != label_index) {
        ds.feature_names.push_back(rows[0][c]);
      }
    }
  }
  ds.provenance = "csv(" + path.string() + ", label column " + std::to_string(label_index) + ")";
  return ds;
}

Matrix MinMaxScaler::apply(const Matrix& x) const {
  if (x.rows() != min.size()) {
    throw ContractError("MinMaxScaler::apply: dimension mismatch");
  }
  Matrix out(x.rows(), x.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    const double range = max(i) - min(i);
    for (Index j = 0; j < x.cols(); ++j) {
      out(i, j) = range > 0.0 ? std::clamp((x(i, j) - min(i)) / range, 0.0, 1.0) : 0.5;
    }
  }
  return out;
}

NormalizedPair normalize01(const LabeledDataset& train, const LabeledDataset& test) {
  if (train.size() == 0) {
    throw ContractError("normalize01: empty training set");
  }
  if (test.size() > 0 && test.dim() != train.dim()) {
    throw ContractError("normalize01: train/test dimension mismatch");
  }
  NormalizedPair out{train, test, {}};
  out.scaler.min = train.x.rowwise().minCoeff();
  out.scaler.max = train.x.rowwise().maxCoeff();
  out.train.x = out.scaler.apply(train.x);
  if (test.size() > 0) {
    out.test.x = out.scaler.apply(test.x);
  }
  return out;
}

TrainTestSplit split(const LabeledDataset& ds, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ContractError("split: train fraction must lie in (0, 1)");
  }
  if (ds.size() < 2) {
    throw ContractError("split: need at least two samples");
  }
  Rng rng(seed);
  std::vector<std::vector<Index>> by_class(ds.num_classes());
  for (Index j = 0; j < ds.size(); ++j) {
    by_class.at(static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(j)])).push_back(j);
  }
  TrainTestSplit out;
  std::vector<Index> train_cols;
  std::vector<Index> test_cols;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& members = by_class[c];
    if (members.empty()) {
      continue;
    }
    if (members.size() == 1) {
      out.warnings.push_back("class '" + ds.class_names[c] + "' has a single sample; placed in train");
      train_cols.push_back(members.front());
      continue;
    }
    rng.shuffle(std::span<Index>(members));
    const auto take = static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(members.size())));
    train_cols.insert(train_cols.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
    test_cols.insert(test_cols.end(), members.begin() + static_cast<std::ptrdiff_t>(take), members.end());
  }
  std::sort(train_cols.begin(), train_cols.end());
  std::sort(test_cols.begin(), test_cols.end());
  out.train = ds.subset(train_cols);
  out.test = ds.subset(test_cols);
  return out;
}

void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("write_dataset_csv: cannot open '" + path.string() + "'");
  }
  out.precision(17);
  for (Index i = 0; i < ds.dim(); ++i) {
    out << 'f' << i << ',';
  }
  out << "label\n";
  for (Index j = 0; j < ds.size(); ++j) {
    for (Index i = 0; i < ds.dim(); ++i) {
      out << ds.x(i, j) << ',';
    }
    out << ds.class_names[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(j)])] << '\n';
  }
  if (!out) {
    throw DataError("write_dataset_csv: write failed for '" + path.string() + "'");
  }
}

}  // namespace srp
