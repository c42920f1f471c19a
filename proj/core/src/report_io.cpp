#include <json.hpp>

#include <cmath>
#include <ostream>

#include "srp/eval.hpp"

namespace srp {

namespace {

std::string psi_backend_name(LabelFactorBackend backend) {
  return backend == LabelFactorBackend::exact ? "exact" : "rff";
}

}  // namespace

void write_report_csv(const BenchReport& report, std::ostream& out) {
  out << "method,k,repeat,seed,sigma_x,status,accuracy,fit_ns,construct_ns,solve_ns,transform_ns,residual,contended\n";
  const auto precision = out.precision(17);
  for (const auto& row : report.rows) {
    out << to_string(row.method) << ',' << row.k << ',' << row.repeat << ',' << row.seed << ',' << row.sigma_x << ','
        << (row.skipped ? "skipped" : "ok") << ',';
    if (row.skipped) {
      out << ",,,,,,";
    } else {
      out << row.accuracy << ',' << row.fit_ns << ',' << row.construct_ns << ',' << row.solve_ns << ','
          << row.transform_ns << ',';
      if (!std::isnan(row.residual)) {
        out << row.residual;
      }
      out << ',';
    }
    out << (row.contended ? 1 : 0) << '\n';
  }
  out.precision(precision);
}

void write_report_json(const BenchReport& report, std::ostream& out) {
  using nlohmann::json;
  const BenchConfig& c = report.config;
  json doc;
  doc["dataset"] = report.dataset;
  doc["n"] = report.n;
  doc["d"] = report.d;

  json methods = json::array();
  for (Method m : c.methods) {
    methods.push_back(std::string(to_string(m)));
  }
  doc["config"] = {
      {"methods", methods},
      {"ks", c.ks},
      {"repeats", c.repeats},
      {"seed", c.seed},
      {"train_fraction", c.train_fraction},
      {"sigma_x", c.sigma_x ? json(*c.sigma_x) : json("cv")},
      {"cv_folds", c.cv_folds},
      {"kx", c.kx},
      {"sigma_y", c.sigma_y},
      {"psi_backend", psi_backend_name(c.psi_backend)},
      {"ksrp_kernel", c.ksrp_exact_kernel ? "exact" : "rff"},
      {"parallel", c.parallel},
  };
  json sigmas = json::object();
  for (const auto& [method, sigma] : report.sigma_x) {
    sigmas[std::string(to_string(method))] = sigma;
  }
  doc["sigma_x"] = sigmas;

  json aggregates = json::array();
  for (const auto& a : report.aggregates) {
    aggregates.push_back({
        {"method", std::string(to_string(a.method))},
        {"k", a.k},
        {"runs", a.runs},
        {"skipped", a.skipped},
        {"accuracy_mean", a.accuracy_mean},
        {"accuracy_std", a.accuracy_std},
        {"fit_ns_mean", a.fit_ns_mean},
        {"fit_ns_std", a.fit_ns_std},
        {"transform_ns_mean", a.transform_ns_mean},
        {"transform_ns_std", a.transform_ns_std},
    });
  }
  doc["aggregates"] = aggregates;
  out << doc.dump(2) << '\n';
}

}  // namespace srp
