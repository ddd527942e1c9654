// jacobi_lab: batch front end.
//
//   jacobi_lab classify --config PATH [--out DIR]
//   jacobi_lab spectrum --config PATH [--out DIR] [--jobs K]
//   jacobi_lab growth   --config PATH [--out DIR] [--jobs K]
//   jacobi_lab report   --config PATH [--out DIR] [--jobs K]
//   jacobi_lab verify   [--config PATH] [--out DIR] [--jobs K] [--seed S]
//
// Exit codes: 0 ok, 1 check or numerical failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jacobi_lab/acceptance.hpp"
#include "jacobi_lab/classifier.hpp"
#include "jacobi_lab/errors.hpp"
#include "jacobi_lab/growth.hpp"
#include "jacobi_lab/hamburger.hpp"
#include "jacobi_lab/io.hpp"
#include "jacobi_lab/recurrence.hpp"
#include "jacobi_lab/spectrum.hpp"

namespace fs = std::filesystem;
using namespace jacobi;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RGrid {
  double r_min = 1.0;
  double r_max = 1e3;
  std::size_t points = 20;
};

struct ExperimentConfig {
  std::optional<PowerAsymptotics> descriptor;
  std::optional<std::string> sequence_path;
  std::vector<std::size_t> Ns{500, 1000, 2000};
  RGrid r_grid;
  double tolerance = 0.0;
  std::size_t zero_grid = 4096;
  std::optional<IndexWindow> window;
  std::optional<std::string> golden_path;
  std::string input_hash;
  std::optional<std::string> sequence_hash;
};

struct Options {
  std::string config;
  std::string out;
  unsigned jobs = Execution::hardware().jobs;
  std::optional<std::uint64_t> seed;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ExperimentConfig load_config(const std::string& path, const Options& opt) {
  ExperimentConfig cfg;
  const std::string text = read_file(path);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("config file " + path + " is empty");
  cfg.input_hash = git_blob_hash(text);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  const fs::path base = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };

  try {
    if (j.contains("beta1")) {
      cfg.descriptor = descriptor_from_json(j);
      j = Json::object();
    }
    if (j.contains("descriptor")) cfg.descriptor = descriptor_from_json(j.at("descriptor"));
    if (j.contains("sequence")) cfg.sequence_path = resolve(j.at("sequence").get<std::string>());
    if (j.contains("N")) {
      const Json& n = j.at("N");
      cfg.Ns.clear();
      if (n.is_array()) {
        for (const Json& v : n) cfg.Ns.push_back(v.get<std::size_t>());
      } else {
        cfg.Ns.push_back(n.get<std::size_t>());
      }
    }
    if (j.contains("r_grid")) {
      const Json& g = j.at("r_grid");
      cfg.r_grid.r_min = g.at("r_min").get<double>();
      cfg.r_grid.r_max = g.at("r_max").get<double>();
      cfg.r_grid.points = g.value("points", std::size_t{20});
    }
    if (j.contains("tolerance")) cfg.tolerance = j.at("tolerance").get<double>();
    if (j.contains("zero_grid")) cfg.zero_grid = j.at("zero_grid").get<std::size_t>();
    if (j.contains("window")) {
      cfg.window = IndexWindow{j.at("window").at(0).get<std::size_t>(), j.at("window").at(1).get<std::size_t>()};
    }
    if (j.contains("golden")) cfg.golden_path = resolve(j.at("golden").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid config field: ") + e.what());
  }

  if (cfg.descriptor && cfg.sequence_path) throw ParseError("config must give a descriptor or a sequence, not both");
  if (!(cfg.r_grid.r_min > 0) || !(cfg.r_grid.r_max > cfg.r_grid.r_min) || cfg.r_grid.points < 8) {
    throw ParseError("r_grid requires 0 < r_min < r_max and points >= 8");
  }
  if (cfg.Ns.empty()) throw ParseError("N must list at least one dimension");
  for (std::size_t i = 0; i < cfg.Ns.size(); ++i) {
    if (cfg.Ns[i] < 2 || (i > 0 && cfg.Ns[i] <= cfg.Ns[i - 1])) {
      throw ParseError("N values must be >= 2 and strictly increasing");
    }
  }
  if (cfg.tolerance < 0) throw ParseError("tolerance must be nonnegative");
  if (cfg.descriptor && opt.seed) cfg.descriptor->remainder.seed = *opt.seed;
  if (cfg.sequence_path) cfg.sequence_hash = git_blob_hash(read_file(*cfg.sequence_path));
  return cfg;
}

ExperimentConfig require_input(const Options& opt) {
  if (opt.config.empty()) throw UsageError("--config is required");
  ExperimentConfig cfg = load_config(opt.config, opt);
  if (!cfg.descriptor && !cfg.sequence_path) throw ParseError("config needs a descriptor or a sequence path");
  return cfg;
}

JacobiSequence build_sequence(const ExperimentConfig& cfg, std::size_t N) {
  if (cfg.descriptor) return materialize(*cfg.descriptor, N);
  JacobiSequence seq = read_sequence_csv_file(*cfg.sequence_path);
  if (seq.size() < N) {
    throw DomainError("sequence file has " + std::to_string(seq.size()) + " rows, need " + std::to_string(N));
  }
  return seq.prefix(N);
}

Json provenance(const ExperimentConfig& cfg) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["input_hash"] = cfg.input_hash;
  if (cfg.descriptor) {
    j["descriptor"] = to_json(*cfg.descriptor);
  } else {
    j["descriptor"] = nullptr;
    j["sequence"] = fs::path(*cfg.sequence_path).filename().string();
    j["sequence_hash"] = *cfg.sequence_hash;
  }
  return j;
}

void emit(const Options& opt, const std::string& name, const std::string& contents) {
  if (opt.out.empty()) return;
  fs::create_directories(opt.out);
  write_file((fs::path(opt.out) / name).string(), contents);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class Writer>
std::string csv(Writer&& w) {
  std::ostringstream os;
  w(os);
  return os.str();
}

void print_case_table(const ClassificationReport& r) {
  const Classification& c = r.classification;
  std::cout << summary_line(c) << "\n\n";
  std::printf("  %-18s %s\n", "case", c.case_label.c_str());
  std::printf("  %-18s %s\n", "regime", to_string(c.regime));
  if (c.predicted_exponent) {
    const auto& e = *c.predicted_exponent;
    std::printf("  %-18s %s\n", "exponent",
                e.is_point() ? fmt(e.lo).c_str() : ("[" + fmt(e.lo) + ", " + fmt(e.hi) + "]").c_str());
  }
  if (c.a_constant) std::printf("  %-18s %s\n", "a", fmt(*c.a_constant).c_str());
  if (c.density_lower) std::printf("  %-18s %s\n", "density lower", fmt(*c.density_lower).c_str());
  if (c.density_upper) std::printf("  %-18s %s\n", "density upper", fmt(*c.density_upper).c_str());
  if (c.z1) std::printf("  %-18s %s\n", "z1", fmt(*c.z1).c_str());
  if (c.z2) std::printf("  %-18s %s\n", "z2", fmt(*c.z2).c_str());
  if (c.d) std::printf("  %-18s %s\n", "d", fmt(*c.d).c_str());
  std::printf("\n  %-12s %-8s %-13s %s\n", "criterion", "applies", "conclusion", "evidence");
  for (const auto& v : r.criteria) {
    std::printf("  %-12s %-8s %-13s %s\n", v.name.c_str(), v.applies ? "yes" : "no", to_string(v.conclusion),
                v.evidence.c_str());
  }
  for (const auto& n : c.notes) std::printf("  note: %s\n", n.c_str());
}

int cmd_classify(const Options& opt) {
  const ExperimentConfig cfg = require_input(opt);
  ClassificationReport report;
  if (cfg.descriptor) {
    report = classification_report(*cfg.descriptor);
  } else {
    const JacobiSequence seq = read_sequence_csv_file(*cfg.sequence_path);
    report.classification.case_label = "Undetermined";
    report.classification.notes.push_back("external sequence: only the classical criteria are evaluated");
    report.criteria = {carleman_test(seq), wouk_test(seq), berezanskii_test(seq)};
  }
  print_case_table(report);
  Json j = provenance(cfg);
  j["classification"] = to_json(report.classification);
  Json crit = Json::array();
  for (const auto& v : report.criteria) crit.push_back(to_json(v));
  j["criteria"] = crit;
  emit(opt, "classification.json", dump(j));
  return 0;
}

int cmd_spectrum(const Options& opt) {
  const ExperimentConfig cfg = require_input(opt);
  const Execution exec{opt.jobs};
  const JacobiSequence seq = build_sequence(cfg, cfg.Ns.back());
  const auto radii = geometric_grid(cfg.r_grid.r_min, cfg.r_grid.r_max, cfg.r_grid.points);

  Json j = provenance(cfg);
  j["N"] = cfg.Ns;
  Json per_n = Json::array();
  std::vector<std::vector<std::size_t>> counts_by_n;
  for (std::size_t N : cfg.Ns) {
    const TruncatedSpectrum spec = full_spectrum(seq, N, cfg.tolerance, exec);
    std::vector<std::size_t> counts(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) counts[i] = counting_function(spec, radii[i]);
    emit(opt, "spectrum_N" + std::to_string(N) + ".csv",
         csv([&](std::ostream& os) { write_spectrum_csv(os, spec.eigenvalues); }));
    emit(opt, "counting_N" + std::to_string(N) + ".csv",
         csv([&](std::ostream& os) { write_counting_csv(os, radii, counts); }));
    per_n.push_back({{"N", N}, {"eigenvalues", spec.eigenvalues.size()}, {"tolerance", spec.tol}});
    counts_by_n.push_back(std::move(counts));
  }
  j["spectra"] = per_n;

  Json stab = Json::array();
  std::size_t stable = 0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    std::vector<std::size_t> counts;
    for (const auto& c : counts_by_n) counts.push_back(c[i]);
    const bool ok = counts.size() >= 2 && counts[counts.size() - 1] == counts[counts.size() - 2];
    stable += ok;
    stab.push_back({{"r", radii[i]}, {"counts", counts}, {"stabilized", ok}});
  }
  j["stabilization"] = stab;
  emit(opt, "spectrum.json", dump(j));
  std::printf("spectrum: N = %zu..%zu, %zu/%zu radii stabilized (last two N agree)\n", cfg.Ns.front(),
              cfg.Ns.back(), stable, radii.size());
  return 0;
}

Json growth_json(const ExperimentConfig& cfg, const JacobiSequence& seq, const PolySolution& sol,
                 const Options& opt, Execution exec) {
  const std::size_t N = sol.N;
  const double r_max = cfg.r_grid.r_max;
  Json j;

  const ZeroScan scan = b_zero_scan(sol, N, r_max, cfg.zero_grid, exec);
  const auto moduli = sorted_moduli(scan.zeros);
  emit(opt, "b_zeros.csv", csv([&](std::ostream& os) { write_zeros_csv(os, scan.zeros); }));

  const auto radii = geometric_grid(cfg.r_grid.r_min, r_max, cfg.r_grid.points);
  std::vector<double> log_m(radii.size());
  parallel_for(radii.size(), exec, [&](std::size_t i) { log_m[i] = log_max_modulus_B(sol, N, radii[i]); });
  emit(opt, "b_max_modulus.csv", csv([&](std::ostream& os) { write_max_modulus_csv(os, radii, log_m); }));

  Json zeros_route;
  zeros_route["count"] = moduli.size();
  zeros_route["refined_cells"] = scan.refined_cells;
  zeros_route["warnings"] = scan.warnings;
  if (moduli.size() >= 32) {
    const ExponentEstimate e = convergence_exponent_from_zeros(moduli);
    zeros_route["exponent"] = e.exponent;
    zeros_route["exponent_stderr"] = e.slope_stderr;
    if (e.exponent > 0 && e.exponent < 1) zeros_route["density"] = upper_density(moduli, 1.0 / e.exponent);
  } else {
    zeros_route["exponent"] = nullptr;
    zeros_route["note"] = "fewer than 32 zeros in [-r_max, r_max]";
  }
  j["b_zeros"] = zeros_route;

  Json mm;
  try {
    mm = to_json(order_type_from_max_modulus(radii, log_m));
  } catch (const EvaluationBreakdown& e) {
    mm = {{"error", e.what()}};
  }
  j["b_max_modulus"] = mm;

  if (N >= 64) {
    const auto coeffs = coefficient_series_H(seq, N);
    try {
      j["h_coefficients"] = to_json(order_type_from_coefficients(coeffs));
    } catch (const DomainError& e) {
      j["h_coefficients"] = {{"error", e.what()}};
    }
  }

  Json predicted = nullptr;
  if (cfg.descriptor) {
    const Classification c = classify(*cfg.descriptor);
    predicted = {{"summary", summary_line(c)}};
    if (c.predicted_exponent) predicted["exponent"] = {c.predicted_exponent->lo, c.predicted_exponent->hi};
    if (c.density_lower) predicted["density_lower"] = *c.density_lower;
    if (c.density_upper) predicted["density_upper"] = *c.density_upper;
    if (c.case_label == "T1(ii)" && c.regime == Regime::LCC) {
      predicted["h_order"] = 1.0 / cfg.descriptor->beta1;
      predicted["h_type"] = cfg.descriptor->beta1 * std::pow(cfg.descriptor->x0, -1.0 / cfg.descriptor->beta1);
      const MajorantCheck mc = majorant_F(sol, *cfg.descriptor, radii, N, exec);
      Json samples = Json::array();
      for (const auto& s : mc.samples) {
        samples.push_back({{"r", s.r}, {"log_F", s.log_F}, {"log_norm", s.log_norm}, {"gap", s.gap}});
      }
      j["majorant"] = {{"g", mc.g},
                       {"sup_gap", mc.sup_gap},
                       {"gap_nonincreasing_tail", mc.gap_nonincreasing_tail},
                       {"samples", samples}};
    }
  }
  j["predicted"] = predicted;
  j["windows"] = {{"N", N}, {"r_min", cfg.r_grid.r_min}, {"r_max", r_max}, {"zero_grid", cfg.zero_grid}};
  return j;
}

int cmd_growth(const Options& opt) {
  const ExperimentConfig cfg = require_input(opt);
  const Execution exec{opt.jobs};
  const std::size_t N = cfg.Ns.back();
  const JacobiSequence seq = build_sequence(cfg, N);
  const PolySolution sol = solve_at_zero(seq);
  Json j = provenance(cfg);
  j["growth"] = growth_json(cfg, seq, sol, opt, exec);
  emit(opt, "growth.json", dump(j));
  const Json& g = j["growth"];
  std::printf("growth: N = %zu, %s zeros of B in [-%s, %s]", N, g["b_zeros"]["count"].dump().c_str(),
              fmt(cfg.r_grid.r_max).c_str(), fmt(cfg.r_grid.r_max).c_str());
  if (g["b_zeros"]["exponent"].is_number()) std::printf(", exponent %s", fmt(g["b_zeros"]["exponent"].get<double>()).c_str());
  if (g["b_max_modulus"].contains("order")) {
    std::printf(", order %s, type %s", fmt(g["b_max_modulus"]["order"].get<double>()).c_str(),
                fmt(g["b_max_modulus"]["type"].get<double>()).c_str());
  }
  std::printf("\n");
  return 0;
}

int cmd_report(const Options& opt) {
  const ExperimentConfig cfg = require_input(opt);
  const Execution exec{opt.jobs};
  const std::size_t N = cfg.Ns.back();
  const JacobiSequence seq = build_sequence(cfg, N);
  Json j = provenance(cfg);
  if (cfg.descriptor) {
    const ClassificationReport cr = classification_report(*cfg.descriptor);
    j["classification"] = to_json(cr.classification);
    Json crit = Json::array();
    for (const auto& v : cr.criteria) crit.push_back(to_json(v));
    j["criteria"] = crit;
    std::cout << summary_line(cr.classification) << "\n";
  }
  const PolySolution sol = solve_at_zero(seq);
  emit(opt, "solution.csv", csv([&](std::ostream& os) { write_solution_csv(os, sol); }));
  const auto res = wronskian_residuals(sol, seq);
  Json rec;
  rec["wronskian_max_residual"] = *std::max_element(res.begin(), res.end());
  const IndexWindow window = cfg.window.value_or(default_window(N));
  rec["norm_exponent"] = to_json(norm_exponent(sol, window));
  if (N >= 64) {
    const SummabilityProbe probe = square_summability_probe(sol);
    rec["summability"] = {{"verdict", to_string(probe.verdict)}, {"ratios", probe.ratios}};
  }
  j["recurrence"] = rec;

  HamburgerData h = lengths_angles(sol, seq);
  const IndexWindow hw{std::max<std::size_t>(window.first, 1), std::min(window.last, N - 1)};
  j["hamburger"] = to_json(delta_exponents(h, hw));
  emit(opt, "hamburger.csv", csv([&](std::ostream& os) { write_hamburger_csv(os, h); }));

  j["growth"] = growth_json(cfg, seq, sol, opt, exec);
  emit(opt, "report.json", dump(j));
  std::printf("report: N = %zu, norm exponent %s, delta_l %s, delta_phi %s\n", N,
              fmt(j["recurrence"]["norm_exponent"]["slope"].get<double>()).c_str(),
              fmt(j["hamburger"]["delta_l"].get<double>()).c_str(),
              fmt(j["hamburger"]["delta_phi"].get<double>()).c_str());
  return 0;
}

int cmd_verify(const Options& opt) {
  AcceptanceOptions options;
  options.exec = Execution{opt.jobs};
  if (opt.seed) options.seed = *opt.seed;
  if (!opt.config.empty()) {
    const ExperimentConfig cfg = load_config(opt.config, opt);
    if (cfg.golden_path) {
      Json g;
      try {
        g = Json::parse(read_file(*cfg.golden_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed golden file: ") + e.what());
      }
      options.golden = golden_from_json(g);
    }
  }
  const auto results = run_acceptance(options);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::cout << format_check(r) << "\n";
    passed += r.passed;
  }
  std::cout << passed << "/" << results.size() << " checks passed\n";
  emit(opt, "verify.xml", junit_xml(results));
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi matrices with power asymptotics: classification, spectra, growth"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opt.config, "experiment config (JSON)");
    if (config_required) c->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "override remainder / acceptance seed");
  };
  auto* classify_cmd = app.add_subcommand("classify", "classify a descriptor and run the classical criteria");
  auto* spectrum_cmd = app.add_subcommand("spectrum", "truncation eigenvalues and counting functions");
  auto* growth_cmd = app.add_subcommand("growth", "order, type, convergence exponent and density");
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite on the golden models");
  auto* report_cmd = app.add_subcommand("report", "classification, recurrence, Hamburger and growth in one report");
  add_common(classify_cmd, true);
  add_common(spectrum_cmd, true);
  add_common(growth_cmd, true);
  add_common(verify_cmd, false);
  add_common(report_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) return cmd_classify(opt);
    if (*spectrum_cmd) return cmd_spectrum(opt);
    if (*growth_cmd) return cmd_growth(opt);
    if (*verify_cmd) return cmd_verify(opt);
    if (*report_cmd) return cmd_report(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const RecurrenceOverflow& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 1;
  } catch (const EvaluationBreakdown& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
