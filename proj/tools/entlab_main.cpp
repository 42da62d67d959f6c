// entlab: batch driver for state construction, inequality sweeps and
// entanglement-bound sandwiches. JSON in, JSON out, seeded and reproducible:
// identical command lines (including --seed) produce byte-identical reports.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entlab/entropy.hpp"
#include "entlab/extremal.hpp"
#include "entlab/json_io.hpp"
#include "entlab/measures.hpp"
#include "entlab/states.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

constexpr double kNatsPerBit = 0.6931471805599453;  // ln 2

double unit_factor(const std::string& unit) {
  return unit == "bits" ? 1.0 / kNatsPerBit : 1.0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw entlab::ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Write-temp-then-rename so readers never observe a half-written report.
void atomic_write(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path());
  }
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw entlab::Error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

void emit(const std::optional<std::string>& out_path, const json& document) {
  const std::string text = document.dump(2) + "\n";
  if (out_path) {
    atomic_write(*out_path, text);
  } else {
    std::cout << text;
  }
}

json report_obj(const entlab::InequalityReport& r, double u) {
  return json{{"name", r.name},           {"lhs", u * r.lhs},
              {"rhs", u * r.rhs},         {"slack", u * r.slack},
              {"satisfied", r.satisfied}, {"tol", u * r.tol}};
}

json estimate_obj(const entlab::EstimateResult& est, double u) {
  return json{{"value", u * est.value},
              {"kind", entlab::to_string(est.kind)},
              {"restarts_used", est.restarts_used},
              {"iterations", est.iterations},
              {"seed", est.seed},
              {"converged", est.converged},
              {"budget_exhausted", est.budget_exhausted}};
}

json sandwich_obj(const entlab::SandwichReport& r, double u) {
  return json{{"lower", u * r.lower},
              {"weaker", u * r.weaker},
              {"upper_local", u * r.upper_local},
              {"ef", estimate_obj(r.ef, u)},
              {"esq", estimate_obj(r.esq, u)}};
}

void apply_env_dim_cap() {
  if (const char* raw = std::getenv("ENTLAB_MAX_DIM")) {
    try {
      const int cap = std::stoi(raw);
      if (cap >= 1 && cap < entlab::max_dim()) entlab::set_max_dim(cap);
    } catch (const std::exception&) {
      // ignore unparseable values; the cap only moves down on valid input
    }
  }
}

struct CheckOptions {
  std::string input;
  std::string family = "all";
  std::string unit = "nats";
  std::optional<std::string> out;
};

int run_check(const CheckOptions& opt) {
  const entlab::DensityMatrix rho =
      entlab::density_from_json(read_file(opt.input));
  const int parts = rho.subsystem_count();

  std::vector<std::string> selected;
  if (opt.family == "all") {
    if (parts == 2) {
      selected = {"triangle"};
    } else if (parts == 3) {
      selected = {"ssa", "essa", "weakmono", "aux"};
    } else {
      throw entlab::BadArity("check expects 2 or 3 subsystems");
    }
  } else {
    const bool needs3 = opt.family != "triangle";
    if ((needs3 && parts != 3) || (!needs3 && parts != 2)) {
      throw entlab::BadArity("state arity does not match family " +
                             opt.family);
    }
    selected = {opt.family};
  }

  std::vector<entlab::InequalityReport> reports;
  for (const std::string& family : selected) {
    if (family == "ssa") {
      reports.push_back(entlab::check_ssa(rho));
    } else if (family == "essa") {
      reports.push_back(entlab::check_extended_ssa(rho));
    } else if (family == "triangle") {
      reports.push_back(entlab::check_triangle(rho));
    } else if (family == "weakmono") {
      reports.push_back(entlab::check_weak_monotonicity(rho));
    } else if (family == "aux") {
      for (auto& r : entlab::check_aux_inequalities(rho)) {
        reports.push_back(std::move(r));
      }
    }
  }

  const double u = unit_factor(opt.unit);
  json out_reports = json::array();
  bool all_ok = true;
  for (const auto& r : reports) {
    all_ok = all_ok && r.satisfied;
    out_reports.push_back(report_obj(r, u));
  }
  emit(opt.out, json{{"version", entlab::kVersion},
                     {"config", json{{"command", "check"},
                                     {"input", opt.input},
                                     {"family", opt.family},
                                     {"unit", opt.unit}}},
                     {"reports", std::move(out_reports)}});
  return all_ok ? kExitOk : kExitViolation;
}

struct ExtremalOptions {
  std::vector<double> kappas;
  std::string rho2_path;
  std::string out_dir;
  std::string unit = "nats";
};

int run_extremal(const ExtremalOptions& opt) {
  entlab::RealVector kappas(static_cast<Eigen::Index>(opt.kappas.size()));
  for (std::size_t i = 0; i < opt.kappas.size(); ++i) {
    kappas(static_cast<Eigen::Index>(i)) = opt.kappas[i];
  }
  entlab::DensityMatrix rho2 =
      entlab::density_from_json(read_file(opt.rho2_path));
  if (rho2.subsystem_count() != 1) {
    throw entlab::BadSpec("rho2 must be a single-system state");
  }
  const entlab::SaturatingSpec spec(std::move(kappas), std::move(rho2));

  const entlab::DensityMatrix rho12 = entlab::build_saturating_state(spec);
  const entlab::EqualityCertificate cert =
      entlab::verify_equality_conditions(rho12);

  const std::filesystem::path dir(opt.out_dir);
  atomic_write((dir / "state.json").string(),
               entlab::density_to_json(rho12, 2) + "\n");

  const double u = unit_factor(opt.unit);
  json cert_obj = json::parse(entlab::certificate_to_json(cert));
  cert_obj["entropy_gap"] = u * cert.entropy_gap;
  atomic_write((dir / "certificate.json").string(), cert_obj.dump(2) + "\n");

  json summary{{"version", entlab::kVersion},
               {"config", json{{"command", "extremal"},
                               {"kappas", opt.kappas},
                               {"rho2", opt.rho2_path},
                               {"unit", opt.unit}}},
               {"certificate_passed", cert.passed},
               {"witness", nullptr}};
  try {
    const entlab::SharpnessWitness witness =
        entlab::build_sharpness_witness(spec);
    atomic_write((dir / "witness_state.json").string(),
                 entlab::density_to_json(witness.rho123, 2) + "\n");
    json wr{{"cmi", u * witness.report.cmi_value},
            {"bound", u * witness.report.bound},
            {"ratio", witness.report.ratio}};
    atomic_write((dir / "witness_report.json").string(), wr.dump(2) + "\n");
    summary["witness"] = wr;
  } catch (const entlab::BadSpec& e) {
    summary["witness_skipped"] = e.what();
  } catch (const entlab::DegenerateWitness& e) {
    summary["witness_skipped"] = e.what();
  }
  atomic_write((dir / "summary.json").string(), summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

struct BoundsOptions {
  std::string input;
  std::uint64_t seed = 0;
  int restarts = 32;
  long budget = 2000;
  int ancilla_dim = 0;
  int ensemble_size = 0;
  std::string unit = "nats";
  std::optional<std::string> out;
};

int run_bounds(const BoundsOptions& opt) {
  const entlab::DensityMatrix rho =
      entlab::density_from_json(read_file(opt.input));
  entlab::EstimatorConfig config;
  config.seed = opt.seed;
  config.restarts = opt.restarts;
  config.budget = opt.budget;
  config.ancilla_dim = opt.ancilla_dim;
  config.ensemble_size = opt.ensemble_size;

  const entlab::SandwichReport report =
      entlab::entanglement_bounds(rho, config);
  const double u = unit_factor(opt.unit);
  emit(opt.out, json{{"version", entlab::kVersion},
                     {"config", json{{"command", "bounds"},
                                     {"input", opt.input},
                                     {"seed", opt.seed},
                                     {"restarts", opt.restarts},
                                     {"budget", opt.budget},
                                     {"ancilla_dim", opt.ancilla_dim},
                                     {"ensemble_size", opt.ensemble_size},
                                     {"unit", opt.unit}}},
                     {"report", sandwich_obj(report, u)}});
  return kExitOk;
}

struct SweepOptions {
  std::vector<int> dims;
  int count = 0;
  std::uint64_t seed = 0;
  std::string family = "all";
  std::string unit = "nats";
  std::optional<std::string> out;
};

int run_sweep(const SweepOptions& opt) {
  const entlab::SubsystemDims dims(opt.dims);
  const int parts = dims.count();
  if (parts != 2 && parts != 3) {
    throw entlab::BadArity("sweep expects 2 or 3 subsystem dims");
  }
  if (parts == 3 && dims.total() > 64) {
    throw entlab::DimensionOverflow("tripartite sweeps are capped at total dimension 64");
  }

  std::vector<std::string> selected;
  if (opt.family == "all") {
    selected = parts == 2
                   ? std::vector<std::string>{"triangle"}
                   : std::vector<std::string>{"ssa", "essa", "weakmono", "aux"};
  } else {
    const bool needs3 = opt.family != "triangle";
    if ((needs3 && parts != 3) || (!needs3 && parts != 2)) {
      throw entlab::BadArity("dims arity does not match family " + opt.family);
    }
    selected = {opt.family};
  }

  struct Stat {
    long count = 0;
    std::optional<double> min_slack;
    long violations = 0;
  };
  std::map<std::string, Stat> stats;
  json violations = json::array();

  for (int i = 0; i < opt.count; ++i) {
    const std::uint64_t state_seed = opt.seed + static_cast<std::uint64_t>(i);
    const entlab::DensityMatrix rho =
        entlab::random_density(dims, dims.total(), state_seed);
    std::vector<entlab::InequalityReport> reports;
    for (const std::string& family : selected) {
      if (family == "ssa") {
        reports.push_back(entlab::check_ssa(rho));
      } else if (family == "essa") {
        reports.push_back(entlab::check_extended_ssa(rho));
      } else if (family == "triangle") {
        reports.push_back(entlab::check_triangle(rho));
      } else if (family == "weakmono") {
        reports.push_back(entlab::check_weak_monotonicity(rho));
      } else if (family == "aux") {
        for (auto& r : entlab::check_aux_inequalities(rho)) {
          reports.push_back(std::move(r));
        }
      }
    }
    for (const auto& r : reports) {
      Stat& s = stats[r.name];
      ++s.count;
      if (!s.min_slack || r.slack < *s.min_slack) s.min_slack = r.slack;
      if (!r.satisfied) {
        ++s.violations;
        violations.push_back(
            json{{"index", i},
                 {"seed", state_seed},
                 {"report", report_obj(r, 1.0)},
                 {"state", json::parse(entlab::density_to_json(rho))}});
      }
    }
  }

  const double u = unit_factor(opt.unit);
  json families = json::object();
  long total_violations = 0;
  for (const auto& [name, s] : stats) {
    families[name] = json{
        {"count", s.count},
        {"min_slack", s.min_slack ? json(u * *s.min_slack) : json(nullptr)},
        {"violations", s.violations}};
    total_violations += s.violations;
  }

  emit(opt.out, json{{"version", entlab::kVersion},
                     {"config", json{{"command", "sweep"},
                                     {"dims", opt.dims},
                                     {"count", opt.count},
                                     {"seed", opt.seed},
                                     {"family", opt.family},
                                     {"unit", opt.unit}}},
                     {"families", std::move(families)},
                     {"violations", std::move(violations)}});
  return total_violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  apply_env_dim_cap();

  CLI::App app{"finite-dimensional quantum-state calculus: entropy "
               "inequalities, extremal states and entanglement bounds"};
  app.require_subcommand(1);

  CheckOptions check_opt;
  CLI::App* check = app.add_subcommand(
      "check", "evaluate entropy inequalities on a state file");
  check->add_option("--in", check_opt.input, "density-matrix JSON file")
      ->required();
  check->add_option("--family", check_opt.family,
                    "ssa|essa|triangle|weakmono|aux|all")
      ->check(CLI::IsMember({"ssa", "essa", "triangle", "weakmono", "aux",
                             "all"}));
  check->add_option("--unit", check_opt.unit, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  std::string check_out;
  check->add_option("--out", check_out, "report file (stdout if omitted)");

  ExtremalOptions ext_opt;
  CLI::App* extremal = app.add_subcommand(
      "extremal", "build a triangle-equality state, certificate and witness");
  extremal->add_option("--kappas", ext_opt.kappas, "mixture weights")
      ->required()
      ->delimiter(',');
  extremal->add_option("--rho2", ext_opt.rho2_path, "rho2 JSON file")
      ->required();
  extremal->add_option("--out-dir", ext_opt.out_dir, "output directory")
      ->required();
  extremal->add_option("--unit", ext_opt.unit, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));

  BoundsOptions bounds_opt;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "lower/upper sandwich for E_f and E_sq on a bipartite state");
  bounds->add_option("--in", bounds_opt.input, "density-matrix JSON file")
      ->required();
  bounds->add_option("--seed", bounds_opt.seed, "RNG seed")->required();
  bounds->add_option("--restarts", bounds_opt.restarts, "optimizer restarts");
  bounds->add_option("--budget", bounds_opt.budget,
                     "cost evaluations per restart");
  bounds->add_option("--ancilla-dim", bounds_opt.ancilla_dim,
                     "extension ancilla dimension (0 = rank^2)");
  bounds->add_option("--ensemble-size", bounds_opt.ensemble_size,
                     "formation ensemble size (0 = rank^2)");
  bounds->add_option("--unit", bounds_opt.unit, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  std::string bounds_out;
  bounds->add_option("--out", bounds_out, "report file (stdout if omitted)");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "sample seeded random states and batch-check inequalities");
  sweep->add_option("--dims", sweep_opt.dims, "subsystem dims, e.g. 2,2,2")
      ->required()
      ->delimiter(',');
  sweep->add_option("--count", sweep_opt.count, "number of sampled states")
      ->required();
  sweep->add_option("--seed", sweep_opt.seed, "RNG seed")->required();
  sweep->add_option("--family", sweep_opt.family,
                    "ssa|essa|triangle|weakmono|aux|all")
      ->check(CLI::IsMember({"ssa", "essa", "triangle", "weakmono", "aux",
                             "all"}));
  sweep->add_option("--unit", sweep_opt.unit, "nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}));
  std::string sweep_out;
  sweep->add_option("--out", sweep_out, "report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (check->parsed()) {
      if (!check_out.empty()) check_opt.out = check_out;
      return run_check(check_opt);
    }
    if (extremal->parsed()) {
      return run_extremal(ext_opt);
    }
    if (bounds->parsed()) {
      if (!bounds_out.empty()) bounds_opt.out = bounds_out;
      return run_bounds(bounds_opt);
    }
    if (sweep->parsed()) {
      if (!sweep_out.empty()) sweep_opt.out = sweep_out;
      return run_sweep(sweep_opt);
    }
  } catch (const entlab::SandwichViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const entlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
