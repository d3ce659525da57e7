#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "spheroconal/error.hpp"
#include "spheroconal/harmonics.hpp"
#include "spheroconal/ladder.hpp"
#include "spheroconal/lame.hpp"
#include "spheroconal/oracle.hpp"

namespace spheroconal::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kOracleTolerance = 1e-6;

std::string real(double value) {
  if (!std::isfinite(value)) return "null";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  std::string text(buffer);
  if (text.find_first_of(".eE") == std::string::npos) text += ".0";
  return text;
}

// nlohmann prints the shortest round-trip form; reals are written with 17 digits here.
void dump(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(key).dump() + ": ";
        dump(value, out, indent, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += pad;
        dump(j[i], out, indent, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += real(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string to_json_text(const Json& j) {
  std::string out;
  dump(j, out, 2, 0);
  out += "\n";
  return out;
}

bool is_scale_error(ErrorCode code) {
  return code == ErrorCode::OutOfRange || code == ErrorCode::InvalidOrdering ||
         code == ErrorCode::SphericalTop || code == ErrorCode::SymmetricTop;
}

Json config_json(const RunConfig& run, const AsymmetryConfig& config) {
  Json j;
  if (run.moments) {
    j["input"] = "moments";
    j["moments"] = *run.moments;
  } else {
    j["input"] = "e1";
  }
  j["e"] = {config.e1(), config.e2(), config.e3()};
  if (config.has_scale()) {
    j["Q"] = *config.q;
    j["P"] = *config.p;
  }
  j["k1sq"] = config.k1sq;
  j["k2sq"] = config.k2sq;
  j["lmax"] = run.lmax;
  if (run.ell) j["l"] = *run.ell;
  return j;
}

Json state_json(const StateId& id) {
  Json j;
  j["l"] = id.ell;
  j["label"] = id.label.name();
  j["speciesA"] = id.label.species_name(Side::first);
  j["speciesB"] = id.label.species_name(Side::second);
  j["n1"] = id.n1;
  j["n2"] = id.n2;
  return j;
}

std::string csv_state(const StateId& id) {
  std::ostringstream s;
  s << id.ell << "," << id.label.name() << "," << id.label.species_name(Side::first) << ","
    << id.label.species_name(Side::second) << "," << id.n1 << "," << id.n2;
  return s.str();
}

int emit(const RunConfig& run, const std::string& text, std::ostream& out, std::ostream& err) {
  if (run.out_path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(run.out_path);
  if (!file) {
    err << "cannot open output file " << run.out_path << "\n";
    return kBadParameters;
  }
  file << text;
  return kOk;
}

std::vector<int> requested_orders(const RunConfig& run) {
  if (run.ell) return {*run.ell};
  std::vector<int> orders;
  for (int l = 0; l <= run.lmax; ++l) orders.push_back(l);
  return orders;
}

// Coefficient vector of a decomposition over `basis`, in basis order.
Eigen::VectorXd coefficients_in(const std::vector<LadderTerm>& terms,
                                const std::vector<SpheroconalHarmonic>& basis) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& term : terms) {
    const auto it = std::find_if(basis.begin(), basis.end(),
                                 [&](const auto& s) { return s.id() == term.target; });
    if (it == basis.end()) throw std::logic_error("ladder target outside the oracle basis");
    v[it - basis.begin()] += term.coefficient;
  }
  return v;
}

double compare_fit(const GridField& field, const std::vector<SpheroconalHarmonic>& basis,
                   const std::vector<LadderTerm>& terms) {
  const BasisFit fit = fit_in_basis(field, basis);
  const Eigen::VectorXd expected = coefficients_in(terms, basis);
  const double scale = std::max(1.0, expected.cwiseAbs().maxCoeff());
  const double diff = (fit.coefficients - expected).cwiseAbs().maxCoeff() / scale;
  return std::max(diff, fit.residual);
}

OperatorKind fd_kind(LadderOperator op) {
  return static_cast<OperatorKind>(static_cast<int>(OperatorKind::Lx) + static_cast<int>(op));
}

double oracle_residual(LadderOperator op, const SpheroconalHarmonic& state,
                       const LadderDecomposition& decomposition, const AsymmetryConfig& config) {
  const GridField grid = make_grid(config);
  const GridField field = sample(grid, state);
  const Axis axis = axis_of(op);
  if (is_angular_momentum(op)) {
    const GridField image = fd_operator(fd_kind(op), field, config);
    return compare_fit(image, build_basis(state.ell, config), decomposition.terms);
  }
  std::vector<SpheroconalHarmonic> basis = build_basis(state.ell + 1, config);
  if (state.ell > 0) {
    const auto lower = build_basis(state.ell - 1, config);
    basis.insert(basis.end(), lower.begin(), lower.end());
  }
  const int index = static_cast<int>(axis);
  const GridField cosine = sample(grid, [state, config, index](double c1, double c2) {
    return direction(c1, c2, config.k1sq, config.k2sq)[index] * evaluate(state, c1, c2);
  });
  const double split = compare_fit(cosine, basis, decomposition.terms);
  const GridField gradient = fd_operator(fd_kind(op), field, config);
  const double bracket =
      compare_fit(gradient, basis, apply_angular_gradient(axis, state, config).terms);
  return std::max(split, bracket);
}

struct Check {
  std::string name;
  int ell = 0;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed() const { return value <= tolerance; }
};

double max_entry(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

std::vector<Check> invariant_checks(int ell, const AsymmetryConfig& config,
                                    const std::string& fault) {
  std::vector<Check> checks;
  const double l2 = static_cast<double>(ell) * (ell + 1);
  const auto basis = build_basis(ell, config);

  checks.push_back({"multiplet-size", ell,
                    std::abs(static_cast<double>(basis.size()) - (2.0 * ell + 1.0)), 0.0});

  double hsum = 0.0;
  double trace = 0.0;
  double ode = 0.0;
  for (const auto& s : basis) {
    hsum = std::max(hsum, std::abs(s.h1 + s.h2 - l2) / std::max(1.0, l2));
    trace += s.estar2;
    ode = std::max({ode, ode_residual(s.first), ode_residual(s.second)});
  }
  checks.push_back({"h-sum", ell, hsum, 1e-9});
  checks.push_back({"multiplet-trace", ell, std::abs(trace) / std::max(1.0, l2), 1e-9});
  checks.push_back({"ode-residual", ell, ode, 1e-8});

  std::array<std::vector<LadderDecomposition>, 3> columns;
  double remainder = 0.0;
  for (const Axis axis : kAxes) {
    for (const auto& s : basis) {
      auto d = apply_angular_momentum(axis, s, config);
      remainder = std::max(remainder, d.division_remainder);
      columns[static_cast<std::size_t>(axis)].push_back(std::move(d));
    }
  }
  checks.push_back({"divisibility", ell, remainder, kDivisibilityTolerance});

  if (fault == "sign-flip") {
    for (auto& d : columns[0]) {
      if (!d.terms.empty()) {
        d.terms.front().coefficient = -d.terms.front().coefficient;
        break;
      }
    }
  }
  const Eigen::MatrixXcd x = angular_momentum_matrix(columns[0], basis);
  const Eigen::MatrixXcd y = angular_momentum_matrix(columns[1], basis);
  const Eigen::MatrixXcd z = angular_momentum_matrix(columns[2], basis);
  const std::complex<double> i(0.0, 1.0);
  const double commutator = std::max({max_entry(x * y - y * x - i * z), max_entry(y * z - z * y - i * x),
                                      max_entry(z * x - x * z - i * y)});
  checks.push_back({"commutator", ell, commutator, 1e-8});
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double closure = max_entry(x * x + y * y + z * z - l2 * Eigen::MatrixXcd::Identity(n, n));
  checks.push_back({"l2-closure", ell, closure, 1e-8});
  return checks;
}

}  // namespace

AsymmetryConfig resolve_config(const RunConfig& run) {
  if (run.e1.has_value() == run.moments.has_value()) {
    throw Error(ErrorCode::OutOfRange, "exactly one of --e1 and --moments is required");
  }
  if (run.moments) {
    const auto& m = *run.moments;
    if (m.size() != 3) throw Error(ErrorCode::OutOfRange, "--moments needs three values a,b,c");
    return from_moments(m[0], m[1], m[2]);
  }
  return from_e1(*run.e1);
}

int cmd_spectrum(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const AsymmetryConfig config = resolve_config(run);
  const bool with_total = config.has_scale();
  Json states = Json::array();
  std::ostringstream csv;
  csv << "l,label,speciesA,speciesB,n1,n2,h1,h2,estar2" << (with_total ? ",E_total" : "") << "\n";
  for (const int ell : requested_orders(run)) {
    for (const auto& s : build_basis(ell, config)) {
      Json j = state_json(s.id());
      j["h1"] = s.h1;
      j["h2"] = s.h2;
      j["estar2"] = s.estar2;
      csv << csv_state(s.id()) << "," << real(s.h1) << "," << real(s.h2) << "," << real(s.estar2);
      if (with_total) {
        const double e = total_energy(s, config);
        j["E_total"] = e;
        csv << "," << real(e);
      }
      csv << "\n";
      states.push_back(std::move(j));
    }
  }
  if (run.format == Format::csv) return emit(run, csv.str(), out, err);
  Json doc;
  doc["config"] = config_json(run, config);
  doc["states"] = std::move(states);
  doc["ladders"] = Json::array();
  doc["version"] = "1";
  return emit(run, to_json_text(doc), out, err);
}

int cmd_ladder(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const AsymmetryConfig config = resolve_config(run);
  if (run.operators.empty()) {
    err << "ladder: --op is required (Lx, Ly, Lz, Px, Py, Pz)\n";
    return kBadParameters;
  }
  std::vector<LadderOperator> ops;
  for (const auto& name : run.operators) {
    const auto op = parse_operator(name);
    if (!op) {
      err << "ladder: unknown operator '" << name << "' (expected Lx, Ly, Lz, Px, Py, Pz)\n";
      return kBadParameters;
    }
    ops.push_back(*op);
  }

  Json ladders = Json::array();
  std::ostringstream csv;
  csv << "op,l,label,speciesA,speciesB,n1,n2,target_l,target_label,target_speciesA,"
         "target_speciesB,target_n1,target_n2,coefficient"
      << (run.verify ? ",oracle_residual" : "") << "\n";
  double worst = 0.0;
  for (const auto op : ops) {
    for (const int ell : requested_orders(run)) {
      for (const auto& s : build_basis(ell, config)) {
        const LadderDecomposition d = is_angular_momentum(op)
                                          ? apply_angular_momentum(axis_of(op), s, config)
                                          : apply_linear_momentum(axis_of(op), s, config);
        Json record;
        record["op"] = std::string(to_string(op));
        record["source"] = state_json(d.source);
        record["convention"] = d.convention;
        Json terms = Json::array();
        for (const auto& t : d.terms) {
          Json term;
          term["target"] = state_json(t.target);
          term["coefficient"] = t.coefficient;
          terms.push_back(std::move(term));
        }
        record["terms"] = std::move(terms);
        std::string residual_column;
        if (run.verify) {
          const double residual = oracle_residual(op, s, d, config);
          worst = std::max(worst, residual);
          record["oracle_residual"] = residual;
          residual_column = "," + real(residual);
        }
        const std::string head = std::string(to_string(op)) + "," + csv_state(d.source) + ",";
        if (d.terms.empty()) csv << head << ",,,,,," << real(0.0) << residual_column << "\n";
        for (const auto& t : d.terms) {
          csv << head << csv_state(t.target) << "," << real(t.coefficient) << residual_column << "\n";
        }
        ladders.push_back(std::move(record));
      }
    }
  }
  int code = kOk;
  if (run.format == Format::csv) {
    code = emit(run, csv.str(), out, err);
  } else {
    Json doc;
    doc["config"] = config_json(run, config);
    doc["states"] = Json::array();
    doc["ladders"] = std::move(ladders);
    doc["version"] = "1";
    code = emit(run, to_json_text(doc), out, err);
  }
  if (code != kOk) return code;
  if (run.verify && worst > kOracleTolerance) {
    err << "ladder: oracle residual " << worst << " exceeds " << kOracleTolerance << "\n";
    return kOracleMismatch;
  }
  return kOk;
}

int cmd_verify(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const AsymmetryConfig config = resolve_config(run);
  std::vector<Check> checks;
  for (const int ell : requested_orders(run)) {
    try {
      auto more = invariant_checks(ell, config, run.inject_fault);
      checks.insert(checks.end(), more.begin(), more.end());
    } catch (const Error& e) {
      checks.push_back({std::string(to_string(e.code())), ell, INFINITY, 0.0});
    }
  }
  bool passed = true;
  Json list = Json::array();
  std::ostringstream csv;
  csv << "name,l,value,tolerance,passed\n";
  for (const auto& c : checks) {
    Json j;
    j["name"] = c.name;
    j["l"] = c.ell;
    j["value"] = c.value;
    j["tolerance"] = c.tolerance;
    j["passed"] = c.passed();
    list.push_back(std::move(j));
    csv << c.name << "," << c.ell << "," << real(c.value) << "," << real(c.tolerance) << ","
        << (c.passed() ? "true" : "false") << "\n";
    if (!c.passed()) {
      passed = false;
      err << "FAIL " << c.name << " l=" << c.ell << " value=" << c.value << " tolerance=" << c.tolerance
          << "\n";
    }
  }
  int code = kOk;
  if (run.format == Format::csv) {
    code = emit(run, csv.str(), out, err);
  } else {
    Json doc;
    doc["config"] = config_json(run, config);
    doc["checks"] = std::move(list);
    doc["passed"] = passed;
    doc["version"] = "1";
    code = emit(run, to_json_text(doc), out, err);
  }
  if (code != kOk) return code;
  return passed ? kOk : kInvariantFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spheroconal harmonics, asymmetric-rotor spectra and ladder operators"};
  app.require_subcommand(1);

  RunConfig config;
  double e1 = 0.0;
  std::vector<double> moments;
  int ell = 0;
  std::string format = "json";

  int lmax = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--e1", e1, "largest asymmetry parameter, in (1/2, 1)");
    sub->add_option("--moments", moments, "principal moments of inertia a,b,c")
        ->delimiter(',')
        ->expected(3);
    sub->add_option("--lmax", lmax, "largest order l (default 4, verify: 6)");
    sub->add_option("--l", ell, "single order l");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", config.out_path, "output file (default stdout)");
  };

  CLI::App* spectrum = app.add_subcommand("spectrum", "Lamé eigenvalues and energies for l <= lmax");
  CLI::App* ladder = app.add_subcommand("ladder", "operator actions expanded in target harmonics");
  CLI::App* verify = app.add_subcommand("verify", "invariant suite for l <= lmax");
  for (CLI::App* sub : {spectrum, ladder, verify}) add_common(sub);
  ladder->add_option("--op", config.operators, "Lx, Ly, Lz, Px, Py or Pz (repeatable)")->delimiter(',');
  ladder->add_flag("--verify", config.verify, "check every record against the finite-difference oracle");
  verify->add_option("--inject-fault", config.inject_fault, "test mode: sign-flip")
      ->check(CLI::IsMember({"sign-flip"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadParameters;
  }

  CLI::App* active = app.get_subcommands().front();
  if (active->count("--e1") > 0) config.e1 = e1;
  if (active->count("--moments") > 0) config.moments = moments;
  if (active->count("--l") > 0) config.ell = ell;
  config.lmax = active->count("--lmax") > 0 ? lmax : (active == verify ? 6 : 4);
  if (active == verify && !config.e1 && !config.moments) config.e1 = 0.9;
  config.format = format == "csv" ? Format::csv : Format::json;
  if (config.lmax < 0 || (config.ell && *config.ell < 0)) {
    err << "l and lmax must be non-negative\n";
    return kBadParameters;
  }

  try {
    if (active == spectrum) return cmd_spectrum(config, out, err);
    if (active == ladder) return cmd_ladder(config, out, err);
    return cmd_verify(config, out, err);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return is_scale_error(e.code()) ? kBadParameters : kInvariantFailure;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kInvariantFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("spheroconal");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace spheroconal::cli
