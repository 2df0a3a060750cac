#include "qhg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qhg/barnes.hpp"
#include "qhg/doublesine.hpp"
#include "qhg/euler.hpp"
#include "qhg/parallel.hpp"
#include "qhg/qdiff.hpp"
#include "qhg/qgamma.hpp"
#include "qhg/qseries.hpp"
#include "qhg/verify.hpp"

namespace qhg {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kParams = {"z-re",  "z-im",   "a-re",   "a-im",   "b-re",
                                          "b-im",  "c-re",   "c-im",   "x-re",   "x-im",
                                          "omega", "omega1", "omega2", "tau",    "q",
                                          "guard", "delta"};

const std::vector<std::string> kTargets = {"s2",          "qgamma",      "phi-series",
                                           "phi-basic",   "capital-phi", "capital-psi",
                                           "watson",      "euler-jackson"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

// Numbers that JSON cannot carry are emitted as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

class Params {
 public:
  explicit Params(const std::map<std::string, double>& m) : m_(m) {}

  double get(const std::string& name) const {
    const auto it = m_.find(name);
    if (it == m_.end()) fail(ErrorKind::domain, "missing required parameter --" + name);
    return it->second;
  }
  double get(const std::string& name, double fallback) const {
    const auto it = m_.find(name);
    return it == m_.end() ? fallback : it->second;
  }
  bool has(const std::string& name) const { return m_.count(name) != 0; }
  Complex complex(const std::string& base) const {
    return {get(base + "-re"), get(base + "-im", 0.0)};
  }
  HGParams hg() const { return {complex("a"), complex("b"), complex("c")}; }

  QModulus modulus() const {
    const int given = has("omega") + has("tau") + has("q");
    if (given != 1) fail(ErrorKind::domain, "give exactly one of --omega, --tau, --q");
    if (has("omega")) return QModulus::unit(get("omega"), get("guard", QModulus::kDefaultGuard));
    if (has("tau")) return QModulus::classical(get("tau"));
    return QModulus::classical_from_q(get("q"));
  }
  QModulus unit_modulus(const std::string& target) const {
    const QModulus q = modulus();
    if (!q.is_unit()) fail(ErrorKind::domain, target + " needs the unit regime (--omega)");
    return q;
  }
  QModulus classical_modulus(const std::string& target) const {
    const QModulus q = modulus();
    if (q.is_unit()) fail(ErrorKind::domain, target + " needs 0 < q < 1 (--q or --tau)");
    return q;
  }

 private:
  const std::map<std::string, double>& m_;
};

struct Evaluation {
  Json record;
  bool accuracy_failed = false;
};

void put_value(Json& r, Complex v) {
  r["value_re"] = number(v.real());
  r["value_im"] = number(v.imag());
}

Evaluation evaluate(const std::string& target, const std::map<std::string, double>& inputs,
                    double tol, bool with_residual) {
  const Params p(inputs);
  Evaluation ev;
  Json& r = ev.record;
  r["target"] = target;
  for (const auto& [k, v] : inputs) r[k] = v;
  Json warnings = Json::array();
  QuadratureConfig cfg;
  cfg.rel_tol = tol;

  if (target == "s2") {
    const auto w = OmegaPair::make(p.get("omega1", 1.0), p.get("omega2"));
    const S2Value s = s2(p.complex("z"), w);
    put_value(r, s.value);
    r["log_re"] = number(s.log_value.real());
    r["log_im"] = number(s.log_value.imag());
    r["status"] = to_string(s.status);
    r["error_estimate"] = 0.0;
  } else if (target == "qgamma") {
    const S2Value g = gamma_tilde(p.complex("z"), p.modulus());
    put_value(r, g.value);
    r["log_re"] = number(g.log_value.real());
    r["log_im"] = number(g.log_value.imag());
    r["status"] = to_string(g.status);
    r["error_estimate"] = 0.0;
  } else if (target == "phi-series" || target == "phi-basic") {
    const SeriesResult s = target == "phi-series"
                               ? hypergeometric_f(p.hg(), p.complex("z"))
                               : basic_phi(p.hg(), p.classical_modulus(target), p.complex("z"));
    put_value(r, s.value);
    r["error_estimate"] = 0.0;
    r["terms"] = s.terms;
    if (!s.converged) {
      warnings.push_back("series truncated at max_terms before the tail criterion was met");
      ev.accuracy_failed = true;
    }
  } else if (target == "capital-phi") {
    const QModulus q = p.unit_modulus(target);
    const HGParams hp = p.hg();
    const auto prob = check_conditions_B(hp, q, p.get("delta", 0.0));
    const Complex z = p.complex("z");
    const Complex ell = log_neg(z, prob.sector);
    std::vector<Complex> ells = {ell};
    if (with_residual) {
      ells.push_back(ell + q.log_q());
      ells.push_back(ell + 2.0 * q.log_q());
    }
    const auto v = capital_phi_log_variable(prob, ells, cfg);
    put_value(r, v[0].value);
    r["error_estimate"] = v[0].error_estimate;
    r["separation"] = to_string(prob.clause);
    r["contour_straight"] = v[0].contour_used.is_straight();
    if (with_residual)
      r["residual"] = lq_from_samples(v[0].value, v[1].value, v[2].value, hp, z, q).normalized;
  } else if (target == "capital-psi") {
    const QModulus q = p.unit_modulus(target);
    const HGParams hp = p.hg();
    const auto prob = check_conditions_E(hp, q);
    for (const auto& w : prob.warnings) warnings.push_back(w);
    const Complex x = p.complex("x");
    const auto v0 = capital_psi(prob, x, cfg);
    put_value(r, v0.value);
    r["error_estimate"] = v0.error_estimate;
    if (with_residual) {
      const Complex g1 = capital_psi(prob, x + 1.0, cfg).value;
      const Complex g2 = capital_psi(prob, x + 2.0, cfg).value;
      r["residual"] = lplus_from_samples(v0.value, g1, g2, hp, x, q).normalized;
    }
  } else if (target == "watson") {
    const auto v = watson_integral(p.hg(), p.classical_modulus(target), p.complex("z"), cfg,
                                   p.get("delta", 0.05));
    put_value(r, v.value);
    r["error_estimate"] = v.error_estimate;
  } else if (target == "euler-jackson") {
    put_value(r, euler_jackson_phi(p.hg(), p.classical_modulus(target), p.complex("z")));
    r["error_estimate"] = 0.0;
  } else {
    fail(ErrorKind::domain, "unknown target '" + target + "'");
  }
  r["warnings"] = warnings;
  return ev;
}

Json error_record(const std::string& target, const std::map<std::string, double>& inputs,
                  const Error& e) {
  Json r;
  r["target"] = target;
  for (const auto& [k, v] : inputs) r[k] = v;
  if (const auto* acc = dynamic_cast<const AccuracyError*>(&e)) {
    put_value(r, acc->best_value());
    r["error_estimate"] = number(acc->error_estimate());
  }
  r["error_kind"] = to_string(e.kind());
  r["error_message"] = e.what();
  return r;
}

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

Json meta(const RunSpec& spec, double tol) {
  Json m;
  m["command"] = spec.command == Command::eval ? "eval" : spec.command == Command::verify ? "verify" : "sweep";
  m["target"] = spec.target;
  m["seed"] = spec.seed;
  m["versions"] = {{"qhg", kVersion},
                   {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                         std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                   {"cli11", CLI11_VERSION}};
  if (spec.command == Command::verify)
    m["tolerances"] = {{"scale", spec.tol.value_or(1.0)}};
  else
    m["tolerances"] = {{"quadrature_rel_tol", tol}};
  if (!spec.reproducible) m["timestamp"] = timestamp();
  return m;
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_null()) return "";
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_array()) {
    std::vector<std::string> parts;
    for (const auto& e : v) parts.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    s = join(parts, "; ");
  } else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_report(const RunSpec& spec, const Json& records, double tol, std::ostream& out) {
  if (spec.format == OutputFormat::json) {
    Json doc;
    doc["records"] = records;
    doc["meta"] = meta(spec, tol);
    out << doc.dump(2) << "\n";
    return;
  }
  std::vector<std::string> cols;
  for (const auto& r : records)
    for (const auto& [k, v] : r.items())
      if (!contains(cols, k)) cols.push_back(k);
  out << join(cols, ",") << "\n";
  for (const auto& r : records) {
    std::vector<std::string> cells;
    for (const auto& c : cols) cells.push_back(r.contains(c) ? csv_cell(r[c]) : "");
    out << join(cells, ",") << "\n";
  }
}

int cmd_eval(const RunSpec& spec, double tol, std::ostream& out) {
  Json records = Json::array();
  int code = kExitOk;
  try {
    const Evaluation ev = evaluate(spec.target, spec.params, tol, false);
    records.push_back(ev.record);
    if (ev.accuracy_failed) code = kExitAccuracy;
  } catch (const Error& e) {
    records.push_back(error_record(spec.target, spec.params, e));
    code = exit_code_for(e.kind());
  }
  write_report(spec, records, tol, out);
  return code;
}

int cmd_sweep(const RunSpec& spec, double tol, std::ostream& out) {
  std::size_t total = spec.sweeps.empty() ? 0 : 1;
  for (const auto& ax : spec.sweeps) total *= static_cast<std::size_t>(ax.count);
  if (total == 0) fail(ErrorKind::domain, "sweep grid is empty (give --sweep NAME:START:STOP:N with N >= 1)");
  std::vector<std::map<std::string, double>> points(total, spec.params);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t a = spec.sweeps.size(); a-- > 0;) {
      const auto& ax = spec.sweeps[a];
      points[i][ax.name] = ax.at(static_cast<int>(rest % ax.count));
      rest /= ax.count;
    }
  }
  const bool residual = spec.target == "capital-phi" || spec.target == "capital-psi";
  std::vector<Json> recs(total);
  std::vector<int> codes(total, kExitOk);
  parallel_for(total, [&](std::size_t i) {
    try {
      const Evaluation ev = evaluate(spec.target, points[i], tol, residual);
      recs[i] = ev.record;
      if (ev.accuracy_failed) codes[i] = kExitAccuracy;
    } catch (const Error& e) {
      recs[i] = error_record(spec.target, points[i], e);
      codes[i] = exit_code_for(e.kind());
    }
  });
  Json records = Json::array();
  for (auto& r : recs) records.push_back(std::move(r));
  write_report(spec, records, tol, out);
  for (int c : codes)
    if (c == kExitOk) return kExitOk;
  return codes.front();
}

int cmd_verify(const RunSpec& spec, std::ostream& out) {
  VerifyOptions opts;
  opts.seed = spec.seed;
  opts.tolerance_scale = spec.tol.value_or(1.0);
  const auto results = run_suite(spec.target, opts);
  Json records = Json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    Json j;
    j["check_id"] = r.check_id;
    j["suite"] = r.suite;
    j["paper_anchor"] = r.paper_anchor;
    j["max_deviation"] = number(r.max_deviation);
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["detail"] = r.detail;
    if (!spec.reproducible) j["seconds"] = r.seconds;
    records.push_back(j);
    all_pass = all_pass && r.pass;
  }
  write_report(spec, records, 0.0, out);
  return all_pass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

SweepAxis SweepAxis::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4) fail(ErrorKind::domain, "--sweep expects NAME:START:STOP:N, got '" + text + "'");
  SweepAxis ax;
  ax.name = parts[0];
  if (!contains(kParams, ax.name)) fail(ErrorKind::domain, "--sweep: unknown parameter '" + ax.name + "'");
  try {
    std::size_t used = 0;
    ax.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    ax.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    ax.count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::logic_error&) {
    fail(ErrorKind::domain, "--sweep: malformed number in '" + text + "'");
  }
  if (ax.count < 0) fail(ErrorKind::domain, "--sweep: N must be >= 0");
  return ax;
}

double SweepAxis::at(int i) const {
  if (count <= 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

const std::vector<std::string>& parameter_names() { return kParams; }
const std::vector<std::string>& target_names() { return kTargets; }

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::domain:
    case ErrorKind::parameter:
    case ErrorKind::pole:
    case ErrorKind::sector:
    case ErrorKind::contour: return kExitInput;
    case ErrorKind::accuracy:
    case ErrorKind::divergence:
    case ErrorKind::inconclusive:
    case ErrorKind::probe: return kExitAccuracy;
  }
  return kExitAccuracy;
}

double default_tolerance() {
  if (const char* env = std::getenv("QHG_DEFAULT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
    fail(ErrorKind::domain, std::string("QHG_DEFAULT_TOL must be a positive number, got '") + env + "'");
  }
  return 1e-11;
}

std::optional<RunSpec> parse_run_spec(int argc, const char* const* argv, std::ostream& info) {
  CLI::App app{"Numerical q-hypergeometric functions with |q| = 1", "qhg"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  struct Slot {
    CLI::App* app;
    std::string target;
    std::map<std::string, double> values;
    std::vector<std::string> sweeps;
    std::string format = "json";
    std::string out;
    std::uint64_t seed = 42;
    double tol = 0.0;
    bool reproducible = false;
  };
  std::vector<Slot> slots(3);
  const char* names[3] = {"eval", "verify", "sweep"};
  const char* help[3] = {"evaluate one target at one point",
                         "run a verification suite (" /* filled below */,
                         "evaluate a target over a grid of one or two parameters"};
  const std::string suites = join(suite_names(), ", ");
  const std::string verify_help = std::string(help[1]) + suites + ")";
  for (int i = 0; i < 3; ++i) {
    Slot& s = slots[i];
    s.app = app.add_subcommand(names[i], i == 1 ? verify_help : help[i]);
    s.app->add_option("target", s.target, i == 1 ? "suite" : "target: " + join(kTargets, ", "))
        ->required();
    if (i != 1)
      for (const auto& p : kParams) s.app->add_option("--" + p, s.values[p]);
    if (i == 2)
      s.app->add_option("--sweep", s.sweeps, "NAME:START:STOP:N (at most two)")->expected(1)
          ->take_all();
    s.app->add_option("--format", s.format)->check(CLI::IsMember({"json", "csv"}));
    s.app->add_option("--out", s.out, "write the report to PATH");
    s.app->add_option("--seed", s.seed);
    s.app->add_option("--tol", s.tol,
                      i == 1 ? "scale factor applied to every check tolerance"
                             : "relative quadrature tolerance");
    s.app->add_flag("--reproducible", s.reproducible, "omit timestamps and timings");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, info, info);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, info, info);
    return std::nullopt;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, info, info);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    fail(ErrorKind::domain, e.what());
  }

  RunSpec spec;
  for (int i = 0; i < 3; ++i) {
    Slot& s = slots[i];
    if (!s.app->parsed()) continue;
    spec.command = static_cast<Command>(i);
    spec.target = s.target;
    if (i != 1)
      for (const auto& p : kParams)
        if (s.app->count("--" + p)) {
          const double v = s.values[p];
          if (!std::isfinite(v)) fail(ErrorKind::domain, "--" + p + " must be finite");
          spec.params[p] = v;
        }
    if (s.sweeps.size() > 2) fail(ErrorKind::domain, "at most two --sweep axes");
    for (const auto& text : s.sweeps) spec.sweeps.push_back(SweepAxis::parse(text));
    if (spec.sweeps.size() == 2 && spec.sweeps[0].name == spec.sweeps[1].name)
      fail(ErrorKind::domain, "the two --sweep axes must differ");
    spec.format = s.format == "csv" ? OutputFormat::csv : OutputFormat::json;
    spec.out_path = s.out;
    spec.seed = s.seed;
    if (s.app->count("--tol")) {
      if (!(s.tol > 0.0 && std::isfinite(s.tol))) fail(ErrorKind::domain, "--tol must be > 0");
      spec.tol = s.tol;
    }
    spec.reproducible = s.reproducible;
  }
  if (spec.command == Command::verify) {
    if (!is_suite(spec.target))
      fail(ErrorKind::domain, "unknown suite '" + spec.target + "' (expected one of " + suites + ")");
  } else if (!contains(kTargets, spec.target)) {
    fail(ErrorKind::domain, "unknown target '" + spec.target + "'");
  }
  return spec;
}

int run(const RunSpec& spec, std::ostream& out) {
  switch (spec.command) {
    case Command::eval: return cmd_eval(spec, spec.tol.value_or(default_tolerance()), out);
    case Command::sweep: return cmd_sweep(spec, spec.tol.value_or(default_tolerance()), out);
    case Command::verify: return cmd_verify(spec, out);
  }
  return kExitInput;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto spec = parse_run_spec(argc, argv, out);
    if (!spec) return kExitOk;
    if (spec->out_path.empty()) return run(*spec, out);
    std::ofstream file(spec->out_path);
    if (!file) fail(ErrorKind::domain, "cannot open --out path '" + spec->out_path + "'");
    const int code = run(*spec, file);
    file.flush();
    if (!file) fail(ErrorKind::domain, "writing '" + spec->out_path + "' failed");
    return code;
  } catch (const Error& e) {
    err << "qhg: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "qhg: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace qhg
