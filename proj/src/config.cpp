#include "radeuler/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "radeuler/errors.hpp"

namespace radeuler {

using nlohmann::json;

namespace {

// Walks one JSON object, collecting problems instead of throwing, and remembers which
// keys were consumed so the rest can be reported as unknown.
class Reader {
 public:
  Reader(const json& node, std::string path, std::vector<std::string>& errors)
      : node_(node), path_(std::move(path)), errors_(errors) {
    if (!node_.is_object()) {
      errors_.push_back(path_ + ": expected an object");
      ok_ = false;
    }
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return ok_ && node_.contains(key) && !node_.at(key).is_null();
  }

  template <class T>
  void read(const std::string& key, T& out, bool required = false) {
    if (!has(key)) {
      if (required) errors_.push_back(where(key) + ": required key is missing");
      return;
    }
    const json& v = node_.at(key);
    if (!type_ok<T>(v)) {
      errors_.push_back(where(key) + ": expected " + type_name<T>() + ", got " + v.type_name());
      return;
    }
    out = v.get<T>();
  }

  template <class T>
  void read_optional(const std::string& key, std::optional<T>& out) {
    if (!has(key)) return;
    T value{};
    read(key, value);
    out = value;
  }

  // Numeric value or one of the listed words; a word leaves `out` empty.
  void read_number_or_word(const std::string& key, std::optional<double>& out, const std::string& word) {
    if (!has(key)) return;
    const json& v = node_.at(key);
    if (v.is_number()) {
      out = v.get<double>();
    } else if (v.is_string() && v.get<std::string>() == word) {
      out.reset();
    } else {
      errors_.push_back(where(key) + ": expected a number or \"" + word + "\"");
    }
  }

  const json* child(const std::string& key) {
    if (!has(key)) return nullptr;
    return &node_.at(key);
  }

  std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  void finish() {
    if (!ok_) return;
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) errors_.push_back(where(it.key()) + ": unknown key");
    }
  }

 private:
  template <class T>
  static bool type_ok(const json& v) {
    if constexpr (std::is_same_v<T, bool>) {
      return v.is_boolean();
    } else if constexpr (std::is_same_v<T, std::string>) {
      return v.is_string();
    } else if constexpr (std::is_integral_v<T>) {
      return v.is_number_integer() && (std::is_signed_v<T> || v.get<long long>() >= 0);
    } else if constexpr (std::is_floating_point_v<T>) {
      return v.is_number();
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
    } else if constexpr (std::is_same_v<T, std::vector<std::string>>) {
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); });
    } else {
      return false;
    }
  }

  template <class T>
  static std::string type_name() {
    if constexpr (std::is_same_v<T, bool>) return "a boolean";
    if constexpr (std::is_same_v<T, std::string>) return "a string";
    if constexpr (std::is_integral_v<T> && std::is_unsigned_v<T>) return "a nonnegative integer";
    if constexpr (std::is_integral_v<T>) return "an integer";
    if constexpr (std::is_floating_point_v<T>) return "a number";
    if constexpr (std::is_same_v<T, std::vector<double>>) return "an array of numbers";
    if constexpr (std::is_same_v<T, std::vector<std::string>>) return "an array of strings";
    return "a value";
  }

  const json& node_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
  bool ok_ = true;
};

void read_rule(Reader& parent, const std::string& key, PowerRule& rule, std::vector<std::string>& errors) {
  if (const json* node = parent.child(key)) {
    Reader r(*node, parent.where(key), errors);
    r.read("coef", rule.coef);
    r.read("power", rule.power);
    r.finish();
  }
}

template <class F>
void collect(std::vector<std::string>& errors, F&& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    errors.insert(errors.end(), e.messages().begin(), e.messages().end());
  } catch (const Error& e) {
    errors.emplace_back(e.what());
  }
}

const std::set<std::string> kFormats{"json", "csv", "snapshots", "plots"};

}  // namespace

bool OutputBlock::has(const std::string& f) const {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

GasModel RunConfig::gas_model() const {
  if (model.kappa) return GasModel(model.gamma, *model.kappa, 0.0, model.n);
  return GasModel::normalized(model.gamma, 0.0, model.n);
}

ScalingPlan RunConfig::scaling_plan() const {
  const Exponent k1 = plan.k1 ? Exponent::of(*plan.k1) : Exponent::canonical();
  const Exponent k2 = plan.k2 ? Exponent::of(*plan.k2) : Exponent::canonical();
  return ScalingPlan(plan.ladder, k1, k2, plan.a_rule, plan.b_rule, plan.budget, gas_model());
}

SolverConfig RunConfig::solver_config() const {
  SolverConfig c;
  c.N = solver.cells.value_or(c.N);
  c.cfl = solver.cfl;
  c.t_final = solver.t_final;
  c.max_dt = solver.max_dt;
  c.newton_tol = solver.newton_tol;
  c.newton_max_iter = solver.newton_max_iter;
  c.positivity_floor_report = solver.positivity_floor_report;
  return c;
}

ResolutionRule RunConfig::resolution() const {
  return {solver.cells_per_viscous_length, solver.min_cells, solver.max_cells};
}

std::vector<TestFunction> RunConfig::tests() const {
  std::vector<TestFunction> out;
  for (const auto& t : diagnostics.tests) {
    if (t.shape == "bump") {
      out.push_back(TestFunction::bump(t.t0, t.t1, t.r0, t.r1, t.amplitude));
    } else if (t.shape == "cutoff") {
      out.push_back(TestFunction::initial_cutoff(t.t0, t.t1, t.r0, t.r1, t.amplitude));
    } else if (t.shape == "centered") {
      out.push_back(TestFunction::centered(t.t0, t.t1, t.r1, t.amplitude));
    } else {
      throw ConfigError("diagnostics.tests: shape '" + t.shape + "' is not one of bump, cutoff, centered");
    }
  }
  if (out.empty()) out = default_test_catalog(solver.t_final, diagnostics.K);
  return out;
}

DiagnosticsSettings RunConfig::diagnostics_settings() const {
  DiagnosticsSettings s;
  s.K = diagnostics.K;
  s.a1 = diagnostics.a1;
  s.rho_tilde = diagnostics.rho_tilde;
  s.maxprinciple_C = diagnostics.maxprinciple_C;
  s.energy_monotone_tol = diagnostics.energy_monotone_tol;
  s.triangle_tol = diagnostics.triangle_tol;
  s.pairs = diagnostics.pairs;
  s.tests = tests();
  return s;
}

SweepConfig RunConfig::sweep_config() const {
  return SweepConfig{scaling_plan(), profile, gas_model(), solver_config(), resolution(), solver.samples,
                     diagnostics.K, 0};
}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<std::string> errors;
  RunConfig c;
  c.base_dir = base_dir;
  Reader top(root, "", errors);

  if (const json* node = top.child("model")) {
    Reader r(*node, "model", errors);
    r.read("gamma", c.model.gamma, true);
    r.read_number_or_word("kappa", c.model.kappa, "normalized");
    r.read("n", c.model.n, true);
    r.finish();
  } else {
    errors.push_back("model: required block is missing");
  }

  if (const json* node = top.child("plan")) {
    Reader r(*node, "plan", errors);
    r.read("ladder", c.plan.ladder, true);
    r.read_number_or_word("k1", c.plan.k1, "canonical");
    r.read_number_or_word("k2", c.plan.k2, "canonical");
    read_rule(r, "a_rule", c.plan.a_rule, errors);
    read_rule(r, "b_rule", c.plan.b_rule, errors);
    r.read("budget", c.plan.budget);
    r.finish();
  } else {
    errors.push_back("plan: required block is missing");
  }

  if (const json* node = top.child("profile")) {
    Reader r(*node, "profile", errors);
    std::string kind;
    r.read("kind", kind, true);
    if (!kind.empty()) collect(errors, [&] { c.profile.kind = profile_kind_from_string(kind); });
    r.read("amplitude", c.profile.amplitude);
    r.read("center", c.profile.center);
    r.read("width", c.profile.width);
    r.read("velocity_amplitude", c.profile.velocity_amplitude);
    r.read("velocity_center", c.profile.velocity_center);
    r.read("velocity_width", c.profile.velocity_width);
    r.read("floor", c.profile.floor);
    r.read("table_path", c.profile.table_path);
    r.finish();
  } else {
    errors.push_back("profile: required block is missing");
  }

  if (const json* node = top.child("solver")) {
    Reader r(*node, "solver", errors);
    r.read("cfl", c.solver.cfl);
    r.read("t_final", c.solver.t_final);
    r.read("max_dt", c.solver.max_dt);
    r.read("newton_tol", c.solver.newton_tol);
    r.read("newton_max_iter", c.solver.newton_max_iter);
    r.read("positivity_floor_report", c.solver.positivity_floor_report);
    r.read("samples", c.solver.samples);
    r.read("cells_per_viscous_length", c.solver.cells_per_viscous_length);
    r.read("min_cells", c.solver.min_cells);
    r.read("max_cells", c.solver.max_cells);
    r.read_optional("cells", c.solver.cells);
    r.finish();
  }

  if (const json* node = top.child("diagnostics")) {
    Reader r(*node, "diagnostics", errors);
    std::vector<double> window;
    r.read("window", window);
    if (!window.empty()) {
      if (window.size() != 2) {
        errors.push_back("diagnostics.window: expected [r_lo, r_hi]");
      } else {
        c.diagnostics.K = {window[0], window[1]};
      }
    }
    r.read("a1", c.diagnostics.a1);
    r.read("rho_tilde", c.diagnostics.rho_tilde);
    r.read("maxprinciple_C", c.diagnostics.maxprinciple_C);
    r.read("energy_monotone_tol", c.diagnostics.energy_monotone_tol);
    r.read("energy_residual_tol", c.diagnostics.energy_residual_tol);
    r.read("triangle_tol", c.diagnostics.triangle_tol);
    r.read("compat_tol", c.diagnostics.compat_tol);
    r.read("pairs", c.diagnostics.pairs);
    r.read("cauchy_p", c.diagnostics.cauchy_p);
    r.read("cauchy_q", c.diagnostics.cauchy_q);
    r.read("entropy_psi", c.diagnostics.entropy_psi);
    r.read("entropy_rel_tol", c.diagnostics.entropy_rel_tol);
    r.read("uniformity_band", c.diagnostics.uniformity_band);
    if (const json* tests = r.child("tests")) {
      if (!tests->is_array()) {
        errors.push_back("diagnostics.tests: expected an array");
      } else {
        for (std::size_t j = 0; j < tests->size(); ++j) {
          Reader t((*tests)[j], "diagnostics.tests[" + std::to_string(j) + "]", errors);
          TestSpec spec;
          std::vector<double> tr, rr;
          t.read("shape", spec.shape, true);
          t.read("t", tr, true);
          t.read("r", rr, true);
          t.read("amplitude", spec.amplitude);
          t.finish();
          if (tr.size() == 2) {
            spec.t0 = tr[0];
            spec.t1 = tr[1];
          } else if (!tr.empty()) {
            errors.push_back("diagnostics.tests[" + std::to_string(j) + "].t: expected [t0, t1]");
          }
          if (rr.size() == 2) {
            spec.r0 = rr[0];
            spec.r1 = rr[1];
          } else if (!rr.empty()) {
            errors.push_back("diagnostics.tests[" + std::to_string(j) + "].r: expected [r0, r1]");
          }
          c.diagnostics.tests.push_back(spec);
        }
      }
    }
    r.finish();
  }

  if (const json* node = top.child("run")) {
    Reader r(*node, "run", errors);
    r.read_optional("eps", c.run.eps);
    r.finish();
  }

  if (const json* node = top.child("output")) {
    Reader r(*node, "output", errors);
    r.read("directory", c.output.directory);
    r.read("formats", c.output.formats);
    r.finish();
    for (const auto& f : c.output.formats) {
      if (!kFormats.count(f)) errors.push_back("output.formats: '" + f + "' is not one of json, csv, snapshots, plots");
    }
  }
  top.finish();
  // Cross-field checks still run after structural errors so that one pass reports everything;
  // they are skipped only where a required value is missing.
  const bool model_ok = c.model.gamma > 0.0 && c.model.n > 0;

  // Cross-field validation, delegated to each module's own checks.
  if (model_ok) collect(errors, [&] { (void)c.gas_model(); });
  if (model_ok && !c.plan.ladder.empty()) {
    collect(errors, [&] { (void)c.scaling_plan(); });
    collect(errors, [&] { validate_exponents(c.diagnostics.cauchy_p, c.diagnostics.cauchy_q, c.gas_model()); });
  }
  collect(errors, [&] { validate(c.solver_config()); });
  if (c.solver.samples < 2) errors.push_back("solver.samples must be at least 2");
  if (c.solver.min_cells > c.solver.max_cells) errors.push_back("solver.min_cells exceeds solver.max_cells");
  if (!(c.solver.cells_per_viscous_length > 0.0)) errors.push_back("solver.cells_per_viscous_length must be positive");
  if (!(c.diagnostics.K.r_lo < c.diagnostics.K.r_hi)) errors.push_back("diagnostics.window must satisfy r_lo < r_hi");
  if (!(c.diagnostics.a1 <= 1.0)) errors.push_back("diagnostics.a1 must lie in (a, 1]");
  if (!(c.diagnostics.entropy_rel_tol > 0.0)) errors.push_back("diagnostics.entropy_rel_tol must be positive");
  if (!(c.diagnostics.uniformity_band >= 1.0)) errors.push_back("diagnostics.uniformity_band must be at least 1");
  if (c.diagnostics.maxprinciple_C < 0.0) errors.push_back("diagnostics.maxprinciple_C must be nonnegative");
  for (const auto& name : c.diagnostics.pairs) {
    if (name == "mechanical_energy" || name == "shifted_half_s_abs_s") continue;
    collect(errors, [&] { (void)GeneratingFunction::by_name(name); });
  }
  for (const auto& name : c.diagnostics.entropy_psi) {
    collect(errors, [&] {
      const GeneratingFunction psi = GeneratingFunction::by_name(name);
      if (!psi.convex || !psi.subquadratic) {
        throw ConfigError("diagnostics.entropy_psi: '" + name + "' is not convex with subquadratic growth");
      }
    });
  }
  if (model_ok) collect(errors, [&] { (void)c.tests(); });
  if (c.run.eps && !(*c.run.eps > 0.0 && *c.run.eps <= 1.0)) errors.push_back("run.eps must lie in (0, 1]");
  if (c.profile.kind == ProfileKind::table) {
    if (c.profile.table_path.empty()) {
      errors.push_back("profile.table_path is required for kind 'table'");
    } else {
      std::filesystem::path p(c.profile.table_path);
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      ProfileSpec loaded = c.profile;
      loaded.table_path = p.string();
      collect(errors, [&] { load_profile_table(loaded); });
      c.profile.table = loaded.table;
    }
  }
  if (!(c.profile.width > 0.0 && c.profile.velocity_width > 0.0)) {
    errors.push_back("profile.width and profile.velocity_width must be positive");
  }
  if (c.profile.amplitude < 0.0) errors.push_back("profile.amplitude must be nonnegative");
  if (!errors.empty()) throw ConfigError(errors);
  return c;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::filesystem::path p(path);
  const std::string base = p.has_parent_path() ? p.parent_path().string() : ".";
  return parse_config_text(buf.str(), base);
}

std::string emit_config(const RunConfig& c) {
  json j;
  j["model"] = {{"gamma", c.model.gamma}, {"n", c.model.n}};
  j["model"]["kappa"] = c.model.kappa ? json(*c.model.kappa) : json("normalized");
  j["plan"] = {{"ladder", c.plan.ladder},
               {"a_rule", {{"coef", c.plan.a_rule.coef}, {"power", c.plan.a_rule.power}}},
               {"b_rule", {{"coef", c.plan.b_rule.coef}, {"power", c.plan.b_rule.power}}},
               {"budget", c.plan.budget}};
  j["plan"]["k1"] = c.plan.k1 ? json(*c.plan.k1) : json("canonical");
  j["plan"]["k2"] = c.plan.k2 ? json(*c.plan.k2) : json("canonical");
  j["profile"] = {{"kind", to_string(c.profile.kind)},
                  {"amplitude", c.profile.amplitude},
                  {"center", c.profile.center},
                  {"width", c.profile.width},
                  {"velocity_amplitude", c.profile.velocity_amplitude},
                  {"velocity_center", c.profile.velocity_center},
                  {"velocity_width", c.profile.velocity_width},
                  {"floor", c.profile.floor},
                  {"table_path", c.profile.table_path}};
  j["solver"] = {{"cfl", c.solver.cfl},
                 {"t_final", c.solver.t_final},
                 {"max_dt", c.solver.max_dt},
                 {"newton_tol", c.solver.newton_tol},
                 {"newton_max_iter", c.solver.newton_max_iter},
                 {"positivity_floor_report", c.solver.positivity_floor_report},
                 {"samples", c.solver.samples},
                 {"cells_per_viscous_length", c.solver.cells_per_viscous_length},
                 {"min_cells", c.solver.min_cells},
                 {"max_cells", c.solver.max_cells}};
  j["solver"]["cells"] = c.solver.cells ? json(*c.solver.cells) : json(nullptr);
  json tests = json::array();
  for (const auto& t : c.diagnostics.tests) {
    tests.push_back({{"shape", t.shape}, {"t", {t.t0, t.t1}}, {"r", {t.r0, t.r1}}, {"amplitude", t.amplitude}});
  }
  j["diagnostics"] = {{"window", {c.diagnostics.K.r_lo, c.diagnostics.K.r_hi}},
                      {"a1", c.diagnostics.a1},
                      {"rho_tilde", c.diagnostics.rho_tilde},
                      {"maxprinciple_C", c.diagnostics.maxprinciple_C},
                      {"energy_monotone_tol", c.diagnostics.energy_monotone_tol},
                      {"energy_residual_tol", c.diagnostics.energy_residual_tol},
                      {"triangle_tol", c.diagnostics.triangle_tol},
                      {"compat_tol", c.diagnostics.compat_tol},
                      {"pairs", c.diagnostics.pairs},
                      {"tests", tests},
                      {"cauchy_p", c.diagnostics.cauchy_p},
                      {"cauchy_q", c.diagnostics.cauchy_q},
                      {"entropy_psi", c.diagnostics.entropy_psi},
                      {"entropy_rel_tol", c.diagnostics.entropy_rel_tol},
                      {"uniformity_band", c.diagnostics.uniformity_band}};
  j["run"] = {{"eps", c.run.eps ? json(*c.run.eps) : json(nullptr)}};
  j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
  return j.dump(2) + "\n";
}

}  // namespace radeuler
