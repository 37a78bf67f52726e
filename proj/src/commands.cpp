#include "radeuler/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

#include "json.hpp"
#include "radeuler/continuation.hpp"
#include "radeuler/diagnostics.hpp"
#include "radeuler/entropy.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/grid_ops.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/output.hpp"

namespace radeuler {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kProxyLabel = "proxy";

class Verdicts {
 public:
  void add(const std::string& name, bool pass, const std::string& detail) {
    list_.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    summary_ += (pass ? "PASS " : "FAIL ") + name + ": " + detail + "\n";
    if (!pass) failures_.push_back(name);
  }
  ojson json() const { return list_; }
  CommandResult result(std::string manifest) const {
    return {failures_.empty(), summary_, failures_, std::move(manifest)};
  }

 private:
  ojson list_ = ojson::array();
  std::string summary_;
  std::vector<std::string> failures_;
};

std::string num(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

std::string text_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + row[j];
    out += "\n";
  }
  return out;
}

std::string out_root(const RunConfig& config, const CommandOptions& options) {
  return options.out_dir.value_or(config.output.directory);
}

std::string snapshot_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%04zu.txt", k);
  return buf;
}

ojson energy_json(const EnergyReport& e) {
  ojson j;
  j["times"] = e.times;
  j["relative_energy"] = e.energy;
  ojson d = ojson::array();
  for (const auto& x : e.dissipation) d.push_back(x);
  j["dissipation_accumulated"] = d;
  j["balance_residual"] = e.residual;
  j["E0"] = e.E0;
  j["max_balance_residual"] = e.max_residual;
  j["non_increasing"] = e.non_increasing;
  j["measure_above_1.5_rho_bar"] = e.measure_above;
  j["c1"] = e.c1;
  j["c2"] = e.c2;
  j["measure_bound"] = e.measure_bound;
  j["measure_pass"] = e.measure_pass;
  return j;
}

ojson report_json(const DiagnosticReport& r) {
  ojson j;
  j["eps"] = r.eps;
  j["rho_bar"] = r.rho_bar;
  j["energy"] = energy_json(r.energy);
  const MaxPrincipleReport& mp = r.maxprinciple;
  j["riemann_extrema"] = {{"times", mp.times},       {"max_w", mp.max_w},     {"min_z", mp.min_z},
                          {"max_u", mp.max_u},       {"R_sup", mp.R_sup},     {"source_integral", mp.integral},
                          {"bound_w", mp.bound_w},   {"bound_z", mp.bound_z}, {"bound_u", mp.bound_u},
                          {"C", mp.C},               {"pass", mp.pass}};
  const IntegrabilityReport& in = r.integrability;
  j["integrability"] = {{"window", {in.K.r_lo, in.K.r_hi}},
                        {"a1", in.a1},
                        {"sup_t_rho_gamma_r_l", in.rho_gamma_moments},
                        {"sup_t_rho_gamma_r_l_normalized", in.rho_gamma_moments_normalized},
                        {"sup_t_rho_gamma_annulus", in.rho_gamma_annulus},
                        {"rho3_tail_from_a", in.rho3_tail_a},
                        {"rho3_tail_from_K", in.rho3_tail_K},
                        {"rho3_tail_normalized", in.rho3_tail_normalized},
                        {"rho_gamma1_plus_delta_rho3_K", in.interior_pressure},
                        {"delta_rho3_K", in.interior_delta_rho3},
                        {"rho_u3_plus_rho_gamma_theta_K", in.interior_flux},
                        {"rho_u3_plus_rho_gamma_theta_K_normalized", in.interior_flux_normalized},
                        {"normalizations", {in.norm_rho_gamma, in.norm_rho3_tail, in.norm_interior_pressure, in.norm_interior_flux}}};
  ojson rows = ojson::array();
  for (const auto& p : r.entropy.rows) {
    rows.push_back({{"pair", p.pair},
                    {"test", p.test},
                    {"D", p.D},
                    {"bounded_L1", p.bounded_L1},
                    {"sup_phi", p.sup_phi},
                    {"vanishing", p.vanishing},
                    {"I2_L1", p.I2_L1},
                    {"I4_L1", p.I4_L1},
                    {"consistency", p.consistency},
                    {"triangle_pass", p.triangle_pass}});
  }
  ojson lq = ojson::object();
  for (const auto& [name, v] : r.entropy.lq_norms) lq[name] = v;
  j["entropy_dissipation"] = {{"label", kProxyLabel},
                              {"pairings", rows},
                              {"small_density_gradient", r.entropy.small_density_gradient},
                              {"eta_q_L_gamma_plus_1_norms", lq}};
  j["vacuum"] = {{"rho_tilde", r.vacuum.rho_tilde},
                 {"times", r.vacuum.times},
                 {"phi_integral", r.vacuum.phi_integral},
                 {"sup_phi_integral", r.vacuum.sup_phi_integral},
                 {"rho_r2_over_rho3", r.vacuum.rho_r2_over_rho3},
                 {"min_rho", r.vacuum.min_rho}};
  return j;
}

std::string records_csv(const Trajectory& traj) {
  std::vector<std::vector<double>> rows;
  for (const auto& r : traj.records) {
    rows.push_back({r.t, r.dissipation[0], r.dissipation[1], r.dissipation[2], r.maxprinciple_integral,
                    r.boundary_mass_flux, r.rho_min, r.rho_max, r.u_max, static_cast<double>(r.steps)});
  }
  return csv({"t", "diss_rho_r", "diss_u_r", "diss_u_over_r", "maxprinciple_integral", "boundary_mass_flux",
              "rho_min", "rho_max", "u_max", "steps"},
             rows);
}

// Writes everything one trajectory produces under prefix/ and returns the verdict inputs.
void write_level(OutputSet& out, const std::string& prefix, const RunConfig& config, const Trajectory& traj,
                 const DiagnosticReport& rep, const CompatibilityReport& compat) {
  const auto& fmt = config.output;
  if (fmt.has("snapshots")) {
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      out.write(prefix + "snapshots/" + snapshot_name(k),
                format_snapshot(traj.snapshots[k], traj.eps, traj.model, traj.rho_bar));
    }
    out.write(prefix + "records.csv", records_csv(traj));
  }
  if (fmt.has("json")) {
    ojson j = report_json(rep);
    ojson c = ojson::array();
    for (const auto& r : compat.residuals) {
      c.push_back({{"name", r.name}, {"value", r.value}, {"scale", r.scale}, {"relative", r.relative}, {"pass", r.pass}});
    }
    j["compatibility"] = {{"tolerance", compat.tolerance}, {"residuals", c}, {"pass", compat.pass}};
    out.write(prefix + "diagnostics.json", j.dump(2) + "\n");
  }
  if (fmt.has("csv")) {
    const EnergyReport& e = rep.energy;
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < e.times.size(); ++k) {
      rows.push_back({e.times[k], e.energy[k], e.dissipation[k][0], e.dissipation[k][1], e.dissipation[k][2],
                      e.residual[k], e.measure_above[k]});
    }
    out.write(prefix + "energy.csv",
              csv({"t", "relative_energy", "diss_h2_rho_r2", "diss_rho_u_r2",
                   "diss_rho_u2_over_r2", "b_balance_residual", "measure_rho_gt_1.5rhobar"},
                  rows));
    rows.clear();
    const MaxPrincipleReport& mp = rep.maxprinciple;
    for (std::size_t k = 0; k < mp.times.size(); ++k) {
      rows.push_back({mp.times[k], mp.max_w[k], mp.min_z[k], mp.max_u[k], mp.R_sup[k], mp.integral[k], mp.bound_w[k],
                      mp.bound_z[k], mp.bound_u[k]});
    }
    out.write(prefix + "maxprinciple.csv",
              csv({"t", "est_u_max_max_w", "est_u_max_min_z", "est_u_max_max_u", "est_u_max_R_sup",
                   "est_u_max_0.1_source_integral", "est_u_max_bound_w", "est_u_max_bound_z", "est_u_max_bound_u"},
                  rows));
    const IntegrabilityReport& in = rep.integrability;
    std::vector<std::string> head;
    std::vector<double> row;
    for (std::size_t l = 0; l < in.rho_gamma_moments.size(); ++l) {
      head.push_back("rho_gamma_r" + std::to_string(l));
      row.push_back(in.rho_gamma_moments[l]);
    }
    head.insert(head.end(), {"rho_gamma_annulus", "rho3_tail_a", "rho3_tail_K",
                             "rho_gamma1_plus_delta_rho3_K", "delta_rho3_K", "rho_u3_plus_rho_gamma_theta_K",
                             "rho3_tail_normalized", "interior_pressure_normalized", "interior_flux_normalized",
                             "eps32_rho_r2_K"});
    row.insert(row.end(), {in.rho_gamma_annulus, in.rho3_tail_a, in.rho3_tail_K, in.interior_pressure, in.interior_delta_rho3,
                           in.interior_flux, in.rho3_tail_normalized, in.interior_pressure_normalized, in.interior_flux_normalized,
                           rep.entropy.small_density_gradient});
    out.write(prefix + "integrability.csv", csv(head, {row}));
    std::vector<std::vector<std::string>> prow;
    for (const auto& p : rep.entropy.rows) {
      prow.push_back({p.pair, std::to_string(p.test), fmt17(p.D), fmt17(p.bounded_L1), fmt17(p.sup_phi),
                      fmt17(p.vanishing), fmt17(p.I2_L1), fmt17(p.I4_L1), fmt17(p.consistency),
                      p.triangle_pass ? "1" : "0"});
    }
    out.write(prefix + "entropy_dissipation_proxy.csv",
              text_csv({"pair", "test", "approx_entropy_D", "approx_entropy_I1_I3_I5_L1", "sup_phi",
                        "approx_entropy_I2_I4_pairing", "approx_entropy_I2_L1", "approx_entropy_I4_L1",
                        "consistency", "triangle_pass"},
                       prow));
    rows.clear();
    for (std::size_t k = 0; k < rep.vacuum.times.size(); ++k) rows.push_back({rep.vacuum.times[k], rep.vacuum.phi_integral[k]});
    out.write(prefix + "vacuum.csv", csv({"t", "est_rho_r_integral_phi_integral"}, rows));
  }
  if (fmt.has("plots")) {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < rep.energy.times.size(); ++k) rows.push_back({rep.energy.times[k], rep.energy.energy[k]});
    out.write(prefix + "plots/relative_energy_vs_t.csv", csv({"t", "relative_energy"}, rows));
    rows.clear();
    for (std::size_t k = 0; k < rep.maxprinciple.times.size(); ++k) {
      rows.push_back({rep.maxprinciple.times[k], rep.maxprinciple.max_u[k]});
    }
    out.write(prefix + "plots/max_u_vs_t.csv", csv({"t", "max_abs_u"}, rows));
    const State& s = traj.snapshots.back();
    rows.clear();
    for (std::size_t i = 0; i < s.size(); ++i) rows.push_back({s.grid.r(i), s.rho[i]});
    out.write(prefix + "plots/rho_final_vs_r.csv", csv({"r", "rho"}, rows));
    rows.clear();
    for (std::size_t i = 0; i < s.size(); ++i) rows.push_back({s.grid.r(i), s.m[i]});
    out.write(prefix + "plots/m_final_vs_r.csv", csv({"r", "m"}, rows));
  }
}

// Verdicts for one trajectory.
void judge_level(Verdicts& v, const std::string& tag, const RunConfig& config, const DiagnosticReport& rep,
                 const CompatibilityReport* compat) {
  if (compat) v.add(tag + "compatibility", compat->pass, "tolerance " + num(compat->tolerance));
  const EnergyReport& e = rep.energy;
  v.add(tag + "energy_non_increasing", e.non_increasing, "E0 = " + num(e.E0) + ", E(T) = " + num(e.energy.back()));
  const double tol = config.diagnostics.energy_residual_tol * (e.E0 > 0.0 ? e.E0 : 1.0);
  v.add(tag + "energy_balance", e.max_residual <= tol, "max residual " + num(e.max_residual) + " <= " + num(tol));
  v.add(tag + "measure_bound", e.measure_pass, "c2 E0 = " + num(e.measure_bound));
  v.add(tag + "maxprinciple", rep.maxprinciple.pass, "C = " + num(rep.maxprinciple.C));
  bool triangle = true;
  for (const auto& p : rep.entropy.rows) triangle = triangle && p.triangle_pass;
  v.add(tag + "entropy_triangle_proxy", triangle, std::to_string(rep.entropy.rows.size()) + " pairings");
  v.add(tag + "positivity", rep.vacuum.min_rho > 0.0, "min rho = " + num(rep.vacuum.min_rho));
}

ojson manifest_head(const std::string& command, const RunConfig& config) {
  ojson m;
  m["command"] = command;
  m["config"] = ojson::parse(emit_config(config));
  m["config_sha256"] = sha256_hex(emit_config(config));
  return m;
}

}  // namespace

CommandResult command_run(const RunConfig& config, const CommandOptions& options) {
  const ScalingPlan plan = config.scaling_plan();
  const double eps = config.run.eps.value_or(plan.ladder().front());
  const LevelParameters level{eps, plan.a(eps), plan.b(eps), plan.rho_bar(eps)};
  const GasModel model = config.gas_model().with_delta(plan.delta(eps));
  SolverConfig solver = config.solver_config();
  solver.N = config.solver.cells.value_or(config.resolution().cells(level.a, level.b, eps));
  validate(solver);
  const RadialGrid grid(level.a, level.b, solver.N);
  const State initial = build_initial_data(config.profile, model, level, grid);
  const CompatibilityReport compat =
      verify_compatibility(initial, model, eps, level.rho_bar, config.diagnostics.compat_tol);
  const Trajectory traj = run_simulation(model, initial, eps, level.rho_bar, solver,
                                         quadratic_schedule(solver.t_final, config.solver.samples));
  const DiagnosticReport rep = build_diagnostic_report(traj, config.diagnostics_settings());

  OutputSet out(out_root(config, options));
  write_level(out, "", config, traj, rep, compat);
  Verdicts v;
  judge_level(v, "", config, rep, &compat);
  ojson m = manifest_head("run", config);
  m["level"] = {{"eps", eps}, {"a", level.a}, {"b", level.b}, {"delta", model.delta()}, {"rho_bar", level.rho_bar},
                {"cells", solver.N}};
  m["verdicts"] = v.json();
  return v.result(out.write_manifest(m.dump()));
}

CommandResult command_sweep(const RunConfig& config, const CommandOptions& options) {
  SweepConfig sc = config.sweep_config();
  if (options.levels) {
    if (*options.levels == 0) throw ConfigError("--levels must be positive");
    sc.plan = sc.plan.truncated(*options.levels);
  }
  const SweepResult sweep = run_sweep(sc);
  const DiagnosticsSettings settings = config.diagnostics_settings();
  OutputSet out(out_root(config, options));
  Verdicts v;
  v.add("budget", sweep.budget.all_pass, "budget " + num(sc.plan.budget()));

  std::vector<DiagnosticReport> reports;
  ojson levels = ojson::array();
  for (const auto& lv : sweep.levels) {
    reports.push_back(build_diagnostic_report(lv.trajectory, settings));
    const std::string prefix = "level_" + std::to_string(lv.index) + "/";
    write_level(out, prefix, config, lv.trajectory, reports.back(), lv.compatibility);
    judge_level(v, "level_" + std::to_string(lv.index) + ".", config, reports.back(), &lv.compatibility);
    levels.push_back({{"eps", lv.level.eps},
                      {"a", lv.level.a},
                      {"b", lv.level.b},
                      {"delta", lv.trajectory.model.delta()},
                      {"rho_bar", lv.level.rho_bar},
                      {"cells", lv.cells},
                      {"config_sha256", sha256_hex(emit_config(config) + "level=" + fmt17(lv.level.eps))}});
  }

  // Uniformity of the normalized functionals across the ladder.
  auto band = [](const std::vector<double>& x) {
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return *lo > 0.0 ? *hi / *lo : std::numeric_limits<double>::infinity();
  };
  std::vector<double> l33, l35, sdg;
  for (const auto& r : reports) {
    l33.push_back(r.integrability.interior_pressure_normalized);
    l35.push_back(r.integrability.interior_flux_normalized);
    sdg.push_back(r.entropy.small_density_gradient);
  }
  const double B = config.diagnostics.uniformity_band;
  v.add("uniformity_interior_pressure", band(l33) <= B, "max/min = " + num(band(l33)) + " <= " + num(B));
  v.add("uniformity_interior_flux", band(l35) <= B, "max/min = " + num(band(l35)) + " <= " + num(B));
  bool sdg_dec = true;
  for (std::size_t k = 1; k < sdg.size(); ++k) sdg_dec = sdg_dec && sdg[k] < sdg[k - 1];
  v.add("small_density_gradient_decreasing", sdg_dec, "eps^(3/2) int int_K |rho_r|^2 along the ladder");

  ojson sweep_json;
  sweep_json["levels"] = levels;
  ojson budget = ojson::array();
  for (const auto& b : sweep.budget.levels) budget.push_back({{"eps", b.eps}, {"value", b.value}, {"pass", b.pass}});
  sweep_json["budget"] = budget;
  sweep_json["uniformity"] = {{"interior_pressure_normalized", l33}, {"interior_flux_normalized", l35}, {"small_density_gradient", sdg}};
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < reports.size(); ++k) {
      rows.push_back({sweep.levels[k].level.eps, l33[k], l35[k], sdg[k],
                      reports[k].integrability.interior_delta_rho3});
    }
    if (config.output.has("csv")) {
      out.write("uniformity.csv", csv({"eps", "interior_pressure_normalized", "interior_flux_normalized",
                                       "eps32_rho_r2_K", "delta_rho3_K"},
                                      rows));
    }
  }

  if (sweep.levels.size() >= 3) {
    const CauchyTable ct = cauchy_lp_differences(sweep, config.diagnostics.cauchy_p, config.diagnostics.cauchy_q);
    v.add("cauchy_rho_decreasing", ct.rho_decreasing, "L^" + num(ct.p) + "(W) differences of rho");
    ojson rows = ojson::array();
    std::vector<std::vector<double>> crow;
    for (const auto& r : ct.rows) {
      rows.push_back({{"eps_coarse", r.eps_coarse}, {"eps_fine", r.eps_fine}, {"rho", r.rho_diff}, {"m", r.m_diff}});
      crow.push_back({r.eps_coarse, r.eps_fine, r.rho_diff, r.m_diff});
    }
    sweep_json["cauchy"] = {{"p", ct.p}, {"q", ct.q}, {"rows", rows}, {"rho_decreasing", ct.rho_decreasing},
                            {"m_decreasing", ct.m_decreasing}};
    if (config.output.has("csv")) {
      out.write("cauchy.csv", csv({"eps_coarse", "eps_fine", "Thm1.1_Lp_rho_difference", "Thm1.1_Lq_m_difference"}, crow));
    }
  } else {
    sweep_json["cauchy"] = "skipped: fewer than 3 levels";
  }

  const std::vector<TestFunction> tests = settings.tests;
  const WeakResidualTable wr = weak_euler_residual(sweep, tests, tests);
  if (sweep.levels.size() >= 2) {
    v.add("weak_continuity_decreasing", wr.continuity_decreasing, std::to_string(tests.size()) + " tests");
  }
  {
    ojson rows = ojson::array();
    std::vector<std::vector<std::string>> trow;
    for (const auto& r : wr.rows) {
      rows.push_back({{"candidate", r.candidate}, {"test", r.test}, {"continuity", r.continuity}, {"momentum", r.momentum}});
      trow.push_back({r.candidate, std::to_string(r.test), fmt17(r.continuity), fmt17(r.momentum)});
    }
    sweep_json["weak_residual"] = {{"rows", rows},
                                   {"continuity_decreasing", wr.continuity_decreasing},
                                   {"momentum_decreasing", wr.momentum_decreasing}};
    if (config.output.has("csv")) {
      out.write("weak_residual.csv",
                text_csv({"candidate", "test", "Thm1.1i_continuity_residual", "Thm1.1ii_momentum_residual"}, trow));
    }
  }

  const EntropyCheckReport ec =
      entropy_inequality_check(sweep, config.diagnostics.entropy_psi, tests, config.diagnostics.entropy_rel_tol);
  {
    bool pairing = true, energy = true;
    ojson rows = ojson::array();
    std::vector<std::vector<std::string>> trow;
    for (const auto& r : ec.rows) {
      pairing = pairing && r.pass;
      rows.push_back({{"pair", r.pair}, {"test", r.test}, {"pairing", r.pairing}, {"pass", r.pass}});
      trow.push_back({r.pair, std::to_string(r.test), fmt17(r.pairing), r.pass ? "1" : "0"});
    }
    ojson erows = ojson::array();
    for (const auto& r : ec.energy) {
      energy = energy && r.pass;
      erows.push_back({{"eps", r.eps}, {"initial", r.initial}, {"final", r.final}, {"monotone", r.monotone}, {"pass", r.pass}});
    }
    v.add("entropy_inequality", pairing, "pairing <= " + num(ec.tolerance));
    v.add("finite_energy", energy, "int eta* r^(n-1) dr non-increasing on every level");
    sweep_json["entropy_inequality"] = {{"energy_scale", ec.energy_scale}, {"tolerance", ec.tolerance},
                                        {"rows", rows}, {"energy", erows}};
    if (config.output.has("csv")) {
      out.write("entropy_inequality.csv", text_csv({"pair", "test", "entropy_sol_pairing", "pass"}, trow));
    }
  }
  sweep_json["verdicts"] = v.json();
  if (config.output.has("json")) out.write("sweep.json", sweep_json.dump(2) + "\n");

  ojson m = manifest_head("sweep", config);
  m["ladder"] = sc.plan.ladder();
  m["levels"] = levels;
  m["verdicts"] = v.json();
  return v.result(out.write_manifest(m.dump()));
}

CommandResult command_check_entropy(const RunConfig& config, const CommandOptions& options) {
  Verdicts v;
  ojson results = ojson::array();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> log_rho(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> vel(-5.0, 5.0);
  std::vector<StatePoint> random_box;
  for (int i = 0; i < 200; ++i) {
    const double rho = std::exp(log_rho(rng));
    random_box.push_back({rho, rho * vel(rng)});
  }
  const std::vector<StatePoint> box = state_box(0.1, 10.0, 5.0, 21, 21);
  const std::vector<std::string> psis{"one", "s", "half_s2", "half_s_abs_s"};
  std::vector<double> gammas{1.4, 2.0, 3.0};
  if (std::find(gammas.begin(), gammas.end(), config.model.gamma) == gammas.end()) gammas.push_back(config.model.gamma);
  for (double g : gammas) {
    const GasModel model = GasModel::normalized(g, 0.0, config.model.n);
    std::vector<std::unique_ptr<PairEvaluator>> pairs;
    pairs.push_back(std::make_unique<MechanicalEnergyPair>(model));
    for (const auto& name : psis) pairs.push_back(std::make_unique<EntropyPair>(GeneratingFunction::by_name(name), model));
    for (const auto& p : pairs) {
      const ResidualStats grid = entropy_pde_residual(*p, model, box);
      const ResidualStats rnd = entropy_pde_residual(*p, model, random_box);
      const double worst = std::max(grid.max, rnd.max);
      v.add("pde_residual[gamma=" + num(g) + "," + p->name() + "]", worst <= 1e-6, "max " + num(worst) + " <= 1e-06");
      results.push_back({{"gamma", g}, {"pair", p->name()}, {"grid_max", grid.max}, {"random_max", rnd.max}});
    }
    const KernelMoments km = KernelMoments::of(model.lambda());
    const EntropyPair one(GeneratingFunction::one(), model);
    const EntropyPair ess(GeneratingFunction::s(), model);
    const EntropyPair one2(GeneratingFunction::one(), model, 48);
    double moment_err = 0.0, self_err = 0.0;
    for (const auto& s : random_box) {
      const double e1 = one.value(s.rho, s.m).eta;
      moment_err = std::max(moment_err, std::abs(e1 - km.c_lambda * s.rho) / (km.c_lambda * s.rho));
      moment_err = std::max(moment_err, std::abs(ess.value(s.rho, s.m).eta - km.c_lambda * s.m) /
                                            (km.c_lambda * std::max(std::abs(s.m), s.rho)));
      self_err = std::max(self_err, std::abs(one2.value(s.rho, s.m).eta - e1) / std::abs(e1));
    }
    v.add("kernel_moments[gamma=" + num(g) + "]", moment_err <= 1e-10, "relative error " + num(moment_err));
    v.add("kernel_self_convergence[gamma=" + num(g) + "]", self_err <= 1e-10, "order doubling change " + num(self_err));
  }
  OutputSet out(out_root(config, options));
  ojson doc = {{"seed", options.seed}, {"residuals", results}, {"verdicts", v.json()}};
  if (config.output.has("json")) out.write("entropy_check.json", doc.dump(2) + "\n");
  ojson m = manifest_head("check-entropy", config);
  m["seed"] = options.seed;
  m["verdicts"] = v.json();
  return v.result(out.write_manifest(m.dump()));
}

CommandResult command_report(const RunConfig& config, const CommandOptions& options) {
  const fs::path root(out_root(config, options));
  const fs::path snap_dir = root / "snapshots";
  if (!fs::is_directory(snap_dir)) {
    throw IoError("report: no snapshots under '" + snap_dir.string() + "'; run `run` with the snapshots format first");
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(snap_dir)) {
    if (e.path().extension() == ".txt") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("report: snapshot directory is empty");

  std::vector<ParsedSnapshot> snaps;
  for (const auto& f : files) snaps.push_back(parse_snapshot(read_file(f.string())));
  const SnapshotHeader& h = snaps.front().header;
  const GasModel base = config.gas_model();
  const GasModel model(h.gamma, base.kappa(), h.delta, base.n_dim());
  const RadialGrid grid(h.a, h.b, h.N);
  Trajectory traj{h.eps, h.rho_bar, model, {}, {}};
  for (const auto& s : snaps) traj.snapshots.emplace_back(grid, s.header.t, s.rho, s.m);

  // The in-run accumulators come from records.csv.
  std::istringstream rec(read_file((root / "records.csv").string()));
  std::string line;
  std::getline(rec, line);
  while (std::getline(rec, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    SampleRecord r;
    double steps = 0.0;
    ss >> r.t >> r.dissipation[0] >> r.dissipation[1] >> r.dissipation[2] >> r.maxprinciple_integral >>
        r.boundary_mass_flux >> r.rho_min >> r.rho_max >> r.u_max >> steps;
    if (!ss) throw IoError("report: malformed records.csv row");
    r.steps = static_cast<std::size_t>(steps);
    traj.records.push_back(r);
  }
  if (traj.records.size() != traj.snapshots.size()) throw IoError("report: records.csv does not match the snapshots");

  const DiagnosticReport rep = build_diagnostic_report(traj, config.diagnostics_settings());
  RunConfig sub = config;
  sub.output.formats.erase(std::remove(sub.output.formats.begin(), sub.output.formats.end(), "snapshots"),
                           sub.output.formats.end());
  OutputSet out((root / "report").string());
  write_level(out, "", sub, traj, rep, CompatibilityReport{});
  Verdicts v;
  judge_level(v, "", config, rep, nullptr);
  ojson m = manifest_head("report", config);
  m["source"] = root.string();
  m["verdicts"] = v.json();
  return v.result(out.write_manifest(m.dump()));
}

}  // namespace radeuler
