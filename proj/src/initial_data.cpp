#include "radeuler/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "radeuler/errors.hpp"
#include "radeuler/quadrature.hpp"

namespace radeuler {

namespace {

double smoothstep5(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

// Density mollified with a C-infinity bump of radius R, using the even extension across r = 0.
double mollified_density(const ProfileSpec& p, double r, double R) {
  static const GaussRule rule = gauss_legendre(24);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = rule.nodes[k];
    const double w = rule.weights[k] * std::exp(-1.0 / (1.0 - x * x));
    num += w * p.density(std::abs(r - R * x));
    den += w;
  }
  return num / den;
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::equilibrium: return "equilibrium";
    case ProfileKind::gaussian_pulse: return "gaussian_pulse";
    case ProfileKind::smoothed_jump: return "smoothed_jump";
    case ProfileKind::table: return "table";
  }
  return "equilibrium";
}

ProfileKind profile_kind_from_string(const std::string& name) {
  if (name == "equilibrium") return ProfileKind::equilibrium;
  if (name == "gaussian_pulse") return ProfileKind::gaussian_pulse;
  if (name == "smoothed_jump") return ProfileKind::smoothed_jump;
  if (name == "table" || name == "custom_table") return ProfileKind::table;
  throw ConfigError("profile.kind '" + name +
                    "' is not one of equilibrium, gaussian_pulse, smoothed_jump, table");
}

double ProfileSpec::density(double r) const {
  switch (kind) {
    case ProfileKind::equilibrium:
      return 0.0;
    case ProfileKind::gaussian_pulse: {
      const double x = (r - center) / width;
      return amplitude * std::exp(-x * x);
    }
    case ProfileKind::smoothed_jump:
      return 0.5 * amplitude * (1.0 - std::tanh((r - center) / width));
    case ProfileKind::table: {
      if (table.empty()) return 0.0;
      if (r <= table.front().first) return table.front().second;
      if (r > table.back().first) return 0.0;
      const auto it = std::lower_bound(table.begin(), table.end(), r,
                                       [](const auto& row, double x) { return row.first < x; });
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double s = (r - lo.first) / (hi.first - lo.first);
      return (1.0 - s) * lo.second + s * hi.second;
    }
  }
  return 0.0;
}

double ProfileSpec::velocity(double r) const {
  if (velocity_amplitude == 0.0) return 0.0;
  const double x = (r - velocity_center) / velocity_width;
  return velocity_amplitude * std::exp(-x * x);
}

void load_profile_table(ProfileSpec& spec) {
  std::ifstream in(spec.table_path);
  if (!in) throw IoError("cannot open profile table '" + spec.table_path + "'");
  spec.table.clear();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double r = 0.0, v = 0.0;
    if (!(ss >> r)) continue;
    if (!(ss >> v)) {
      throw ConfigError("profile table '" + spec.table_path + "' line " + std::to_string(line_no) +
                        ": expected two columns");
    }
    if (!(v >= 0.0)) {
      throw ConfigError("profile table '" + spec.table_path + "' line " + std::to_string(line_no) +
                        ": density must be nonnegative");
    }
    if (!spec.table.empty() && !(r > spec.table.back().first)) {
      throw ConfigError("profile table '" + spec.table_path + "' line " + std::to_string(line_no) +
                        ": radii must be strictly increasing");
    }
    spec.table.emplace_back(r, v);
  }
  if (spec.table.size() < 2) {
    throw ConfigError("profile table '" + spec.table_path + "' needs at least two rows");
  }
}

State build_initial_data(const ProfileSpec& profile, const GasModel& model,
                         const LevelParameters& level, const RadialGrid& grid) {
  (void)model;
  if (!(level.rho_bar > 0.0)) throw ConfigError("initial data need a positive far-field density");
  if (!(profile.floor >= 0.0)) throw ConfigError("profile.floor must be nonnegative");
  if (grid.cells() < 2 * kBlendMarginCells + 2) {
    throw ConfigError("initial data blending needs at least " +
                      std::to_string(2 * kBlendMarginCells + 2) + " cells");
  }
  const std::size_t N = grid.cells();
  const double h = grid.h();
  const double floor = std::max(profile.floor, level.rho_bar);
  const double R = 2.0 * h;

  std::vector<double> raw_rho(N + 1), raw_m(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double r = grid.r(i);
    const double rho = (profile.kind == ProfileKind::equilibrium ? 0.0 : mollified_density(profile, r, R)) + floor;
    raw_rho[i] = rho;
    raw_m[i] = rho * profile.velocity(r);
  }

  // Nodes 0..3 and N-3..N carry the boundary states; the ramp covers the next two cells.
  const double hold = static_cast<double>(kBlendMarginCells - 2);
  const double ramp = 2.0;
  const double rho_a = raw_rho[kBlendMarginCells - 2];
  std::vector<double> rho(N + 1), m(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    const double r = grid.r(i);
    const double beta_a = smoothstep5((r - (grid.a() + hold * h)) / (ramp * h));
    const double beta_b = smoothstep5(((grid.b() - hold * h) - r) / (ramp * h));
    double v = raw_rho[i];
    double mv = raw_m[i];
    v = (1.0 - beta_a) * rho_a + beta_a * v;
    mv = beta_a * mv;
    v = (1.0 - beta_b) * level.rho_bar + beta_b * v;
    mv = beta_b * mv;
    if (i + kBlendMarginCells - 2 >= N) {
      v = level.rho_bar;
      mv = 0.0;
    }
    if (i <= kBlendMarginCells - 2) mv = 0.0;
    rho[i] = v;
    m[i] = mv;
  }
  for (std::size_t i = 0; i <= N; ++i) {
    if (!(rho[i] > 0.0)) {
      throw ConfigError("initial density is not positive at r = " + std::to_string(grid.r(i)) +
                        " after blending");
    }
  }
  return State(grid, 0.0, std::move(rho), std::move(m));
}

CompatibilityReport verify_compatibility(const State& s, const GasModel& model, double eps,
                                         double rho_bar, double tolerance) {
  const RadialGrid& g = s.grid;
  const std::size_t N = g.cells();
  if (N < 4) throw DomainError("verify_compatibility needs at least four cells");
  const double h = g.h();
  const double L = g.b() - g.a();
  const double e = static_cast<double>(model.n_dim() - 1);
  const double a = g.a();
  const double b = g.b();

  double s_rho = 0.0, s_m = 0.0;
  for (std::size_t i = 0; i <= N; ++i) {
    s_rho = std::max(s_rho, std::abs(s.rho[i]));
    s_m = std::max(s_m, std::abs(s.m[i]));
  }
  s_m = std::max(s_m, s_rho);

  auto d1_left = [&](const std::vector<double>& f) { return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h); };
  auto d1_right = [&](const std::vector<double>& f) {
    return (3.0 * f[N] - 4.0 * f[N - 1] + f[N - 2]) / (2.0 * h);
  };
  auto d2_right = [&](const std::vector<double>& f) {
    return (2.0 * f[N] - 5.0 * f[N - 1] + 4.0 * f[N - 2] - f[N - 3]) / (h * h);
  };

  std::vector<double> rm(N + 1), G(N + 1);
  for (std::size_t i = 0; i <= N; ++i) {
    rm[i] = std::pow(g.r(i), e) * s.m[i];
    G[i] = s.m[i] * s.m[i] / s.rho[i] + model.pressure(s.rho[i]);
  }

  CompatibilityReport rep;
  rep.tolerance = tolerance;
  auto add = [&](std::string name, double value, double scale) {
    CompatibilityResidual r;
    r.name = std::move(name);
    r.value = std::abs(value);
    r.scale = scale;
    r.relative = r.value / scale;
    r.pass = r.relative <= tolerance;
    rep.pass = rep.pass && r.pass;
    rep.residuals.push_back(r);
  };

  add("bc_a_rho_r", d1_left(s.rho), s_rho / L);
  add("bc_a_m", s.m[0], s_m);
  add("bc_b_rho", s.rho[N] - rho_bar, s_rho);
  add("bc_b_m", s.m[N], s_m);
  add("compat_a_flux", d1_left(rm), std::pow(a, e) * s_m / L + e * std::pow(a, e - 1.0) * s_m);

  // m_r = eps r^(1-n) (r^(n-1) rho_r)_r at b.
  const double rho_r = d1_right(s.rho);
  const double rho_rr = d2_right(s.rho);
  const double mass_rhs = eps * (rho_rr + e * rho_r / b);
  add("compat_b_mass", d1_right(s.m) - mass_rhs, s_m / L + eps * (s_rho / (L * L) + e * s_rho / (b * L)));

  // (m^2/rho + p)_r = eps r^(1-n) (r^(n-1) m)_r at b.
  const double mom_rhs = eps * std::pow(b, -e) * d1_right(rm);
  add("compat_b_momentum", d1_right(G) - mom_rhs,
      (s_m * s_m / s_rho + model.pressure(s_rho)) / L + eps * s_m * (1.0 / L + e / b));
  return rep;
}

}  // namespace radeuler
