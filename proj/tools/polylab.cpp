// polylab: scale-invariant polytrope laboratory.
//
// Subcommands cover the whole pipeline: the classic structure table, radial
// profiles, the (u,w) invariant curve and the profile reconstructed from it,
// closed-form approximants with error reports, the scaling-charge
// nonconservation check, white-dwarf and ZAMS models, and central-force
// orbits (trajectory, virial averages, period-amplitude sweep).
//
// Exit codes: 0 success, 2 usage error, 3 domain/numeric failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "polylab/approximants.hpp"
#include "polylab/astro.hpp"
#include "polylab/central_field.hpp"
#include "polylab/constants.hpp"
#include "polylab/emden.hpp"
#include "polylab/errors.hpp"
#include "polylab/invariant_plane.hpp"
#include "polylab/io.hpp"
#include "polylab/noether.hpp"

using json = nlohmann::ordered_json;
using namespace polylab;

namespace {

struct OutputOpts {
  std::string format = "csv";
  std::string out_path;  // empty = stdout
};

void add_output_opts(CLI::App* cmd, OutputOpts& o, bool json_only = false) {
  cmd->fallthrough();  // lets --config (a parent option) follow the subcommand
  if (!json_only)
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  else
    o.format = "json";
  cmd->add_option("--out", o.out_path, "Output file (default stdout)");
}

void emit(const OutputOpts& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw numeric_error("cannot open output file: " + o.out_path);
  f << text;
  if (!f) throw numeric_error("write failed: " + o.out_path);
}

std::string dump_csv(const CsvTable& t) {
  std::ostringstream ss;
  write_csv(ss, t);
  return ss.str();
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// JSON-safe number: infinities/NaN become strings so the document stays valid.
json jnum(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "undefined";
  return v;
}

// ---------------------------------------------------------------- table2 --

struct TableRow {
  double n;
  const char* note;
};

constexpr TableRow kTableRows[] = {
    {0.0, "R ~ M^(1/3); mass uniformly distributed"},
    {1.0, "R independent of M"},
    {1.5, "R ~ M^(-1/3)"},
    {2.0, ""},
    {3.0, "M independent of R"},
    {4.0, ""},
    {4.5, ""},
    {5.0, "R = inf for any M; mass infinitely concentrated"},
};

int cmd_table2(const OutputOpts& o, double tol) {
  CsvTable t;
  t.header = {"n",      "omega_tilde", "xi1",         "rho_ratio",
              "omega0", "r_core_frac", "m_core_frac", "mass_radius_note"};
  json rows = json::array();
  for (const TableRow& row : kTableRows) {
    PolytropeIndex idx(row.n);
    IntegratorOptions opts;
    opts.rtol = tol;
    auto profile = integrate_profile(idx, opts);
    auto s = find_surface(profile);

    std::string wt = idx.is_n1() ? "inf" : fmt_g6(idx.omega_tilde());
    std::string xi1 = idx.is_n5() ? "inf" : fmt_fixed(s.xi1, 3);
    std::string rho = idx.is_n5() ? "inf" : fmt_fixed(s.rho_ratio, 3);
    std::string om = s.omega0 ? fmt_fixed(*s.omega0, 3) : "undefined";
    t.rows.push_back({fmt_g6(row.n), wt, xi1, rho, om,
                      fmt_fixed(s.r_core_frac, 2), fmt_fixed(s.m_core_frac, 2),
                      row.note});
    rows.push_back({{"n", row.n},
                    {"omega_tilde", idx.is_n1() ? json("inf") : jnum(idx.omega_tilde())},
                    {"xi1", jnum(s.xi1)},
                    {"rho_ratio", jnum(s.rho_ratio)},
                    {"omega0", s.omega0 ? jnum(*s.omega0) : json("undefined")},
                    {"r_core_frac", s.r_core_frac},
                    {"m_core_frac", s.m_core_frac},
                    {"mass_radius_note", row.note}});
  }
  if (o.format == "csv")
    emit(o, dump_csv(t));
  else
    emit(o, dump_json(json{{"rows", rows}}));
  return 0;
}

// --------------------------------------------------------------- profile --

int cmd_profile(const OutputOpts& o, double n, double tol, double K,
                double rho_c) {
  PolytropeIndex idx(n);
  IntegratorOptions opts;
  opts.rtol = tol;
  auto profile = integrate_profile(idx, opts);
  auto s = find_surface(profile);
  bool dimensional = K > 0 && rho_c > 0;
  PhysicalProfile phys;
  if (dimensional) phys = dimensionalize(profile, K, rho_c);

  CsvTable t;
  t.header = {"xi", "theta", "dtheta", "u",      "v",
              "w",  "z",     "r_frac", "rho_frac", "m_frac"};
  if (dimensional)
    for (const char* c : {"r_cm", "rho_cgs", "m_g", "g_cgs"})
      t.header.push_back(c);

  auto nodes = profile.nodes();
  json jrows = json::array();
  auto push = [&](double xi, double th, double dth, std::size_t phys_i,
                  bool center) {
    auto inv = invariants_at(profile, xi);
    double rho_frac = th > 0 ? std::pow(th, n) : 0.0;
    if (n == 0.0) rho_frac = 1.0;
    double m_frac = center ? 0.0 : -xi * xi * dth / s.m1;
    double r_frac = center ? 0.0 : xi / s.xi1;  // 0 for the infinite radius
    std::vector<std::string> row = {
        fmt_g6(xi),    fmt_g6(th),     fmt_g6(dth),    fmt_g6(inv.u),
        fmt_g6(inv.v), fmt_g6(inv.w),  fmt_g6(inv.z),  fmt_g6(r_frac),
        fmt_g6(rho_frac), fmt_g6(m_frac)};
    json jr = {{"xi", xi},         {"theta", th},   {"dtheta", dth},
               {"u", inv.u},       {"v", inv.v},    {"w", inv.w},
               {"z", inv.z},       {"r_frac", r_frac},
               {"rho_frac", rho_frac}, {"m_frac", m_frac}};
    if (dimensional) {
      double r = center ? 0.0 : phys.r[phys_i];
      double rho = center ? rho_c : phys.rho[phys_i];
      double m = center ? 0.0 : phys.m[phys_i];
      double g = center ? 0.0 : phys.g[phys_i];
      for (double v : {r, rho, m, g}) row.push_back(fmt_g6(v));
      jr["r_cm"] = r;
      jr["rho_cgs"] = rho;
      jr["m_g"] = m;
      jr["g_cgs"] = g;
    }
    t.rows.push_back(std::move(row));
    jrows.push_back(std::move(jr));
  };

  push(0.0, 1.0, 0.0, 0, true);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    push(nodes[i].xi, nodes[i].theta, nodes[i].dtheta, i, false);

  if (o.format == "csv") {
    emit(o, dump_csv(t));
  } else {
    json surface = {{"xi1", jnum(s.xi1)},
                    {"m1", s.m1},
                    {"omega0", s.omega0 ? jnum(*s.omega0) : json("undefined")},
                    {"rho_ratio", jnum(s.rho_ratio)},
                    {"xi_core", s.xi_core},
                    {"r_core_frac", s.r_core_frac},
                    {"m_core_frac", s.m_core_frac}};
    emit(o, dump_json(json{{"n", n}, {"surface", surface}, {"profile", jrows}}));
  }
  return 0;
}

// ------------------------------------------------------------ invariants --

int cmd_invariants(const OutputOpts& o, double n, double u_min, double eps) {
  PolytropeIndex idx(n);
  auto curve = integrate_wu(idx, u_min, eps);
  if (o.format == "csv") {
    CsvTable t;
    t.header = {"u", "z", "w"};
    for (const auto& s : curve.samples)
      t.rows.push_back({fmt_g6(s.u), fmt_g6(s.z), fmt_g6(s.w)});
    emit(o, dump_csv(t));
  } else {
    json samples = json::array();
    for (const auto& s : curve.samples)
      samples.push_back({s.u, s.z, s.w});
    emit(o, dump_json(json{{"n", n},
                           {"u_min", curve.u_min()},
                           {"z_max", curve.z_max()},
                           {"div_amplitude", jnum(curve.div_amplitude)},
                           {"div_correction", jnum(curve.div_correction)},
                           {"divergence_exponent",
                            n > 0 ? jnum(1.0 / n) : json("undefined")},
                           {"samples", samples}}));
  }
  return 0;
}

// ----------------------------------------------------------------- approx --

const char* kind_name(ApproxKind k) {
  switch (k) {
    case ApproxKind::taylor: return "taylor";
    case ApproxKind::picard: return "picard";
    case ApproxKind::pade3: return "pade";
    case ApproxKind::poly10_3: return "poly10";
  }
  return "?";
}

int cmd_approx(const OutputOpts& o, double n, double xi_hi_flag) {
  PolytropeIndex idx(n);
  IntegratorOptions opts;
  auto profile = integrate_profile(idx, opts);
  auto s = find_surface(profile);
  double hi = xi_hi_flag > 0
                  ? xi_hi_flag
                  : (std::isfinite(s.xi1) ? 0.985 * s.xi1 : 10.0);

  std::vector<Approximant> list;
  if (!idx.is_singular_N()) list.push_back(make_picard(idx));
  for (int order : {2, 4, 6}) list.push_back(make_taylor(idx, order));
  if (n == 3.0) {
    list.push_back(make_taylor(idx, 8));
    list.push_back(make_poly10());
    list.push_back(make_pade3());
  }

  CsvTable t;
  t.header = {"kind",           "order",       "xi_lo",          "xi_hi",
              "max_rel_err",    "xi_at_max_rel", "max_abs_err",  "xi_at_max_abs",
              "zero_approx",    "zero_exact"};
  json jrows = json::array();
  for (const auto& a : list) {
    auto rep = compare(a, profile, 0.0, hi);
    auto opt_str = [](const std::optional<double>& v) {
      return v ? fmt_g6(*v) : std::string();
    };
    t.rows.push_back({kind_name(a.kind), std::to_string(a.order), fmt_g6(0.0),
                      fmt_g6(hi), fmt_g6(rep.max_rel_err),
                      fmt_g6(rep.xi_at_max_rel), fmt_g6(rep.max_abs_err),
                      fmt_g6(rep.xi_at_max_abs), opt_str(rep.zero_approx),
                      opt_str(rep.zero_exact)});
    jrows.push_back(
        {{"kind", kind_name(a.kind)},
         {"order", a.order},
         {"xi_lo", 0.0},
         {"xi_hi", hi},
         {"max_rel_err", rep.max_rel_err},
         {"xi_at_max_rel", rep.xi_at_max_rel},
         {"max_abs_err", rep.max_abs_err},
         {"xi_at_max_abs", rep.xi_at_max_abs},
         {"zero_approx", rep.zero_approx ? jnum(*rep.zero_approx) : json()},
         {"zero_exact", rep.zero_exact ? jnum(*rep.zero_exact) : json()}});
  }
  if (o.format == "csv")
    emit(o, dump_csv(t));
  else
    emit(o, dump_json(json{{"n", n}, {"reports", jrows}}));
  return 0;
}

// ---------------------------------------------------------------- noether --

int cmd_noether(const OutputOpts& o, double n, double h, int nsamples) {
  PolytropeIndex idx(n);
  auto rep = check_nonconservation(idx, h, nsamples);
  if (o.format == "csv") {
    CsvTable t;
    t.header = {"xi", "G", "dG_dxi", "rhs"};
    for (const auto& s : rep.samples)
      t.rows.push_back({fmt_g6(s.xi), fmt_g6(s.G_value),
                        fmt_g6(s.dG_dxi_numeric), fmt_g6(s.dG_dxi_analytic)});
    emit(o, dump_csv(t));
  } else {
    json samples = json::array();
    for (const auto& s : rep.samples)
      samples.push_back({{"xi", s.xi},
                         {"G", s.G_value},
                         {"dG_dxi", s.dG_dxi_numeric},
                         {"rhs", s.dG_dxi_analytic}});
    double scale = rep.max_abs_rhs > 0 ? rep.max_abs_rhs : 1.0;
    emit(o, dump_json(json{{"n", n},
                           {"h", h},
                           {"max_abs_diff", rep.max_abs_diff},
                           {"max_abs_rhs", rep.max_abs_rhs},
                           {"max_rel_diff", rep.max_abs_diff / scale},
                           {"samples", samples}}));
  }
  return 0;
}

// --------------------------------------------------------------- wd, zams --

double omega0_3() {
  auto profile = integrate_profile(PolytropeIndex(3.0));
  return *find_surface(profile).omega0;
}

int cmd_wd(const OutputOpts& o, double mu_e) {
  double om = omega0_3();
  auto model = make_white_dwarf(mu_e, om);
  double msun = constants().M_sun;
  emit(o, dump_json(json{
              {"mu_e", model.mu_e},
              {"omega0_3", om},
              {"K_wd", model.K_wd},
              {"M_star_g", m_star(om)},
              {"M_ch_g", model.M_ch},
              {"M_ch_Msun", model.M_ch / msun},
              {"M_ch_pipeline_g", chandrasekhar_mass_pipeline(mu_e, om)},
          }));
  return 0;
}

json zams_json(double M_msun, double mu, double kappa_p, double om) {
  double msun = constants().M_sun;
  auto m = make_zams(M_msun * msun, mu, kappa_p, om);
  return json{{"M_Msun", M_msun},       {"mu", mu},
              {"kappa_p", kappa_p},     {"beta", m.beta},
              {"K", m.K},               {"M_star_g", m.M_star},
              {"L_edd_erg_s", m.L_edd}, {"L_erg_s", m.L},
              {"L_Lsun", m.L / constants().L_sun}};
}

int cmd_zams(const OutputOpts& o, double M_msun, double mu, double kappa_p,
             const std::string& batch_path) {
  double om = omega0_3();
  if (batch_path.empty()) {
    emit(o, dump_json(zams_json(M_msun, mu, kappa_p, om)));
    return 0;
  }
  std::ifstream f(batch_path);
  if (!f) throw numeric_error("cannot open batch file: " + batch_path);
  json out = json::array();
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    double M, mu_row;
    if (!(ss >> M >> mu_row)) continue;  // header or malformed row
    out.push_back(zams_json(M, mu_row, kappa_p, om));
  }
  emit(o, dump_json(out));
  return 0;
}

// ----------------------------------------------------------------- orbit --

int cmd_orbit(const OutputOpts& o, double pot_n, double k, double mass,
              double r0, double vt0, bool vt0_given, double rdot0,
              double periods, bool virial, bool sweep) {
  if (!(mass > 0) || !(r0 > 0))
    throw domain_error("orbit: mass and r0 must be positive");
  PotentialSpec spec{pot_n, k, mass};
  if (!vt0_given) {
    // default: 70% of the local circular speed (any eccentric bound orbit)
    double dv = spec.dV(r0);
    vt0 = dv > 0 ? 0.7 * std::sqrt(r0 * dv / mass) : 1.0;
  }

  if (sweep) {
    double slope = period_amplitude_exponent(spec, r0, vt0);
    emit(o, dump_json(json{{"n", pot_n},
                           {"k", k},
                           {"mass", mass},
                           {"r0", r0},
                           {"vt0", vt0},
                           {"exponent", slope},
                           {"expected", 1.0 + pot_n / 2.0}}));
    return 0;
  }

  double t_char = pot_n != 0.0
                      ? 2.0 * M_PI *
                            std::sqrt(mass * std::pow(r0, 2.0 + pot_n) /
                                      std::abs(k))
                      : r0 / std::max(vt0, 1e-300);
  OrbitState s0{0.0, r0, 0.0, rdot0, vt0 / r0};
  auto traj = integrate_orbit(spec, s0, periods * t_char);

  if (virial) {
    auto rep = virial_average(traj);
    emit(o, dump_json(json{{"n", pot_n},
                           {"k", k},
                           {"mass", mass},
                           {"r0", r0},
                           {"vt0", vt0},
                           {"K_avg", rep.K_avg},
                           {"V_avg", rep.V_avg},
                           {"virial_lhs_2K", 2.0 * rep.K_avg},
                           {"virial_rhs_minus_nV", -pot_n * rep.V_avg},
                           {"A_drift", rep.A_drift},
                           {"radial_period", rep.radial_period},
                           {"periods_used", rep.periods_used},
                           {"max_E_drift", traj.max_E_drift},
                           {"max_l_drift", traj.max_l_drift},
                           {"hit_center", traj.hit_center}}));
    return 0;
  }

  CsvTable t;
  t.header = {"t", "r", "theta", "K", "V", "A"};
  json jrows = json::array();
  for (std::size_t i = 0; i < traj.sol.t.size(); ++i) {
    double tt = traj.sol.t[i];
    const auto& y = traj.sol.y[i];
    double K = 0.5 * mass * (y[2] * y[2] + y[0] * y[0] * y[3] * y[3]);
    double V = spec.V(y[0]);
    double A = mass * y[0] * y[2];
    t.rows.push_back({fmt_g6(tt), fmt_g6(y[0]), fmt_g6(y[1]), fmt_g6(K),
                      fmt_g6(V), fmt_g6(A)});
    jrows.push_back({tt, y[0], y[1], K, V, A});
  }
  if (o.format == "csv")
    emit(o, dump_csv(t));
  else
    emit(o, dump_json(json{{"n", pot_n},
                           {"columns", {"t", "r", "theta", "K", "V", "A"}},
                           {"rows", jrows},
                           {"max_E_drift", traj.max_E_drift},
                           {"max_l_drift", traj.max_l_drift},
                           {"hit_center", traj.hit_center}}));
  return 0;
}

// ------------------------------------------------------------ reconstruct --

int cmd_reconstruct(const OutputOpts& o, double n, double u_min, double eps) {
  PolytropeIndex idx(n);
  auto curve = integrate_wu(idx, u_min, eps);
  auto rec = reconstruct(idx, curve);
  if (o.format == "csv") {
    CsvTable t;
    t.header = {"z", "w", "rho_frac", "m_frac", "r_frac"};
    for (std::size_t i = 0; i < rec.z.size(); ++i)
      t.rows.push_back({fmt_g6(rec.z[i]), fmt_g6(rec.w[i]),
                        fmt_g6(rec.rho_frac[i]), fmt_g6(rec.m_frac[i]),
                        fmt_g6(rec.r_frac[i])});
    emit(o, dump_csv(t));
  } else {
    json jrows = json::array();
    for (std::size_t i = 0; i < rec.z.size(); ++i)
      jrows.push_back(
          {rec.z[i], rec.w[i], rec.rho_frac[i], rec.m_frac[i], rec.r_frac[i]});
    emit(o, dump_json(json{{"n", n},
                           {"u_min", curve.u_min()},
                           {"columns", {"z", "w", "rho_frac", "m_frac", "r_frac"}},
                           {"rows", jrows}}));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polylab: scale-invariant self-gravitating polytropes and "
               "power-law orbits"};
  app.set_config("--config", "", "Read defaults from a key=value file");
  app.require_subcommand(1);

  // table2
  OutputOpts table2_out;
  double table2_tol = 1e-10;
  auto* c_table2 = app.add_subcommand(
      "table2", "Structure constants across the polytropic range");
  add_output_opts(c_table2, table2_out);
  c_table2->add_option("--tol", table2_tol, "Integrator relative tolerance")
      ->capture_default_str();

  // profile
  OutputOpts profile_out;
  double profile_n = 3.0, profile_tol = 1e-10, profile_K = 0, profile_rhoc = 0;
  auto* c_profile =
      app.add_subcommand("profile", "Radial profile with homology invariants");
  add_output_opts(c_profile, profile_out);
  c_profile->add_option("--n", profile_n, "Polytropic index in [0, 5]")
      ->capture_default_str();
  c_profile->add_option("--tol", profile_tol, "Integrator relative tolerance")
      ->capture_default_str();
  c_profile->add_option("--K", profile_K,
                        "Polytropic constant (CGS); with --rho_c adds "
                        "dimensional columns");
  c_profile->add_option("--rho_c", profile_rhoc, "Central density (g/cm^3)");

  // invariants
  OutputOpts inv_out;
  double inv_n = 3.0, inv_umin = 1e-11, inv_eps = 1e-6;
  auto* c_inv = app.add_subcommand(
      "invariants", "Scale-invariant (u, w) curve for one index");
  add_output_opts(c_inv, inv_out);
  c_inv->add_option("--n", inv_n, "Polytropic index in [0, 5]")
      ->capture_default_str();
  c_inv->add_option("--u-min", inv_umin, "Terminal u of the surface chart")
      ->capture_default_str();
  c_inv->add_option("--eps", inv_eps, "Starting z of the core chart")
      ->capture_default_str();

  // approx
  OutputOpts approx_out;
  double approx_n = 3.0, approx_hi = 0;
  auto* c_approx = app.add_subcommand(
      "approx", "Closed-form approximants vs the integrated profile");
  add_output_opts(c_approx, approx_out);
  c_approx->add_option("--n", approx_n, "Polytropic index in [0, 5]")
      ->capture_default_str();
  c_approx->add_option("--xi-max", approx_hi,
                       "Upper end of the comparison window (default just "
                       "inside the surface)");

  // noether
  OutputOpts noe_out;
  double noe_n = 3.0, noe_h = 0.01;
  int noe_samples = 40;
  auto* c_noe = app.add_subcommand(
      "noether", "Scaling-charge nonconservation check along a profile");
  add_output_opts(c_noe, noe_out);
  c_noe->add_option("--n", noe_n, "Polytropic index in [0, 5], n != 1")
      ->capture_default_str();
  c_noe->add_option("--step", noe_h, "Finite-difference spacing")
      ->capture_default_str();
  c_noe->add_option("--samples", noe_samples, "Number of sample radii")
      ->capture_default_str();

  // wd
  OutputOpts wd_out;
  double wd_mue = 2.0;
  auto* c_wd = app.add_subcommand(
      "wd", "Relativistic-degeneracy white dwarf: K and the limiting mass");
  add_output_opts(c_wd, wd_out, /*json_only=*/true);
  c_wd->add_option("--mu_e", wd_mue, "Mean molecular weight per electron")
      ->capture_default_str();

  // zams
  OutputOpts zams_out;
  double zams_M = 1.0, zams_mu = 0.61, zams_kappa = 0.34;
  std::string zams_batch;
  auto* c_zams = app.add_subcommand(
      "zams", "Radiation-supported main-sequence model at fixed mass");
  add_output_opts(c_zams, zams_out, /*json_only=*/true);
  c_zams->add_option("--M", zams_M, "Stellar mass in solar masses")
      ->capture_default_str();
  c_zams->add_option("--mu", zams_mu, "Mean molecular weight")
      ->capture_default_str();
  c_zams->add_option("--kappa_p", zams_kappa, "Photospheric opacity (cm^2/g)")
      ->capture_default_str();
  c_zams->add_option("--batch", zams_batch, "CSV of (M, mu) rows");

  // orbit
  OutputOpts orbit_out;
  double orb_n = 1.0, orb_k = 1.0, orb_mass = 1.0, orb_r0 = 1.0, orb_vt0 = 0.0,
         orb_rdot0 = 0.0, orb_periods = 5.0;
  bool orb_virial = false, orb_sweep = false;
  auto* c_orbit = app.add_subcommand(
      "orbit", "Central-force orbit in a power-law potential V ~ 1/r^n");
  add_output_opts(c_orbit, orbit_out);
  c_orbit->add_option("--pot-n", orb_n, "Potential exponent n in V ~ 1/r^n")
      ->capture_default_str();
  c_orbit->add_option("--k", orb_k, "Potential strength")->capture_default_str();
  c_orbit->add_option("--mass", orb_mass, "Particle mass")
      ->capture_default_str();
  c_orbit->add_option("--r0", orb_r0, "Initial radius")->capture_default_str();
  auto* vt0_opt = c_orbit->add_option(
      "--vt0", orb_vt0, "Initial tangential speed (default 0.7 x circular)");
  c_orbit->add_option("--rdot0", orb_rdot0, "Initial radial speed")
      ->capture_default_str();
  c_orbit->add_option("--periods", orb_periods,
                      "Integration span in characteristic periods")
      ->capture_default_str();
  c_orbit->add_flag("--virial", orb_virial,
                    "Emit time-averaged virial report (JSON)");
  c_orbit->add_flag("--sweep", orb_sweep,
                    "Emit period-amplitude scaling exponent (JSON)");

  // reconstruct
  OutputOpts rec_out;
  double rec_n = 3.0, rec_umin = 1e-11, rec_eps = 1e-6;
  auto* c_rec = app.add_subcommand(
      "reconstruct", "Profile recovered from the invariant curve by quadrature");
  add_output_opts(c_rec, rec_out);
  c_rec->add_option("--n", rec_n, "Polytropic index in (0, 5)")
      ->capture_default_str();
  c_rec->add_option("--u-min", rec_umin, "Terminal u of the surface chart")
      ->capture_default_str();
  c_rec->add_option("--eps", rec_eps, "Starting z of the core chart")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the error message
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_table2->parsed()) return cmd_table2(table2_out, table2_tol);
    if (c_profile->parsed())
      return cmd_profile(profile_out, profile_n, profile_tol, profile_K,
                         profile_rhoc);
    if (c_inv->parsed()) return cmd_invariants(inv_out, inv_n, inv_umin, inv_eps);
    if (c_approx->parsed()) return cmd_approx(approx_out, approx_n, approx_hi);
    if (c_noe->parsed()) return cmd_noether(noe_out, noe_n, noe_h, noe_samples);
    if (c_wd->parsed()) return cmd_wd(wd_out, wd_mue);
    if (c_zams->parsed())
      return cmd_zams(zams_out, zams_M, zams_mu, zams_kappa, zams_batch);
    if (c_orbit->parsed())
      return cmd_orbit(orbit_out, orb_n, orb_k, orb_mass, orb_r0, orb_vt0,
                       vt0_opt->count() > 0, orb_rdot0, orb_periods,
                       orb_virial, orb_sweep);
    if (c_rec->parsed()) return cmd_reconstruct(rec_out, rec_n, rec_umin, rec_eps);
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
