#include "bhcone/experiments.hpp"

#include "bhcone/astlo.hpp"
#include "bhcone/dynamics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

namespace bhcone {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + short_num(v[i]);
  return out;
}

std::string describe_fit(const PowerLawFit& fit) {
  if (!fit.valid) return "fit invalid: " + fit.note;
  return "slope " + short_num(fit.slope) + ", R^2 " + short_num(fit.r_squared);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_norm(const SparseOperator& a) {
  const ComplexMatrix dense = a.toDense();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double sup_derivative(const CutoffFunction& f, int order, int samples = 2001) {
  double best = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = f.eta() + (f.xi() - f.eta()) * i / (samples - 1);
    best = std::max(best, std::abs(f.derivative(order, r)));
  }
  return best;
}

// One sector with its Hamiltonian and an ASTLO family around X.
struct Instance {
  EmbeddedLattice lattice;
  HoppingMatrix hopping;
  SectorPtr sector;
  SparseOperator h;
  Region x;
  ConeSpeeds speeds;
  AstloFamily family;
};

Instance make_instance(const ExperimentConfig& c, const EmbeddedLattice& lattice, int particles,
                       const std::vector<int>& x_sites) {
  HoppingMatrix hopping = build_hopping(c, lattice);
  const SectorPtr sector = enumerate_sector(lattice.size(), particles);
  const SparseOperator h = assemble_hamiltonian(sector, build_model(c, hopping, particles));
  const Region x(lattice.size(), x_sites);
  const ConeSpeeds speeds = build_speeds(c, kappa_p(hopping, lattice, 1));
  AstloFamily family(sector, lattice, x, make_smooth_step(0.5, 1.0, c.chi_lambda, c.max_order), speeds);
  return Instance{lattice, std::move(hopping), sector, h, x, speeds, std::move(family)};
}

Instance make_default_instance(const ExperimentConfig& c) {
  return make_instance(c, build_lattice(c), c.particles, c.x_sites);
}

StateVector initial_state(const ExperimentConfig& c, const Instance& inst) {
  Occupation nu = c.initial;
  if (nu.empty()) {
    nu.assign(inst.lattice.size(), 0);
    for (int x : c.x_sites) nu[x] = 1;
  }
  return mott_state(inst.sector, nu);
}

CutoffFunction make_f(const ExperimentConfig& c) {
  return make_smooth_step(c.eta.value(), c.xi.value(), c.f_lambda, c.max_order);
}

void add_common_parameters(ExperimentReport& r, const ExperimentConfig& c) {
  r.parameters.emplace_back("eta", std::to_string(c.eta.num) + "/" + std::to_string(c.eta.den));
  r.parameters.emplace_back("xi", std::to_string(c.xi.num) + "/" + std::to_string(c.xi.den));
  r.parameters.emplace_back("chi_lambda", short_num(c.chi_lambda));
  r.parameters.emplace_back("f_lambda", short_num(c.f_lambda));
  r.parameters.emplace_back("U", short_num(c.u));
  r.parameters.emplace_back("mu", short_num(c.mu));
  r.parameters.emplace_back("hopping", c.hopping_kind);
}

void check_dense(const Instance& inst, const ExperimentConfig& c, const std::string& what) {
  if (inst.sector->dimension() > c.dense_limit)
    throw std::length_error(what + ": sector dimension " + std::to_string(inst.sector->dimension()) +
                            " exceeds the dense limit " + std::to_string(c.dense_limit));
}

}  // namespace

bool ExperimentReport::pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* ExperimentReport::find_check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<GeneratedHopping> generate_hoppings(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, EmbeddedLattice>> lattices;
  for (int n : {8, 16, 32, 64, 128}) lattices.emplace_back("chain" + std::to_string(n), EmbeddedLattice::chain(n));
  lattices.emplace_back("square4x4", EmbeddedLattice::square(4, 4));
  lattices.emplace_back("square6x6", EmbeddedLattice::square(6, 6));

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  std::vector<GeneratedHopping> out;
  for (const auto& [name, lat] : lattices) {
    const int d = lat.dim();
    out.push_back({name + "/nn", lat, HoppingMatrix::nearest_neighbor(lat, c.amplitude)});
    for (int extra = 1; extra <= 3; ++extra) {
      const double alpha = d + extra;
      out.push_back({name + "/alpha" + short_num(alpha), lat, HoppingMatrix::power_law(lat, c.amplitude, alpha)});
    }
    RealMatrix j = HoppingMatrix::power_law(lat, c.amplitude, d + 2).matrix();
    for (int x = 0; x < lat.size(); ++x)
      for (int y = x + 1; y < lat.size(); ++y) {
        j(x, y) *= jitter(rng);
        j(y, x) = j(x, y);
      }
    out.push_back({name + "/alpha" + short_num(d + 2) + "-random", lat, HoppingMatrix(j)});
  }
  return out;
}

ExperimentReport exp_kappa_bounds(const ExperimentConfig& c) {
  ExperimentReport r;
  r.name = "kappa_bounds";
  r.columns = {"kind", "label", "k", "s", "norm", "reference"};
  r.parameters.emplace_back("kappa_sites", std::to_string(c.kappa_sites));
  r.parameters.emplace_back("s_grid", join(c.kappa_s_grid));
  r.parameters.emplace_back("seed", std::to_string(c.seed));
  add_common_parameters(r, c);

  // ||[J, |x|]|| <= kappa^(1) on generated hoppings
  const auto generated = generate_hoppings(c);
  int violations = 0;
  double worst_ratio = 0.0;
  for (const auto& g : generated) {
    const Point origin = g.lattice.coord(0);
    RealVector f(g.lattice.size());
    for (int x = 0; x < g.lattice.size(); ++x) f(x) = (g.lattice.coord(x) - origin).norm();
    const double norm = one_particle_norm(hermitian_form(iterated_commutator_matrix(g.hopping, f, 1), 1));
    const double k1 = kappa_p(g.hopping, g.lattice, 1);
    if (norm > k1 + 1e-10) ++violations;
    if (k1 > 0) worst_ratio = std::max(worst_ratio, norm / k1);
    r.rows.push_back({"commutator", g.label, "1", "", num(norm), num(k1)});
  }
  r.measured["max_norm_over_kappa1"] = worst_ratio;
  r.checks.push_back({"commutator_norm_bound",
                      violations == 0 && generated.size() >= 20,
                      std::to_string(generated.size()) + " hoppings, " + std::to_string(violations) +
                          " violations, max ratio " + short_num(worst_ratio)});

  // ||ad^k_{chi_s}(J)|| against s on a long chain
  const EmbeddedLattice chain = EmbeddedLattice::chain(c.kappa_sites, c.spacing);
  const HoppingMatrix j = build_hopping(c, chain);
  const CutoffFunction chi = make_smooth_step(0.5, 1.0, c.chi_lambda, c.max_order);
  const LightConeParams base{{}, 1.0, 0.0};
  r.plot_loglog = true;
  r.plot_xlabel = "s";
  r.plot_ylabel = "||ad^k||";
  for (int k : c.kappa_orders) {
    const double kk = kappa_p(j, chain, k);
    FitRecord rec{"ad_order_" + std::to_string(k), {}, {}, {}};
    for (double s : c.kappa_s_grid) {
      LightConeParams p = base;
      p.s = s;
      RealVector f(chain.size());
      for (int x = 0; x < chain.size(); ++x) f(x) = scaled_eval(chi, p, 0.0, chain.coord(x).norm(), 0);
      const double norm = one_particle_norm(hermitian_form(iterated_commutator_matrix(j, f, k), k));
      rec.x.push_back(s);
      rec.y.push_back(norm);
      r.rows.push_back({"scaling", "chain" + std::to_string(c.kappa_sites), std::to_string(k), num(s), num(norm),
                        num(kk * std::pow(s, -k))});
    }
    rec.fit = fit_power_law(rec.x, rec.y);
    const bool ok = rec.fit.conclusive(c.min_r_squared) && std::abs(rec.fit.slope + k) <= c.kappa_slope_tol;
    r.checks.push_back({"commutator_scaling_k" + std::to_string(k), ok,
                        describe_fit(rec.fit) + ", target " + std::to_string(-k) + " +- " + short_num(c.kappa_slope_tol)});
    if (rec.fit.valid) r.measured["slope_k" + std::to_string(k)] = rec.fit.slope;
    r.plot.push_back({"k=" + std::to_string(k), rec.x, rec.y});
    r.fits.push_back(std::move(rec));
  }
  return r;
}

ExperimentReport exp_commutator_expansion(const ExperimentConfig& c) {
  ExperimentReport r;
  r.name = "commutator_expansion";
  r.columns = {"order", "s", "rem_norm", "ad_norm", "ratio"};
  r.parameters.emplace_back("sites", std::to_string(c.expansion_sites));
  r.parameters.emplace_back("particles", std::to_string(c.expansion_particles));
  r.parameters.emplace_back("s_grid", join(c.expansion_s_grid));
  add_common_parameters(r, c);

  const Instance inst =
      make_instance(c, EmbeddedLattice::chain(c.expansion_sites, c.spacing), c.expansion_particles, {0});
  check_dense(inst, c, "commutator_expansion");
  const ComplexMatrix b = inst.h.toDense();
  const CutoffFunction f = make_f(c);
  const int top = *std::max_element(c.expansion_orders.begin(), c.expansion_orders.end());
  const int dim = inst.sector->dimension();

  std::map<int, FitRecord> recs;
  std::map<int, double> worst_c;
  for (double s : c.expansion_s_grid) {
    const RealVector a = inst.family.build(0.0, s).values;
    std::vector<RealVector> fk(top + 1, RealVector(dim));
    for (int k = 0; k <= top; ++k)
      for (int i = 0; i < dim; ++i) fk[k](i) = f.derivative(k, a(i));
    for (int m : c.expansion_orders) {
      // Rem_M = [f(A), B] - sum_{k<M} ad_A^k(B) f^(k)(A) / k!, entrywise a Taylor remainder
      ComplexMatrix rem = ComplexMatrix::Zero(dim, dim), ad = ComplexMatrix::Zero(dim, dim);
      for (int jc = 0; jc < dim; ++jc)
        for (int ir = 0; ir < dim; ++ir) {
          if (b(ir, jc) == 0.0) continue;
          const double d = a(ir) - a(jc);
          double taylor = fk[0](jc), pw = 1.0, fact = 1.0;
          for (int k = 1; k < m; ++k) {
            pw *= d;
            fact *= k;
            taylor += pw * fk[k](jc) / fact;
          }
          rem(ir, jc) = b(ir, jc) * (fk[0](ir) - taylor);
          ad(ir, jc) = b(ir, jc) * std::pow(d, m);
        }
      const double rn = spectral_norm(rem), an = spectral_norm(ad);
      const double ratio = an > 0 ? rn / an : std::numeric_limits<double>::quiet_NaN();
      if (an > 0) worst_c[m] = std::max(worst_c[m], ratio);
      r.rows.push_back({std::to_string(m), num(s), num(rn), num(an), num(ratio)});
      recs[m].x.push_back(s);
      recs[m].y.push_back(rn);
    }
  }
  r.plot_loglog = true;
  r.plot_xlabel = "s";
  r.plot_ylabel = "||Rem_M||";
  for (auto& [m, rec] : recs) {
    rec.name = "remainder_order_" + std::to_string(m);
    rec.fit = fit_power_law(rec.x, rec.y);
    if (rec.fit.valid) r.measured["slope_M" + std::to_string(m)] = rec.fit.slope;
    r.measured["C_M" + std::to_string(m)] = worst_c[m];
    if (m == c.expansion_check_order) {
      const bool ok = rec.fit.conclusive(c.min_r_squared) && std::abs(rec.fit.slope + m) <= c.expansion_slope_tol;
      r.checks.push_back({"remainder_slope_M" + std::to_string(m), ok,
                          describe_fit(rec.fit) + ", target " + std::to_string(-m) + " +- " +
                              short_num(c.expansion_slope_tol)});
    }
    r.plot.push_back({"M=" + std::to_string(m), rec.x, rec.y});
    r.fits.push_back(rec);
  }
  return r;
}

ExperimentReport exp_heisenberg_bound(const ExperimentConfig& c) {
  ExperimentReport r;
  r.name = "heisenberg_bound";
  r.columns = {"s", "max_eig", "ceiling"};
  r.parameters.emplace_back("sites", std::to_string(c.heisenberg_sites));
  r.parameters.emplace_back("particles", std::to_string(c.heisenberg_particles));
  r.parameters.emplace_back("s_grid", join(c.heisenberg_s_grid));
  r.parameters.emplace_back("t", short_num(c.heisenberg_t));
  add_common_parameters(r, c);

  const Instance inst =
      make_instance(c, EmbeddedLattice::chain(c.heisenberg_sites, c.spacing), c.heisenberg_particles, {0});
  check_dense(inst, c, "heisenberg_bound");
  const CutoffFunction f = make_f(c);
  const double fprime_sup = sup_derivative(f, 1);
  const double t = c.heisenberg_t;
  const ConeSpeeds& sp = inst.speeds;
  r.parameters.emplace_back("v_max", short_num(sp.v_max));
  r.parameters.emplace_back("v_prime", short_num(sp.v_prime));

  FitRecord rec{"max_eigenvalue", {}, {}, {}};
  bool under_ceiling = true;
  for (double s : c.heisenberg_s_grid) {
    const DiagonalObservable a = inst.family.build(t, s);
    const DiagonalObservable ap = inst.family.build(t, s, AstloVariant::Prime);
    const DiagonalObservable phi = build_phi(f, a);
    const SparseOperator dphi = heisenberg_derivative(inst.h, phi, inst.family.time_derivative_phi(f, t, s));
    DiagonalObservable extra{inst.sector, RealVector(a.values.size())};
    for (Eigen::Index i = 0; i < a.values.size(); ++i)
      extra.values(i) = (sp.v_prime - sp.v_max) / s * f.derivative(1, a.values(i)) * ap.values(i);
    const SparseOperator g = dphi + to_sparse(extra);
    const double m = max_eigenvalue(g);
    const double ceiling = hermitian_norm(dphi) + sp.v_prime / s * fprime_sup * ap.values.cwiseAbs().maxCoeff();
    if (m > ceiling + 1e-12) under_ceiling = false;
    r.rows.push_back({num(s), num(m), num(ceiling)});
    rec.x.push_back(s);
    rec.y.push_back(m);
  }
  rec.fit = fit_power_law(rec.x, rec.y);
  if (rec.fit.valid) r.measured["slope"] = rec.fit.slope;
  r.checks.push_back({"triangle_ceiling", under_ceiling, "m(s) <= ||D Phi|| + (v'/s) sup f' ||A'||"});
  const bool ok = rec.fit.conclusive(c.min_r_squared) && rec.fit.slope <= c.heisenberg_max_slope;
  r.checks.push_back({"max_eig_slope", ok,
                      describe_fit(rec.fit) + ", m(s) = " + join(rec.y) + ", need slope <= " +
                          short_num(c.heisenberg_max_slope)});
  r.plot_loglog = true;
  r.plot_xlabel = "s";
  r.plot_ylabel = "max eig G(s)";
  r.plot.push_back({"m(s)", rec.x, rec.y});
  r.fits.push_back(std::move(rec));
  return r;
}

ExperimentReport exp_monotonicity(const ExperimentConfig& c) {
  ExperimentReport r;
  r.name = "monotonicity";
  r.columns = {"t", "observable", "value"};
  r.parameters.emplace_back("sites", std::to_string(c.sites));
  r.parameters.emplace_back("particles", std::to_string(c.particles));
  r.parameters.emplace_back("s_grid", join(c.monotonicity_s_grid));
  add_common_parameters(r, c);

  const Instance inst = make_default_instance(c);
  const StateVector psi0 = initial_state(c, inst);
  EvolutionOptions opts;
  opts.dense_limit = c.dense_limit;
  const auto states = evolve(inst.h, psi0, c.times, opts);
  const CutoffFunction f = make_f(c);

  double norm_drift = 0.0, energy_drift = 0.0;
  const double e0 = expectation(inst.h, psi0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double nrm = states[i].norm();
    const double e = expectation(inst.h, states[i], 1e-9);
    norm_drift = std::max(norm_drift, std::abs(nrm - 1.0));
    energy_drift = std::max(energy_drift, std::abs(e - e0));
    r.rows.push_back({num(c.times[i]), "norm", num(nrm)});
    r.rows.push_back({num(c.times[i]), "energy", num(e)});
  }
  r.measured["norm_drift"] = norm_drift;
  r.measured["energy_drift"] = energy_drift;
  r.checks.push_back({"norm_drift", norm_drift <= 1e-8, short_num(norm_drift)});
  r.checks.push_back({"energy_drift", energy_drift <= 1e-8, short_num(energy_drift)});

  std::vector<double> rates;
  r.plot_xlabel = "t";
  r.plot_ylabel = "<Phi(t)>_t";
  bool phi0_zero = true;
  for (double s : c.monotonicity_s_grid) {
    Series ser{"s=" + short_num(s), {}, {}};
    std::vector<double> vals;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double v = expectation(build_phi(f, inst.family.build(c.times[i], s)), states[i]);
      vals.push_back(v);
      ser.x.push_back(c.times[i]);
      ser.y.push_back(v);
      r.rows.push_back({num(c.times[i]), "Phi[s=" + short_num(s) + "]", num(v)});
    }
    if (vals.front() != 0.0) phi0_zero = false;
    double rate = 0.0;
    for (std::size_t i = 1; i < vals.size(); ++i)
      if (c.times[i] > 0) rate = std::max(rate, std::max(0.0, vals[i] - vals.front()) / c.times[i]);
    rates.push_back(rate);
    r.measured["c(s=" + short_num(s) + ")"] = rate;
    r.plot.push_back(std::move(ser));
  }
  r.checks.push_back({"phi0_vanishes", phi0_zero, "<Phi(0)>_0 = 0 for a state supported in X"});

  bool decay = true;
  std::string detail;
  for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
    const double s1 = c.monotonicity_s_grid[i], s2 = c.monotonicity_s_grid[i + 1];
    const double allowed = std::pow(s1 / s2, 2) + c.monotonicity_ratio_tol;
    bool ok;
    double ratio;
    if (rates[i] == 0.0) {
      ok = rates[i + 1] == 0.0;
      ratio = ok ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      ratio = rates[i + 1] / rates[i];
      ok = ratio <= allowed;
    }
    decay = decay && ok;
    detail += (i ? "; " : "") + std::string("c(") + short_num(s2) + ")/c(" + short_num(s1) + ") = " + short_num(ratio) +
              " (<= " + short_num(allowed) + ")";
  }
  r.checks.push_back({"growth_rate_decay", decay, "c(s) = " + join(rates) + "; " + detail});

  // |rho_xy| <= rho_xx + rho_yy at every tenth grid time
  bool cs_ok = true;
  double cs_worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < states.size(); i += 10) {
    const ComplexMatrix rho = one_body_density(states[i]);
    for (int x = 0; x < rho.rows(); ++x)
      for (int y = 0; y < rho.cols(); ++y) {
        const double gap = std::abs(rho(x, y)) - (rho(x, x).real() + rho(y, y).real());
        cs_worst = std::max(cs_worst, gap);
        if (gap > 1e-12) cs_ok = false;
      }
  }
  r.checks.push_back({"cauchy_schwarz", cs_ok, "max |rho_xy| - rho_xx - rho_yy = " + short_num(cs_worst)});
  return r;
}

ExperimentReport exp_lightcone(const ExperimentConfig& c) {
  ExperimentReport r;
  r.name = "lightcone";
  r.columns = {"t", "d_xy", "in_cone", "value"};
  r.parameters.emplace_back("sites", std::to_string(c.sites));
  r.parameters.emplace_back("particles", std::to_string(c.particles));
  r.parameters.emplace_back("bound_ceiling", short_num(c.bound_ceiling));
  r.parameters.emplace_back("cone_factor", short_num(c.cone_factor));
  add_common_parameters(r, c);

  const Instance inst = make_default_instance(c);
  const StateVector psi0 = initial_state(c, inst);
  const DiagonalObservable px = number_projector(inst.sector, inst.x.complement(), Comparison::LessEqual, c.eta);
  if (expectation(px, psi0) != 1.0)
    throw std::domain_error("initial state violates P(N_Xc/N <= eta) phi = phi");

  EvolutionOptions opts;
  opts.dense_limit = c.dense_limit;
  const auto states = evolve(inst.h, psi0, c.times, opts);
  const double rmin = inst.family.r_min();
  const double v = inst.speeds.v;
  r.parameters.emplace_back("v", short_num(v));
  r.parameters.emplace_back("R_min", short_num(rmin));

  struct Placement {
    Region y;
    double d;
    DiagonalObservable p;
  };
  std::vector<Placement> ys;
  for (const Region& y : build_y_regions(c, inst.lattice, inst.x)) {
    const double d = region_distance(inst.lattice, inst.x, y);
    ys.push_back({y, d, number_projector(inst.sector, y, Comparison::GreaterEqual, c.xi)});
  }
  std::stable_sort(ys.begin(), ys.end(), [](const Placement& a, const Placement& b) { return a.d < b.d; });

  const CutoffFunction f = make_f(c);
  double in_max = 0.0, out_max = 0.0;
  int in_count = 0;
  bool t0_zero = true, monotone = true, sandwich = true;
  std::string sandwich_detail;
  std::vector<Series> series(ys.size());
  for (std::size_t k = 0; k < ys.size(); ++k) series[k].name = "d=" + short_num(ys[k].d);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double t = c.times[i];
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < ys.size(); ++k) {
      const double val = expectation(ys[k].p, states[i]);
      const bool in_cone = ys[k].d >= v * t + c.cone_factor * rmin;
      if (t == 0.0 && val != 0.0) t0_zero = false;
      if (val > prev + c.monotone_slack) monotone = false;
      prev = val;
      if (in_cone) {
        ++in_count;
        in_max = std::max(in_max, val);
        const SandwichReport rep = check_sandwich(inst.family, inst.x, ys[k].y, f, c.eta, c.xi, t,
                                                  inst.speeds.epsilon * ys[k].d, {c.cone_factor, true});
        if (!rep.pass()) {
          sandwich = false;
          sandwich_detail = rep.describe(*inst.sector);
        }
      } else {
        out_max = std::max(out_max, val);
      }
      series[k].x.push_back(t);
      series[k].y.push_back(val);
      r.rows.push_back({num(t), num(ys[k].d), in_cone ? "1" : "0", num(val)});
    }
  }
  r.measured["in_cone_max"] = in_max;
  r.measured["out_of_cone_max"] = out_max;
  r.checks.push_back({"t0_vanishes", t0_zero, "<P(N_Y/N >= xi)> = 0 at t = 0"});
  r.checks.push_back({"in_cone_ceiling", in_count > 0 && in_max <= c.bound_ceiling,
                      std::to_string(in_count) + " in-cone points, max " + short_num(in_max) + " (ceiling " +
                          short_num(c.bound_ceiling) + ")"});
  r.checks.push_back({"monotone_in_distance", monotone, "nonincreasing in d_XY at each t"});
  r.checks.push_back({"transport_contrast", out_max > 0.0 && out_max >= c.contrast_factor * in_max,
                      "out-of-cone max " + short_num(out_max) + " vs " + short_num(c.contrast_factor) + " x " +
                          short_num(in_max)});
  r.checks.push_back({"sandwich_relations", sandwich && in_count > 0,
                      sandwich ? "exact on every in-cone (t, Y) with s = eps d_XY" : sandwich_detail});
  r.plot_xlabel = "t";
  r.plot_ylabel = "<P(N_Y/N >= xi)>_t";
  r.plot = std::move(series);
  return r;
}

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport r;
  if (name == "kappa_bounds")
    r = exp_kappa_bounds(config);
  else if (name == "commutator_expansion")
    r = exp_commutator_expansion(config);
  else if (name == "heisenberg_bound")
    r = exp_heisenberg_bound(config);
  else if (name == "monotonicity")
    r = exp_monotonicity(config);
  else if (name == "lightcone")
    r = exp_lightcone(config);
  else
    throw std::invalid_argument("unknown experiment '" + name + "'");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace bhcone
