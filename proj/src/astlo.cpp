#include "bhcone/astlo.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bhcone {

namespace {

Ball checked_ball(const EmbeddedLattice& lattice, const Region& x) {
  if (x.empty()) throw std::invalid_argument("region X must be nonempty");
  return smallest_enclosing_ball(lattice, x);
}

// (1/N) sum_x w_x n_x, summed in site order for reproducible rounding
DiagonalObservable weighted_number(const SectorPtr& sector, const RealVector& w) {
  const int n = sector->particles();
  DiagonalObservable out{sector, RealVector(sector->dimension())};
  for (int b = 0; b < sector->dimension(); ++b) {
    double acc = 0.0;
    for (int x = 0; x < sector->sites(); ++x) acc += w(x) * sector->occupation(b, x);
    out.values(b) = acc / n;
  }
  return out;
}

}  // namespace

AstloFamily::AstloFamily(SectorPtr sector, const EmbeddedLattice& lattice, const Region& x, CutoffFunction chi,
                         ConeSpeeds speeds)
    : sector_(std::move(sector)),
      centered_(lattice.translated(checked_ball(lattice, x).center)),
      ball_(checked_ball(lattice, x)),
      radii_(centered_.norms()),
      chi_(std::move(chi)),
      speeds_(speeds) {
  if (!sector_) throw std::invalid_argument("ASTLO needs a sector");
  if (sector_->particles() == 0) throw std::invalid_argument("ASTLO needs N > 0");
  if (sector_->sites() != lattice.size()) throw std::invalid_argument("sector/lattice size mismatch");
  if (!(speeds_.v_prime > speeds_.v_max)) throw std::invalid_argument("cone speeds need v' > v_max");
}

const CutoffFunction& AstloFamily::tilde_chi() const {
  std::call_once(tilde_->once, [this] { tilde_->value.emplace(tilde_cutoff(chi_)); });
  return *tilde_->value;
}

RealVector AstloFamily::site_weights(double t, double s, AstloVariant variant) const {
  if (!(s > 0.0)) throw std::invalid_argument("adiabatic scale s must be positive");
  const CutoffFunction& fn =
      (variant == AstloVariant::Tilde || variant == AstloVariant::TildePrime) ? tilde_chi() : chi_;
  const int order = (variant == AstloVariant::Prime || variant == AstloVariant::TildePrime) ? 1 : 0;
  RealVector w(radii_.size());
  for (Eigen::Index x = 0; x < radii_.size(); ++x)
    w(x) = fn.derivative(order, (radii_(x) - ball_.radius - speeds_.v_prime * t) / s);
  return w;
}

DiagonalObservable AstloFamily::build(double t, double s, AstloVariant variant) const {
  return weighted_number(sector_, site_weights(t, s, variant));
}

DiagonalObservable AstloFamily::time_derivative_phi(const CutoffFunction& f, double t, double s) const {
  const DiagonalObservable a = build(t, s, AstloVariant::Plain);
  const DiagonalObservable ap = build(t, s, AstloVariant::Prime);
  DiagonalObservable out{sector_, RealVector(a.values.size())};
  const double rate = -speeds_.v_prime / s;
  for (Eigen::Index b = 0; b < a.values.size(); ++b)
    out.values(b) = rate * f.derivative(1, a.values(b)) * ap.values(b);
  return out;
}

DiagonalObservable build_phi(const CutoffFunction& f, const DiagonalObservable& a) {
  return apply_function(a, f);
}

bool SandwichReport::pass() const {
  for (const auto& r : relations)
    if (!r.pass) return false;
  return true;
}

std::string SandwichReport::describe(const FockSector& sector) const {
  std::ostringstream os;
  for (const auto& r : relations) {
    os << r.name << ": " << (r.pass ? "ok" : "VIOLATED");
    if (!r.pass && r.witness >= 0) {
      os << " (margin " << r.worst_margin << " at state";
      for (int n : sector.state(r.witness)) os << ' ' << n;
      os << ')';
    }
    os << '\n';
  }
  return os.str();
}

SandwichReport check_sandwich(const AstloFamily& family, const Region& x, const Region& y, const CutoffFunction& f,
                              const Rational& eta, const Rational& xi, double t, double s,
                              const SandwichOptions& options) {
  const SectorPtr& sector = family.sector();
  if (!x.disjoint(y)) throw std::invalid_argument("X and Y must be disjoint");
  if (y.empty()) throw std::invalid_argument("Y must be nonempty");
  if (t < 0) throw std::invalid_argument("time must be nonnegative");
  const double dxy = region_distance(family.centered_lattice(), x, y);
  const double needed = family.speeds().v * t + options.cone_factor * family.r_min();
  if (options.require_cone && dxy < needed) {
    std::ostringstream os;
    os << "cone condition violated: d_XY = " << dxy << " < v t + " << options.cone_factor << " R_min(X) = " << needed;
    throw std::domain_error(os.str());
  }

  const DiagonalObservable a0 = family.build(0.0, s);
  const DiagonalObservable at = family.build(t, s);
  // same summation order as the ASTLO so both sides round identically
  const DiagonalObservable n_xc = weighted_number(sector, x.complement().indicator());
  const DiagonalObservable n_y = weighted_number(sector, y.indicator());
  const DiagonalObservable p_x = number_projector(sector, x.complement(), Comparison::LessEqual, eta);
  const DiagonalObservable p_y = number_projector(sector, y, Comparison::GreaterEqual, xi);
  const DiagonalObservable phi0 = build_phi(f, a0);
  const DiagonalObservable phit = build_phi(f, at);

  SandwichReport report;
  auto scan = [&](const std::string& name, auto&& margin) {
    RelationCheck rc{name};
    for (int b = 0; b < sector->dimension(); ++b) {
      const double m = margin(b);
      if (m < rc.worst_margin) {
        rc.worst_margin = m;
        rc.witness = b;
        rc.pass = false;
      }
    }
    report.relations.push_back(rc);
  };
  scan("N_Xc >= A_0", [&](int b) { return n_xc.values(b) - a0.values(b); });
  scan("N_Y <= A_t", [&](int b) { return at.values(b) - n_y.values(b); });
  scan("P(N_Xc <= eta) Phi(0) = 0", [&](int b) { return -std::abs(p_x.values(b) * phi0.values(b)); });
  scan("P(N_Y >= xi) Phi(t) = P(N_Y >= xi)",
       [&](int b) { return -std::abs(p_y.values(b) * phit.values(b) - p_y.values(b)); });
  return report;
}

}  // namespace bhcone
