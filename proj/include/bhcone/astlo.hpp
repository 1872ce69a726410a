#pragma once

#include "bhcone/cutoff.hpp"
#include "bhcone/fock.hpp"
#include "bhcone/lattice.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace bhcone {

enum class AstloVariant { Plain, Prime, Tilde, TildePrime };

/// A_{t,s} = (1/N) sum_x chi((|x| - R_min(X) - v' t) / s) n_x with |x| measured
/// from the center of the smallest ball enclosing X.
class AstloFamily {
 public:
  AstloFamily(SectorPtr sector, const EmbeddedLattice& lattice, const Region& x, CutoffFunction chi,
              ConeSpeeds speeds);

  const SectorPtr& sector() const { return sector_; }
  const EmbeddedLattice& centered_lattice() const { return centered_; }
  const RealVector& radii() const { return radii_; }
  double r_min() const { return ball_.radius; }
  const Ball& ball() const { return ball_; }
  const ConeSpeeds& speeds() const { return speeds_; }
  const CutoffFunction& chi() const { return chi_; }

  LightConeParams params(double s) const { return {speeds_, s, ball_.radius}; }

  /// Per-site weights of the requested variant.
  RealVector site_weights(double t, double s, AstloVariant variant = AstloVariant::Plain) const;
  DiagonalObservable build(double t, double s, AstloVariant variant = AstloVariant::Plain) const;

  /// d/dt f(A_{t,s}) = -(v'/s) f'(A_{t,s}) A'_{t,s}, evaluated on the diagonal.
  DiagonalObservable time_derivative_phi(const CutoffFunction& f, double t, double s) const;

  /// Normalized antiderivative of the squared plateau proxy of chi, built on first use.
  const CutoffFunction& tilde_chi() const;

 private:
  SectorPtr sector_;
  EmbeddedLattice centered_;
  Ball ball_;
  RealVector radii_;
  CutoffFunction chi_;
  ConeSpeeds speeds_;
  struct TildeCache {
    std::once_flag once;
    std::optional<CutoffFunction> value;
  };
  std::shared_ptr<TildeCache> tilde_ = std::make_shared<TildeCache>();
};

DiagonalObservable build_phi(const CutoffFunction& f, const DiagonalObservable& a);

struct RelationCheck {
  std::string name;
  bool pass = true;
  double worst_margin = 0.0;  // most negative slack seen, 0 if none
  int witness = -1;           // basis index of the worst entry
};

struct SandwichReport {
  std::vector<RelationCheck> relations;
  bool pass() const;
  std::string describe(const FockSector& sector) const;
};

struct SandwichOptions {
  double cone_factor = 2.0;
  bool require_cone = true;
};

/// Checks entrywise: N_{X^c}/N >= A_{0,s}; N_Y/N <= A_{t,s};
/// P(N_{X^c}/N <= eta) f(A_0) = 0; P(N_Y/N >= xi) f(A_t) = P(N_Y/N >= xi).
/// Throws if require_cone and d_XY < v t + cone_factor R_min(X).
SandwichReport check_sandwich(const AstloFamily& family, const Region& x, const Region& y, const CutoffFunction& f,
                              const Rational& eta, const Rational& xi, double t, double s,
                              const SandwichOptions& options = {});

}  // namespace bhcone
