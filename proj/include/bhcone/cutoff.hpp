#pragma once

#include "bhcone/lattice.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace bhcone {

inline constexpr double kDefaultBumpLambda = 0.05;
inline constexpr int kDefaultMaxOrder = 8;

/// lambda that reproduces exp(-1/(r-eta) - 1/(xi-r)).
inline double classic_bump_lambda(double eta, double xi) { return 1.0 / (xi - eta); }

/// Adaptive Gauss-Kronrod integral of f over [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// Smooth function g with compact support [lower, upper]; h = g^2 is the
/// admissible density built from it.
class RootProfile {
 public:
  virtual ~RootProfile() = default;
  virtual double lower() const = 0;
  virtual double upper() const = 0;
  /// g, g', ..., g^(n) at r.
  virtual std::vector<double> derivatives(int n, double r) const = 0;
  virtual int max_order() const { return 16; }
  virtual double value(double r) const { return derivatives(0, r)[0]; }
  double derivative(int n, double r) const { return derivatives(n, r)[n]; }
};

/// g(r) = exp(-lambda/u - lambda/(1-u)), u = (r - eta)/(xi - eta), zero outside (eta, xi).
class ExponentialBump final : public RootProfile {
 public:
  ExponentialBump(double eta, double xi, double lambda = kDefaultBumpLambda);
  double lower() const override { return eta_; }
  double upper() const override { return xi_; }
  std::vector<double> derivatives(int n, double r) const override;
  double value(double r) const override;
  double lambda() const { return lambda_; }

 private:
  double eta_, xi_, lambda_;
};

/// h >= 0 with h = g^2, g a RootProfile.
class AdmissibleFunction {
 public:
  explicit AdmissibleFunction(std::shared_ptr<const RootProfile> root);

  double eta() const { return root_->lower(); }
  double xi() const { return root_->upper(); }
  double operator()(double r) const {
    const double g = root_->value(r);
    return g * g;
  }
  /// sqrt(h), evaluated through g.
  double root(double r) const { return root_->value(r); }
  double derivative(int n, double r) const;
  double integral() const;
  const RootProfile& profile() const { return *root_; }

 private:
  std::shared_ptr<const RootProfile> root_;
};

/// Smooth step: 0 below eta, 1 above xi, f' = h / (integral of h) on the base
/// density h, optionally composed with an affine change of variable
/// f(r) = base((r - shift) / scale).
class CutoffFunction {
 public:
  explicit CutoffFunction(AdmissibleFunction density, int max_order = kDefaultMaxOrder);

  double eta() const { return eta_; }
  double xi() const { return xi_; }
  int max_order() const { return max_order_; }
  double mass() const { return mass_; }
  const AdmissibleFunction& density() const { return density_; }

  double operator()(double r) const { return derivative(0, r); }
  double derivative(int k, double r) const;

  /// r -> this((r - shift) / scale), scale > 0.
  CutoffFunction affine(double scale, double shift) const;

 private:
  double base_value(double u) const;

  AdmissibleFunction density_;
  // running integral of the density at kPanels + 1 equally spaced nodes
  std::shared_ptr<const std::vector<double>> cumulative_;
  double mass_ = 1.0;
  int max_order_ = kDefaultMaxOrder;
  double scale_ = 1.0, shift_ = 0.0;
  double eta_ = 0.0, xi_ = 1.0;
};

/// Product of a rising and a falling smooth step: 1 on [eta, xi], zero outside
/// (eta - delta, xi + delta), delta = (xi - eta)/4.
class Plateau final : public RootProfile {
 public:
  Plateau(double eta, double xi, double lambda = kDefaultBumpLambda);
  double lower() const override { return rise_.eta(); }
  double upper() const override { return fall_.xi(); }
  std::vector<double> derivatives(int n, double r) const override;
  int max_order() const override { return kDefaultMaxOrder; }

 private:
  CutoffFunction rise_, fall_;
};

CutoffFunction make_smooth_step(double eta, double xi, double lambda = kDefaultBumpLambda,
                                int max_order = kDefaultMaxOrder);
AdmissibleFunction make_admissible(double eta, double xi, double lambda = kDefaultBumpLambda);
CutoffFunction antiderivative_normalized(const AdmissibleFunction& h, int max_order = kDefaultMaxOrder);

/// Maps a step in C_{1/2,1} onto [eta, xi]: f(r) = f1((r - (2 eta - xi)) / (2 (xi - eta))).
CutoffFunction rescale_class(const CutoffFunction& f1, double eta, double xi);

/// Plateau proxy equal to 1 where f' can be nonzero.
AdmissibleFunction plateau_proxy(double eta, double xi, double lambda = kDefaultBumpLambda);

/// Normalized antiderivative of the squared plateau proxy of chi.
CutoffFunction tilde_cutoff(const CutoffFunction& chi, double lambda = kDefaultBumpLambda);

/// k-th radial derivative of chi((r - R_min - v' t) / s), including s^{-k}.
double scaled_eval(const CutoffFunction& chi, const LightConeParams& params, double t, double radius,
                   int order);

}  // namespace bhcone
