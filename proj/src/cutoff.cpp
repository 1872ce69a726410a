#include "bhcone/cutoff.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bhcone {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

void check_interval(double eta, double xi) {
  if (!(std::isfinite(eta) && std::isfinite(xi))) throw std::invalid_argument("cutoff thresholds must be finite");
  if (!(eta < xi)) throw std::invalid_argument("cutoff thresholds need eta < xi");
}

// Below this exponent exp() underflows and every derivative is zero.
constexpr double kExpFloor = -745.0;

constexpr int kPanels = 128;

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a < b)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol, &err);
}

ExponentialBump::ExponentialBump(double eta, double xi, double lambda) : eta_(eta), xi_(xi), lambda_(lambda) {
  check_interval(eta, xi);
  if (!(lambda > 0)) throw std::invalid_argument("bump lambda must be positive");
}

std::vector<double> ExponentialBump::derivatives(int n, double r) const {
  if (n < 0 || n > max_order()) throw std::out_of_range("bump derivative order out of range");
  std::vector<double> out(n + 1, 0.0);
  const double w = xi_ - eta_;
  const double u = (r - eta_) / w;
  if (!(u > 0.0 && u < 1.0)) return out;
  const double psi = -lambda_ / u - lambda_ / (1.0 - u);
  if (psi < kExpFloor) return out;

  // psi^(m) in u, m = 1..n
  std::vector<double> dpsi(n + 1, 0.0);
  double fact = 1.0;
  for (int m = 1; m <= n; ++m) {
    fact *= m;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    dpsi[m] = -lambda_ * (sign * fact / std::pow(u, m + 1) + fact / std::pow(1.0 - u, m + 1));
  }
  // G_{k+1} = sum_j C(k,j) psi^(j+1) G_{k-j}
  std::vector<double> g(n + 1, 0.0);
  g[0] = std::exp(psi);
  for (int k = 0; k < n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += binomial(k, j) * dpsi[j + 1] * g[k - j];
    g[k + 1] = acc;
  }
  double wn = 1.0;
  for (int k = 0; k <= n; ++k) {
    out[k] = g[k] / wn;
    wn *= w;
  }
  return out;
}

double ExponentialBump::value(double r) const {
  const double u = (r - eta_) / (xi_ - eta_);
  if (!(u > 0.0 && u < 1.0)) return 0.0;
  const double psi = -lambda_ / u - lambda_ / (1.0 - u);
  return psi < kExpFloor ? 0.0 : std::exp(psi);
}

AdmissibleFunction::AdmissibleFunction(std::shared_ptr<const RootProfile> root) : root_(std::move(root)) {
  if (!root_) throw std::invalid_argument("admissible function needs a root profile");
  check_interval(root_->lower(), root_->upper());
}

double AdmissibleFunction::derivative(int n, double r) const {
  if (n == 0) return (*this)(r);
  const std::vector<double> g = root_->derivatives(n, r);
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) acc += binomial(n, j) * g[j] * g[n - j];
  return acc;
}

double AdmissibleFunction::integral() const {
  return integrate([this](double r) { return (*this)(r); }, eta(), xi());
}

CutoffFunction::CutoffFunction(AdmissibleFunction density, int max_order)
    : density_(std::move(density)), max_order_(max_order), eta_(density_.eta()), xi_(density_.xi()) {
  if (max_order < 0 || max_order > density_.profile().max_order() + 1)
    throw std::invalid_argument("cutoff max_order exceeds what the density supports");
  const double lo = density_.eta(), width = (density_.xi() - lo) / kPanels;
  auto h = [this](double q) { return density_(q); };
  auto cum = std::make_shared<std::vector<double>>(kPanels + 1, 0.0);
  for (int p = 0; p < kPanels; ++p) (*cum)[p + 1] = (*cum)[p] + integrate(h, lo + p * width, lo + (p + 1) * width);
  mass_ = cum->back();
  if (!(mass_ > 0.0)) throw std::invalid_argument("admissible function has zero integral");
  cumulative_ = std::move(cum);
}

double CutoffFunction::base_value(double u) const {
  const double lo = density_.eta(), hi = density_.xi();
  if (u <= lo) return 0.0;
  if (u >= hi) return 1.0;
  auto h = [this](double q) { return density_(q); };
  const double width = (hi - lo) / kPanels;
  const int p = std::min(kPanels - 1, static_cast<int>((u - lo) / width));
  const double a = lo + p * width;
  const double partial = boost::math::quadrature::gauss<double, 20>::integrate(h, a, u);
  // the upper half is measured from the top so values near 1 keep full precision
  if (u <= 0.5 * (lo + hi)) return ((*cumulative_)[p] + partial) / mass_;
  return 1.0 - ((mass_ - (*cumulative_)[p]) - partial) / mass_;
}

double CutoffFunction::derivative(int k, double r) const {
  if (k < 0 || k > max_order_) throw std::out_of_range("cutoff derivative order out of range");
  if (r <= eta_) return 0.0;
  if (r >= xi_) return k == 0 ? 1.0 : 0.0;
  const double u = (r - shift_) / scale_;
  if (k == 0) return base_value(u);
  return density_.derivative(k - 1, u) / mass_ / std::pow(scale_, k);
}

CutoffFunction CutoffFunction::affine(double scale, double shift) const {
  if (!(scale > 0.0) || !std::isfinite(shift)) throw std::invalid_argument("affine map needs scale > 0");
  CutoffFunction out = *this;
  out.scale_ = scale * scale_;
  out.shift_ = shift + scale * shift_;
  out.eta_ = shift + scale * eta_;
  out.xi_ = shift + scale * xi_;
  return out;
}

Plateau::Plateau(double eta, double xi, double lambda)
    : rise_(make_smooth_step(eta - 0.25 * (xi - eta), eta, lambda)),
      fall_(make_smooth_step(xi, xi + 0.25 * (xi - eta), lambda)) {
  check_interval(eta, xi);
}

std::vector<double> Plateau::derivatives(int n, double r) const {
  if (n < 0 || n > max_order()) throw std::out_of_range("plateau derivative order out of range");
  std::vector<double> up(n + 1), down(n + 1);
  for (int j = 0; j <= n; ++j) {
    up[j] = rise_.derivative(j, r);
    down[j] = (j == 0 ? 1.0 : 0.0) - fall_.derivative(j, r);
  }
  std::vector<double> out(n + 1, 0.0);
  for (int m = 0; m <= n; ++m)
    for (int j = 0; j <= m; ++j) out[m] += binomial(m, j) * up[j] * down[m - j];
  return out;
}

CutoffFunction make_smooth_step(double eta, double xi, double lambda, int max_order) {
  return CutoffFunction(make_admissible(eta, xi, lambda), max_order);
}

AdmissibleFunction make_admissible(double eta, double xi, double lambda) {
  if (eta < 0) throw std::invalid_argument("cutoff thresholds need eta >= 0");
  return AdmissibleFunction(std::make_shared<ExponentialBump>(eta, xi, lambda));
}

CutoffFunction antiderivative_normalized(const AdmissibleFunction& h, int max_order) {
  return CutoffFunction(h, max_order);
}

CutoffFunction rescale_class(const CutoffFunction& f1, double eta, double xi) {
  check_interval(eta, xi);
  if (eta < 0) throw std::invalid_argument("cutoff thresholds need eta >= 0");
  if (f1.eta() < 0.5 - 1e-12 || f1.xi() > 1.0 + 1e-12)
    throw std::invalid_argument("rescale_class expects a step in C_{1/2,1}");
  return f1.affine(2.0 * (xi - eta), 2.0 * eta - xi);
}

AdmissibleFunction plateau_proxy(double eta, double xi, double lambda) {
  return AdmissibleFunction(std::make_shared<Plateau>(eta, xi, lambda));
}

CutoffFunction tilde_cutoff(const CutoffFunction& chi, double lambda) {
  return antiderivative_normalized(plateau_proxy(chi.eta(), chi.xi(), lambda), chi.max_order());
}

double scaled_eval(const CutoffFunction& chi, const LightConeParams& params, double t, double radius,
                   int order) {
  if (!(params.s > 0.0)) throw std::invalid_argument("adiabatic scale s must be positive");
  const double arg = (radius - params.r_min_x - params.speeds.v_prime * t) / params.s;
  return chi.derivative(order, arg) / std::pow(params.s, order);
}

}  // namespace bhcone
