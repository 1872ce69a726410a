#include "bhcone/dynamics.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bhcone {

ModelSpec ModelSpec::standard(HoppingMatrix hopping, double u, double mu, int max_occupation) {
  if (max_occupation < 0) throw std::invalid_argument("max_occupation must be nonnegative");
  std::vector<double> table(max_occupation + 1);
  for (int n = 0; n <= max_occupation; ++n) table[n] = 0.5 * u * n * (n - 1);
  const int sites = hopping.size();
  return ModelSpec{std::move(hopping), std::vector<std::vector<double>>(sites, table), mu};
}

SparseOperator assemble_hamiltonian(const SectorPtr& sector, const ModelSpec& model) {
  const int m = sector->sites();
  if (model.hopping.size() != m) throw std::invalid_argument("hopping matrix does not match the sector sites");
  if (static_cast<int>(model.onsite.size()) != m) throw std::invalid_argument("onsite table does not match the sector sites");
  for (int x = 0; x < m; ++x)
    if (static_cast<int>(model.onsite[x].size()) <= sector->particles())
      throw std::invalid_argument("V_" + std::to_string(x) + " is undefined at occupation " +
                                  std::to_string(model.onsite[x].size()));

  SparseOperator h = -second_quantize(sector, model.hopping.matrix());
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  for (int b = 0; b < sector->dimension(); ++b) {
    double e = -model.mu * sector->particles();
    for (int x = 0; x < m; ++x) e += model.onsite[x][sector->occupation(b, x)];
    trip.emplace_back(b, b, e);
  }
  SparseOperator diag(sector->dimension(), sector->dimension());
  diag.setFromTriplets(trip.begin(), trip.end());
  SparseOperator out = h + diag;
  out.makeCompressed();
  return out;
}

bool is_real(const SparseOperator& a) {
  for (int k = 0; k < a.outerSize(); ++k)
    for (SparseOperator::InnerIterator it(a, k); it; ++it)
      if (it.value().imag() != 0.0) return false;
  return true;
}

namespace {

void check_state(const SparseOperator& h, const StateVector& psi) {
  if (h.rows() != h.cols()) throw std::invalid_argument("operator must be square");
  if (psi.amplitudes.size() != h.rows()) throw std::invalid_argument("state/operator dimension mismatch");
}

std::vector<StateVector> evolve_dense(const SparseOperator& h, const StateVector& psi0, const std::vector<double>& times) {
  const ComplexMatrix dense = h.toDense();
  ComplexMatrix vecs;
  RealVector vals;
  if (is_real(h)) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(dense.real());
    vecs = es.eigenvectors().cast<std::complex<double>>();
    vals = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense);
    vecs = es.eigenvectors();
    vals = es.eigenvalues();
  }
  const ComplexVector c0 = vecs.adjoint() * psi0.amplitudes;
  std::vector<StateVector> out;
  out.reserve(times.size());
  for (double t : times) {
    if (t == 0.0) {
      out.push_back(psi0);
      continue;
    }
    ComplexVector c(c0.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = std::polar(1.0, -vals(i) * t) * c0(i);
    out.push_back({psi0.sector, vecs * c});
  }
  return out;
}

// Lanczos propagator with full reorthogonalization; one basis is reused while
// the substep is halved until the a posteriori error estimate is met.
class KrylovPropagator {
 public:
  KrylovPropagator(const SparseOperator& h, int dim, double tol) : h_(h), m_(dim), tol_(tol) {
    if (dim < 2) throw std::invalid_argument("Krylov dimension must be at least 2");
  }

  void advance(ComplexVector& psi, double span) {
    double done = 0.0;
    while (span - done > 1e-14 * std::max(1.0, span)) {
      const double beta0 = psi.norm();
      build(psi / beta0);
      double dt = std::min(dt_try_, span - done);
      ComplexVector y;
      while (true) {
        y = small_propagator(dt);
        const double err = happy_ ? 0.0 : beta0 * last_beta_ * std::abs(y(meff_ - 1));
        if (err <= tol_) break;
        dt *= 0.5;
        if (dt < 1e-12 * std::max(1.0, span)) {
          std::ostringstream os;
          os << "Krylov evolution failed to reach tolerance " << tol_ << " (error " << err << ")";
          throw std::runtime_error(os.str());
        }
      }
      psi = beta0 * (basis_.leftCols(meff_) * y);
      done += dt;
      dt_try_ = happy_ ? span : 2.0 * dt;
    }
  }

 private:
  void build(const ComplexVector& v0) {
    const Eigen::Index n = v0.size();
    const int m = static_cast<int>(std::min<Eigen::Index>(m_, n));
    basis_.resize(n, m);
    RealVector alpha(m), beta(m);
    basis_.col(0) = v0;
    happy_ = false;
    meff_ = m;
    for (int j = 0; j < m; ++j) {
      ComplexVector w = h_ * basis_.col(j);
      alpha(j) = basis_.col(j).dot(w).real();
      // two passes of Gram-Schmidt against the whole basis
      for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i <= j; ++i) w -= basis_.col(i) * basis_.col(i).dot(w);
      beta(j) = w.norm();
      if (beta(j) <= 1e-12 * std::max(1.0, std::abs(alpha(j)))) {
        happy_ = true;
        meff_ = j + 1;
        break;
      }
      if (j + 1 < m) basis_.col(j + 1) = w / beta(j);
    }
    if (meff_ == n) happy_ = true;
    last_beta_ = beta(meff_ - 1);
    RealMatrix t = RealMatrix::Zero(meff_, meff_);
    for (int j = 0; j < meff_; ++j) {
      t(j, j) = alpha(j);
      if (j + 1 < meff_) t(j, j + 1) = t(j + 1, j) = beta(j);
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(t);
    q_ = es.eigenvectors();
    theta_ = es.eigenvalues();
  }

  ComplexVector small_propagator(double dt) const {
    ComplexVector c(meff_);
    for (int i = 0; i < meff_; ++i) c(i) = std::polar(1.0, -theta_(i) * dt) * q_(0, i);
    return q_.cast<std::complex<double>>() * c;
  }

  const SparseOperator& h_;
  int m_;
  double tol_;
  double dt_try_ = 0.1;
  ComplexMatrix basis_;
  RealMatrix q_;
  RealVector theta_;
  int meff_ = 0;
  bool happy_ = false;
  double last_beta_ = 0.0;
};

}  // namespace

std::vector<StateVector> evolve(const SparseOperator& h, const StateVector& psi0, const std::vector<double>& times,
                                const EvolutionOptions& options) {
  check_state(h, psi0);
  if (std::abs(psi0.norm() - 1.0) > options.norm_tolerance)
    throw std::invalid_argument("initial state is not normalized");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw std::invalid_argument("times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw std::invalid_argument("times must be nondecreasing");
  }
  const bool dense = options.method == EvolutionMethod::Dense ||
                     (options.method == EvolutionMethod::Auto && h.rows() <= options.dense_limit);
  if (dense) return evolve_dense(h, psi0, times);

  KrylovPropagator prop(h, options.krylov_dim, options.tolerance);
  std::vector<StateVector> out;
  out.reserve(times.size());
  ComplexVector psi = psi0.amplitudes;
  double now = 0.0;
  for (double t : times) {
    if (t > now) prop.advance(psi, t - now);
    now = t;
    out.push_back({psi0.sector, psi});
  }
  return out;
}

double expectation(const DiagonalObservable& a, const StateVector& psi) {
  if (a.values.size() != psi.amplitudes.size()) throw std::invalid_argument("observable/state dimension mismatch");
  return a.values.dot(psi.amplitudes.cwiseAbs2());
}

std::complex<double> expectation_value(const SparseOperator& a, const StateVector& psi) {
  check_state(a, psi);
  return psi.amplitudes.dot(a * psi.amplitudes);
}

double expectation(const SparseOperator& a, const StateVector& psi, double imag_tol) {
  const std::complex<double> v = expectation_value(a, psi);
  if (std::abs(v.imag()) > imag_tol * std::max(1.0, std::abs(v.real())))
    throw std::domain_error("expectation has an imaginary part; operator is not Hermitian");
  return v.real();
}

SparseOperator commutator_with_diagonal(const SparseOperator& h, const DiagonalObservable& d) {
  if (d.values.size() != h.rows() || h.rows() != h.cols()) throw std::invalid_argument("commutator shape mismatch");
  SparseOperator out = h;
  const std::complex<double> i(0.0, 1.0);
  for (int a = 0; a < out.outerSize(); ++a)
    for (SparseOperator::InnerIterator it(out, a); it; ++it)
      it.valueRef() = i * it.value() * (d.values(it.col()) - d.values(a));
  return out;
}

SparseOperator heisenberg_derivative(const SparseOperator& h, const DiagonalObservable& phi,
                                     const DiagonalObservable& dphi_dt) {
  if (phi.values.size() != dphi_dt.values.size()) throw std::invalid_argument("Phi and dPhi/dt shapes differ");
  SparseOperator out = commutator_with_diagonal(h, phi) + to_sparse(dphi_dt);
  out.makeCompressed();
  return out;
}

double max_eigenvalue(const SparseOperator& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("max_eigenvalue of a non-square operator");
  if (a.rows() == 0) throw std::invalid_argument("max_eigenvalue of an empty operator");
  const ComplexMatrix dense = a.toDense();
  if (is_real(a)) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(dense.real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(dense, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace bhcone
