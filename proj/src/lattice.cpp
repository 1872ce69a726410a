#include "bhcone/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bhcone {

EmbeddedLattice::EmbeddedLattice(RealMatrix coords) : coords_(std::move(coords)) {
  if (coords_.rows() == 0 || coords_.cols() == 0)
    throw std::invalid_argument("lattice needs at least one site and one dimension");
  if (!coords_.allFinite()) throw std::invalid_argument("lattice coordinates must be finite");
  for (int x = 0; x < size(); ++x)
    for (int y = x + 1; y < size(); ++y)
      if (distance(x, y) == 0.0)
        throw std::invalid_argument("lattice sites " + std::to_string(x) + " and " +
                                    std::to_string(y) + " coincide");
}

EmbeddedLattice EmbeddedLattice::chain(int sites, double spacing) {
  if (sites < 1) throw std::invalid_argument("chain needs at least one site");
  RealMatrix c(sites, 1);
  for (int i = 0; i < sites; ++i) c(i, 0) = spacing * i;
  return EmbeddedLattice(std::move(c));
}

EmbeddedLattice EmbeddedLattice::square(int lx, int ly, double spacing) {
  if (lx < 1 || ly < 1) throw std::invalid_argument("square lattice needs positive extents");
  RealMatrix c(lx * ly, 2);
  // row-major: site = iy * lx + ix
  for (int iy = 0; iy < ly; ++iy)
    for (int ix = 0; ix < lx; ++ix) {
      c(iy * lx + ix, 0) = spacing * ix;
      c(iy * lx + ix, 1) = spacing * iy;
    }
  return EmbeddedLattice(std::move(c));
}

double EmbeddedLattice::distance(int x, int y) const {
  return (coords_.row(x) - coords_.row(y)).norm();
}

EmbeddedLattice EmbeddedLattice::translated(const Point& origin) const {
  if (origin.size() != dim()) throw std::invalid_argument("origin has wrong dimension");
  RealMatrix c = coords_.rowwise() - origin.transpose();
  return EmbeddedLattice(std::move(c));
}

Region::Region(int lattice_size, std::vector<int> sites)
    : lattice_size_(lattice_size), sites_(std::move(sites)) {
  if (lattice_size_ < 0) throw std::invalid_argument("negative lattice size");
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw std::invalid_argument("region lists a site twice");
  if (!sites_.empty() && (sites_.front() < 0 || sites_.back() >= lattice_size_))
    throw std::out_of_range("region site outside the lattice");
}

Region Region::all(int lattice_size) {
  std::vector<int> s(lattice_size);
  std::iota(s.begin(), s.end(), 0);
  return Region(lattice_size, std::move(s));
}

Region Region::range(int lattice_size, int first, int last) {
  std::vector<int> s;
  for (int i = first; i <= last; ++i) s.push_back(i);
  return Region(lattice_size, std::move(s));
}

bool Region::contains(int site) const {
  return std::binary_search(sites_.begin(), sites_.end(), site);
}

bool Region::disjoint(const Region& other) const {
  return std::none_of(sites_.begin(), sites_.end(), [&](int s) { return other.contains(s); });
}

Region Region::complement() const {
  std::vector<int> s;
  for (int i = 0; i < lattice_size_; ++i)
    if (!contains(i)) s.push_back(i);
  return Region(lattice_size_, std::move(s));
}

RealVector Region::indicator() const {
  RealVector v = RealVector::Zero(lattice_size_);
  for (int s : sites_) v(s) = 1.0;
  return v;
}

HoppingMatrix::HoppingMatrix(RealMatrix entries, double symmetry_tol) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw std::invalid_argument("hopping matrix must be square");
  if (!entries_.allFinite()) throw std::invalid_argument("hopping matrix has non-finite entries");
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (entries_.size() > 0 && asym > symmetry_tol)
    throw std::invalid_argument("hopping matrix is not symmetric");
  entries_.diagonal().setZero();
}

HoppingMatrix HoppingMatrix::nearest_neighbor(const EmbeddedLattice& lattice, double amplitude) {
  const int n = lattice.size();
  RealMatrix j = RealMatrix::Zero(n, n);
  double dmin = std::numeric_limits<double>::infinity();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) dmin = std::min(dmin, lattice.distance(x, y));
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (lattice.distance(x, y) <= dmin * (1.0 + 1e-9)) j(x, y) = j(y, x) = amplitude;
  return HoppingMatrix(std::move(j));
}

HoppingMatrix HoppingMatrix::power_law(const EmbeddedLattice& lattice, double amplitude, double alpha) {
  const int n = lattice.size();
  RealMatrix j = RealMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      j(x, y) = j(y, x) = amplitude * std::pow(lattice.distance(x, y), -alpha);
  return HoppingMatrix(std::move(j));
}

double kappa_p(const HoppingMatrix& hopping, const EmbeddedLattice& lattice, int p) {
  if (p < 0) throw std::invalid_argument("kappa_p needs p >= 0");
  if (hopping.size() != lattice.size()) throw std::invalid_argument("hopping/lattice size mismatch");
  const RealMatrix& j = hopping.matrix();
  double best = 0.0;
  for (int x = 0; x < lattice.size(); ++x) {
    double row = 0.0;
    for (int y = 0; y < lattice.size(); ++y) {
      if (x == y) continue;
      row += std::abs(j(x, y)) * std::pow(lattice.distance(x, y), p);
    }
    best = std::max(best, row);
  }
  return best;
}

RealMatrix iterated_commutator_matrix(const HoppingMatrix& hopping, const RealVector& f, int k) {
  if (k < 1) throw std::invalid_argument("commutator order must be >= 1");
  if (f.size() != hopping.size()) throw std::invalid_argument("site function has wrong length");
  const int n = hopping.size();
  RealMatrix out(n, n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) out(x, y) = hopping.matrix()(x, y) * std::pow(f(x) - f(y), k);
  return out;
}

ComplexMatrix hermitian_form(const RealMatrix& ad, int k) {
  static const std::complex<double> phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return phases[((k % 4) + 4) % 4] * ad.cast<std::complex<double>>();
}

double one_particle_norm(const ComplexMatrix& a, double hermiticity_tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("norm of a non-square matrix");
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol * scale)
    throw std::invalid_argument("one_particle_norm expects a Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double one_particle_norm(const RealMatrix& a, double hermiticity_tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("norm of a non-square matrix");
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > hermiticity_tol * scale)
    throw std::invalid_argument("one_particle_norm expects a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

namespace {

// Ball with all support points on its boundary and center in their affine hull.
bool circumball(const std::vector<Point>& pts, Ball& out) {
  const Point& p0 = pts.front();
  const int m = static_cast<int>(pts.size()) - 1;
  if (m == 0) {
    out = {p0, 0.0};
    return true;
  }
  RealMatrix v(p0.size(), m);
  for (int i = 0; i < m; ++i) v.col(i) = pts[i + 1] - p0;
  const RealMatrix gram = v.transpose() * v;
  Eigen::FullPivLU<RealMatrix> lu(gram);
  if (lu.rank() < m) return false;
  const RealVector lambda = lu.solve(0.5 * gram.diagonal());
  const Point c = p0 + v * lambda;
  out = {c, (c - p0).norm()};
  return true;
}

template <typename Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

Ball smallest_enclosing_ball(const EmbeddedLattice& lattice, const Region& region) {
  if (region.empty()) throw std::invalid_argument("smallest_enclosing_ball of an empty region");
  if (region.lattice_size() != lattice.size()) throw std::invalid_argument("region/lattice size mismatch");
  std::vector<Point> pts;
  for (int s : region.sites()) pts.push_back(lattice.coord(s));
  const int n = static_cast<int>(pts.size());
  Ball best{pts.front(), std::numeric_limits<double>::infinity()};
  const double slack = 1e-12 * (1.0 + lattice.coords().cwiseAbs().maxCoeff());
  for (int k = 1; k <= std::min(n, lattice.dim() + 1); ++k) {
    for_each_subset(n, k, [&](const std::vector<int>& idx) {
      std::vector<Point> support;
      for (int i : idx) support.push_back(pts[i]);
      Ball b;
      if (!circumball(support, b) || b.radius >= best.radius) return;
      for (const Point& p : pts)
        if ((p - b.center).norm() > b.radius + slack) return;
      best = b;
    });
  }
  return best;
}

double region_distance(const EmbeddedLattice& lattice, const Region& x, const Region& y) {
  if (x.empty() || y.empty()) throw std::invalid_argument("region_distance of an empty region");
  double d = std::numeric_limits<double>::infinity();
  for (int a : x.sites())
    for (int b : y.sites()) d = std::min(d, lattice.distance(a, b));
  return d;
}

ConeSpeeds choose_epsilon(double v, double v_max) {
  if (!(v > v_max)) throw std::invalid_argument("light-cone speed v must exceed v_max");
  if (v_max < 0) throw std::invalid_argument("v_max must be nonnegative");
  ConeSpeeds c;
  c.v = v;
  c.v_max = v_max;
  c.epsilon = std::min(0.25, (v - v_max) / (2.0 * v));
  c.v_prime = (1.0 - c.epsilon) * v;
  return c;
}

}  // namespace bhcone
