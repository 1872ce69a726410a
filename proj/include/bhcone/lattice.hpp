#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <vector>

namespace bhcone {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Point = Eigen::VectorXd;

/// Finite set of sites embedded in R^d. Site identifiers are the row indices
/// of the coordinate matrix; distances are Euclidean in the embedding.
class EmbeddedLattice {
 public:
  explicit EmbeddedLattice(RealMatrix coords);

  static EmbeddedLattice chain(int sites, double spacing = 1.0);
  static EmbeddedLattice square(int lx, int ly, double spacing = 1.0);

  int size() const { return static_cast<int>(coords_.rows()); }
  int dim() const { return static_cast<int>(coords_.cols()); }
  const RealMatrix& coords() const { return coords_; }
  Point coord(int site) const { return coords_.row(site).transpose(); }

  double distance(int x, int y) const;

  /// Copy with every coordinate shifted by -origin.
  EmbeddedLattice translated(const Point& origin) const;

  /// Euclidean norm |x| of every site coordinate.
  RealVector norms() const { return coords_.rowwise().norm(); }

 private:
  RealMatrix coords_;
};

/// Subset of lattice sites, stored sorted and unique.
class Region {
 public:
  Region(int lattice_size, std::vector<int> sites);

  static Region all(int lattice_size);
  static Region none(int lattice_size) { return Region(lattice_size, {}); }
  /// Sites first..last inclusive.
  static Region range(int lattice_size, int first, int last);

  int lattice_size() const { return lattice_size_; }
  const std::vector<int>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  bool empty() const { return sites_.empty(); }
  bool contains(int site) const;
  bool disjoint(const Region& other) const;

  Region complement() const;
  /// 0/1 vector over all lattice sites.
  RealVector indicator() const;

 private:
  int lattice_size_;
  std::vector<int> sites_;
};

/// Symmetric real one-particle hopping matrix. Diagonal entries are dropped:
/// they commute with every number-type observable and only shift energies.
class HoppingMatrix {
 public:
  explicit HoppingMatrix(RealMatrix entries, double symmetry_tol = 0.0);

  static HoppingMatrix zero(int sites) { return HoppingMatrix(RealMatrix::Zero(sites, sites)); }
  /// J on every pair at the minimal pairwise distance of the lattice.
  static HoppingMatrix nearest_neighbor(const EmbeddedLattice& lattice, double amplitude);
  /// J |x-y|^{-alpha} on every pair x != y.
  static HoppingMatrix power_law(const EmbeddedLattice& lattice, double amplitude, double alpha);

  int size() const { return static_cast<int>(entries_.rows()); }
  const RealMatrix& matrix() const { return entries_; }

 private:
  RealMatrix entries_;
};

/// Speeds entering the smeared light cone: v > v_max, v' = (1 - epsilon) v.
struct ConeSpeeds {
  double v = 0.0;
  double v_max = 0.0;
  double epsilon = 0.0;
  double v_prime = 0.0;
};

struct LightConeParams {
  ConeSpeeds speeds;
  double s = 1.0;       // adiabatic scale
  double r_min_x = 0.0;  // radius of the smallest ball enclosing X
};

struct Ball {
  Point center;
  double radius = 0.0;
};

/// kappa^(p) = max_x sum_y |J_xy| |x-y|^p; kappa^(1) is the maximal speed v_max.
double kappa_p(const HoppingMatrix& hopping, const EmbeddedLattice& lattice, int p);

/// Entries J_xy (F(x) - F(y))^k, i.e. ad^k_F(J) for the multiplication operator F.
RealMatrix iterated_commutator_matrix(const HoppingMatrix& hopping, const RealVector& f, int k);

/// i^k * ad, the Hermitian form of a k-fold commutator of a real symmetric matrix.
ComplexMatrix hermitian_form(const RealMatrix& ad, int k);

/// Spectral norm (largest |eigenvalue|) of a Hermitian matrix.
double one_particle_norm(const ComplexMatrix& a, double hermiticity_tol = 1e-12);
double one_particle_norm(const RealMatrix& a, double hermiticity_tol = 1e-12);

/// Schur test bound: max_x sum_y |A_xy|.
template <typename Derived>
double schur_bound(const Eigen::MatrixBase<Derived>& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().rowwise().sum().maxCoeff();
}

Ball smallest_enclosing_ball(const EmbeddedLattice& lattice, const Region& region);

double region_distance(const EmbeddedLattice& lattice, const Region& x, const Region& y);

/// epsilon = min(1/4, (v - v_max) / (2v)).
ConeSpeeds choose_epsilon(double v, double v_max);

}  // namespace bhcone
