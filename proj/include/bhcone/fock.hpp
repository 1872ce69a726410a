#pragma once

#include "bhcone/cutoff.hpp"
#include "bhcone/lattice.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bhcone {

using SparseOperator = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;
using Occupation = std::vector<int>;

inline constexpr long long kDefaultDimensionCap = 500000;

/// Fixed-N bosonic sector on M sites. Basis states are occupation vectors in
/// lexicographically descending order, so (N, 0, ..., 0) has index 0.
class FockSector {
 public:
  FockSector(int sites, int particles, long long dimension_cap = kDefaultDimensionCap);

  int sites() const { return sites_; }
  int particles() const { return particles_; }
  int dimension() const { return dimension_; }

  /// n_x in basis state `index`.
  int occupation(int index, int site) const { return occ_[static_cast<std::size_t>(index) * sites_ + site]; }
  Occupation state(int index) const;
  /// Position of an occupation vector in the basis, -1 if it is not in the sector.
  int index(const Occupation& n) const;
  /// Index after moving one boson from site y to site x in basis state `index`.
  int hop(int index, int x, int y) const;

  static long long count(int sites, int particles);

 private:
  long long ways(int k, int r) const;

  int sites_;
  int particles_;
  int dimension_ = 0;
  std::vector<std::uint8_t> occ_;
  std::vector<long long> binom_;  // (n, k) -> binom_[n * stride + k]
  int stride_ = 0;
};

using SectorPtr = std::shared_ptr<const FockSector>;

SectorPtr enumerate_sector(int sites, int particles, long long dimension_cap = kDefaultDimensionCap);

/// Exact decimal threshold num/den with den > 0.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational parse(const std::string& text);
  static Rational from_double(double value, long long max_den = 1000000);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

enum class Comparison { LessEqual, GreaterEqual };

struct DiagonalObservable {
  SectorPtr sector;
  RealVector values;

  DiagonalObservable operator*(const DiagonalObservable& other) const;
};

struct StateVector {
  SectorPtr sector;
  ComplexVector amplitudes;

  double norm() const { return amplitudes.norm(); }
};

StateVector mott_state(const SectorPtr& sector, const Occupation& nu);

/// N_S, or N_S / N when normalized.
DiagonalObservable local_number(const SectorPtr& sector, const Region& region, bool normalized = false);

/// 0/1 projector onto states with N_S / N (cmp) threshold, compared exactly.
DiagonalObservable number_projector(const SectorPtr& sector, const Region& region, Comparison cmp,
                                    const Rational& threshold);

/// Projector onto entries of obs satisfying (cmp) threshold in floating point.
DiagonalObservable spectral_projector(const DiagonalObservable& obs, Comparison cmp, double threshold);

/// sum_x F(x) n_x
DiagonalObservable second_quantize_diagonal(const SectorPtr& sector, const RealVector& f);

/// sum_{x,y} A_xy b_x^dagger b_y on the sector.
SparseOperator second_quantize(const SectorPtr& sector, const ComplexMatrix& a, double hermiticity_tol = 1e-12);
SparseOperator second_quantize(const SectorPtr& sector, const RealMatrix& a, double hermiticity_tol = 1e-12);

template <typename F>
DiagonalObservable apply_function(const DiagonalObservable& obs, F&& f) {
  DiagonalObservable out{obs.sector, RealVector(obs.values.size())};
  for (Eigen::Index i = 0; i < obs.values.size(); ++i) out.values(i) = f(obs.values(i));
  return out;
}

inline DiagonalObservable apply_function(const DiagonalObservable& obs, const CutoffFunction& f, int order = 0) {
  return apply_function(obs, [&](double v) { return f.derivative(order, v); });
}

SparseOperator to_sparse(const DiagonalObservable& obs);

/// rho_xy = <b_x^dagger b_y>.
ComplexMatrix one_body_density(const StateVector& psi);

}  // namespace bhcone
