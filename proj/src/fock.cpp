#include "bhcone/fock.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace bhcone {

long long FockSector::count(int sites, int particles) {
  // C(N + M - 1, N) in long double, saturating far above any usable cap
  long double c = 1.0L;
  for (int i = 1; i <= particles; ++i) {
    c = c * (sites - 1 + i) / i;
    if (c > 9e18L) return -1;
  }
  return static_cast<long long>(std::llround(static_cast<double>(c)));
}

FockSector::FockSector(int sites, int particles, long long dimension_cap) : sites_(sites), particles_(particles) {
  if (sites < 1) throw std::invalid_argument("sector needs at least one site");
  if (particles < 0) throw std::invalid_argument("particle number must be nonnegative");
  if (particles > 255) throw std::invalid_argument("particle number above 255 is not supported");
  const long long dim = count(sites, particles);
  if (dim < 0 || dim > dimension_cap)
    throw std::length_error("sector dimension C(" + std::to_string(particles + sites - 1) + "," +
                            std::to_string(particles) + ") exceeds the cap " + std::to_string(dimension_cap));
  dimension_ = static_cast<int>(dim);

  stride_ = particles + sites + 1;
  binom_.assign(static_cast<std::size_t>(stride_) * stride_, 0);
  for (int n = 0; n < stride_; ++n) {
    binom_[n * stride_] = 1;
    for (int k = 1; k <= n; ++k) binom_[n * stride_ + k] = binom_[(n - 1) * stride_ + k - 1] + binom_[(n - 1) * stride_ + k];
  }

  occ_.reserve(static_cast<std::size_t>(dimension_) * sites_);
  std::vector<int> cur(sites_, 0);
  // depth-first, largest occupation first
  std::function<void(int, int)> rec = [&](int site, int rem) {
    if (site == sites_ - 1) {
      cur[site] = rem;
      occ_.insert(occ_.end(), cur.begin(), cur.end());
      return;
    }
    for (int n = rem; n >= 0; --n) {
      cur[site] = n;
      rec(site + 1, rem - n);
    }
  };
  rec(0, particles_);
}

long long FockSector::ways(int k, int r) const {
  // distributions of r bosons over k sites
  if (r < 0) return 0;
  if (k == 0) return r == 0 ? 1 : 0;
  return binom_[static_cast<std::size_t>(r + k - 1) * stride_ + (k - 1)];
}

Occupation FockSector::state(int index) const {
  if (index < 0 || index >= dimension_) throw std::out_of_range("basis index out of range");
  return Occupation(occ_.begin() + static_cast<std::ptrdiff_t>(index) * sites_,
                    occ_.begin() + static_cast<std::ptrdiff_t>(index + 1) * sites_);
}

int FockSector::index(const Occupation& n) const {
  if (static_cast<int>(n.size()) != sites_) return -1;
  int rem = particles_;
  long long idx = 0;
  for (int i = 0; i < sites_; ++i) {
    if (n[i] < 0 || n[i] > rem) return -1;
    idx += ways(sites_ - i, rem - n[i] - 1);
    rem -= n[i];
  }
  return rem == 0 ? static_cast<int>(idx) : -1;
}

int FockSector::hop(int index, int x, int y) const {
  Occupation n = state(index);
  if (n[y] == 0) return -1;
  --n[y];
  ++n[x];
  return this->index(n);
}

SectorPtr enumerate_sector(int sites, int particles, long long dimension_cap) {
  return std::make_shared<const FockSector>(sites, particles, dimension_cap);
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r{std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
    if (r.den <= 0) throw std::invalid_argument("rational threshold needs a positive denominator: " + text);
    const long long g = std::gcd(r.num, r.den);
    return {r.num / g, r.den / g};
  }
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  long long num = 0, den = 1;
  bool digits = false, dot = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.' && !dot) {
      dot = true;
    } else if (c >= '0' && c <= '9') {
      if (num > 100000000000000LL) throw std::invalid_argument("too many digits in threshold: " + text);
      num = num * 10 + (c - '0');
      if (dot) den *= 10;
      digits = true;
    } else {
      throw std::invalid_argument("not a decimal number: " + text);
    }
  }
  if (!digits) throw std::invalid_argument("not a decimal number: " + text);
  const long long g = std::gcd(num, den);
  return {negative ? -num / g : num / g, den / g};
}

Rational Rational::from_double(double value, long long max_den) {
  if (!std::isfinite(value)) throw std::invalid_argument("threshold must be finite");
  // shortest decimal expansion that round-trips, capped at max_den
  for (long long den = 1; den <= max_den; den *= 10) {
    const double scaled = value * static_cast<double>(den);
    const double rounded = std::round(scaled);
    if (rounded / static_cast<double>(den) == value) {
      const long long num = static_cast<long long>(rounded);
      const long long g = std::gcd(num, den);
      return {num / g, den / g};
    }
  }
  throw std::invalid_argument("threshold has no short decimal form: " + std::to_string(value));
}

DiagonalObservable DiagonalObservable::operator*(const DiagonalObservable& other) const {
  if (sector != other.sector) throw std::invalid_argument("observables live on different sectors");
  return {sector, values.cwiseProduct(other.values)};
}

StateVector mott_state(const SectorPtr& sector, const Occupation& nu) {
  if (static_cast<int>(nu.size()) != sector->sites()) throw std::invalid_argument("Mott occupation has wrong length");
  if (std::accumulate(nu.begin(), nu.end(), 0) != sector->particles())
    throw std::invalid_argument("Mott occupation does not sum to the sector particle number");
  const int idx = sector->index(nu);
  if (idx < 0) throw std::invalid_argument("Mott occupation is not a valid basis state");
  StateVector psi{sector, ComplexVector::Zero(sector->dimension())};
  psi.amplitudes(idx) = 1.0;
  return psi;
}

DiagonalObservable local_number(const SectorPtr& sector, const Region& region, bool normalized) {
  if (region.lattice_size() != sector->sites()) throw std::invalid_argument("region/sector size mismatch");
  DiagonalObservable out{sector, RealVector::Zero(sector->dimension())};
  for (int b = 0; b < sector->dimension(); ++b) {
    int total = 0;
    for (int x : region.sites()) total += sector->occupation(b, x);
    out.values(b) = total;
  }
  if (normalized) {
    if (sector->particles() == 0) throw std::invalid_argument("normalized local number needs N > 0");
    out.values /= sector->particles();
  }
  return out;
}

DiagonalObservable number_projector(const SectorPtr& sector, const Region& region, Comparison cmp,
                                    const Rational& threshold) {
  if (sector->particles() == 0) throw std::invalid_argument("number projector needs N > 0");
  if (threshold.den <= 0) throw std::invalid_argument("threshold needs a positive denominator");
  const DiagonalObservable counts = local_number(sector, region, false);
  DiagonalObservable out{sector, RealVector::Zero(sector->dimension())};
  const __int128 rhs = static_cast<__int128>(threshold.num) * sector->particles();
  for (int b = 0; b < sector->dimension(); ++b) {
    const __int128 lhs = static_cast<__int128>(counts.values(b)) * threshold.den;
    const bool hit = cmp == Comparison::LessEqual ? lhs <= rhs : lhs >= rhs;
    out.values(b) = hit ? 1.0 : 0.0;
  }
  return out;
}

DiagonalObservable spectral_projector(const DiagonalObservable& obs, Comparison cmp, double threshold) {
  return apply_function(obs, [&](double v) {
    return (cmp == Comparison::LessEqual ? v <= threshold : v >= threshold) ? 1.0 : 0.0;
  });
}

DiagonalObservable second_quantize_diagonal(const SectorPtr& sector, const RealVector& f) {
  if (f.size() != sector->sites()) throw std::invalid_argument("site function has wrong length");
  DiagonalObservable out{sector, RealVector::Zero(sector->dimension())};
  for (int b = 0; b < sector->dimension(); ++b) {
    double acc = 0.0;
    for (int x = 0; x < sector->sites(); ++x) acc += f(x) * sector->occupation(b, x);
    out.values(b) = acc;
  }
  return out;
}

SparseOperator second_quantize(const SectorPtr& sector, const ComplexMatrix& a, double hermiticity_tol) {
  const int m = sector->sites();
  if (a.rows() != m || a.cols() != m) throw std::invalid_argument("one-particle matrix has wrong shape");
  const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
  if (a.size() && (a - a.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol * scale)
    throw std::invalid_argument("second_quantize expects a Hermitian one-particle matrix");

  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  Occupation n(m);
  for (int b = 0; b < sector->dimension(); ++b) {
    for (int x = 0; x < m; ++x) n[x] = sector->occupation(b, x);
    std::complex<double> diag = 0.0;
    for (int x = 0; x < m; ++x) diag += a(x, x) * static_cast<double>(n[x]);
    if (diag != 0.0) trip.emplace_back(b, b, diag);
    for (int y = 0; y < m; ++y) {
      if (n[y] == 0) continue;
      for (int x = 0; x < m; ++x) {
        if (x == y || a(x, y) == 0.0) continue;
        --n[y];
        ++n[x];
        const int target = sector->index(n);
        const double amp = std::sqrt(static_cast<double>(n[x]) * (n[y] + 1));
        ++n[y];
        --n[x];
        trip.emplace_back(target, b, amp * a(x, y));
      }
    }
  }
  SparseOperator out(sector->dimension(), sector->dimension());
  out.setFromTriplets(trip.begin(), trip.end());
  out.makeCompressed();
  return out;
}

SparseOperator second_quantize(const SectorPtr& sector, const RealMatrix& a, double hermiticity_tol) {
  return second_quantize(sector, ComplexMatrix(a.cast<std::complex<double>>()), hermiticity_tol);
}

SparseOperator to_sparse(const DiagonalObservable& obs) {
  SparseOperator out(obs.values.size(), obs.values.size());
  std::vector<Eigen::Triplet<std::complex<double>>> trip;
  for (Eigen::Index i = 0; i < obs.values.size(); ++i)
    if (obs.values(i) != 0.0) trip.emplace_back(i, i, obs.values(i));
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

ComplexMatrix one_body_density(const StateVector& psi) {
  const FockSector& sec = *psi.sector;
  const int m = sec.sites();
  if (psi.amplitudes.size() != sec.dimension()) throw std::invalid_argument("state has wrong dimension");
  ComplexMatrix rho = ComplexMatrix::Zero(m, m);
  Occupation n(m);
  for (int b = 0; b < sec.dimension(); ++b) {
    const std::complex<double> amp = psi.amplitudes(b);
    if (amp == 0.0) continue;
    for (int x = 0; x < m; ++x) n[x] = sec.occupation(b, x);
    for (int x = 0; x < m; ++x) rho(x, x) += std::norm(amp) * static_cast<double>(n[x]);
    for (int y = 0; y < m; ++y) {
      if (n[y] == 0) continue;
      for (int x = 0; x < m; ++x) {
        if (x == y) continue;
        --n[y];
        ++n[x];
        const int target = sec.index(n);
        const double factor = std::sqrt(static_cast<double>(n[x]) * (n[y] + 1));
        ++n[y];
        --n[x];
        rho(x, y) += std::conj(psi.amplitudes(target)) * amp * factor;
      }
    }
  }
  return rho;
}

}  // namespace bhcone
