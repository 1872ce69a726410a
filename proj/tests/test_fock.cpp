#include "bhcone/fock.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bhcone;

namespace {

ComplexMatrix dense(const SparseOperator& a) { return ComplexMatrix(a); }

// b_x^dagger b_y on occupation vectors, built independently of FockSector::hop.
ComplexMatrix lift_reference(const FockSector& sec, const ComplexMatrix& a) {
  const int d = sec.dimension(), m = sec.sites();
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const Occupation n = sec.state(col);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) {
        if (a(x, y) == 0.0) continue;
        if (x == y) {
          out(col, col) += a(x, x) * static_cast<double>(n[x]);
          continue;
        }
        if (n[y] == 0) continue;
        Occupation moved = n;
        moved[y] -= 1;
        moved[x] += 1;
        // linear scan so the index map is not used
        for (int row = 0; row < d; ++row)
          if (sec.state(row) == moved) out(row, col) += a(x, y) * std::sqrt(double(n[x] + 1) * n[y]);
      }
  }
  return out;
}

}  // namespace

TEST_SUITE("fock_space") {

TEST_CASE("sector dimensions and ordering") {
  CHECK(enumerate_sector(3, 2)->dimension() == 6);
  CHECK(enumerate_sector(10, 5)->dimension() == 2002);
  CHECK(FockSector::count(10, 5) == 2002);
  CHECK(enumerate_sector(4, 0)->dimension() == 1);
  const auto sec = enumerate_sector(3, 2);
  CHECK(sec->state(0) == Occupation{2, 0, 0});
  CHECK(sec->state(5) == Occupation{0, 0, 2});
  for (int i = 1; i < sec->dimension(); ++i) CHECK(sec->state(i - 1) > sec->state(i));
  CHECK_THROWS_AS(enumerate_sector(30, 30, 1000), std::length_error);
  CHECK_THROWS(enumerate_sector(0, 1));
}

TEST_CASE("index round trip") {
  const auto sec = enumerate_sector(6, 4);
  for (int i = 0; i < sec->dimension(); ++i) CHECK(sec->index(sec->state(i)) == i);
  CHECK(sec->index({1, 1, 1, 1, 1, 0}) == -1);
  CHECK(sec->index({4, 0, 0}) == -1);
}

TEST_CASE("Mott states") {
  const auto sec = enumerate_sector(3, 3);
  const StateVector psi = mott_state(sec, {1, 1, 1});
  CHECK(psi.norm() == 1.0);
  CHECK(psi.amplitudes(sec->index({1, 1, 1})) == std::complex<double>(1.0));
  CHECK(mott_state(sec, {3, 0, 0}).amplitudes(0) == std::complex<double>(1.0));
  CHECK_THROWS(mott_state(sec, {1, 1, 0}));
  const auto big = enumerate_sector(5, 4);
  const Occupation nu{2, 0, 1, 1, 0};
  const StateVector m = mott_state(big, nu);
  for (int x = 0; x < 5; ++x) {
    const DiagonalObservable nx = local_number(big, Region(5, {x}));
    CHECK((m.amplitudes.cwiseAbs2().transpose() * nx.values)(0) == doctest::Approx(nu[x]));
  }
}

TEST_CASE("local numbers") {
  const auto sec = enumerate_sector(2, 2);
  CHECK(local_number(sec, Region(2, {1})).values == RealVector::LinSpaced(3, 0, 2));
  CHECK(local_number(sec, Region::all(2)).values == RealVector::Constant(3, 2.0));
  CHECK(local_number(sec, Region::all(2), true).values == RealVector::Constant(3, 1.0));
  CHECK(local_number(sec, Region::none(2)).values.isZero());
}

TEST_CASE("exact projectors") {
  const auto sec = enumerate_sector(2, 2);
  const Region y(2, {1});
  const DiagonalObservable p = number_projector(sec, y, Comparison::GreaterEqual, Rational::parse("0.5"));
  CHECK(p.values == (RealVector(3) << 0, 1, 1).finished());
  CHECK((p * p).values == p.values);
  CHECK(number_projector(sec, Region::all(2), Comparison::LessEqual, Rational{1, 1}).values ==
        RealVector::Ones(3));
  // boundary case 3/10 on N=10 is inclusive in both directions
  const auto ten = enumerate_sector(2, 10);
  const DiagonalObservable ge = number_projector(ten, Region(2, {1}), Comparison::GreaterEqual, Rational::parse("0.3"));
  const DiagonalObservable le = number_projector(ten, Region(2, {1}), Comparison::LessEqual, Rational::parse("0.3"));
  const int at = ten->index({7, 3});
  CHECK(ge.values(at) == 1.0);
  CHECK(le.values(at) == 1.0);
  CHECK(ge.values(ten->index({8, 2})) == 0.0);
}

TEST_CASE("rational parsing") {
  const Rational a = Rational::parse("0.05");
  CHECK(a.num * 20 == a.den);
  const Rational b = Rational::parse("3/10");
  CHECK(b.value() == doctest::Approx(0.3));
  CHECK(Rational::from_double(0.3).value() == doctest::Approx(0.3));
  CHECK_THROWS(Rational::parse("abc"));
  CHECK_THROWS(Rational::parse("1/0"));
}

TEST_CASE("diagonal second quantization") {
  const auto sec = enumerate_sector(4, 3);
  CHECK(second_quantize_diagonal(sec, RealVector::Ones(4)).values == RealVector::Constant(sec->dimension(), 3.0));
  const Region s(4, {1, 3});
  CHECK(second_quantize_diagonal(sec, s.indicator()).values == local_number(sec, s).values);
  const DiagonalObservable f = second_quantize_diagonal(sec, RealVector::LinSpaced(4, 0, 1));
  const DiagonalObservable g = second_quantize_diagonal(sec, RealVector::LinSpaced(4, 2, -1));
  CHECK(((f * g).values - (g * f).values).isZero());
}

TEST_CASE("dGamma of the identity is N") {
  const auto sec = enumerate_sector(3, 2);
  const ComplexMatrix n = dense(second_quantize(sec, RealMatrix(RealMatrix::Identity(3, 3))));
  CHECK((n - 2.0 * ComplexMatrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("second quantization matches the reference lift") {
  std::mt19937_64 rng(17);
  const auto sec = enumerate_sector(4, 3);
  const ComplexMatrix a = oracle::random_hermitian(4, rng);
  CHECK((dense(second_quantize(sec, a)) - lift_reference(*sec, a)).norm() < 1e-13);
}

TEST_CASE("canonical commutation relations") {
  std::mt19937_64 rng(23);
  const auto sec = enumerate_sector(3, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(3, rng), b = oracle::random_hermitian(3, rng);
    const ComplexMatrix ga = dense(second_quantize(sec, a)), gb = dense(second_quantize(sec, b));
    // i[A, B] is Hermitian, so lift that and multiply back
    const std::complex<double> i(0, 1);
    const ComplexMatrix comm = i * (a * b - b * a);
    const ComplexMatrix lifted = dense(second_quantize(sec, comm)) / i;
    CHECK((ga * gb - gb * ga - lifted).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("linearity and hermiticity") {
  std::mt19937_64 rng(29);
  const auto sec = enumerate_sector(4, 2);
  const ComplexMatrix a = oracle::random_hermitian(4, rng), b = oracle::random_hermitian(4, rng);
  const ComplexMatrix lin = dense(second_quantize(sec, ComplexMatrix(0.7 * a - 1.3 * b)));
  const ComplexMatrix sum = 0.7 * dense(second_quantize(sec, a)) - 1.3 * dense(second_quantize(sec, b));
  CHECK((lin - sum).cwiseAbs().maxCoeff() < 1e-14);
  const ComplexMatrix ga = dense(second_quantize(sec, a));
  CHECK((ga - ga.adjoint()).norm() == 0.0);
  ComplexMatrix bad = ComplexMatrix::Zero(4, 4);
  bad(0, 1) = 1.0;
  CHECK_THROWS(second_quantize(sec, bad));
}

TEST_CASE("second quantization preserves order") {
  std::mt19937_64 rng(31);
  const auto sec = enumerate_sector(3, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = oracle::random_hermitian(3, rng);
    const ComplexMatrix c = oracle::random_hermitian(3, rng);
    const ComplexMatrix b = a + c * c.adjoint();  // B - A >= 0
    const ComplexMatrix diff = dense(second_quantize(sec, b)) - dense(second_quantize(sec, a));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("functional calculus on diagonals") {
  const auto sec = enumerate_sector(3, 2);
  const CutoffFunction f = make_smooth_step(0.05, 0.3);
  const DiagonalObservable zero{sec, RealVector::Zero(6)};
  CHECK(apply_function(zero, f).values.isZero());
  const DiagonalObservable above{sec, RealVector::Constant(6, 0.5)};
  CHECK(apply_function(above, f).values == RealVector::Ones(6));
  const DiagonalObservable mixed = local_number(sec, Region(3, {0}), true);
  const DiagonalObservable out = apply_function(mixed, f);
  for (int i = 0; i < 6; ++i) CHECK(out.values(i) == f(mixed.values(i)));
  const DiagonalObservable p = spectral_projector(mixed, Comparison::GreaterEqual, 0.5);
  CHECK(p.values.sum() == 3.0);
}

TEST_CASE("one-body density") {
  const auto sec = enumerate_sector(3, 2);
  const StateVector psi = mott_state(sec, {1, 0, 1});
  const ComplexMatrix rho = one_body_density(psi);
  CHECK(rho(0, 0) == std::complex<double>(1.0));
  CHECK(rho(1, 1) == std::complex<double>(0.0));
  CHECK(std::abs(rho(0, 2)) == 0.0);
  CHECK(rho.trace().real() == doctest::Approx(2.0));
}

}
