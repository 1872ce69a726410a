#include "bhcone/astlo.hpp"
#include "bhcone/dynamics.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace bhcone;

namespace {

ModelSpec two_site(double j) {
  RealMatrix m(2, 2);
  m << 0, j, j, 0;
  return ModelSpec::standard(HoppingMatrix(m), 0.0, 0.0, 1);
}

ModelSpec chain_model(int sites, int particles, double u, double mu = 0.0) {
  return ModelSpec::standard(HoppingMatrix::nearest_neighbor(EmbeddedLattice::chain(sites), 1.0), u, mu, particles);
}

}  // namespace

TEST_SUITE("model_dynamics") {

TEST_CASE("two-site Hamiltonian") {
  const auto sec = enumerate_sector(2, 1);
  const ComplexMatrix h = ComplexMatrix(assemble_hamiltonian(sec, two_site(1.0)));
  CHECK(h(0, 0) == 0.0);
  CHECK(h(0, 1) == -1.0);
  CHECK(h(1, 0) == -1.0);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
  CHECK(es.eigenvalues()(1) == doctest::Approx(1.0));
}

TEST_CASE("diagonal part of the standard model") {
  const auto sec = enumerate_sector(2, 2);
  const ModelSpec model = ModelSpec::standard(HoppingMatrix::zero(2), 1.0, 0.0, 2);
  const ComplexMatrix h = ComplexMatrix(assemble_hamiltonian(sec, model));
  CHECK(h(sec->index({2, 0}), sec->index({2, 0})) == 1.0);
  CHECK(h(sec->index({1, 1}), sec->index({1, 1})) == 0.0);
  CHECK((h - ComplexMatrix(h.diagonal().asDiagonal())).norm() == 0.0);
  const ModelSpec shifted = ModelSpec::standard(HoppingMatrix::zero(2), 1.0, 0.5, 2);
  CHECK(ComplexMatrix(assemble_hamiltonian(sec, shifted))(0, 0) == 0.0);  // 1 - 0.5 * 2
  const ModelSpec short_table = ModelSpec::standard(HoppingMatrix::zero(2), 1.0, 0.0, 1);
  CHECK_THROWS(assemble_hamiltonian(sec, short_table));
}

TEST_CASE("Rabi oscillation") {
  const auto sec = enumerate_sector(2, 1);
  const SparseOperator h = assemble_hamiltonian(sec, two_site(1.0));
  const StateVector psi0 = mott_state(sec, {1, 0});
  std::vector<double> times;
  for (int i = 0; i <= 50; ++i) times.push_back(0.1 * i);
  const DiagonalObservable n1 = local_number(sec, Region(2, {1}));
  for (auto method : {EvolutionMethod::Dense, EvolutionMethod::Krylov}) {
    EvolutionOptions opt;
    opt.method = method;
    opt.krylov_dim = 2;
    const auto states = evolve(h, psi0, times, opt);
    CHECK(states[0].amplitudes == psi0.amplitudes);
    for (std::size_t k = 0; k < times.size(); ++k)
      CHECK(std::abs(expectation(n1, states[k]) - std::pow(std::sin(times[k]), 2)) < 1e-8);
  }
}

TEST_CASE("evolution preconditions") {
  const auto sec = enumerate_sector(2, 1);
  const SparseOperator h = assemble_hamiltonian(sec, two_site(1.0));
  StateVector bad = mott_state(sec, {1, 0});
  bad.amplitudes *= 2.0;
  CHECK_THROWS(evolve(h, bad, {0.0, 1.0}));
  CHECK_THROWS(evolve(h, mott_state(sec, {1, 0}), {0.0, 2.0, 1.0}));
  CHECK_THROWS(evolve(h, mott_state(sec, {1, 0}), {-1.0}));
}

TEST_CASE("hopping-free evolution only changes phases") {
  const auto sec = enumerate_sector(4, 3);
  const SparseOperator h = assemble_hamiltonian(sec, ModelSpec::standard(HoppingMatrix::zero(4), 4.0, 0.3, 3));
  StateVector psi{sec, ComplexVector::Ones(sec->dimension()).normalized()};
  const auto states = evolve(h, psi, {0.0, 0.7, 3.1});
  for (const auto& s : states) CHECK((s.amplitudes.cwiseAbs() - psi.amplitudes.cwiseAbs()).norm() < 1e-13);
}

TEST_CASE("dense and Krylov paths agree with the matrix exponential") {
  const auto sec = enumerate_sector(6, 3);
  const SparseOperator h = assemble_hamiltonian(sec, chain_model(6, 3, 4.0, 0.2));
  const StateVector psi0 = mott_state(sec, {1, 1, 1, 0, 0, 0});
  const std::vector<double> times{0.0, 0.5, 1.7, 4.0};
  EvolutionOptions dense, krylov;
  dense.method = EvolutionMethod::Dense;
  krylov.method = EvolutionMethod::Krylov;
  const auto a = evolve(h, psi0, times, dense);
  const auto b = evolve(h, psi0, times, krylov);
  const ComplexMatrix hd = ComplexMatrix(h);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const ComplexVector ref = oracle::expm_minus_i(hd, times[k]) * psi0.amplitudes;
    CHECK((a[k].amplitudes - ref).norm() < 1e-9);
    CHECK((a[k].amplitudes - b[k].amplitudes).norm() < 1e-8);
  }
}

TEST_CASE("norm and energy conservation") {
  const auto sec = enumerate_sector(7, 3);
  const SparseOperator h = assemble_hamiltonian(sec, chain_model(7, 3, 4.0));
  const StateVector psi0 = mott_state(sec, {1, 1, 1, 0, 0, 0, 0});
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(0.25 * i);
  for (auto method : {EvolutionMethod::Dense, EvolutionMethod::Krylov}) {
    EvolutionOptions opt;
    opt.method = method;
    const auto states = evolve(h, psi0, times, opt);
    const double e0 = expectation(h, psi0);
    for (const auto& s : states) {
      CHECK(std::abs(s.norm() - 1.0) < 1e-9);
      CHECK(std::abs(expectation(h, s) - e0) < 1e-8);
      CHECK(expectation(local_number(sec, Region::all(7), true), s) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("expectations") {
  const auto sec = enumerate_sector(3, 2);
  StateVector psi{sec, ComplexVector::Ones(6).normalized()};
  CHECK(expectation(DiagonalObservable{sec, RealVector::Ones(6)}, psi) == doctest::Approx(1.0));
  SparseOperator anti(6, 6);
  anti.insert(0, 1) = 1.0;
  anti.insert(1, 0) = -1.0;
  psi.amplitudes(1) = std::complex<double>(0.0, 1.0) * psi.amplitudes(1);
  CHECK_THROWS(expectation(anti, psi));
  CHECK(std::abs(expectation_value(anti, psi).imag()) > 0.1);
}

TEST_CASE("commutators with diagonal observables") {
  const auto sec = enumerate_sector(3, 2);
  const SparseOperator h = assemble_hamiltonian(sec, chain_model(3, 2, 2.0));
  CHECK(ComplexMatrix(commutator_with_diagonal(h, DiagonalObservable{sec, RealVector::Constant(6, 3.0)})).norm() == 0.0);
  CHECK(ComplexMatrix(commutator_with_diagonal(h, local_number(sec, Region::all(3)))).norm() == 0.0);

  const ComplexMatrix hd = ComplexMatrix(h);
  const RealVector f = RealVector::LinSpaced(3, 0.2, 1.9);
  const DiagonalObservable df = second_quantize_diagonal(sec, f);
  const ComplexMatrix c = ComplexMatrix(commutator_with_diagonal(h, df));
  const ComplexMatrix dmat = ComplexMatrix(df.values.cast<std::complex<double>>().asDiagonal());
  const std::complex<double> i(0, 1);
  CHECK((c - i * (hd * dmat - dmat * hd)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((c - c.adjoint()).norm() == 0.0);

  // i[H, dGamma(F)] = -dGamma(i [J, F]) since H contains -dGamma(J)
  const HoppingMatrix j = HoppingMatrix::nearest_neighbor(EmbeddedLattice::chain(3), 1.0);
  const RealMatrix fj = iterated_commutator_matrix(j, f, 1);  // [F, J]
  const ComplexMatrix lift = ComplexMatrix(second_quantize(sec, hermitian_form(fj, 1)));
  CHECK((c - lift).cwiseAbs().maxCoeff() < 1e-12);

  // higher orders: ad^k of dGamma(F) against dGamma(J) is dGamma of the one-particle ad^k
  const ComplexMatrix gj = ComplexMatrix(second_quantize(sec, j.matrix()));
  ComplexMatrix nested = gj;
  for (int k = 1; k <= 3; ++k) {
    nested = dmat * nested - nested * dmat;
    const ComplexMatrix ref = ComplexMatrix(second_quantize(sec, hermitian_form(iterated_commutator_matrix(j, f, k), k)));
    CHECK((std::pow(i, k) * nested - ref).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("Heisenberg derivative") {
  const auto sec = enumerate_sector(6, 3);
  const auto lat = EmbeddedLattice::chain(6);
  const HoppingMatrix j = HoppingMatrix::nearest_neighbor(lat, 1.0);
  const ConeSpeeds speeds = choose_epsilon(2.2, 2.0);
  const CutoffFunction chi = make_smooth_step(0.5, 1.0);
  const CutoffFunction f = make_smooth_step(0.05, 0.3);
  const AstloFamily fam(sec, lat, Region(6, {0}), chi, speeds);
  const double s = 3.0;

  SUBCASE("analytic time derivative matches finite differences") {
    for (double t : {0.2, 0.9, 1.6}) {
      const DiagonalObservable d = fam.time_derivative_phi(f, t, s);
      const double h = 1e-5;
      const RealVector fd = (build_phi(f, fam.build(t + h, s)).values - build_phi(f, fam.build(t - h, s)).values) / (2 * h);
      CHECK((d.values - fd).cwiseAbs().maxCoeff() < 1e-6);
      CHECK(d.values.maxCoeff() <= 0.0);
    }
  }

  SUBCASE("without hopping D Phi is a nonpositive diagonal") {
    const SparseOperator h0 = assemble_hamiltonian(sec, ModelSpec::standard(HoppingMatrix::zero(6), 4.0, 0.0, 3));
    const SparseOperator d = heisenberg_derivative(h0, build_phi(f, fam.build(0.7, s)), fam.time_derivative_phi(f, 0.7, s));
    const ComplexMatrix dd = ComplexMatrix(d);
    CHECK((dd - ComplexMatrix(dd.diagonal().asDiagonal())).norm() == 0.0);
    CHECK(max_eigenvalue(d) <= 0.0);
  }

  SUBCASE("trace form: d/dt <Phi(t)>_t = <D Phi(t)>_t") {
    const SparseOperator h = assemble_hamiltonian(sec, ModelSpec::standard(j, 4.0, 0.0, 3));
    const StateVector psi0 = mott_state(sec, {1, 1, 1, 0, 0, 0});
    const double t = 0.8, dt = 1e-4;
    const auto st = evolve(h, psi0, {0.0, t - dt, t, t + dt});
    auto phi_at = [&](int k, double tt) { return expectation(build_phi(f, fam.build(tt, s)), st[k]); };
    const double numeric = (phi_at(3, t + dt) - phi_at(1, t - dt)) / (2 * dt);
    const SparseOperator d = heisenberg_derivative(h, build_phi(f, fam.build(t, s)), fam.time_derivative_phi(f, t, s));
    CHECK(std::abs(expectation(d, st[2]) - numeric) < 1e-5);
  }
}

TEST_CASE("realness and extremal eigenvalue") {
  const auto sec = enumerate_sector(3, 2);
  const SparseOperator h = assemble_hamiltonian(sec, chain_model(3, 2, 1.0));
  CHECK(is_real(h));
  CHECK_FALSE(is_real(commutator_with_diagonal(h, local_number(sec, Region(3, {0})))));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es{ComplexMatrix(h)};
  CHECK(max_eigenvalue(h) == doctest::Approx(es.eigenvalues().maxCoeff()));
}

}
