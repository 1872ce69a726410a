#pragma once

#include "bhcone/fock.hpp"
#include "bhcone/lattice.hpp"

#include <vector>

namespace bhcone {

/// H = -dGamma(J) + sum_x V_x(n_x) - mu N. onsite[x][n] = V_x(n).
struct ModelSpec {
  HoppingMatrix hopping;
  std::vector<std::vector<double>> onsite;
  double mu = 0.0;

  /// V(n) = U/2 n (n - 1) on every site, tabulated up to max_occupation.
  static ModelSpec standard(HoppingMatrix hopping, double u, double mu, int max_occupation);
};

SparseOperator assemble_hamiltonian(const SectorPtr& sector, const ModelSpec& model);

enum class EvolutionMethod { Auto, Dense, Krylov };

struct EvolutionOptions {
  EvolutionMethod method = EvolutionMethod::Auto;
  int dense_limit = 2000;
  int krylov_dim = 30;
  double tolerance = 1e-10;  // local error per Krylov step
  double norm_tolerance = 1e-9;
};

/// psi_t = exp(-i t H) psi_0 at each grid time; times nondecreasing from 0.
std::vector<StateVector> evolve(const SparseOperator& h, const StateVector& psi0, const std::vector<double>& times,
                                const EvolutionOptions& options = {});

double expectation(const DiagonalObservable& a, const StateVector& psi);
double expectation(const SparseOperator& a, const StateVector& psi, double imag_tol = 1e-12);
std::complex<double> expectation_value(const SparseOperator& a, const StateVector& psi);

/// i[H, D]; entry (a, b) is i H_ab (D_b - D_a).
SparseOperator commutator_with_diagonal(const SparseOperator& h, const DiagonalObservable& d);

/// D Phi = dPhi/dt + i[H, Phi] with the explicit time derivative given on the diagonal.
SparseOperator heisenberg_derivative(const SparseOperator& h, const DiagonalObservable& phi,
                                     const DiagonalObservable& dphi_dt);

/// True when every entry has zero imaginary part.
bool is_real(const SparseOperator& a);

/// Largest eigenvalue of a Hermitian operator by dense diagonalization.
double max_eigenvalue(const SparseOperator& a);

}  // namespace bhcone
