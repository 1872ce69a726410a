#pragma once

#include "bhcone/config.hpp"
#include "bhcone/scaling_fit.hpp"

#include <map>
#include <string>
#include <vector>

namespace bhcone {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FitRecord {
  std::string name;
  PowerLawFit fit;
  std::vector<double> x, y;
};

struct Series {
  std::string name;
  std::vector<double> x, y;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<FitRecord> fits;
  std::vector<Check> checks;
  std::map<std::string, double> measured;
  std::vector<Series> plot;
  bool plot_loglog = false;
  std::string plot_xlabel, plot_ylabel;
  double seconds = 0.0;  // wall clock, kept out of the summary file

  bool pass() const;
  const Check* find_check(const std::string& name) const;
};

ExperimentReport exp_kappa_bounds(const ExperimentConfig& config);
ExperimentReport exp_commutator_expansion(const ExperimentConfig& config);
ExperimentReport exp_heisenberg_bound(const ExperimentConfig& config);
ExperimentReport exp_monotonicity(const ExperimentConfig& config);
ExperimentReport exp_lightcone(const ExperimentConfig& config);

ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& config);

/// Hopping matrices used by the norm-bound sweep: chains and square lattices
/// with nearest-neighbor and power-law couplings, plus seeded random amplitudes.
struct GeneratedHopping {
  std::string label;
  EmbeddedLattice lattice;
  HoppingMatrix hopping;
};
std::vector<GeneratedHopping> generate_hoppings(const ExperimentConfig& config);

}  // namespace bhcone
