#pragma once

#include "bhcone/cutoff.hpp"
#include "bhcone/dynamics.hpp"
#include "bhcone/fock.hpp"
#include "bhcone/lattice.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bhcone {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // [lattice]
  std::string geometry = "chain";  // chain | square | explicit
  int sites = 10;
  int lx = 0, ly = 0;
  double spacing = 1.0;
  RealMatrix coords;  // explicit geometry only

  // [hopping]
  std::string hopping_kind = "nearest_neighbor";  // nearest_neighbor | power_law | explicit
  double amplitude = 1.0;
  double alpha = 3.0;
  RealMatrix hopping_matrix;  // explicit hopping only

  // [model]
  double u = 4.0;
  double mu = 0.0;
  std::vector<double> onsite;  // V(n) table shared by all sites; empty means U/2 n(n-1)

  // [sector]
  int particles = 5;
  std::vector<int> initial;  // Mott occupation; empty means one boson per site of X

  // [regions]
  std::vector<int> x_sites{0, 1, 2, 3, 4};
  std::string y_mode = "tails";  // tails | explicit
  std::vector<std::vector<int>> y_sets;

  // [cone]
  double v_factor = 1.1;
  double v = 0.0;  // > 0 overrides v_factor * v_max
  int p = 4;
  double cone_factor = 2.0;

  // [cutoffs]
  Rational eta{1, 20};
  Rational xi{3, 10};
  double chi_lambda = kDefaultBumpLambda;
  double f_lambda = kDefaultBumpLambda;
  int max_order = kDefaultMaxOrder;

  // [experiments]
  std::vector<std::string> run{"kappa_bounds", "commutator_expansion", "heisenberg_bound", "monotonicity",
                               "lightcone"};
  std::vector<double> times;
  std::uint64_t seed = 1;
  double min_r_squared = 0.9;

  int kappa_sites = 256;
  std::vector<double> kappa_s_grid{8, 16, 32, 64};
  std::vector<int> kappa_orders{1, 2, 3};
  double kappa_slope_tol = 0.25;

  int expansion_sites = 6;
  int expansion_particles = 3;
  std::vector<double> expansion_s_grid{2, 3, 4, 6};
  std::vector<int> expansion_orders{1, 2, 3};
  int expansion_check_order = 2;
  double expansion_slope_tol = 0.3;

  int heisenberg_sites = 8;
  int heisenberg_particles = 3;
  std::vector<double> heisenberg_s_grid{4, 8, 16, 32};
  double heisenberg_t = 0.0;
  double heisenberg_max_slope = -1.5;

  std::vector<double> monotonicity_s_grid{1, 2, 4};
  double monotonicity_ratio_tol = 0.1;

  double bound_ceiling = 0.05;
  double contrast_factor = 5.0;
  double monotone_slack = 1e-10;

  int dense_limit = 2000;

  // [output]
  std::string out_dir = "bhcone_out";
  bool svg = true;

  // derived, filled by validate()
  bool validated = false;
};

ExperimentConfig default_config();

/// Parses an INI file; throws ConfigError on any malformed or inconsistent entry.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& text);

/// Checks cross references (sites, regions, sector, tables). Throws ConfigError.
void validate(ExperimentConfig& config);

/// Parsed helpers, exposed for tests.
std::vector<int> parse_site_list(const std::string& text);
std::vector<double> parse_number_list(const std::string& text);
std::vector<double> parse_time_grid(const std::string& text);

/// Objects built from a validated config.
EmbeddedLattice build_lattice(const ExperimentConfig& config);
HoppingMatrix build_hopping(const ExperimentConfig& config, const EmbeddedLattice& lattice);
ModelSpec build_model(const ExperimentConfig& config, const HoppingMatrix& hopping, int particles);
std::vector<Region> build_y_regions(const ExperimentConfig& config, const EmbeddedLattice& lattice,
                                    const Region& x);
ConeSpeeds build_speeds(const ExperimentConfig& config, double v_max);

}  // namespace bhcone
