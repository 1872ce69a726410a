#pragma once

#include <string>
#include <vector>

namespace bhcone {

/// Least-squares fit of log y = intercept + slope * log x.
struct PowerLawFit {
  bool valid = false;  // false when fewer than two points or a nonpositive value
  std::string note;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<double> residuals;  // in log space, one per point

  bool conclusive(double min_r_squared = 0.9) const { return valid && r_squared >= min_r_squared; }
};

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace bhcone
