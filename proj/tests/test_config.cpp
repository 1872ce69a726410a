#include "bhcone/config.hpp"
#include "bhcone/scaling_fit.hpp"

#include <doctest.h>

#include <cmath>

using namespace bhcone;

TEST_SUITE("config") {

TEST_CASE("defaults validate") {
  ExperimentConfig c = default_config();
  CHECK(c.validated);
  CHECK(c.times.size() == 101);
  CHECK(c.times.back() == doctest::Approx(5.0));
  CHECK(c.run.size() == 5);
}

TEST_CASE("list helpers") {
  CHECK(parse_site_list("0-2, 5") == std::vector<int>{0, 1, 2, 5});
  CHECK(parse_number_list("8 16, 32") == std::vector<double>{8, 16, 32});
  const auto t = parse_time_grid("0:0.5:2");
  CHECK(t.size() == 5);
  CHECK(t[4] == 2.0);
  CHECK(parse_time_grid("0, 1, 3") == std::vector<double>{0, 1, 3});
  CHECK_THROWS_AS(parse_site_list("3-1"), ConfigError);
  CHECK_THROWS_AS(parse_time_grid("0:0:1"), ConfigError);
  CHECK_THROWS_AS(parse_time_grid("0:0.3:1"), ConfigError);
}

TEST_CASE("INI parsing") {
  const ExperimentConfig c = parse_config(R"(
[lattice]
sites = 8
[sector]
particles = 2
[regions]
X = 0-1
y_mode = explicit
Y = 6-7; 7
[cutoffs]
eta = 1/10
xi = 0.4
[experiments]
run = lightcone
times = 0:0.25:1
[output]
svg = no
)");
  CHECK(c.sites == 8);
  CHECK(c.x_sites == std::vector<int>{0, 1});
  CHECK(c.y_sets.size() == 2);
  CHECK(c.y_sets[1] == std::vector<int>{7});
  CHECK(c.eta.num * 10 == c.eta.den);
  CHECK(c.run == std::vector<std::string>{"lightcone"});
  CHECK(c.times.size() == 5);
  CHECK_FALSE(c.svg);
  const auto ys = build_y_regions(c, build_lattice(c), Region(8, c.x_sites));
  CHECK(ys.size() == 2);
}

TEST_CASE("tail placements") {
  ExperimentConfig c = default_config();
  const auto lat = build_lattice(c);
  const auto ys = build_y_regions(c, lat, Region(10, c.x_sites));
  // distances 1..5 from X = {0..4}
  REQUIRE(ys.size() == 5);
  CHECK(ys.front().sites() == std::vector<int>{5, 6, 7, 8, 9});
  CHECK(ys.back().sites() == std::vector<int>{9});
  const ConeSpeeds sp = build_speeds(c, 2.0);
  CHECK(sp.v == doctest::Approx(2.2));
}

TEST_CASE("rejections") {
  CHECK_THROWS_AS(parse_config("[nope]\na = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[lattice]\nsitez = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[lattice]\nsites = ten\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[regions]\nX = 0-4, 12\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sector]\nparticles = 4\n"), ConfigError);  // |X| = 5
  CHECK_THROWS_AS(parse_config("[cutoffs]\neta = 0.5\nxi = 0.3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiments]\nrun = bogus\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[experiments]\ntimes = 1:1:3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[regions]\ny_mode = explicit\nY = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[cone]\nv_factor = 0.9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[model]\nonsite = 0 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[lattice]\ngeometry = square\nlx = 3\nly = 3\n[regions]\nX = 0\n[sector]\nparticles = 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.ini"), ConfigError);
}

TEST_CASE("explicit hopping") {
  const ExperimentConfig c = parse_config(R"(
[lattice]
sites = 3
[hopping]
kind = explicit
matrix = 0 1 0; 1 0 2; 0 2 0
[sector]
particles = 1
[regions]
X = 0
)");
  const auto j = build_hopping(c, build_lattice(c));
  CHECK(j.matrix()(1, 2) == 2.0);
  CHECK_THROWS_AS(parse_config("[lattice]\nsites = 2\n[hopping]\nkind = explicit\nmatrix = 0 1; 2 0\n[sector]\nparticles = 1\n[regions]\nX = 0\n"),
                  ConfigError);
}

}

TEST_SUITE("scaling_fit") {

TEST_CASE("exact power law") {
  const std::vector<double> x{8, 16, 32, 64};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -2.0));
  const PowerLawFit f = fit_power_law(x, y);
  CHECK(f.valid);
  CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(f.residuals.size() == 4);
  CHECK(f.conclusive());
}

TEST_CASE("noisy fit against hand-computed least squares") {
  const std::vector<double> x{1, 2, 4, 8};
  const std::vector<double> y{1.0, 0.6, 0.2, 0.15};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 4; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (4 * sxy - sx * sy) / (4 * sxx - sx * sx);
  const PowerLawFit f = fit_power_law(x, y);
  CHECK(f.slope == doctest::Approx(slope).epsilon(1e-12));
  CHECK(f.r_squared < 1.0);
}

TEST_CASE("invalid inputs are flagged") {
  CHECK_FALSE(fit_power_law({1, 2}, {1, 0}).valid);
  CHECK_FALSE(fit_power_law({1}, {1}).valid);
  CHECK_FALSE(fit_power_law({1, 2, 3}, {1, -1, 2}).conclusive());
  CHECK_THROWS(fit_power_law({1, 2}, {1}));
  const PowerLawFit flat = fit_power_law({1, 2, 4, 8}, {1, 3, 1, 3});
  CHECK(flat.valid);
  CHECK_FALSE(flat.conclusive(0.9));
}

}
