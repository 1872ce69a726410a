#include "bhcone/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bhcone {

namespace pt = boost::property_tree;

namespace {

std::string trim(const std::string& s) { return boost::algorithm::trim_copy(s); }

std::vector<std::string> split(const std::string& text, const char* seps) {
  std::vector<std::string> parts;
  boost::algorithm::split(parts, text, boost::algorithm::is_any_of(seps));
  std::vector<std::string> out;
  for (auto& p : parts) {
    p = trim(p);
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + text + "'");
  }
}

long long to_integer(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + text + "'");
  }
}

bool to_bool(const std::string& key, const std::string& text) {
  const std::string t = boost::algorithm::to_lower_copy(text);
  if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
  if (t == "false" || t == "no" || t == "0" || t == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + text + "'");
}

RealMatrix parse_matrix(const std::string& key, const std::string& text) {
  const auto rows = split(text, ";");
  if (rows.empty()) throw ConfigError(key + ": empty matrix");
  std::vector<std::vector<double>> vals;
  for (const auto& r : rows) {
    std::vector<double> row;
    for (const auto& c : split(r, ", \t")) row.push_back(to_double(key, c));
    if (!vals.empty() && row.size() != vals.front().size()) throw ConfigError(key + ": ragged matrix rows");
    vals.push_back(row);
  }
  RealMatrix m(vals.size(), vals.front().size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals[i].size(); ++j) m(i, j) = vals[i][j];
  return m;
}

// Reads a section while rejecting keys nobody asked for.
class SectionReader {
 public:
  SectionReader(const pt::ptree& root, const std::string& name) : name_(name) {
    if (auto child = root.get_child_optional(name)) {
      for (const auto& kv : *child) values_[kv.first] = trim(kv.second.data());
    }
  }

  const std::string* find(const std::string& key) {
    known_.insert(key);
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  std::string full(const std::string& key) const { return name_ + "." + key; }

  template <typename T, typename Conv>
  void read(const std::string& key, T& target, Conv conv) {
    if (const std::string* v = find(key)) target = conv(full(key), *v);
  }

  void finish() const {
    for (const auto& kv : values_)
      if (!known_.count(kv.first)) throw ConfigError("unknown key " + full(kv.first));
  }

 private:
  std::string name_;
  std::map<std::string, std::string> values_;
  std::set<std::string> known_;
};

auto as_double = [](const std::string& k, const std::string& v) { return to_double(k, v); };
auto as_int = [](const std::string& k, const std::string& v) {
  const long long x = to_integer(k, v);
  if (x < -1000000000LL || x > 1000000000LL) throw ConfigError(k + ": integer out of range");
  return static_cast<int>(x);
};
auto as_string = [](const std::string&, const std::string& v) { return v; };
auto as_bool = [](const std::string& k, const std::string& v) { return to_bool(k, v); };
auto as_doubles = [](const std::string& k, const std::string& v) {
  try {
    return parse_number_list(v);
  } catch (const ConfigError& e) {
    throw ConfigError(k + ": " + e.what());
  }
};
auto as_ints = [](const std::string& k, const std::string& v) {
  try {
    return parse_site_list(v);
  } catch (const ConfigError& e) {
    throw ConfigError(k + ": " + e.what());
  }
};
auto as_rational = [](const std::string& k, const std::string& v) {
  try {
    return Rational::parse(v);
  } catch (const std::exception& e) {
    throw ConfigError(k + ": " + e.what());
  }
};

}  // namespace

std::vector<int> parse_site_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ",")) {
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      const long long a = to_integer("range", trim(item.substr(0, dash)));
      const long long b = to_integer("range", trim(item.substr(dash + 1)));
      if (b < a) throw ConfigError("descending range '" + item + "'");
      for (long long i = a; i <= b; ++i) out.push_back(static_cast<int>(i));
    } else {
      out.push_back(static_cast<int>(to_integer("site", item)));
    }
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ", \t")) out.push_back(to_double("list", item));
  if (out.empty()) throw ConfigError("empty number list");
  return out;
}

std::vector<double> parse_time_grid(const std::string& text) {
  const auto parts = split(text, ":");
  if (parts.size() == 3 && text.find(':') != std::string::npos) {
    const double start = to_double("times", parts[0]);
    const double step = to_double("times", parts[1]);
    const double stop = to_double("times", parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("times: need start:step:stop with step > 0");
    const long long count = std::llround((stop - start) / step);
    if (std::abs(start + count * step - stop) > 1e-9 * std::max(1.0, std::abs(stop)))
      throw ConfigError("times: (stop - start) is not a multiple of step");
    std::vector<double> out;
    for (long long i = 0; i <= count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  return parse_number_list(text);
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  validate(c);
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree root;
  std::istringstream in(text);
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  static const std::set<std::string> sections{"lattice", "hopping",  "model",       "sector", "regions",
                                              "cone",    "cutoffs",  "experiments", "output"};
  for (const auto& kv : root) {
    if (!sections.count(kv.first)) throw ConfigError("unknown section [" + kv.first + "]");
  }

  ExperimentConfig c;
  {
    SectionReader s(root, "lattice");
    s.read("geometry", c.geometry, as_string);
    s.read("sites", c.sites, as_int);
    s.read("lx", c.lx, as_int);
    s.read("ly", c.ly, as_int);
    s.read("spacing", c.spacing, as_double);
    if (const std::string* v = s.find("coords")) c.coords = parse_matrix(s.full("coords"), *v);
    s.finish();
  }
  {
    SectionReader s(root, "hopping");
    s.read("kind", c.hopping_kind, as_string);
    s.read("amplitude", c.amplitude, as_double);
    s.read("alpha", c.alpha, as_double);
    if (const std::string* v = s.find("matrix")) c.hopping_matrix = parse_matrix(s.full("matrix"), *v);
    s.finish();
  }
  {
    SectionReader s(root, "model");
    s.read("U", c.u, as_double);
    s.read("mu", c.mu, as_double);
    s.read("onsite", c.onsite, as_doubles);
    s.finish();
  }
  {
    SectionReader s(root, "sector");
    s.read("particles", c.particles, as_int);
    if (const std::string* v = s.find("initial")) {
      c.initial.clear();
      for (const auto& item : split(*v, ",")) c.initial.push_back(as_int(s.full("initial"), item));
    }
    s.finish();
  }
  {
    SectionReader s(root, "regions");
    s.read("X", c.x_sites, as_ints);
    s.read("y_mode", c.y_mode, as_string);
    if (const std::string* v = s.find("Y")) {
      c.y_sets.clear();
      for (const auto& set : split(*v, ";")) c.y_sets.push_back(as_ints(s.full("Y"), set));
    }
    s.finish();
  }
  {
    SectionReader s(root, "cone");
    s.read("v_factor", c.v_factor, as_double);
    s.read("v", c.v, as_double);
    s.read("p", c.p, as_int);
    s.read("cone_factor", c.cone_factor, as_double);
    s.finish();
  }
  {
    SectionReader s(root, "cutoffs");
    s.read("eta", c.eta, as_rational);
    s.read("xi", c.xi, as_rational);
    s.read("chi_lambda", c.chi_lambda, as_double);
    s.read("f_lambda", c.f_lambda, as_double);
    s.read("max_order", c.max_order, as_int);
    s.finish();
  }
  {
    SectionReader s(root, "experiments");
    if (const std::string* v = s.find("run")) c.run = split(*v, ", \t");
    if (const std::string* v = s.find("times")) {
      try {
        c.times = parse_time_grid(*v);
      } catch (const ConfigError& e) {
        throw ConfigError(s.full("times") + ": " + e.what());
      }
    }
    if (const std::string* v = s.find("seed")) {
      const long long seed = to_integer(s.full("seed"), *v);
      if (seed < 0) throw ConfigError(s.full("seed") + ": must be nonnegative");
      c.seed = static_cast<std::uint64_t>(seed);
    }
    s.read("min_r_squared", c.min_r_squared, as_double);
    s.read("kappa_sites", c.kappa_sites, as_int);
    s.read("kappa_s_grid", c.kappa_s_grid, as_doubles);
    s.read("kappa_orders", c.kappa_orders, as_ints);
    s.read("kappa_slope_tol", c.kappa_slope_tol, as_double);
    s.read("expansion_sites", c.expansion_sites, as_int);
    s.read("expansion_particles", c.expansion_particles, as_int);
    s.read("expansion_s_grid", c.expansion_s_grid, as_doubles);
    s.read("expansion_orders", c.expansion_orders, as_ints);
    s.read("expansion_check_order", c.expansion_check_order, as_int);
    s.read("expansion_slope_tol", c.expansion_slope_tol, as_double);
    s.read("heisenberg_sites", c.heisenberg_sites, as_int);
    s.read("heisenberg_particles", c.heisenberg_particles, as_int);
    s.read("heisenberg_s_grid", c.heisenberg_s_grid, as_doubles);
    s.read("heisenberg_t", c.heisenberg_t, as_double);
    s.read("heisenberg_max_slope", c.heisenberg_max_slope, as_double);
    s.read("monotonicity_s_grid", c.monotonicity_s_grid, as_doubles);
    s.read("monotonicity_ratio_tol", c.monotonicity_ratio_tol, as_double);
    s.read("bound_ceiling", c.bound_ceiling, as_double);
    s.read("contrast_factor", c.contrast_factor, as_double);
    s.read("monotone_slack", c.monotone_slack, as_double);
    s.read("dense_limit", c.dense_limit, as_int);
    s.finish();
  }
  {
    SectionReader s(root, "output");
    s.read("dir", c.out_dir, as_string);
    s.read("svg", c.svg, as_bool);
    s.finish();
  }
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void require_grid(const std::vector<double>& grid, const std::string& key, std::size_t min_points) {
  require(grid.size() >= min_points, key + ": need at least " + std::to_string(min_points) + " values");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(grid[i] > 0.0, key + ": values must be positive");
    require(i == 0 || grid[i] > grid[i - 1], key + ": values must be increasing");
  }
}

}  // namespace

void validate(ExperimentConfig& c) {
  if (c.times.empty()) c.times = parse_time_grid("0:0.05:5");

  static const std::set<std::string> geometries{"chain", "square", "explicit"};
  require(geometries.count(c.geometry), "lattice.geometry must be chain, square or explicit");
  int n_sites = 0;
  if (c.geometry == "chain") {
    require(c.sites >= 1, "lattice.sites must be >= 1");
    n_sites = c.sites;
  } else if (c.geometry == "square") {
    require(c.lx >= 1 && c.ly >= 1, "lattice.lx and lattice.ly must be >= 1 for a square lattice");
    n_sites = c.lx * c.ly;
    c.sites = n_sites;
  } else {
    require(c.coords.rows() >= 1, "lattice.coords is required for explicit geometry");
    n_sites = static_cast<int>(c.coords.rows());
    c.sites = n_sites;
  }
  require(c.spacing > 0.0, "lattice.spacing must be positive");

  static const std::set<std::string> kinds{"nearest_neighbor", "power_law", "explicit"};
  require(kinds.count(c.hopping_kind), "hopping.kind must be nearest_neighbor, power_law or explicit");
  if (c.hopping_kind == "explicit") {
    require(c.hopping_matrix.rows() == n_sites && c.hopping_matrix.cols() == n_sites,
            "hopping.matrix must be sites x sites");
    require((c.hopping_matrix - c.hopping_matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
            "hopping.matrix must be symmetric");
  }
  if (c.hopping_kind == "power_law") require(c.alpha > 0.0, "hopping.alpha must be positive");

  require(c.particles >= 1, "sector.particles must be >= 1");
  require(FockSector::count(n_sites, c.particles) >= 0 &&
              FockSector::count(n_sites, c.particles) <= kDefaultDimensionCap,
          "sector dimension exceeds the cap of " + std::to_string(kDefaultDimensionCap));
  if (!c.onsite.empty())
    require(static_cast<int>(c.onsite.size()) > c.particles,
            "model.onsite must define V(n) for n = 0.." + std::to_string(c.particles));

  require(!c.x_sites.empty(), "regions.X must be nonempty");
  for (int x : c.x_sites) require(x >= 0 && x < n_sites, "regions.X lists site " + std::to_string(x) + " outside the lattice");
  {
    std::set<int> uniq(c.x_sites.begin(), c.x_sites.end());
    require(uniq.size() == c.x_sites.size(), "regions.X lists a site twice");
  }
  require(c.y_mode == "tails" || c.y_mode == "explicit", "regions.y_mode must be tails or explicit");
  if (c.y_mode == "explicit") {
    require(!c.y_sets.empty(), "regions.Y is required when y_mode = explicit");
    for (const auto& y : c.y_sets) {
      require(!y.empty(), "regions.Y contains an empty region");
      for (int s : y) {
        require(s >= 0 && s < n_sites, "regions.Y lists site " + std::to_string(s) + " outside the lattice");
        require(std::find(c.x_sites.begin(), c.x_sites.end(), s) == c.x_sites.end(),
                "regions.Y overlaps X at site " + std::to_string(s));
      }
    }
  }

  if (!c.initial.empty()) {
    require(static_cast<int>(c.initial.size()) == n_sites, "sector.initial must list one occupation per site");
    int total = 0;
    for (int n : c.initial) {
      require(n >= 0, "sector.initial occupations must be nonnegative");
      total += n;
    }
    require(total == c.particles, "sector.initial must sum to sector.particles");
  } else {
    require(static_cast<int>(c.x_sites.size()) == c.particles,
            "sector.initial omitted: the default Mott state puts one boson on each X site, so |X| must equal particles");
  }

  require(c.v > 0.0 || c.v_factor > 1.0, "cone.v_factor must exceed 1 (or give cone.v)");
  require(c.p >= 1, "cone.p must be >= 1");
  require(c.cone_factor > 0.0, "cone.cone_factor must be positive");

  require(c.eta.value() >= 0.0 && c.eta.value() < c.xi.value(), "cutoffs need 0 <= eta < xi");
  require(c.xi.value() <= 1.0, "cutoffs.xi must be <= 1");
  require(c.chi_lambda > 0.0 && c.f_lambda > 0.0, "cutoff lambdas must be positive");
  require(c.max_order >= 2 && c.max_order <= 9, "cutoffs.max_order must be in 2..9");

  static const std::set<std::string> experiments{"kappa_bounds", "commutator_expansion", "heisenberg_bound",
                                                 "monotonicity", "lightcone"};
  for (const auto& e : c.run) require(experiments.count(e), "experiments.run: unknown experiment '" + e + "'");
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    require(c.times[i] >= 0.0, "experiments.times must be nonnegative");
    require(i == 0 || c.times[i] > c.times[i - 1], "experiments.times must be increasing");
  }
  require(c.times.front() == 0.0, "experiments.times must start at 0");
  require(c.min_r_squared > 0.0 && c.min_r_squared <= 1.0, "experiments.min_r_squared must be in (0, 1]");

  require(c.kappa_sites >= 2, "experiments.kappa_sites must be >= 2");
  require_grid(c.kappa_s_grid, "experiments.kappa_s_grid", 4);
  for (int k : c.kappa_orders) require(k >= 1 && k <= 8, "experiments.kappa_orders must be in 1..8");
  require(c.expansion_sites >= 2 && c.expansion_particles >= 1, "expansion sector must have >= 2 sites and >= 1 particle");
  require_grid(c.expansion_s_grid, "experiments.expansion_s_grid", 4);
  for (int m : c.expansion_orders)
    require(m >= 1 && m < c.max_order, "experiments.expansion_orders must be in 1..max_order-1");
  require(std::find(c.expansion_orders.begin(), c.expansion_orders.end(), c.expansion_check_order) !=
              c.expansion_orders.end(),
          "experiments.expansion_check_order must be one of expansion_orders");
  require(c.heisenberg_sites >= 2 && c.heisenberg_particles >= 1, "Heisenberg sector must have >= 2 sites and >= 1 particle");
  require_grid(c.heisenberg_s_grid, "experiments.heisenberg_s_grid", 4);
  require(c.heisenberg_t >= 0.0, "experiments.heisenberg_t must be nonnegative");
  require_grid(c.monotonicity_s_grid, "experiments.monotonicity_s_grid", 2);
  require(c.bound_ceiling >= 0.0, "experiments.bound_ceiling must be nonnegative");
  require(c.contrast_factor > 0.0, "experiments.contrast_factor must be positive");
  require(c.dense_limit >= 1, "experiments.dense_limit must be positive");

  if (c.geometry != "chain") {
    for (const auto& e : c.run)
      require(e != "commutator_expansion" && e != "heisenberg_bound" && e != "kappa_bounds",
              "experiment '" + e + "' builds its own chains and needs lattice.geometry = chain");
  }
  require(!c.out_dir.empty(), "output.dir must be nonempty");
  c.validated = true;
}

EmbeddedLattice build_lattice(const ExperimentConfig& c) {
  if (c.geometry == "chain") return EmbeddedLattice::chain(c.sites, c.spacing);
  if (c.geometry == "square") return EmbeddedLattice::square(c.lx, c.ly, c.spacing);
  return EmbeddedLattice(c.coords * c.spacing);
}

HoppingMatrix build_hopping(const ExperimentConfig& c, const EmbeddedLattice& lattice) {
  if (c.hopping_kind == "nearest_neighbor") return HoppingMatrix::nearest_neighbor(lattice, c.amplitude);
  if (c.hopping_kind == "power_law") return HoppingMatrix::power_law(lattice, c.amplitude, c.alpha);
  try {
    return HoppingMatrix(c.hopping_matrix, 1e-12);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("hopping.matrix: ") + e.what());
  }
}

ModelSpec build_model(const ExperimentConfig& c, const HoppingMatrix& hopping, int particles) {
  if (c.onsite.empty()) return ModelSpec::standard(hopping, c.u, c.mu, particles);
  if (static_cast<int>(c.onsite.size()) <= particles)
    throw ConfigError("model.onsite must define V(n) for n = 0.." + std::to_string(particles));
  return ModelSpec{hopping, std::vector<std::vector<double>>(hopping.size(), c.onsite), c.mu};
}

std::vector<Region> build_y_regions(const ExperimentConfig& c, const EmbeddedLattice& lattice, const Region& x) {
  std::vector<Region> out;
  if (c.y_mode == "explicit") {
    for (const auto& y : c.y_sets) out.emplace_back(lattice.size(), y);
    return out;
  }
  // tails: Y_d = {y : dist(y, X) >= d} for every attained distance d > 0
  std::vector<double> dist(lattice.size());
  for (int y = 0; y < lattice.size(); ++y) dist[y] = region_distance(lattice, x, Region(lattice.size(), {y}));
  std::set<double> levels;
  for (int y = 0; y < lattice.size(); ++y)
    if (dist[y] > 0.0) levels.insert(dist[y]);
  for (double d : levels) {
    std::vector<int> sites;
    for (int y = 0; y < lattice.size(); ++y)
      if (dist[y] >= d) sites.push_back(y);
    out.emplace_back(lattice.size(), sites);
  }
  if (out.empty()) throw ConfigError("regions: X covers the lattice, no Y placement exists");
  return out;
}

ConeSpeeds build_speeds(const ExperimentConfig& c, double v_max) {
  const double v = c.v > 0.0 ? c.v : c.v_factor * v_max;
  try {
    return choose_epsilon(v, v_max);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("cone: ") + e.what());
  }
}

}  // namespace bhcone
