#include "bhcone/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace bhcone {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const std::string& dir, const std::string& file, std::string& path) {
  fs::create_directories(dir);
  path = (fs::path(dir) / file).string();
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string fmt(double v, const char* spec = "%.4g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string write_csv(const ExperimentReport& report, const std::string& dir) {
  std::string path;
  std::ofstream out = open_output(dir, report.name + ".csv", path);
  for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_field(report.columns[i]);
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
  return path;
}

std::string render_svg(const ExperimentReport& report) {
  const double width = 640, height = 420, left = 70, right = 150, top = 40, bottom = 50;
  const bool logs = report.plot_loglog;
  auto tx = [&](double v) { return logs ? std::log10(v) : v; };

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& s : report.plot)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (logs && (s.x[i] <= 0 || s.y[i] <= 0)) continue;
      xmin = std::min(xmin, tx(s.x[i]));
      xmax = std::max(xmax, tx(s.x[i]));
      ymin = std::min(ymin, tx(s.y[i]));
      ymax = std::max(ymax, tx(s.y[i]));
    }
  if (!std::isfinite(xmin)) return "";
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;
  auto px = [&](double x) { return left + (tx(x) - xmin) / (xmax - xmin) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - (tx(y) - ymin) / (ymax - ymin) * (height - top - bottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(report.name)
     << "</text>\n";
  const double x0 = left, x1 = width - right, y0 = height - bottom, y1 = top;
  os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4, fy = ymin + (ymax - ymin) * i / 4;
    const double vx = logs ? std::pow(10.0, fx) : fx, vy = logs ? std::pow(10.0, fy) : fy;
    const double sx = x0 + (x1 - x0) * i / 4, sy = y0 - (y0 - y1) * i / 4;
    os << "<line x1=\"" << sx << "\" y1=\"" << y0 << "\" x2=\"" << sx << "\" y2=\"" << y0 + 5 << "\" stroke=\"black\"/>";
    os << "<text x=\"" << sx << "\" y=\"" << y0 + 17 << "\" text-anchor=\"middle\">" << fmt(vx) << "</text>\n";
    os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << sy << "\" x2=\"" << x0 << "\" y2=\"" << sy << "\" stroke=\"black\"/>";
    os << "<text x=\"" << x0 - 8 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">" << fmt(vy) << "</text>\n";
  }
  os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
     << xml_escape(report.plot_xlabel) << (logs ? " (log)" : "") << "</text>\n";
  os << "<text transform=\"translate(14," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << xml_escape(report.plot_ylabel) << (logs ? " (log)" : "") << "</text>\n";

  for (std::size_t k = 0; k < report.plot.size(); ++k) {
    const auto& s = report.plot[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof *kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (logs && (s.x[i] <= 0 || s.y[i] <= 0)) continue;
      os << fmt(px(s.x[i]), "%.2f") << ',' << fmt(py(s.y[i]), "%.2f") << ' ';
    }
    os << "\"/>\n";
    if (logs)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        if (s.x[i] > 0 && s.y[i] > 0)
          os << "<circle cx=\"" << fmt(px(s.x[i]), "%.2f") << "\" cy=\"" << fmt(py(s.y[i]), "%.2f")
             << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = top + 14 + 16 * k;
    os << "<line x1=\"" << x1 + 10 << "\" y1=\"" << ly << "\" x2=\"" << x1 + 30 << "\" y2=\"" << ly << "\" stroke=\""
       << color << "\" stroke-width=\"2\"/>";
    os << "<text x=\"" << x1 + 35 << "\" y=\"" << ly + 4 << "\">" << xml_escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string write_svg(const ExperimentReport& report, const std::string& dir) {
  const std::string svg = render_svg(report);
  if (svg.empty()) return "";
  std::string path;
  std::ofstream out = open_output(dir, report.name + ".svg", path);
  out << svg;
  return path;
}

std::string write_summary(const std::vector<ExperimentReport>& reports, const ExperimentConfig& config,
                          const std::string& dir) {
  using nlohmann::json;
  json doc;
  doc["seed"] = config.seed;
  bool all = !reports.empty();
  json list = json::array();
  for (const auto& r : reports) {
    json e;
    e["name"] = r.name;
    e["pass"] = r.pass();
    all = all && r.pass();
    json params = json::object();
    for (const auto& [k, v] : r.parameters) params[k] = v;
    e["parameters"] = params;
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"criterion", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    e["checks"] = checks;
    json fits = json::array();
    for (const auto& f : r.fits) {
      json jf{{"name", f.name}, {"valid", f.fit.valid}, {"x", f.x}, {"y", f.y}};
      if (f.fit.valid) {
        jf["slope"] = f.fit.slope;
        jf["intercept"] = f.fit.intercept;
        jf["r_squared"] = f.fit.r_squared;
        jf["residuals"] = f.fit.residuals;
        jf["conclusive"] = f.fit.conclusive(config.min_r_squared);
      } else {
        jf["note"] = f.fit.note;
      }
      fits.push_back(jf);
    }
    e["fits"] = fits;
    json measured = json::object();
    for (const auto& [k, v] : r.measured) measured[k] = v;
    e["measured"] = measured;
    list.push_back(e);
  }
  doc["experiments"] = list;
  doc["all_pass"] = all;
  std::string path;
  std::ofstream out = open_output(dir, "summary.json", path);
  out << doc.dump(2) << '\n';
  return path;
}

}  // namespace bhcone
