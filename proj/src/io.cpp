#include "curvedepth/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "curvedepth/error.hpp"

namespace curvedepth {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
    fail_data("line " + std::to_string(line) + ": bad number '" + t + "'");
  return v;
}

void reject_duplicates(const std::vector<Curve>& curves) {
  std::unordered_set<std::string> seen;
  for (const auto& c : curves)
    if (!seen.insert(c.id()).second) fail_data("duplicate curve id '" + c.id() + "'");
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// yellow (255,255,0) at 0 to red (255,0,0) at 1
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#ff%02x00", static_cast<int>(std::lround(255.0 * (1.0 - t))));
  return buf;
}

struct Viewport {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  double size = 600.0, pad = 20.0;

  void fit(double lox, double hix, double loy, double hiy) {
    if (!(hix > lox)) {
      lox -= 0.5;
      hix += 0.5;
    }
    if (!(hiy > loy)) {
      loy -= 0.5;
      hiy += 0.5;
    }
    x0 = lox, x1 = hix, y0 = loy, y1 = hiy;
  }
  // uniform scale so shapes are not distorted
  double scale() const { return (size - 2 * pad) / std::max(x1 - x0, y1 - y0); }
  double px(double x) const { return pad + (x - x0) * scale(); }
  double py(double y) const { return size - pad - (y - y0) * scale(); }
};

}  // namespace

CurveFormat format_for_path(const std::string& path) {
  return ends_with(path, ".csv") ? CurveFormat::csv : CurveFormat::jsonl;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<Curve> read_curves_jsonl(std::istream& in) {
  std::vector<Curve> curves;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail_data("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("id") || !j.contains("points") || !j["points"].is_array())
      fail_data("line " + std::to_string(lineno) + ": expected {\"id\", \"points\"}");
    std::string id = j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump();
    const auto& pts = j["points"];
    if (pts.empty()) fail_data("curve '" + id + "': no points");
    std::size_t d = 0;
    std::vector<double> coords;
    for (const auto& p : pts) {
      if (!p.is_array() || p.empty()) fail_data("curve '" + id + "': points must be non-empty arrays");
      if (d == 0) d = p.size();
      if (p.size() != d) fail_data("curve '" + id + "': inconsistent point dimension");
      for (const auto& v : p) {
        if (!v.is_number()) fail_data("curve '" + id + "': non-numeric coordinate");
        coords.push_back(v.get<double>());
      }
    }
    curves.emplace_back(std::move(id), static_cast<int>(d), std::move(coords));
  }
  reject_duplicates(curves);
  return curves;
}

std::vector<Curve> read_curves_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t d = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto head = split_csv(line);
    if (head.size() < 3 || trim(head[0]) != "curve_id" || trim(head[1]) != "seq")
      fail_data("line " + std::to_string(lineno) + ": expected header curve_id,seq,x1,...");
    d = head.size() - 2;
    break;
  }
  if (d == 0) return {};

  struct Pending {
    std::vector<double> coords;
    long long last_seq = std::numeric_limits<long long>::min();
  };
  std::vector<std::string> order;
  std::map<std::string, Pending> byid;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != d + 2) fail_data("line " + std::to_string(lineno) + ": expected " + std::to_string(d + 2) + " fields");
    const std::string id = trim(f[0]);
    long long seq = 0;
    {
      const std::string s = trim(f[1]);
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), seq);
      if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        fail_data("line " + std::to_string(lineno) + ": bad seq '" + s + "'");
    }
    auto [it, fresh] = byid.try_emplace(id);
    if (fresh) order.push_back(id);
    if (seq <= it->second.last_seq)
      fail_data("line " + std::to_string(lineno) + ": seq not increasing for curve '" + id + "'");
    it->second.last_seq = seq;
    for (std::size_t k = 0; k < d; ++k) it->second.coords.push_back(parse_double(f[k + 2], lineno));
  }
  std::vector<Curve> curves;
  curves.reserve(order.size());
  for (const auto& id : order) curves.emplace_back(id, static_cast<int>(d), std::move(byid[id].coords));
  return curves;
}

std::vector<Curve> read_curves(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_data("cannot open '" + path + "'");
  auto curves = format_for_path(path) == CurveFormat::csv ? read_curves_csv(in) : read_curves_jsonl(in);
  if (curves.empty()) fail_data("'" + path + "' contains no curves");
  check_dimension(curves, 0, path);
  return curves;
}

std::vector<double> parse_vector(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream ss(t);
  std::vector<double> v;
  std::string tok;
  while (ss >> tok) v.push_back(parse_double(tok, 1));
  return v;
}

PointCloud read_points(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<double> v;
    try {
      v = parse_vector(line);
    } catch (const Error&) {
      if (rows.empty() && lineno == 1) continue;  // header
      fail_data("line " + std::to_string(lineno) + ": bad point '" + trim(line) + "'");
    }
    if (!rows.empty() && v.size() != rows.front().size())
      fail_data("line " + std::to_string(lineno) + ": dimension mismatch");
    for (double c : v)
      if (!std::isfinite(c)) fail_data("line " + std::to_string(lineno) + ": non-finite coordinate");
    rows.push_back(std::move(v));
  }
  if (rows.empty()) return {};
  PointCloud pc(static_cast<int>(rows.front().size()), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) pc.set(i, rows[i]);
  return pc;
}

PointCloud read_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_data("cannot open '" + path + "'");
  auto pc = read_points(in);
  if (pc.empty()) fail_data("'" + path + "' contains no points");
  return pc;
}

void write_curves_jsonl(std::ostream& out, std::span<const Curve> curves) {
  for (const auto& c : curves) {
    out << "{\"id\":" << nlohmann::json(c.id()).dump() << ",\"points\":[";
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out << ',';
      out << '[';
      const auto v = c.vertex(i);
      for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << format_double(v[k]);
      out << ']';
    }
    out << "]}\n";
  }
}

void write_curves_csv(std::ostream& out, std::span<const Curve> curves) {
  const int d = curves.empty() ? 2 : curves.front().dim();
  out << "curve_id,seq";
  for (int k = 1; k <= d; ++k) out << ",x" << k;
  out << '\n';
  for (const auto& c : curves) {
    if (c.id().find(',') != std::string::npos) fail_usage("curve id '" + c.id() + "' contains a comma");
    for (std::size_t i = 0; i < c.size(); ++i) {
      out << c.id() << ',' << i;
      for (double x : c.vertex(i)) out << ',' << format_double(x);
      out << '\n';
    }
  }
}

void write_curves(const std::string& path, std::span<const Curve> curves) {
  std::ofstream out(path);
  if (!out) fail_data("cannot write '" + path + "'");
  if (format_for_path(path) == CurveFormat::csv)
    write_curves_csv(out, curves);
  else
    write_curves_jsonl(out, curves);
}

int check_dimension(std::span<const Curve> curves, int dim, const std::string& what) {
  for (const auto& c : curves) {
    if (dim == 0) dim = c.dim();
    if (c.dim() != dim)
      fail_data(what + ": dimension mismatch (curve '" + c.id() + "' has " + std::to_string(c.dim()) +
                ", expected " + std::to_string(dim) + ")");
  }
  return dim;
}

void write_svg_curves(std::ostream& out, std::span<const Curve> curves, std::span<const double> values) {
  double lox = INFINITY, hix = -INFINITY, loy = INFINITY, hiy = -INFINITY;
  for (const auto& c : curves)
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto v = c.vertex(i);
      lox = std::min(lox, v[0]), hix = std::max(hix, v[0]);
      const double y = v.size() > 1 ? v[1] : 0.0;
      loy = std::min(loy, y), hiy = std::max(hiy, y);
    }
  Viewport vp;
  if (!curves.empty()) vp.fit(lox, hix, loy, hiy);
  double vlo = 0.0, vhi = 1.0;
  if (!values.empty()) {
    const auto [a, b] = std::minmax_element(values.begin(), values.end());
    vlo = *a, vhi = *b;
  }
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  // draw low values first so the deepest curves end up on top
  std::vector<std::size_t> idx(curves.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  if (values.size() == curves.size())
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  for (std::size_t i : idx) {
    const auto& c = curves[i];
    const double t = values.size() == curves.size() && vhi > vlo ? (values[i] - vlo) / (vhi - vlo) : 1.0;
    out << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << ramp(t) << "\" points=\"";
    char buf[64];
    for (std::size_t j = 0; j < c.size(); ++j) {
      const auto v = c.vertex(j);
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", j ? " " : "", vp.px(v[0]), vp.py(v.size() > 1 ? v[1] : 0.0));
      out << buf;
    }
    out << "\"><title>" << xml_escape(c.id()) << "</title></polyline>\n";
  }
  out << "</svg>\n";
}

void write_svg_dd(std::ostream& out, std::span<const DDPoint> points) {
  double hi = 0.0;
  for (const auto& p : points) hi = std::max({hi, p.d0, p.d1});
  if (hi <= 0.0) hi = 1.0;
  Viewport vp;
  vp.pad = 40.0;
  vp.fit(0.0, hi, 0.0, hi);
  char buf[160];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  out << "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" fill=\"none\" stroke=\"#888\"/>\n",
                vp.px(0), vp.py(hi), vp.px(hi) - vp.px(0), vp.py(0) - vp.py(hi));
  out << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#888\" stroke-dasharray=\"4 4\"/>\n",
                vp.px(0), vp.py(0), vp.px(hi), vp.py(hi));
  out << buf;
  out << "<text x=\"300\" y=\"590\" text-anchor=\"middle\" font-size=\"14\">depth w.r.t. sample 0</text>\n";
  out << "<text x=\"14\" y=\"300\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 14 300)\">depth w.r.t. sample 1</text>\n";
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"%s\">", vp.px(p.d0), vp.py(p.d1),
                  p.label == 0 ? "#1f5fbf" : "#d62728");
    out << buf << "<title>" << xml_escape(p.id) << "</title></circle>\n";
  }
  out << "</svg>\n";
}

}  // namespace curvedepth
