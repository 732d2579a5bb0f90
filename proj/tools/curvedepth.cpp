// Command-line front end. Results go to stdout (or --out), diagnostics to
// stderr as a single JSON line {"error": kind, "message": ...}.
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "curvedepth/analysis.hpp"
#include "curvedepth/clustering.hpp"
#include "curvedepth/curve_depth.hpp"
#include "curvedepth/distance.hpp"
#include "curvedepth/error.hpp"
#include "curvedepth/io.hpp"
#include "curvedepth/point_depth.hpp"
#include "curvedepth/registration.hpp"
#include "curvedepth/schemes.hpp"

using namespace curvedepth;
using nlohmann::ordered_json;

namespace {

struct DepthFlags {
  std::size_t m = 500;
  std::uint64_t seed = 1;
  double delta = std::numeric_limits<double>::quiet_NaN();
  double alpha = 0.125;
  std::string method = "exact";

  void add(CLI::App* cmd, std::size_t default_m = 500) {
    m = default_m;
    cmd->add_option("--m", m, "points sampled per curve")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    auto* d = cmd->add_option("--delta", delta, "halfspace mass threshold, 0 < delta < 1/2");
    auto* a = cmd->add_option("--delta-alpha", alpha, "use delta = 1/(10 m^alpha)")->capture_default_str();
    d->excludes(a);
    cmd->add_option("--method", method, "exact | random:K")->capture_default_str();
  }

  DepthConfig config() const {
    DepthConfig cfg;
    cfg.alpha = alpha;
    if (!std::isnan(delta)) {
      check_delta(delta);
      cfg.delta = delta;
    }
    if (method == "exact") {
      cfg.method = DepthMethod::exact;
    } else if (method.rfind("random:", 0) == 0) {
      cfg.method = DepthMethod::random;
      const std::string k = method.substr(7);
      std::size_t pos = 0;
      long long v = 0;
      try {
        v = std::stoll(k, &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
      if (pos != k.size() || v < 1) fail_usage("--method random:K needs an integer K >= 1");
      cfg.k = static_cast<std::size_t>(v);
    } else {
      fail_usage("--method must be 'exact' or 'random:K'");
    }
    return cfg;
  }
};

// Writes to --out if given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail_data("cannot write '" + path + "'");
    }
  }
  std::ostream& operator*() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void write_svg(const std::string& path, const std::function<void(std::ostream&)>& f) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) fail_data("cannot write '" + path + "'");
  f(out);
}

const Curve& pick(const std::vector<Curve>& curves, const std::string& id, const std::string& what) {
  if (id.empty()) return curves.front();
  for (const auto& c : curves)
    if (c.id() == id) return c;
  fail_data(what + ": no curve with id '" + id + "'");
}

ordered_json number(double x) {
  // keep the 17-digit text so reruns are byte-identical
  return ordered_json::parse(std::isfinite(x) ? format_double(x) : std::string("null"));
}

ordered_json numbers(std::span<const double> xs) {
  ordered_json a = ordered_json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

const char* group_name(int g) {
  switch (g) {
    case kOutlier: return "outlier";
    case kOuter: return "outer";
    case kCentral: return "central";
    default: return "deepest";
  }
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return 2;
    case ErrorKind::data: return 3;
    default: return 4;
  }
}

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::data: return "data";
    default: return "numeric";
  }
}

void report_error(const char* kind, const std::string& msg) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = msg;
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Depth, distance, registration and clustering for unparameterized curves"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "write the main result here instead of stdout");

  // depth
  auto* depth = app.add_subcommand("depth", "depth of each curve w.r.t. a sample");
  DepthFlags depth_flags;
  std::string curves_path, query_path, svg_path;
  bool loo = false;
  depth_flags.add(depth);
  depth->add_option("--curves", curves_path, "reference sample")->required();
  auto* qopt = depth->add_option("--query", query_path, "curves to score (default: the sample itself)");
  depth->add_flag("--leave-one-out", loo, "exclude each curve from its own reference")->excludes(qopt);
  depth->add_option("--svg", svg_path, "depth-coloured polylines");

  // pointdepth
  auto* pdepth = app.add_subcommand("pointdepth", "depth of one point w.r.t. point clouds mu and Q");
  DepthFlags pd_flags;
  std::string x_text, mu_path, q_path;
  pd_flags.add(pdepth);
  pdepth->add_option("--x", x_text, "query point, e.g. 0.5,0.25")->required();
  pdepth->add_option("--mu", mu_path, "point file for mu")->required();
  pdepth->add_option("--q", q_path, "point file for Q")->required();

  // distance
  auto* dist = app.add_subcommand("distance", "distance between two curves");
  std::string a_path, b_path, a_id, b_id;
  std::size_t resample = 0;
  bool orient_free = false;
  dist->add_option("--a", a_path, "first curve file")->required();
  dist->add_option("--b", b_path, "second curve file")->required();
  dist->add_option("--a-id", a_id, "curve id in --a (default: first)");
  dist->add_option("--b-id", b_id, "curve id in --b (default: first)");
  dist->add_option("--resample", resample, "arc-length resample both curves to this many vertices");
  dist->add_flag("--orientation-free", orient_free, "minimum over both orientations");

  // distmatrix
  auto* dmat = app.add_subcommand("distmatrix", "pairwise distance matrix");
  std::string dm_path;
  std::size_t dm_resample = 0;
  bool dm_orient = false;
  dmat->add_option("--curves", dm_path)->required();
  dmat->add_option("--resample", dm_resample);
  dmat->add_flag("--orientation-free", dm_orient);

  // register
  auto* reg = app.add_subcommand("register", "rigid alignment of one curve onto another");
  std::string mv_path, tg_path, mv_id, tg_id, aligned_path;
  RegisterOptions ropt;
  std::uint64_t reg_seed = 1;
  DepthFlags reg_depth;
  bool to_deepest = false;
  reg->add_option("--moving", mv_path)->required();
  reg->add_option("--target", tg_path)->required();
  reg->add_option("--moving-id", mv_id);
  reg->add_option("--target-id", tg_id);
  reg->add_flag("--to-deepest", to_deepest, "target is the deepest curve of the --target sample");
  reg->add_option("--restarts", ropt.restarts)->check(CLI::PositiveNumber)->capture_default_str();
  reg->add_option("--resample", ropt.distance.resample)->capture_default_str();
  reg->add_option("--seed", reg_seed)->capture_default_str();
  reg->add_option("--m", reg_depth.m, "depth sample size for --to-deepest")->capture_default_str();
  reg->add_option("--aligned", aligned_path, "write the transformed moving curve here");

  // cluster
  auto* clus = app.add_subcommand("cluster", "depth-based clustering");
  std::string cl_path, report_path;
  ClusterOptions copt;
  std::uint64_t cl_seed = 1;
  std::string cl_method = "exact";
  clus->add_option("--curves", cl_path)->required();
  clus->add_option("--k", copt.k)->check(CLI::PositiveNumber)->capture_default_str();
  clus->add_option("--lambda", copt.lambda)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  clus->add_option("--t", copt.threshold, "reallocation threshold T")->capture_default_str();
  clus->add_option("--beta0", copt.beta0)->capture_default_str();
  clus->add_option("--max-iter", copt.max_iter)->capture_default_str();
  clus->add_option("--stall", copt.stall)->capture_default_str();
  clus->add_option("--m", copt.m)->check(CLI::PositiveNumber)->capture_default_str();
  clus->add_option("--method", cl_method, "exact | random:K")->capture_default_str();
  clus->add_option("--resample", copt.distance.resample)->capture_default_str();
  clus->add_flag("--paper-acceptance", copt.paper_acceptance, "accept worse moves with probability 1 - exp(beta dC)/2");
  clus->add_option("--restarts", copt.restarts, "independent random starts, best total cost kept")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  clus->add_option("--seed", cl_seed)->capture_default_str();
  clus->add_option("--report", report_path, "cost report JSON");

  // ddplot
  auto* dd = app.add_subcommand("ddplot", "depth-versus-depth plot of two samples");
  DepthFlags dd_flags;
  std::string s0_path, s1_path, dd_svg, rule_path;
  dd_flags.add(dd);
  dd->add_option("--s0", s0_path)->required();
  dd->add_option("--s1", s1_path)->required();
  dd->add_option("--svg", dd_svg);
  dd->add_option("--rule", rule_path, "fit a linear DD classifier and write it as JSON");

  // wilcoxon
  auto* wil = app.add_subcommand("wilcoxon", "rank-sum test on depths w.r.t. a reference sample");
  DepthFlags w_flags;
  std::string ref_path, w0_path, w1_path;
  w_flags.add(wil);
  wil->add_option("--ref", ref_path)->required();
  wil->add_option("--s0", w0_path)->required();
  wil->add_option("--s1", w1_path)->required();

  // outliers
  auto* outl = app.add_subcommand("outliers", "depth-ranked outlier groups");
  DepthFlags o_flags;
  std::string o_path, o_svg, sizes_text;
  double tau = std::numeric_limits<double>::quiet_NaN();
  o_flags.add(outl);
  outl->add_option("--curves", o_path)->required();
  auto* so = outl->add_option("--sizes", sizes_text, "outliers,outer,central,1");
  auto* to = outl->add_option("--threshold", tau, "depth below which a curve is an outlier");
  so->excludes(to);
  outl->add_option("--svg", o_svg);

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw a sample from a simulation scheme");
  SchemeSpec spec;
  std::uint64_t sim_seed = 1;
  std::string sim_format = "jsonl";
  sim->add_option("--scheme", spec.name)->required()->check(CLI::IsMember(scheme_names()));
  sim->add_option("--n", spec.n)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--vertices", spec.vertices, "vertices per curve (0: scheme default)");
  sim->add_flag("--with-mean", spec.with_mean, "append the mean curve (claeskens, cuevas, s-letters)");
  sim->add_option("--sigma-shift", spec.sigma_shift)->capture_default_str();
  sim->add_option("--sigma-angle", spec.sigma_angle)->capture_default_str();
  sim->add_option("--sigma-trim", spec.sigma_trim)->capture_default_str();
  sim->add_option("--format", sim_format, "jsonl | csv, when writing to stdout")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    report_error("usage", e.what());
    return 2;
  }

  try {
    Sink sink(out_path);
    std::ostream& out = *sink;

    if (*depth) {
      const auto cfg = depth_flags.config();
      const auto sample = read_curves(curves_path);
      std::vector<DepthReport> reps;
      std::vector<Curve> queries;
      if (!query_path.empty()) {
        queries = read_curves(query_path);
        check_dimension(queries, sample.front().dim(), query_path);
        reps = depth_against(queries, sample, depth_flags.m, cfg, depth_flags.seed);
      } else {
        reps = depth_all(sample, depth_flags.m, cfg, depth_flags.seed, loo);
      }
      out << "curve_id,depth\n";
      for (const auto& r : reps) out << r.id << ',' << format_double(r.depth) << '\n';
      const auto& shown = query_path.empty() ? sample : queries;
      const auto d = depths_of(reps);
      write_svg(svg_path, [&](std::ostream& s) { write_svg_curves(s, shown, d); });
    } else if (*pdepth) {
      const auto cfg = pd_flags.config();
      const auto x = parse_vector(x_text);
      const auto mu = read_points(mu_path);
      const auto q = read_points(q_path);
      if (mu.dim() != static_cast<int>(x.size()) || q.dim() != mu.dim())
        fail_data("pointdepth: dimension mismatch between --x, --mu and --q");
      Rng rng(substream_seed(pd_flags.seed, 0, StreamRole::directions));
      out << format_double(point_depth(x, mu, q, cfg, rng)) << '\n';
    } else if (*dist) {
      const auto a = read_curves(a_path);
      const auto b = read_curves(b_path);
      const Curve& ca = pick(a, a_id, a_path);
      const Curve& cb = pick(b, b_id, b_path);
      if (ca.dim() != cb.dim()) fail_data("distance: curves have different dimensions");
      if (resample == 1) fail_usage("--resample must be 0 or >= 2");
      out << format_double(curve_distance(ca, cb, {resample, orient_free})) << '\n';
    } else if (*dmat) {
      const auto cs = read_curves(dm_path);
      if (dm_resample == 1) fail_usage("--resample must be 0 or >= 2");
      const auto mtx = curve_distance_matrix(cs, {dm_resample, dm_orient});
      out << "curve_id";
      for (const auto& c : cs) out << ',' << c.id();
      out << '\n';
      for (std::size_t i = 0; i < cs.size(); ++i) {
        out << cs[i].id();
        for (std::size_t j = 0; j < cs.size(); ++j) out << ',' << format_double(mtx.at(i, j));
        out << '\n';
      }
    } else if (*reg) {
      const auto mv = read_curves(mv_path);
      const auto tg = read_curves(tg_path);
      const Curve& moving = pick(mv, mv_id, mv_path);
      std::size_t target_index = 0;
      if (to_deepest) {
        if (!tg_id.empty()) fail_usage("--to-deepest and --target-id are exclusive");
        target_index = deepest(tg, reg_depth.m, DepthConfig{}, reg_seed).first;
      }
      const Curve& target = to_deepest ? tg[target_index] : pick(tg, tg_id, tg_path);
      if (moving.dim() != target.dim()) fail_data("register: curves have different dimensions");
      if (moving.dim() != 2 && moving.dim() != 3) fail_usage("register: only 2D and 3D curves");
      const auto r = register_rigid(moving, target, ropt, reg_seed);
      ordered_json j;
      j["moving"] = moving.id();
      j["target"] = target.id();
      j["rotation"] = numbers(r.transform.rotation);
      j["translation"] = numbers(r.transform.translation);
      j["center"] = numbers(r.transform.center);
      j["params"] = numbers(r.params);
      j["initial_distance"] = number(r.initial_distance);
      j["distance"] = number(r.distance);
      out << j.dump(2) << '\n';
      if (!aligned_path.empty()) {
        const Curve aligned = r.transform.apply(moving);
        write_curves(aligned_path, std::span<const Curve>(&aligned, 1));
      }
    } else if (*clus) {
      DepthFlags f;
      f.method = cl_method;
      copt.depth = f.config();
      const auto cs = read_curves(cl_path);
      if (copt.k > cs.size()) fail_usage("--k exceeds the number of curves");
      const auto p = ddclust(cs, copt, cl_seed);
      out << "curve_id,cluster\n";
      for (std::size_t i = 0; i < cs.size(); ++i) out << cs[i].id() << ',' << p.assignment[i] << '\n';
      if (!report_path.empty()) {
        ordered_json j;
        j["k"] = p.k;
        j["lambda"] = number(copt.lambda);
        j["total"] = number(p.total);
        j["iterations"] = p.iterations;
        j["accepted"] = p.accepted;
        j["restart"] = p.restart;
        ordered_json per = ordered_json::array();
        for (std::size_t i = 0; i < cs.size(); ++i)
          per.push_back({{"curve_id", cs[i].id()},
                         {"cluster", p.assignment[i]},
                         {"red", number(p.red[i])},
                         {"sil", number(p.sil[i])},
                         {"cost", number(p.cost[i])}});
        j["curves"] = per;
        std::ofstream rf(report_path);
        if (!rf) fail_data("cannot write '" + report_path + "'");
        rf << j.dump(2) << '\n';
      }
    } else if (*dd) {
      const auto cfg = dd_flags.config();
      const auto s0 = read_curves(s0_path);
      const auto s1 = read_curves(s1_path);
      check_dimension(s1, s0.front().dim(), s1_path);
      const auto pts = dd_plot(s0, s1, dd_flags.m, cfg, dd_flags.seed);
      out << "curve_id,label,d0,d1\n";
      for (const auto& p : pts)
        out << p.id << ',' << p.label << ',' << format_double(p.d0) << ',' << format_double(p.d1) << '\n';
      write_svg(dd_svg, [&](std::ostream& s) { write_svg_dd(s, pts); });
      if (!rule_path.empty()) {
        const auto rule = dd_linear_classifier(pts);
        ordered_json j;
        j["w0"] = number(rule.w0);
        j["w1"] = number(rule.w1);
        j["b"] = number(rule.b);
        j["positive"] = rule.positive;
        j["errors"] = rule.errors;
        j["margin"] = number(rule.margin);
        std::ofstream rf(rule_path);
        if (!rf) fail_data("cannot write '" + rule_path + "'");
        rf << j.dump(2) << '\n';
      }
    } else if (*wil) {
      const auto cfg = w_flags.config();
      const auto ref = read_curves(ref_path);
      const auto s0 = read_curves(w0_path);
      const auto s1 = read_curves(w1_path);
      check_dimension(s0, ref.front().dim(), w0_path);
      check_dimension(s1, ref.front().dim(), w1_path);
      const auto r = wilcoxon_depth_test(ref, s0, s1, w_flags.m, cfg, w_flags.seed);
      ordered_json j;
      j["W"] = number(r.w);
      j["z"] = number(r.z);
      j["p"] = number(r.p);
      out << j.dump() << '\n';
    } else if (*outl) {
      const auto cfg = o_flags.config();
      const auto cs = read_curves(o_path);
      const auto reps = depth_all(cs, o_flags.m, cfg, o_flags.seed);
      const auto d = depths_of(reps);
      OutlierPartition part;
      if (!sizes_text.empty()) {
        const auto v = parse_vector(sizes_text);
        if (v.size() != 4) fail_usage("--sizes needs four counts");
        std::array<std::size_t, 4> sz{};
        for (int g = 0; g < 4; ++g) {
          if (v[g] < 0 || v[g] != std::floor(v[g])) fail_usage("--sizes must be nonnegative integers");
          sz[g] = static_cast<std::size_t>(v[g]);
        }
        part = outlier_partition_sizes(d, sz);
      } else if (!std::isnan(tau)) {
        part = outlier_partition_threshold(d, tau);
      } else {
        fail_usage("outliers needs --sizes or --threshold");
      }
      std::vector<std::size_t> rank(cs.size());
      for (std::size_t r = 0; r < part.order.size(); ++r) rank[part.order[r]] = r + 1;
      out << "curve_id,depth,rank,group\n";
      for (std::size_t i = 0; i < cs.size(); ++i)
        out << cs[i].id() << ',' << format_double(d[i]) << ',' << rank[i] << ',' << group_name(part.group[i]) << '\n';
      write_svg(o_svg, [&](std::ostream& s) { write_svg_curves(s, cs, d); });
    } else if (*sim) {
      const auto cs = generate(spec, sim_seed);
      if (out_path.empty() ? sim_format == "csv" : format_for_path(out_path) == CurveFormat::csv)
        write_curves_csv(out, cs);
      else
        write_curves_jsonl(out, cs);
    }
    out.flush();
    if (!out) fail_data("write failed");
  } catch (const Error& e) {
    report_error(kind_name(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    report_error("numeric", "out of memory");
    return 4;
  } catch (const std::exception& e) {
    report_error("numeric", e.what());
    return 4;
  }
  return 0;
}
