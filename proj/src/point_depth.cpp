#include "curvedepth/point_depth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "curvedepth/error.hpp"
#include "curvedepth/simd.hpp"

namespace curvedepth {

double default_delta(std::size_t m, double alpha) {
  if (m == 0) fail_usage("sample size m must be >= 1");
  return 1.0 / (10.0 * std::pow(static_cast<double>(m), alpha));
}

double DepthConfig::resolved_delta(std::size_t m) const {
  const double d = std::isnan(delta) ? default_delta(m, alpha) : delta;
  check_delta(d);
  return d;
}

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) fail_usage("delta must lie in (0, 1/2), got " + std::to_string(delta));
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(std::size_t dim, const PointCloud& mu, const PointCloud& q) {
  if (mu.empty() || q.empty()) fail_usage("point depth needs nonempty mu and Q samples");
  if (mu.dim() != static_cast<int>(dim) || q.dim() != static_cast<int>(dim))
    fail_data("point depth: dimension mismatch between x and samples");
}

// Running minimum of the thresholded mass ratio.
struct Ratio {
  double m_total;
  double q_total;
  std::size_t mu_min;  // smallest admissible mu count
  // running minimum of q/mu kept as an exact fraction
  std::uint64_t bq = 1, bmu = 0;

  Ratio(std::size_t m, std::size_t nq, double delta)
      : m_total(static_cast<double>(m)), q_total(static_cast<double>(nq)) {
    const double dm = delta * static_cast<double>(m);
    mu_min = static_cast<std::size_t>(std::floor(dm));
    while (static_cast<double>(mu_min) <= dm) ++mu_min;
  }

  // true once the infimum is known to be 0
  bool eval(std::size_t mu, std::size_t q) {
    if (q == 0) {
      bq = 0;
      bmu = 1;
      return true;
    }
    if (mu >= mu_min && static_cast<std::uint64_t>(q) * bmu < bq * static_cast<std::uint64_t>(mu)) {
      bq = q;
      bmu = mu;
    }
    return false;
  }

  double value() const {
    if (bmu == 0) return kInf;
    if (bq == 0) return 0.0;
    return (static_cast<double>(bq) * m_total) / (static_cast<double>(bmu) * q_total);
  }
};

// Counts added on top of the angular sweep. `base` points sit at x and are in
// every halfspace. `line` points (3D only) lie on the pivot line: they are all
// in when the boundary contains the line, and tilting the boundary keeps
// either the part above x or the part below.
struct Extras {
  std::size_t mu_base = 0, q_base = 0;
  bool line = false;
  std::size_t mu_above = 0, q_above = 0, mu_below = 0, q_below = 0;
};

constexpr std::uint64_t kEnd = ~std::uint64_t{0};
constexpr std::uint64_t kHalfTurn = std::uint64_t{2} << 62;

// LSD radix sort on 11-bit digits; a pass where every key has the same digit
// is skipped.
void radix_sort(std::vector<std::uint64_t>& keys, std::vector<std::uint64_t>& scratch) {
  const std::size_t n = keys.size();
  if (n < 256) {
    std::sort(keys.begin(), keys.end());
    return;
  }
  scratch.resize(n);
  std::uint64_t* src = keys.data();
  std::uint64_t* dst = scratch.data();
  constexpr int kBits = 11;
  constexpr std::uint64_t kMask = (1u << kBits) - 1;
  std::array<std::uint32_t, 1u << kBits> count;
  for (int shift = 0; shift < 64; shift += kBits) {
    count.fill(0);
    for (std::size_t i = 0; i < n; ++i) ++count[(src[i] >> shift) & kMask];
    if (count[(src[0] >> shift) & kMask] == n) continue;
    std::uint32_t sum = 0;
    for (auto& c : count) {
      const std::uint32_t t = c;
      c = sum;
      sum += t;
    }
    for (std::size_t i = 0; i < n; ++i) dst[count[(src[i] >> shift) & kMask]++] = src[i];
    std::swap(src, dst);
  }
  if (src != keys.data()) std::copy(src, src + n, keys.data());
}

// Leave keys are enter keys plus a half turn, so the sorted leave list is the
// sorted enter list rotated to start at the first key >= half turn.
void leave_keys(const std::vector<std::uint64_t>& enter, std::size_t start, std::vector<std::uint64_t>& out) {
  const std::size_t n = enter.size();
  out.resize(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = start + i;
    if (j >= n) j -= n;
    out[i] = simd::rotate_quarter(enter[j], 2);
  }
  out[n] = kEnd;
}

struct SweepBuffers {
  std::vector<std::uint64_t> ml, ql, scratch;
};

inline std::size_t take(const std::uint64_t*& p, std::uint64_t k) {
  const std::uint64_t* s = p;
  while (*p == k) ++p;
  return static_cast<std::size_t>(p - s);
}

bool sweep(std::vector<std::uint64_t>& mk, std::vector<std::uint64_t>& qk, const Extras& ex, Ratio& r,
           SweepBuffers& buf) {
  const std::size_t mu_line = ex.mu_above + ex.mu_below;
  const std::size_t q_line = ex.q_above + ex.q_below;

  auto closed = [&](std::size_t mu, std::size_t q) {
    return r.eval(mu + ex.mu_base + mu_line, q + ex.q_base + q_line);
  };
  auto open = [&](std::size_t mu, std::size_t q) {
    if (r.eval(mu + ex.mu_base + mu_line, q + ex.q_base + q_line)) return true;
    if (!ex.line) return false;
    if (r.eval(mu + ex.mu_base + ex.mu_above, q + ex.q_base + ex.q_above)) return true;
    return r.eval(mu + ex.mu_base + ex.mu_below, q + ex.q_base + ex.q_below);
  };

  if (mk.empty() && qk.empty()) return open(0, 0);

  radix_sort(mk, buf.scratch);
  radix_sort(qk, buf.scratch);
  const std::size_t mn = mk.size(), qn = qk.size();
  const std::size_t mstart = std::lower_bound(mk.begin(), mk.end(), kHalfTurn) - mk.begin();
  const std::size_t qstart = std::lower_bound(qk.begin(), qk.end(), kHalfTurn) - qk.begin();
  leave_keys(mk, mstart, buf.ml);
  leave_keys(qk, qstart, buf.ql);
  mk.push_back(kEnd);
  qk.push_back(kEnd);

  const std::uint64_t* me = mk.data();
  const std::uint64_t* ml = buf.ml.data();
  const std::uint64_t* qe = qk.data();
  const std::uint64_t* ql = buf.ql.data();

  // Halfplanes whose interval wraps past key 0 are open at the start.
  std::size_t cur_mu = mn - mstart;
  std::size_t cur_q = qn - qstart;

  for (;;) {
    const std::uint64_t k = std::min(std::min(*me, *ml), std::min(*qe, *ql));
    if (k == kEnd) break;
    const std::size_t emu = take(me, k), lmu = take(ml, k);
    const std::size_t eq = take(qe, k), lq = take(ql, k);
    if (closed(cur_mu + emu, cur_q + eq)) return true;
    cur_mu = cur_mu + emu - lmu;
    cur_q = cur_q + eq - lq;
    if (open(cur_mu, cur_q)) return true;
  }
  return false;
}

std::size_t drop_zero_keys(std::vector<std::uint64_t>& keys) {
  const auto it = std::remove(keys.begin(), keys.end(), simd::kZeroKey);
  const std::size_t zeros = keys.end() - it;
  keys.erase(it, keys.end());
  return zeros;
}

struct Workspace {
  std::vector<std::uint64_t> mk, qk;
  SweepBuffers sweep;
  std::vector<double> mx, my, qx, qy;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

}  // namespace

double point_depth_1d(double x, const PointCloud& mu, const PointCloud& q, double delta) {
  check_inputs(1, mu, q);
  check_delta(delta);
  auto count = [x](const PointCloud& c, std::size_t& ge, std::size_t& le) {
    ge = le = 0;
    const double* a = c.axis(0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      ge += a[i] >= x;
      le += a[i] <= x;
    }
  };
  std::size_t mge, mle, qge, qle;
  count(mu, mge, mle);
  count(q, qge, qle);
  Ratio r(mu.size(), q.size(), delta);
  if (r.eval(mge, qge)) return 0.0;
  r.eval(mle, qle);
  return r.value();
}

double point_depth_exact_2d(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta) {
  check_inputs(2, mu, q);
  check_delta(delta);
  const auto& kt = simd::kernels();
  Workspace& ws = workspace();
  ws.mk.resize(mu.size());
  ws.qk.resize(q.size());
  kt.angular_keys(mu.axis(0), mu.axis(1), mu.size(), x[0], x[1], ws.mk.data());
  kt.angular_keys(q.axis(0), q.axis(1), q.size(), x[0], x[1], ws.qk.data());

  Extras ex;
  ex.mu_base = drop_zero_keys(ws.mk);
  ex.q_base = drop_zero_keys(ws.qk);
  Ratio r(mu.size(), q.size(), delta);
  sweep(ws.mk, ws.qk, ex, r, ws.sweep);
  return r.value();
}

double point_depth_exact_3d(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta) {
  check_inputs(3, mu, q);
  check_delta(delta);
  using V3 = std::array<double, 3>;

  auto relative = [&x](const PointCloud& c) {
    std::vector<V3> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      for (int k = 0; k < 3; ++k) out[i][k] = c.at(i, k) - x[k];
    return out;
  };
  const std::vector<V3> rm = relative(mu);
  const std::vector<V3> rq = relative(q);
  auto is_zero = [](const V3& v) { return v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0; };

  Extras base;
  std::vector<V3> pivots;
  for (const auto& v : rm) {
    if (is_zero(v)) ++base.mu_base;
    else pivots.push_back(v);
  }
  for (const auto& v : rq) {
    if (is_zero(v)) ++base.q_base;
    else pivots.push_back(v);
  }

  Ratio r(mu.size(), q.size(), delta);
  if (pivots.empty()) {
    r.eval(base.mu_base, base.q_base);
    return r.value();
  }
  std::sort(pivots.begin(), pivots.end());
  pivots.erase(std::unique(pivots.begin(), pivots.end()), pivots.end());

  auto dot = [](const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
  auto cross = [](const V3& a, const V3& b) {
    return V3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto unit = [&dot](V3 v) {
    const double n = std::sqrt(dot(v, v));
    for (double& c : v) c /= n;
    return v;
  };

  const auto& kt = simd::kernels();
  Workspace& ws = workspace();
  for (const V3& z : pivots) {
    const V3 zh = unit(z);
    int axis = 0;
    for (int k = 1; k < 3; ++k)
      if (std::abs(zh[k]) < std::abs(zh[axis])) axis = k;
    V3 e{0.0, 0.0, 0.0};
    e[axis] = 1.0;
    const V3 a1 = unit(cross(zh, e));
    const V3 a2 = cross(zh, a1);

    Extras ex = base;
    ex.line = true;
    auto project = [&](const std::vector<V3>& pts, std::vector<double>& xs, std::vector<double>& ys,
                       std::size_t& above, std::size_t& below) {
      xs.clear();
      ys.clear();
      for (const V3& v : pts) {
        if (is_zero(v)) continue;
        const double p1 = dot(v, a1), p2 = dot(v, a2);
        const bool on_line = v == z || p1 * p1 + p2 * p2 <= 1e-24 * dot(v, v);
        if (on_line) {
          dot(v, zh) > 0.0 ? ++above : ++below;
        } else {
          xs.push_back(p1);
          ys.push_back(p2);
        }
      }
    };
    project(rm, ws.mx, ws.my, ex.mu_above, ex.mu_below);
    project(rq, ws.qx, ws.qy, ex.q_above, ex.q_below);

    ws.mk.resize(ws.mx.size());
    ws.qk.resize(ws.qx.size());
    kt.angular_keys(ws.mx.data(), ws.my.data(), ws.mx.size(), 0.0, 0.0, ws.mk.data());
    kt.angular_keys(ws.qx.data(), ws.qy.data(), ws.qx.size(), 0.0, 0.0, ws.qk.data());
    if (sweep(ws.mk, ws.qk, ex, r, ws.sweep)) return 0.0;
  }
  return r.value();
}

double point_depth_random(std::span<const double> x, const PointCloud& mu, const PointCloud& q, double delta,
                          std::size_t k, Rng& rng) {
  const std::size_t d = x.size();
  check_inputs(d, mu, q);
  check_delta(delta);
  if (k == 0) fail_usage("random directions: k must be >= 1");
  const auto& kt = simd::kernels();
  std::vector<const double*> maxes(d), qaxes(d);
  for (std::size_t j = 0; j < d; ++j) {
    maxes[j] = mu.axis(static_cast<int>(j));
    qaxes[j] = q.axis(static_cast<int>(j));
  }
  Ratio r(mu.size(), q.size(), delta);
  std::vector<double> u(d);
  for (std::size_t i = 0; i < k; ++i) {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (double& c : u) {
        c = rng.normal();
        norm2 += c * c;
      }
    } while (norm2 == 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : u) c *= inv;

    std::size_t mpos, mzero, qpos, qzero;
    kt.halfspace_counts(maxes.data(), static_cast<int>(d), mu.size(), x.data(), u.data(), &mpos, &mzero);
    kt.halfspace_counts(qaxes.data(), static_cast<int>(d), q.size(), x.data(), u.data(), &qpos, &qzero);
    if (r.eval(mpos + mzero, qpos + qzero)) return 0.0;
  }
  return r.value();
}

double point_depth(std::span<const double> x, const PointCloud& mu, const PointCloud& q, const DepthConfig& cfg,
                   Rng& rng) {
  const double delta = cfg.resolved_delta(mu.size());
  if (cfg.method == DepthMethod::random || x.size() > 3) return point_depth_random(x, mu, q, delta, cfg.k, rng);
  switch (x.size()) {
    case 1: return point_depth_1d(x[0], mu, q, delta);
    case 2: return point_depth_exact_2d(x, mu, q, delta);
    case 3: return point_depth_exact_3d(x, mu, q, delta);
    default: fail_usage("point depth: dimension must be >= 1");
  }
}

}  // namespace curvedepth
