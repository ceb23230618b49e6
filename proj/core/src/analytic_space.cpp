#include "heatlab/analytic_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatlab {

// ---------- IntervalSet ----------

IntervalSet::IntervalSet(std::vector<Interval> parts) {
  for (const auto& iv : parts) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || !(iv.lo <= iv.hi)) {
      throw std::invalid_argument("interval must satisfy lo <= hi");
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : parts) {
    if (!parts_.empty() && iv.lo <= parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    } else {
      parts_.push_back(iv);
    }
  }
}

bool IntervalSet::bounded() const {
  for (const auto& iv : parts_) {
    if (std::isinf(iv.lo) || std::isinf(iv.hi)) return false;
  }
  return true;
}

double IntervalSet::length() const {
  if (!bounded()) {
    throw std::invalid_argument("length of unbounded interval set");
  }
  double s = 0.0;
  for (const auto& iv : parts_) s += iv.hi - iv.lo;
  return s;
}

bool IntervalSet::contains(double x) const {
  for (const auto& iv : parts_) {
    if (x >= iv.lo && x <= iv.hi) return true;
  }
  return false;
}

double IntervalSet::min() const {
  if (empty()) throw std::invalid_argument("min of empty interval set");
  return parts_.front().lo;
}

double IntervalSet::max() const {
  if (empty()) throw std::invalid_argument("max of empty interval set");
  return parts_.back().hi;
}

double euclidean_gap(const IntervalSet& A, const IntervalSet& B) {
  if (A.empty() || B.empty()) {
    throw std::invalid_argument("gap of empty interval set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : A.parts()) {
    for (const auto& b : B.parts()) {
      const double g = std::max({0.0, b.lo - a.hi, a.lo - b.hi});
      best = std::min(best, g);
    }
  }
  return best;
}

namespace {

double circ_mod(double x) {
  double r = std::fmod(x, 1.0);
  return r < 0.0 ? r + 1.0 : r;
}

// Gap between two arcs that do not wrap (subsets of [0,1], 0 identified
// with 1): zero if they intersect, else the shorter way around between
// facing endpoints.
double arc_gap(const Interval& a, const Interval& b) {
  if (std::max(a.lo, b.lo) <= std::min(a.hi, b.hi)) return 0.0;
  // the seam: [x,1] and [0,y] touch through 1 == 0
  const double up = circ_mod(b.lo - a.hi);    // clockwise from a to b
  const double down = circ_mod(a.lo - b.hi);  // clockwise from b to a
  return std::min(up, down);
}

}  // namespace

double circular_gap(const IntervalSet& A, const IntervalSet& B) {
  if (A.empty() || B.empty()) {
    throw std::invalid_argument("gap of empty interval set");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : A.parts()) {
    for (const auto& b : B.parts()) {
      best = std::min(best, arc_gap(a, b));
    }
  }
  return best;
}

// ---------- Gaussian primitives ----------

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// Asymptotic series in 1/z^2 for F(z) = phi(z)/z^2 * S(z), z << 0.
double F_tail_series(double z) {
  const double iz2 = 1.0 / (z * z);
  double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 12; ++k) {
    term *= -(2.0 * k + 1.0) * iz2;
    if (std::abs(term) >= prev) break;  // asymptotic: stop at smallest term
    sum += term;
    prev = std::abs(term);
  }
  return sum;
}

}  // namespace

double gauss_F(double z) {
  if (z >= -7.0) return z * normal_cdf(z) + normal_pdf(z);
  return normal_pdf(z) / (z * z) * F_tail_series(z);
}

double gauss_log_F(double z) {
  if (z >= -7.0) return std::log(gauss_F(z));
  return -0.5 * z * z - 0.5 * kLog2Pi - 2.0 * std::log(-z) +
         std::log(F_tail_series(z));
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

// ---------- AnalyticSpace1D ----------

void KernelSeriesParams::validate() const {
  if (max_images < 1) throw std::invalid_argument("max_images must be >= 1");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");
}

AnalyticSpace1D::AnalyticSpace1D(SpaceKind kind, double sigma)
    : kind_(kind), sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be positive and finite");
  }
}

void AnalyticSpace1D::check_point(double x) const {
  if (!std::isfinite(x)) throw std::invalid_argument("point must be finite");
  if (kind_ != SpaceKind::free_line && (x < 0.0 || x > 1.0)) {
    throw std::invalid_argument("point outside the domain [0,1]");
  }
}

void AnalyticSpace1D::check_set(const IntervalSet& A) const {
  if (kind_ != SpaceKind::free_line && !A.empty()) {
    if (A.min() < 0.0 || A.max() > 1.0) {
      throw std::invalid_argument("set outside the domain [0,1]");
    }
  }
}

double AnalyticSpace1D::measure(const IntervalSet& A) const {
  check_set(A);
  return A.length();
}

namespace {

double phi_v(double z, double v) {
  return std::exp(-0.5 * z * z / v) / std::sqrt(2.0 * 3.14159265358979323846 * v);
}

// Remainder of the image series beyond ring K, per unit prefactor C.
double interval_ring_bound(int K, double v) {
  const double r = std::exp(-(8.0 * K + 4.0) / (2.0 * v));
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return 4.0 * phi_v(2.0 * K, v) / (1.0 - r);
}

double circle_ring_bound(int K, double v) {
  const double r = std::exp(-(2.0 * K + 1.0) / (2.0 * v));
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return 2.0 * phi_v(static_cast<double>(K), v) / (1.0 - r);
}

// Closed-form int_a^b int_c^d phi_v(x - y + s) dy dx.
double rect_mass_diff(double a, double b, double c, double d, double s,
                      double rv) {
  return rv * (gauss_F((b - c + s) / rv) - gauss_F((a - c + s) / rv) -
               gauss_F((b - d + s) / rv) + gauss_F((a - d + s) / rv));
}

// Closed-form int_a^b int_c^d phi_v(x + y + s) dy dx.
double rect_mass_sum(double a, double b, double c, double d, double s,
                     double rv) {
  return rv * (gauss_F((b + d + s) / rv) - gauss_F((a + d + s) / rv) -
               gauss_F((b + c + s) / rv) + gauss_F((a + c + s) / rv));
}

}  // namespace

double AnalyticSpace1D::kernel_pt(double x, double y, double t,
                                  const KernelSeriesParams& params) const {
  params.validate();
  if (!(t > 0.0)) throw std::invalid_argument("kernel_pt needs t > 0");
  check_point(x);
  check_point(y);
  const double v = sigma_ * sigma_ * t;

  if (kind_ == SpaceKind::free_line) return phi_v(x - y, v);

  double sum = 0.0;
  if (kind_ == SpaceKind::reflecting_interval) {
    sum = phi_v(x - y, v) + phi_v(x + y, v);
    for (int k = 1; k <= params.max_images; ++k) {
      sum += phi_v(x - y + 2.0 * k, v) + phi_v(x - y - 2.0 * k, v) +
             phi_v(x + y + 2.0 * k, v) + phi_v(x + y - 2.0 * k, v);
      if (interval_ring_bound(k, v) <= params.tail_tol) return sum;
    }
  } else {  // circle
    sum = phi_v(x - y, v);
    for (int k = 1; k <= params.max_images; ++k) {
      sum += phi_v(x - y + k, v) + phi_v(x - y - k, v);
      if (circle_ring_bound(k, v) <= params.tail_tol) return sum;
    }
  }
  throw std::runtime_error(
      "kernel image series: tail bound unachievable within max_images");
}

double AnalyticSpace1D::pt_mass(const IntervalSet& A, const IntervalSet& B,
                                double t, const KernelSeriesParams& params,
                                bool* empty_flag) const {
  params.validate();
  if (!(t > 0.0)) throw std::invalid_argument("pt_mass needs t > 0");
  check_set(A);
  check_set(B);
  if (empty_flag) *empty_flag = A.empty() || B.empty();
  if (A.empty() || B.empty()) return 0.0;
  if (!A.bounded() || !B.bounded()) {
    throw std::invalid_argument("pt_mass needs bounded sets");
  }
  const double v = sigma_ * sigma_ * t;
  const double rv = std::sqrt(v);
  const double pref = A.length() * B.length();

  double total = 0.0;
  if (kind_ == SpaceKind::free_line) {
    for (const auto& a : A.parts()) {
      for (const auto& b : B.parts()) {
        total += rect_mass_diff(a.lo, a.hi, b.lo, b.hi, 0.0, rv);
      }
    }
    return total;
  }

  if (kind_ == SpaceKind::reflecting_interval) {
    for (const auto& a : A.parts()) {
      for (const auto& b : B.parts()) {
        total += rect_mass_diff(a.lo, a.hi, b.lo, b.hi, 0.0, rv) +
                 rect_mass_sum(a.lo, a.hi, b.lo, b.hi, 0.0, rv);
      }
    }
    for (int k = 1; k <= params.max_images; ++k) {
      for (const auto& a : A.parts()) {
        for (const auto& b : B.parts()) {
          total += rect_mass_diff(a.lo, a.hi, b.lo, b.hi, 2.0 * k, rv) +
                   rect_mass_diff(a.lo, a.hi, b.lo, b.hi, -2.0 * k, rv) +
                   rect_mass_sum(a.lo, a.hi, b.lo, b.hi, 2.0 * k, rv) +
                   rect_mass_sum(a.lo, a.hi, b.lo, b.hi, -2.0 * k, rv);
        }
      }
      if (pref * interval_ring_bound(k, v) <= params.tail_tol) return total;
    }
  } else {  // circle
    for (const auto& a : A.parts()) {
      for (const auto& b : B.parts()) {
        total += rect_mass_diff(a.lo, a.hi, b.lo, b.hi, 0.0, rv);
      }
    }
    for (int k = 1; k <= params.max_images; ++k) {
      for (const auto& a : A.parts()) {
        for (const auto& b : B.parts()) {
          total += rect_mass_diff(a.lo, a.hi, b.lo, b.hi, k, rv) +
                   rect_mass_diff(a.lo, a.hi, b.lo, b.hi, -k, rv);
        }
      }
      if (pref * circle_ring_bound(k, v) <= params.tail_tol) return total;
    }
  }
  throw std::runtime_error(
      "pt_mass image series: tail bound unachievable within max_images");
}

namespace {

struct SignedLogAcc {
  std::vector<double> logs;
  std::vector<int> signs;

  void add_F_combo(double zpp, double zmp, double zpm, double zmm) {
    // + F(zpp) - F(zmp) - F(zpm) + F(zmm)
    logs.push_back(gauss_log_F(zpp));
    signs.push_back(+1);
    logs.push_back(gauss_log_F(zmp));
    signs.push_back(-1);
    logs.push_back(gauss_log_F(zpm));
    signs.push_back(-1);
    logs.push_back(gauss_log_F(zmm));
    signs.push_back(+1);
  }

  double max_log() const {
    double m = -std::numeric_limits<double>::infinity();
    for (double l : logs) m = std::max(m, l);
    return m;
  }

  double result() const {  // log of the signed sum
    const double m = max_log();
    if (std::isinf(m)) return m;
    double s = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
      s += signs[i] * std::exp(logs[i] - m);
    }
    if (!(s > 0.0)) {
      throw std::runtime_error("log-domain mass: cancellation to nonpositive");
    }
    return m + std::log(s);
  }
};

}  // namespace

double AnalyticSpace1D::pt_mass_log(const IntervalSet& A, const IntervalSet& B,
                                    double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("pt_mass_log needs t > 0");
  check_set(A);
  check_set(B);
  if (A.empty() || B.empty() || !A.bounded() || !B.bounded()) {
    throw std::invalid_argument("pt_mass_log needs nonempty bounded sets");
  }
  const double v = sigma_ * sigma_ * t;
  const double rv = std::sqrt(v);

  SignedLogAcc acc;
  auto add_diff = [&](double a, double b, double c, double d, double s) {
    acc.add_F_combo((b - c + s) / rv, (a - c + s) / rv, (b - d + s) / rv,
                    (a - d + s) / rv);
  };
  auto add_sum = [&](double a, double b, double c, double d, double s) {
    acc.add_F_combo((b + d + s) / rv, (a + d + s) / rv, (b + c + s) / rv,
                    (a + c + s) / rv);
  };

  const int kind_images = (kind_ == SpaceKind::free_line) ? 0 : 128;
  for (const auto& a : A.parts()) {
    for (const auto& b : B.parts()) {
      if (kind_ == SpaceKind::reflecting_interval) {
        add_diff(a.lo, a.hi, b.lo, b.hi, 0.0);
        add_sum(a.lo, a.hi, b.lo, b.hi, 0.0);
      } else {
        add_diff(a.lo, a.hi, b.lo, b.hi, 0.0);
      }
    }
  }
  for (int k = 1; k <= kind_images; ++k) {
    const double before = acc.max_log();
    for (const auto& a : A.parts()) {
      for (const auto& b : B.parts()) {
        if (kind_ == SpaceKind::reflecting_interval) {
          add_diff(a.lo, a.hi, b.lo, b.hi, 2.0 * k);
          add_diff(a.lo, a.hi, b.lo, b.hi, -2.0 * k);
          add_sum(a.lo, a.hi, b.lo, b.hi, 2.0 * k);
          add_sum(a.lo, a.hi, b.lo, b.hi, -2.0 * k);
        } else {
          add_diff(a.lo, a.hi, b.lo, b.hi, static_cast<double>(k));
          add_diff(a.lo, a.hi, b.lo, b.hi, static_cast<double>(-k));
        }
      }
    }
    // rings decay superexponentially; stop once they are far below the peak
    const double ring_scale =
        (kind_ == SpaceKind::reflecting_interval)
            ? std::log(interval_ring_bound(k, v))
            : std::log(circle_ring_bound(k, v));
    if (ring_scale < before - 60.0) break;
  }
  return 0.5 * std::log(v) + acc.result();
}

double AnalyticSpace1D::fdd_mass(const std::vector<double>& times,
                                 const std::vector<IntervalSet>& sets,
                                 const KernelSeriesParams& params) const {
  if (kind_ == SpaceKind::free_line) {
    throw std::invalid_argument(
        "fdd_mass needs a probability space (interval or circle)");
  }
  if (times.size() != sets.size() || times.size() < 2) {
    throw std::invalid_argument("fdd_mass needs one set per time, n >= 1");
  }
  double min_dt = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("fdd_mass times must be strictly increasing");
    }
    min_dt = std::min(min_dt, times[i] - times[i - 1]);
  }
  for (const auto& A : sets) {
    check_set(A);
    if (A.empty()) return 0.0;
    if (!A.bounded()) throw std::invalid_argument("fdd_mass needs bounded sets");
  }

  // Composite Gauss-Legendre nodes per set, panel width ~ half the kernel
  // length scale.
  const double scale = sigma_ * std::sqrt(min_dt);
  std::vector<double> gl_x, gl_w;
  gauss_legendre(16, gl_x, gl_w);

  struct Grid {
    std::vector<double> x, w;
  };
  std::vector<Grid> grids(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto& part : sets[i].parts()) {
      const double width = part.hi - part.lo;
      if (width == 0.0) continue;  // measure-zero component
      const int panels = std::max(
          1, std::min(64, static_cast<int>(std::ceil(width / (0.5 * scale)))));
      const double pw = width / panels;
      for (int p = 0; p < panels; ++p) {
        const double lo = part.lo + p * pw;
        for (int j = 0; j < 16; ++j) {
          grids[i].x.push_back(lo + 0.5 * pw * (gl_x[j] + 1.0));
          grids[i].w.push_back(0.5 * pw * gl_w[j]);
        }
      }
    }
    if (grids[i].x.empty()) return 0.0;  // set of measure zero
  }

  std::vector<double> cur = grids[0].w;  // density of m on [0,1] is 1
  for (std::size_t step = 1; step < sets.size(); ++step) {
    const double dt = times[step] - times[step - 1];
    const auto& from = grids[step - 1];
    const auto& to = grids[step];
    std::vector<double> nxt(to.x.size(), 0.0);
    for (std::size_t j = 0; j < to.x.size(); ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < from.x.size(); ++i) {
        acc += cur[i] * kernel_pt(from.x[i], to.x[j], dt, params);
      }
      nxt[j] = acc * to.w[j];
    }
    cur = std::move(nxt);
  }
  double total = 0.0;
  for (double c : cur) total += c;
  return total;
}

double AnalyticSpace1D::intrinsic_distance(const IntervalSet& A,
                                           const IntervalSet& B) const {
  if (A.empty() || B.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  check_set(A);
  check_set(B);
  const double gap = (kind_ == SpaceKind::circle) ? circular_gap(A, B)
                                                  : euclidean_gap(A, B);
  return gap / sigma_;
}

}  // namespace heatlab
