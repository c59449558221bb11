// Quadrature rules used by the regularisation engine:
//  * exp-sinh double-exponential rule on [0, inf) with nested levels,
//  * tanh-sinh on finite intervals (node tables cached per precision),
//  * vertical-line integrals assembled from panels of height 4,
//  * a composite Gauss-Legendre / Gauss-Laguerre rule on [0, inf) used as an
//    alternative scheme for cross-checks.
#pragma once

#include "slg/complex.hpp"
#include "slg/errors.hpp"
#include "slg/precision.hpp"

#include <Eigen/Eigenvalues>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

namespace slg {

enum class QuadratureScheme { double_exponential, gauss_laguerre_composite };

struct QuadratureSpec {
  QuadratureScheme scheme = QuadratureScheme::double_exponential;
  long max_nodes = 1 << 17;
  Real abs_tail_bound;
  Real pv_window;

  /// Defaults tied to a precision context: tail bound 10^{-(working+2)},
  /// pole window 10^{-working/4}.
  static QuadratureSpec defaults(const PrecisionContext& ctx) {
    ScopedPrecision sp(ctx);
    QuadratureSpec q;
    q.abs_tail_bound = pow10(-(ctx.working_digits() + 2));
    q.pv_window = pow10(-ctx.working_digits() / 4);
    return q;
  }

  void validate() const {
    if (max_nodes < 64) throw std::invalid_argument("QuadratureSpec: max_nodes must be at least 64");
    if (!(abs_tail_bound > 0)) throw std::invalid_argument("QuadratureSpec: abs_tail_bound must be positive");
    if (!(pv_window > 0)) throw std::invalid_argument("QuadratureSpec: pv_window must be positive");
  }
};

struct QuadResult {
  HPComplex value;
  Real est_error = 0;
  long nodes = 0;
  bool converged = true;
};

using RealIntegrand = std::function<HPComplex(const Real&)>;

namespace detail {

inline std::string describe(const char* rule, int level, long nodes, const Real& err) {
  std::ostringstream os;
  os << rule << ": level " << level << ", " << nodes << " nodes, last difference "
     << err.str(6, std::ios_base::scientific);
  return os.str();
}

}  // namespace detail

/// Exp-sinh rule for \int_0^\infty f(t) dt.  Terminates when successive levels
/// agree to max(abs_tol, rel_tol * L1) where L1 = \int |f|.
inline QuadResult integrate_half_line(const RealIntegrand& f, const Real& abs_tol, const Real& rel_tol,
                                      long max_nodes, int max_level = 12) {
  const Real half_pi = pi() / 2;
  const int digits = current_digits();
  // Node cut-off: the contribution is dropped once |w f| falls below this
  // fraction of the running L1 norm for a few consecutive nodes.
  const Real cut = pow10(-(digits + 5));
  const Real t_floor = pow10(-(4 * digits));
  auto node = [&](const Real& u, Real& t, Real& w) {
    Real e = half_pi * sinh(u);
    t = exp(e);
    w = half_pi * cosh(u) * t;
  };

  long nodes = 0;
  Real h = 1;
  HPComplex sum;
  Real l1 = 0;
  // Determine the u-range at level 0 by marching outward.
  long k_hi = 0, k_lo = 0;
  {
    Real t, w;
    node(Real(0), t, w);
    HPComplex v = f(t) * w;
    ++nodes;
    sum += v;
    l1 += abs(v);
    for (int dir : {1, -1}) {
      int small = 0;
      for (long k = 1;; ++k) {
        Real u = Real(dir * k) * h;
        node(u, t, w);
        if (dir < 0 && t < t_floor) break;
        HPComplex v2 = f(t);
        ++nodes;
        if (!is_finite(v2)) {
          if (dir > 0) break;  // beyond representable range
          throw OverflowError("exp-sinh: non-finite integrand value");
        }
        v2 *= w;
        sum += v2;
        Real a = abs(v2);
        l1 += a;
        if (a <= cut * l1) {
          if (++small >= 3) {
            (dir > 0 ? k_hi : k_lo) = k;
            break;
          }
        } else {
          small = 0;
        }
        if (k > 64) {
          (dir > 0 ? k_hi : k_lo) = k;
          break;
        }
      }
      if ((dir > 0 ? k_hi : k_lo) == 0) (dir > 0 ? k_hi : k_lo) = 64;
    }
  }
  const Real u_hi = Real(k_hi) + 1, u_lo = -(Real(k_lo) + 1);
  // Level differences cannot fall below the rounding floor of the sum.
  const Real floor_tol = pow10(-(digits - 3));
  const Real rel = rel_tol > floor_tol ? rel_tol : floor_tol;
  HPComplex prev = sum * h;
  Real err = abs(prev);
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    HPComplex add;
    for (Real u = u_lo + h; u < u_hi; u += 2 * h) {
      Real t, w;
      node(u, t, w);
      if (t < t_floor) continue;
      HPComplex v = f(t);
      ++nodes;
      if (!is_finite(v)) continue;
      v *= w;
      l1 += abs(v);
      add += v;
    }
    sum += add;
    HPComplex cur = sum * h;
    err = abs(cur - prev);
    Real scale = l1 * h;
    if (level >= 3 && (err <= abs_tol || err <= rel * scale)) {
      return {cur, err, nodes, true};
    }
    if (nodes > max_nodes) {
      throw QuadratureFailure("exp-sinh quadrature exceeded its node budget",
                              detail::describe("exp-sinh", level, nodes, err));
    }
    prev = cur;
  }
  return {prev, err, nodes, false};
}

/// Cached tanh-sinh abscissas on (-1,1), one table per precision.
class TanhSinhTable {
 public:
  struct Node {
    Real x;      // abscissa in (0,1); used symmetrically
    Real comp;   // 1 - x, kept separately to avoid cancellation near the ends
    Real w;
  };

  static const TanhSinhTable& get(int digits) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<TanhSinhTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[digits];
    if (!slot) slot.reset(new TanhSinhTable(digits));
    return *slot;
  }

  int max_level() const { return static_cast<int>(levels_.size()) - 1; }
  /// Level 0 holds u = 0, 1, 2, ...; level L > 0 holds the odd multiples of 2^-L.
  const std::vector<Node>& level(int l) const { return levels_[l]; }
  const Real& w0() const { return w0_; }

 private:
  explicit TanhSinhTable(int digits) {
    ScopedPrecision sp(digits);
    const Real half_pi = pi() / 2;
    const Real cut = pow10(-(digits + 10));
    auto make = [&](const Real& u) {
      Real e = half_pi * sinh(u);
      Real ch = cosh(e);
      Node n;
      Real ex = exp(-2 * e);
      n.comp = 2 * ex / (1 + ex);
      n.x = 1 - n.comp;
      n.w = half_pi * cosh(u) / (ch * ch);
      return n;
    };
    // u range: stop where the weight is negligible.
    u_max_ = 0;
    while (true) {
      u_max_ += Real(1) / 8;
      Node n = make(u_max_);
      if (n.w < cut || n.comp == 0) break;
    }
    w0_ = half_pi;
    const int levels = 9;
    levels_.resize(levels + 1);
    for (Real u = 1; u <= u_max_; u += 1) levels_[0].push_back(make(u));
    Real h = 1;
    for (int l = 1; l <= levels; ++l) {
      h /= 2;
      for (Real u = h; u <= u_max_; u += 2 * h) levels_[l].push_back(make(u));
    }
  }

  Real u_max_;
  Real w0_;
  std::vector<std::vector<Node>> levels_;
};

/// Tanh-sinh on [a, b] with bisection when a level budget is exhausted.
inline QuadResult integrate_interval(const RealIntegrand& f, const Real& a, const Real& b, const Real& abs_tol,
                                     const Real& rel_tol, long max_nodes, int depth = 0) {
  const auto& tab = TanhSinhTable::get(current_digits());
  const Real mid = (a + b) / 2, half = (b - a) / 2;
  long nodes = 1;
  HPComplex sum = f(mid) * tab.w0();
  Real l1 = abs(sum);
  auto add_level = [&](int l) {
    HPComplex s;
    for (const auto& n : tab.level(l)) {
      Real d = half * n.x;
      HPComplex v = f(mid + d) + f(mid - d);
      nodes += 2;
      v *= n.w;
      l1 += abs(v);
      s += v;
    }
    return s;
  };
  sum += add_level(0);
  Real h = 1;
  HPComplex prev = sum * (h * half);
  Real err = 0;
  const Real floor_tol = pow10(-(current_digits() - 3));
  const Real rel = rel_tol > floor_tol ? rel_tol : floor_tol;
  for (int l = 1; l <= tab.max_level(); ++l) {
    h /= 2;
    sum += add_level(l);
    HPComplex cur = sum * (h * half);
    err = abs(cur - prev);
    Real scale = l1 * h * abs(half);
    if (l >= 3 && (err <= abs_tol || err <= rel * scale)) return {cur, err, nodes, true};
    prev = cur;
  }
  if (depth >= 12 || nodes > max_nodes) {
    throw QuadratureFailure("tanh-sinh panel did not converge", detail::describe("tanh-sinh", tab.max_level(), nodes, err));
  }
  QuadResult left = integrate_interval(f, a, mid, abs_tol / 2, rel_tol, max_nodes - nodes, depth + 1);
  QuadResult right = integrate_interval(f, mid, b, abs_tol / 2, rel_tol, max_nodes - nodes - left.nodes, depth + 1);
  return {left.value + right.value, left.est_error + right.est_error, nodes + left.nodes + right.nodes, true};
}

/// \int_{-inf}^{inf} g(t) dt in panels of height 4 outward from t = 0.  Each
/// direction stops once three consecutive panels are monotonically decreasing
/// and below abs_tail_bound.  Persistent growth beyond |t| = growth_allowed
/// (algebraic factors may rise before the exponential decay wins) raises
/// DivergenceError.
inline QuadResult integrate_vertical(const RealIntegrand& g, const QuadratureSpec& spec, const Real& rel_tol,
                                     long max_panels = 400, double growth_allowed = 32) {
  spec.validate();
  QuadResult out;
  out.value = HPComplex();
  const Real height = 4;
  for (int dir : {1, -1}) {
    Real prev_mag = -1;
    int decreasing_small = 0;
    int growing = 0;
    for (long k = 0; k < max_panels; ++k) {
      Real a = Real(dir) * height * k, b = Real(dir) * height * (k + 1);
      QuadResult r = integrate_interval(g, dir > 0 ? a : b, dir > 0 ? b : a, spec.abs_tail_bound / 16, rel_tol,
                                        spec.max_nodes);
      out.value += r.value;
      out.est_error += r.est_error;
      out.nodes += r.nodes;
      Real mag = abs(r.value);
      if (prev_mag >= 0 && mag < prev_mag && mag < spec.abs_tail_bound) {
        if (++decreasing_small >= 3) break;
      } else {
        decreasing_small = 0;
      }
      if (prev_mag > 0 && mag > prev_mag && 4.0 * k > growth_allowed) {
        if (++growing >= 4) throw DivergenceError("MB form invalid at this phase: integrand grows along the contour");
      } else {
        growing = 0;
      }
      if (out.nodes > spec.max_nodes * 8) {
        throw QuadratureFailure("vertical-line quadrature exceeded its node budget", "");
      }
      if (k + 1 == max_panels) {
        throw DivergenceError("MB form invalid at this phase: no decay within the panel budget");
      }
      prev_mag = mag;
    }
  }
  return out;
}

namespace detail {

/// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
struct GaussRule {
  std::vector<Real> x, w;
};

inline GaussRule gauss_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  const Real p = pi();
  for (int i = 0; i < n; ++i) {
    Real x = cos(p * (i + Real(3) / 4) / (n + Real(1) / 2));
    Real dp;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (abs(dx) < pow10(-(current_digits() + 2))) break;
    }
    r.x[i] = x;
    r.w[i] = 2 / ((1 - x * x) * dp * dp);
  }
  return r;
}

/// Gauss-Laguerre (weight e^{-x}) by Golub-Welsch seeds refined with Newton.
inline GaussRule gauss_laguerre(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    J(i, i) = 2 * i + 1;
    if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = i + 1;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    Real x = es.eigenvalues()(i);
    Real ln1;  // L_{n+1}(x) at the converged node
    for (int it = 0; it < 100; ++it) {
      Real l0 = 1, l1 = 1 - x;
      for (int k = 1; k < n; ++k) {
        Real l2 = ((2 * k + 1 - x) * l1 - k * l0) / (k + 1);
        l0 = l1;
        l1 = l2;
      }
      Real d = n * (l1 - l0) / x;  // L_n'
      Real dx = l1 / d;
      x -= dx;
      ln1 = ((2 * n + 1 - x) * l1 - n * l0) / (n + 1);
      if (abs(dx) < pow10(-(current_digits() + 2)) * (1 + abs(x))) break;
    }
    r.x[i] = x;
    r.w[i] = x / ((n + 1) * (n + 1) * ln1 * ln1);
  }
  return r;
}

}  // namespace detail

/// Composite rule on [0, inf): Gauss-Legendre on the panels [0,1], [1,2], [2,4],
/// ... up to `cutoff`, then Gauss-Laguerre on [cutoff, inf).  Each panel's
/// order is doubled until two orders agree.  Suited to smooth integrands that
/// carry an e^{-t} factor.
inline QuadResult integrate_half_line_composite(const RealIntegrand& f, const Real& cutoff, const Real& abs_tol,
                                                const Real& rel_tol, long max_nodes) {
  QuadResult out;
  auto rule_cache = [](int n, bool laguerre) -> const detail::GaussRule& {
    static std::mutex mu;
    static std::map<std::tuple<int, int, bool>, detail::GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(current_digits(), n, laguerre);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, laguerre ? detail::gauss_laguerre(n) : detail::gauss_legendre(n)).first;
    return it->second;
  };
  auto panel = [&](const Real& a, const Real& b, int n) {
    const auto& r = rule_cache(n, false);
    Real mid = (a + b) / 2, half = (b - a) / 2;
    HPComplex s;
    for (int i = 0; i < n; ++i) s += f(mid + half * r.x[i]) * r.w[i];
    out.nodes += n;
    return s * half;
  };
  auto tail = [&](int n) {
    const auto& r = rule_cache(n, true);
    HPComplex s;
    for (int i = 0; i < n; ++i) s += f(cutoff + r.x[i]) * (r.w[i] * exp(r.x[i]));
    out.nodes += n;
    return s;
  };
  auto refine = [&](auto&& eval) {
    HPComplex lo = eval(16);
    for (int n = 32; n <= 256; n *= 2) {
      HPComplex hi = eval(n);
      Real d = abs(hi - lo);
      if (d <= abs_tol || d <= rel_tol * abs(hi)) {
        out.est_error += d;
        return hi;
      }
      lo = hi;
      if (out.nodes > max_nodes) break;
    }
    throw QuadratureFailure("composite Gauss rule did not converge", "panel order limit reached");
  };
  Real a = 0, b = 1;
  while (a < cutoff) {
    if (b > cutoff) b = cutoff;
    out.value += refine([&](int n) { return panel(a, b, n); });
    a = b;
    b = 2 * b;
  }
  out.value += refine(tail);
  return out;
}

}  // namespace slg
