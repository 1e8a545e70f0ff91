#include "nifield/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nifield/errors.hpp"

namespace nifield {
namespace {

// Kronrod 15-point extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error, l1;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;  // deterministic tie-break
  }
};

Panel kronrod15(const std::function<double(double)>& fn, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = fn(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double l1 = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = fn(center - dx);
    const double f2 = fn(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    l1 += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double error = std::abs((kronrod - gauss) * half);
  return {a, b, value, error, l1 * std::abs(half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                                    const QuadratureOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::Tolerance, "quadrature tolerance must be positive");
  if (a == b) return {};
  if (b < a) {
    auto r = integrate_adaptive(fn, b, a, opts);
    r.value = -r.value;
    return r;
  }

  std::vector<Panel> heap{kronrod15(fn, a, b)};
  QuadratureResult out;
  out.evaluations = 15;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int iter = 0;; ++iter) {
    double value = 0.0, error = 0.0, l1 = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
      l1 += p.l1;
    }
    const double floor = 50.0 * eps * l1;
    if (error <= std::max(opts.tol, floor)) {
      out.value = value;
      out.error = error;
      return out;
    }
    if (iter >= opts.max_subdivisions) {
      throw Error(ErrorCode::Tolerance, "subdivision limit reached (error estimate " +
                                            std::to_string(error) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), ByError{});
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      throw Error(ErrorCode::Tolerance, "interval collapsed below machine resolution");
    }
    heap.push_back(kronrod15(fn, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), ByError{});
    heap.push_back(kronrod15(fn, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), ByError{});
    out.evaluations += 30;
  }
}

double integrate(const std::function<double(double)>& fn, double a, double b, double tol) {
  return integrate_adaptive(fn, a, b, QuadratureOptions{tol, 4000}).value;
}

double integrate_with_breakpoints(const std::function<double(double)>& fn, double a, double b,
                                  std::span<const double> breakpoints, double tol) {
  if (b < a) return -integrate_with_breakpoints(fn, b, a, breakpoints, tol);
  std::vector<double> cuts{a};
  for (double x : breakpoints)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  const double per_panel = tol / static_cast<double>(cuts.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(fn, cuts[i], cuts[i + 1], per_panel);
  return total;
}

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::DegenerateInput, "Gauss-Legendre order must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace nifield
