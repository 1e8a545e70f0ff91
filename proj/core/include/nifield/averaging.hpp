#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <span>
#include <vector>

#include "nifield/errors.hpp"
#include "nifield/particle_field.hpp"
#include "nifield/quadrature.hpp"
#include "nifield/relativity.hpp"

namespace nifield {

/// Covariant averaging window [T, T + tau] with tau = gamma * tau_rest.
///
/// The window follows the worldline x(t) = x + drift * (t - T). With a drift
/// equal to the velocity of the source frame the path sits at a fixed rest
/// position and spans exactly one rest period, which is what makes the
/// average a four-vector; with zero drift it is the plain average at a fixed
/// point.
struct AveragingWindow {
  double T = 0.0;
  double tau = 1.0;
  double tau_rest = 1.0;
  double gamma = 1.0;
  Vec3 drift = Vec3::Zero();

  /// Throws Error{Superluminal} for |v| >= c.
  static AveragingWindow make(double T, double tau_rest, const Vec3& v, double c);
  static AveragingWindow at_rest(double T, double tau_rest) { return make(T, tau_rest, Vec3::Zero(), 1.0); }

  Event event_at(const Vec3& x, double t) const { return {t, x + drift * (t - T)}; }
};

inline double average_norm(double v) { return std::abs(v); }
inline double average_norm(const Vec3& v) { return v.norm(); }
inline double average_norm(const FourVector& v) { return std::sqrt(v.v0 * v.v0 + v.v.squaredNorm()); }
template <int N>
double average_norm(const Eigen::Matrix<double, N, 1>& v) {
  return v.norm();
}

template <typename T>
concept Averageable = requires(T a, T b, double s) {
  { a + b } -> std::convertible_to<T>;
  { s * a } -> std::convertible_to<T>;
  { average_norm(a) } -> std::convertible_to<double>;
};

struct AverageOptions {
  /// Number of quadrature nodes. 0 selects auto-refinement: the node count
  /// doubles until successive estimates agree to `rel_tol`.
  int n = 0;
  double rel_tol = 1e-10;
  double abs_floor = 1e-15;
  int max_nodes = 1 << 16;
  /// Times inside the window where the integrand has limited smoothness
  /// (pulse support edges); panels are aligned to them.
  std::vector<double> breakpoints;
};

namespace detail {

constexpr int kPanelOrder = 8;

template <Averageable V, typename F>
V composite_average(F&& f, double a, double b, std::span<const double> cuts, int nodes) {
  static const GaussLegendreRule rule = gauss_legendre(kPanelOrder);
  std::vector<double> edges{a};
  for (double c : cuts)
    if (c > a && c < b) edges.push_back(c);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  const int total_panels = std::max<int>(static_cast<int>(edges.size()) - 1, nodes / kPanelOrder);
  const double span = b - a;
  bool first = true;
  V sum{};
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    const double lo = edges[s], hi = edges[s + 1];
    const int panels = std::max(1, static_cast<int>(std::lround(total_panels * (hi - lo) / span)));
    const double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
      const double center = lo + (p + 0.5) * width;
      for (int k = 0; k < kPanelOrder; ++k) {
        const V term = (0.5 * width * rule.weights[k] / span) * f(center + 0.5 * width * rule.nodes[k]);
        sum = first ? term : V(sum + term);
        first = false;
      }
    }
  }
  return sum;
}

}  // namespace detail

/// (1/tau) int_T^{T+tau} sampler(x(t), t) dt, componentwise for vector
/// values. Throws Error{Tolerance} when auto-refinement does not settle.
template <Averageable V>
V time_average(const std::function<V(const Event&)>& sampler, const Vec3& x, const AveragingWindow& w,
               const AverageOptions& opts = {}) {
  const auto f = [&](double t) { return sampler(w.event_at(x, t)); };
  const double a = w.T, b = w.T + w.tau;
  if (opts.n > 0) {
    if (opts.n < 2) throw Error(ErrorCode::DegenerateInput, "time_average needs n >= 2");
    return detail::composite_average<V>(f, a, b, opts.breakpoints, opts.n);
  }
  int nodes = 4 * detail::kPanelOrder;
  V prev = detail::composite_average<V>(f, a, b, opts.breakpoints, nodes);
  while (nodes < opts.max_nodes) {
    nodes *= 2;
    V next = detail::composite_average<V>(f, a, b, opts.breakpoints, nodes);
    const double change = average_norm(V(next + (-1.0) * prev));
    if (change <= std::max(opts.rel_tol * average_norm(next), opts.abs_floor)) return next;
    prev = next;
  }
  throw Error(ErrorCode::Tolerance, "time average did not converge");
}

/// Lab times in the window at which some pulse of `src` starts or ends at
/// the rest position of the path through (x, T).
std::vector<double> pulse_breakpoints(const ParticleSource& src, const Vec3& x, const AveragingWindow& w);

/// Window with drift = v_lab and tau = gamma tau' for `src`.
AveragingWindow source_window(const ParticleSource& src, double T);

/// Averages of the rest-frame particle quantities. The analytic values
/// follow from the tiling identity of the eternal pulse train.
struct AveragedParticle {
  double phi = 0.0;
  Vec3 E = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  double q = 0.0;
};

/// Fast path: phi = Q0/r, E = Q0/r^2 e_R, B = 0, q = 0. Requires an eternal
/// source (Error{DegenerateInput} otherwise) and x' != 0 (Error{AtSource}).
AveragedParticle averaged_particle_quantities(const ParticleSource& src, const Vec3& x_rest);

/// Same quantities by quadrature over the rest window starting at T.
AveragedParticle averaged_particle_quantities_quadrature(const ParticleSource& src, const Vec3& x_rest, double T,
                                                         const AverageOptions& opts = {});

/// max over the four coordinate directions of |d A[s] - A[d s]|, where the
/// outer derivative is a centred difference of window averages and the
/// inner one a centred difference under the average.
double commutation_residual(const ScalarSampler& sampler, const Vec3& x, const AveragingWindow& w, double h,
                            const AverageOptions& opts = {});

}  // namespace nifield
