#include "coagkit/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "coagkit/errors.hpp"

namespace coagkit {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// b - bhat, for the embedded 4th-order error estimate
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0,
                 c5 = 8.0 / 9.0;
// dense-output coefficients (Hairer, Norsett & Wanner)
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

struct DenseSegment {
  // y(t + theta h) = c1 + theta (c2 + (1-theta)(c3 + theta (c4 + (1-theta) c5)))
  std::vector<double> c1, c2, c3, c4, c5;

  std::vector<double> eval(double theta) const {
    std::vector<double> out(c1.size());
    const double omt = 1.0 - theta;
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = c1[i] +
               theta * (c2[i] + omt * (c3[i] + theta * (c4[i] + omt * c5[i])));
    }
    return out;
  }
};

}  // namespace

Trajectory integrate_adaptive(const RhsFunction& rhs,
                              const std::vector<double>& y0, double t0,
                              double t_end, const IntegratorSpec& spec) {
  if (!(t_end > t0)) throw DomainError("integration requires t_end > t0");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw DomainError("integrator tolerances must be positive");
  }
  for (std::size_t i = 0; i + 1 < spec.sample_times.size(); ++i) {
    if (!(spec.sample_times[i] < spec.sample_times[i + 1])) {
      throw DomainError("sample times must be strictly increasing");
    }
  }
  if (!spec.sample_times.empty() &&
      (spec.sample_times.front() < t0 || spec.sample_times.back() > t_end)) {
    throw DomainError("sample times must lie within [t0, t_end]");
  }

  const std::size_t dim = y0.size();
  const double span = t_end - t0;
  const double max_h = spec.max_step > 0.0 ? spec.max_step : span;

  Trajectory traj;
  traj.times = spec.sample_times;
  traj.states.reserve(traj.times.size());

  std::vector<double> y = y0;
  std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim),
      k7(dim), ytmp(dim), ynew(dim), yerr(dim);

  double t = t0;
  std::size_t next_sample = 0;
  while (next_sample < traj.times.size() && traj.times[next_sample] <= t) {
    traj.states.push_back(y);
    ++next_sample;
  }

  rhs(t, y, k1);
  if (!all_finite(k1)) {
    throw IntegratorError("right-hand side is non-finite at the start", t, y);
  }

  // initial step: supplied, or a conservative fraction of the span scaled by
  // the initial derivative
  double h;
  if (spec.initial_step > 0.0) {
    h = std::min(spec.initial_step, max_h);
  } else {
    double ynorm = 0.0, fnorm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      ynorm = std::max(ynorm, std::abs(y[i]));
      fnorm = std::max(fnorm, std::abs(k1[i]));
    }
    h = fnorm > 0.0 ? 0.01 * std::max(ynorm, spec.abs_tol) / fnorm
                    : 1e-3 * span;
    h = std::min({h, 1e-2 * span, max_h});
    h = std::max(h, 1e-10 * span);
  }

  bool previous_rejected = false;
  const double h_floor =
      16.0 * std::numeric_limits<double>::epsilon() *
      std::max({std::abs(t0), std::abs(t_end), 1.0});

  while (t < t_end) {
    bool clipped_to_end = false;
    if (t + h >= t_end) {
      h = t_end - t;
      clipped_to_end = true;
    }
    if (h < h_floor) {
      throw IntegratorError("step size underflow", t, y);
    }

    for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < dim; ++i) {
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    }
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < dim; ++i) {
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    }
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < dim; ++i) {
      ytmp[i] =
          y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < dim; ++i) {
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    }
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < dim; ++i) {
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    }
    rhs(t + h, ynew, k7);

    if (!all_finite(ynew) || !all_finite(k7)) {
      throw IntegratorError("right-hand side produced a non-finite value", t,
                            y);
    }

    // componentwise error ratio against max(abs_tol, rel_tol |y|)
    double ratio = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      yerr[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                     e6 * k6[i] + e7 * k7[i]);
      const double scale = std::max(
          spec.abs_tol,
          spec.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i])));
      ratio = std::max(ratio, std::abs(yerr[i]) / scale);
    }

    if (ratio <= 1.0) {
      // accepted: serve dense output for samples inside (t, t+h]
      if (next_sample < traj.times.size() &&
          traj.times[next_sample] <= t + h) {
        DenseSegment seg;
        seg.c1 = y;
        seg.c2.resize(dim);
        seg.c3.resize(dim);
        seg.c4.resize(dim);
        seg.c5.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) {
          const double ydiff = ynew[i] - y[i];
          const double bspl = h * k1[i] - ydiff;
          seg.c2[i] = ydiff;
          seg.c3[i] = bspl;
          seg.c4[i] = ydiff - h * k7[i] - bspl;
          seg.c5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                           d6 * k6[i] + d7 * k7[i]);
        }
        while (next_sample < traj.times.size() &&
               traj.times[next_sample] <= t + h) {
          const double theta = (traj.times[next_sample] - t) / h;
          traj.states.push_back(seg.eval(theta));
          ++next_sample;
        }
      }
      t = clipped_to_end ? t_end : t + h;
      y.swap(ynew);
      k1.swap(k7);  // FSAL

      double grow = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
      grow = std::min(grow, previous_rejected ? 1.0 : 5.0);
      grow = std::max(grow, 0.2);
      h = std::min(h * grow, max_h);
      previous_rejected = false;
    } else {
      const double shrink =
          std::max(0.1, 0.9 * std::pow(ratio, -0.2));
      h *= shrink;
      previous_rejected = true;
    }
  }

  // anything left (samples exactly at t_end that slipped past on rounding)
  while (next_sample < traj.times.size()) {
    traj.states.push_back(y);
    ++next_sample;
  }
  return traj;
}

Trajectory integrate_fixed(const StepMap& step, const std::vector<double>& y0,
                           double t0, double t_end, double dt,
                           const std::vector<double>& sample_times) {
  if (!(t_end > t0)) throw DomainError("integration requires t_end > t0");
  if (!(dt > 0.0)) throw DomainError("fixed stepping requires dt > 0");
  const double span = t_end - t0;
  const long long n_steps = std::llround(span / dt);
  if (n_steps < 1 || std::abs(static_cast<double>(n_steps) * dt - span) >
                         1e-9 * std::max(span, 1.0)) {
    throw DomainError("dt must divide t_end - t0 within rounding");
  }

  // snap samples to step boundaries
  std::vector<long long> sample_steps(sample_times.size());
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (i + 1 < sample_times.size() &&
        !(sample_times[i] < sample_times[i + 1])) {
      throw DomainError("sample times must be strictly increasing");
    }
    if (sample_times[i] < t0 || sample_times[i] > t_end) {
      throw DomainError("sample times must lie within [t0, t_end]");
    }
    long long k = std::llround((sample_times[i] - t0) / dt);
    sample_steps[i] = std::clamp(k, 0LL, n_steps);
  }

  Trajectory traj;
  traj.times = sample_times;
  traj.states.reserve(sample_times.size());

  std::vector<double> y = y0;
  std::size_t next_sample = 0;
  while (next_sample < sample_steps.size() && sample_steps[next_sample] == 0) {
    traj.states.push_back(y);
    ++next_sample;
  }
  for (long long k = 1; k <= n_steps; ++k) {
    const double t = t0 + static_cast<double>(k - 1) * dt;
    y = step(y, t, dt);
    while (next_sample < sample_steps.size() &&
           sample_steps[next_sample] == k) {
      traj.states.push_back(y);
      ++next_sample;
    }
  }
  return traj;
}

}  // namespace coagkit
