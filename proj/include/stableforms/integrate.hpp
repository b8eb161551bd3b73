#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "stableforms/exterior.hpp"

namespace sf {

enum class Method { RK4, RKF45 };

struct IntegratorConfig {
  Method method = Method::RKF45;
  double t0 = 0.0;
  double t1 = 1.0;
  double h = 1e-3;        // fixed step for RK4, initial step for RKF45
  double atol = 1e-10;
  double rtol = 1e-10;
  double max_step = 1e-2;
  double min_step = 1e-14;
};

template <class V>
struct Trajectory {
  std::vector<double> t;
  std::vector<V> y;
  bool complete = true;
  std::string reason;  // why integration stopped early
};

namespace detail {

template <class V, class Rhs>
V rk4_step(const Rhs& f, double t, const V& y, double h) {
  const V k1 = f(t, y);
  const V k2 = f(t + h / 2, V(y + h / 2 * k1));
  const V k3 = f(t + h / 2, V(y + h / 2 * k2));
  const V k4 = f(t + h, V(y + h * k3));
  return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
}

// Fehlberg 4(5) pair; returns the 5th-order solution and writes the error estimate.
template <class V, class Rhs>
V rkf45_step(const Rhs& f, double t, const V& y, double h, V& err) {
  const V k1 = f(t, y);
  const V k2 = f(t + h / 4, V(y + h * (k1 / 4)));
  const V k3 = f(t + 3 * h / 8, V(y + h * (3.0 / 32 * k1 + 9.0 / 32 * k2)));
  const V k4 = f(t + 12 * h / 13, V(y + h * (1932.0 / 2197 * k1 - 7200.0 / 2197 * k2 + 7296.0 / 2197 * k3)));
  const V k5 = f(t + h, V(y + h * (439.0 / 216 * k1 - 8 * k2 + 3680.0 / 513 * k3 - 845.0 / 4104 * k4)));
  const V k6 = f(t + h / 2, V(y + h * (-8.0 / 27 * k1 + 2 * k2 - 3544.0 / 2565 * k3 + 1859.0 / 4104 * k4 -
                                       11.0 / 40 * k5)));
  const V y5 = y + h * (16.0 / 135 * k1 + 6656.0 / 12825 * k3 + 28561.0 / 56430 * k4 - 9.0 / 50 * k5 +
                        2.0 / 55 * k6);
  err = h * (1.0 / 360 * k1 - 128.0 / 4275 * k3 - 2197.0 / 75240 * k4 + 1.0 / 50 * k5 + 2.0 / 55 * k6);
  return y5;
}

template <class V>
bool finite(const V& y) {
  for (int i = 0; i < y.size(); ++i)
    if (!std::isfinite(y[i])) return false;
  return true;
}

}  // namespace detail

// `rhs(t, y)` may throw DomainError to signal a singular state; the trajectory
// then ends early with `complete == false`. Samples are the accepted steps.
template <class V, class Rhs>
Trajectory<V> integrate(const Rhs& rhs, const V& y0, const IntegratorConfig& cfg) {
  Trajectory<V> tr;
  double t = cfg.t0;
  V y = y0;
  tr.t.push_back(t);
  tr.y.push_back(y);
  const double span = cfg.t1 - cfg.t0;
  if (span <= 0) return tr;
  auto stop = [&](const std::string& why) {
    tr.complete = false;
    tr.reason = why;
    return tr;
  };
  try {
    rhs(t, y);
  } catch (const DomainError& e) {
    return stop(e.what());
  }

  if (cfg.method == Method::RK4) {
    const long steps = std::max(1L, static_cast<long>(std::ceil(span / cfg.h - 1e-9)));
    const double h = span / steps;
    for (long k = 1; k <= steps; ++k) {
      try {
        y = detail::rk4_step(rhs, t, y, h);
      } catch (const DomainError& e) {
        return stop(e.what());
      }
      if (!detail::finite(y)) return stop("non-finite state");
      t = cfg.t0 + k * h;
      tr.t.push_back(t);
      tr.y.push_back(y);
    }
    return tr;
  }

  double h = std::min(cfg.h, cfg.max_step);
  std::string last_error;
  while (cfg.t1 - t > 1e-14 * (1.0 + std::abs(cfg.t1))) {
    h = std::min(h, cfg.t1 - t);
    if (h < cfg.min_step)
      return stop("step size underflow near t = " + std::to_string(t) + (last_error.empty() ? "" : " (" + last_error + ")"));
    V err;
    V y_new;
    bool ok = true;
    try {
      y_new = detail::rkf45_step(rhs, t, y, h, err);
      ok = detail::finite(y_new) && detail::finite(err);
    } catch (const DomainError& e) {
      ok = false;
      last_error = e.what();
    }
    if (!ok) {
      h /= 4;
      continue;
    }
    double en = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      const double sc = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
      en = std::max(en, std::abs(err[i]) / sc);
    }
    if (en <= 1.0) {
      t += h;
      y = y_new;
      tr.t.push_back(t);
      tr.y.push_back(y);
    }
    const double fac = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h = std::min(h * fac, cfg.max_step);
  }
  return tr;
}

}  // namespace sf
