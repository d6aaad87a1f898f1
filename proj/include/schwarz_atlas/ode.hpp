#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "schwarz_atlas/errors.hpp"

namespace schwarz_atlas::numeric {

using cplx = std::complex<double>;
using State = std::vector<cplx>;

struct Tolerances {
  double absolute = 1e-13;
  double relative = 1e-12;
};

struct IntegrationStats {
  std::size_t steps = 0;
  double min_step = 1.0;
};

/// Integrates y' = rhs(t, y) over t in [0, 1] with an adaptive
/// Runge-Kutta-Fehlberg 7(8) pair. `rhs` has the signature
/// void(double t, const State& y, State& dydt).
/// Throws NumericError when the controller cannot make progress.
template <class Rhs>
IntegrationStats integrate_unit_interval(Rhs&& rhs, State& y, const Tolerances& tol = {},
                                         double min_step = 1e-12) {
  namespace odeint = boost::numeric::odeint;
  using Stepper = odeint::runge_kutta_fehlberg78<State>;
  auto stepper = odeint::make_controlled<Stepper>(tol.absolute, tol.relative);

  IntegrationStats stats;
  double t = 0.0;
  double dt = 1e-2;
  auto system = [&rhs](const State& x, State& dxdt, double tt) { rhs(tt, x, dxdt); };
  std::size_t failures = 0;
  while (t < 1.0 - 1e-14) {
    const bool clipped = t + dt >= 1.0;
    if (clipped) dt = 1.0 - t;
    double attempted = dt;
    auto result = stepper.try_step(system, y, t, dt);
    if (result == odeint::success) {
      ++stats.steps;
      if (!clipped) stats.min_step = std::min(stats.min_step, attempted);
      failures = 0;
    } else {
      if (++failures > 500 || dt < min_step)
        throw NumericError("adaptive step size underflow at t = " + std::to_string(t));
    }
    if (stats.steps > 2'000'000) throw NumericError("integration exceeded step budget");
  }
  return stats;
}

}  // namespace schwarz_atlas::numeric
