#pragma once

#include <cmath>

#include "rvp/dynamics.hpp"

namespace rvp::test {

// One interior mass tethered only to its anchor at the origin (k_p = 0),
// released from x0 at rest. Returns its x position at time t_end.
inline double oscillator_position(double k, double m, double zeta, double x0, double dt,
                                  double t_end) {
  SpringParams sp;
  sp.mass = m;
  sp.k_p = 0.0;
  sp.k_a = k;
  sp.b = 2.0 * zeta * std::sqrt(k * m);
  const OccupancyGrid grid(0.1, {0, 0}, 1, 1);
  const AnchorSet anchors{{Point2{0, 0}}, {0.0}};
  const RestLengths rest{{1.0, 1.0}};
  const auto obstacles = ObstacleForceParams::with_defaults(0.4, 4.0, 0.1);
  const ChainModel model{grid, anchors, rest, sp, obstacles};
  SimState s = SimState::at_rest({{-10, 0}, {x0, 0}, {10, 0}});
  const int steps = int(std::lround(t_end / dt));
  for (int i = 0; i < steps; ++i) s = step_dynamics(s, model, dt);
  return s.positions[1].x;
}

}  // namespace rvp::test
