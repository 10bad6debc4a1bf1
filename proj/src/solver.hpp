/*
 * Copyright 2026 ccdel authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file solver.hpp
 * @brief Root solver for the concurrent-delivery completion time.
 *
 * Transmitting group loads l_1..l_G simultaneously over a window of length s
 * requires the rate tuple (l_1/s, .., l_G/s) to lie in the broadcast capacity
 * region. The boundary condition is g(s) = 0 with
 *
 *   g(s) = sum_i (1/gain_i - 1/gain_{i+1}) * 2^(L_i / s) - 1/gain_1 - 1,
 *
 * where L_i is the cumulative load through group i and 1/gain_{G+1} = 0.
 * g is strictly decreasing, g(0+) = +inf and g(inf) = -1, so the root is
 * unique; it is the shortest feasible window.
 */

#ifndef CCDEL_SOLVER_HPP
#define CCDEL_SOLVER_HPP

#include <vector>

#include "core.hpp"

namespace ccdel {

class BoundaryFunction {
 public:
  /// cumulative must be strictly increasing and positive; gains ascending.
  /// Only the first cumulative.size() gains are used (the weakest receivers
  /// are the ones that pin the boundary).
  BoundaryFunction(std::vector<double> cumulative, std::vector<double> gains);

  double operator()(double s) const;

  const std::vector<double>& cumulative() const { return cumulative_; }
  const std::vector<double>& gains() const { return gains_; }

 private:
  std::vector<double> cumulative_;
  std::vector<double> gains_;
};

BoundaryFunction boundary_from_loads(const LoadProfile& loads, const std::vector<double>& gains);

struct SolveOptions {
  double rel_tol = 1e-12;      // bracket width relative to the midpoint
  double residual_tol = 1e-7;  // |g| at the returned point
  int max_iter = 200;
};

/// Bisects g to its unique root. upper_hint must satisfy g(upper_hint) <= 0;
/// the orthogonal completion time always does, up to rounding, so tiny
/// positive g at the hint is absorbed by stretching it a few ulps.
double solve_boundary(const BoundaryFunction& fn, double upper_hint, SolveOptions opts = {});

}  // namespace ccdel

#endif  // CCDEL_SOLVER_HPP
