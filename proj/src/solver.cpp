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

#include "solver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace ccdel {

BoundaryFunction::BoundaryFunction(std::vector<double> cumulative, std::vector<double> gains) {
  if (cumulative.empty())
    throw Error(Errc::invalid_argument, "boundary function needs at least one group");
  if (gains.size() < cumulative.size())
    throw Error(Errc::invalid_argument, "need one gain per group, got " +
                                            std::to_string(gains.size()) + " gains for " +
                                            std::to_string(cumulative.size()) + " groups");
  gains.resize(cumulative.size());
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (!(cumulative[i] > 0.0) || (i > 0 && cumulative[i] <= cumulative[i - 1]))
      throw Error(Errc::invalid_argument, "cumulative loads must be positive and strictly increasing");
    if (!(gains[i] > 0.0) || (i > 0 && gains[i] < gains[i - 1]))
      throw Error(Errc::invalid_argument, "gains must be positive and sorted ascending");
  }
  cumulative_ = std::move(cumulative);
  gains_ = std::move(gains);
}

double BoundaryFunction::operator()(double s) const {
  if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
  std::size_t g = cumulative_.size();
  double lhs = -1.0 / gains_[0] - 1.0;
  for (std::size_t i = 0; i < g; ++i) {
    double e = cumulative_[i] / s;
    // Past this point exp2 overflows; short-circuit before a zero gain-gap
    // coefficient can turn the overflow into 0 * inf.
    if (e > 1020.0) return std::numeric_limits<double>::infinity();
    double inv_next = (i + 1 < g) ? 1.0 / gains_[i + 1] : 0.0;
    lhs += (1.0 / gains_[i] - inv_next) * std::exp2(e);
  }
  return lhs;
}

BoundaryFunction boundary_from_loads(const LoadProfile& loads, const std::vector<double>& gains) {
  if (loads.empty()) throw Error(Errc::invalid_argument, "empty load profile");
  return BoundaryFunction(loads.cumulative(), gains);
}

double solve_boundary(const BoundaryFunction& fn, double upper_hint, SolveOptions opts) {
  if (!(upper_hint > 0.0) || !std::isfinite(upper_hint))
    throw Error(Errc::bad_bracket, "upper hint must be positive and finite");

  double hi = upper_hint;
  double g_hi = fn(hi);
  if (g_hi > 0.0) {
    // With equal gains the root coincides with the hint and rounding can push
    // g(hint) marginally positive; stretch before giving up.
    for (double stretch : {1.0 + 1e-12, 1.0 + 1e-10, 1.0 + 1e-8}) {
      hi = upper_hint * stretch;
      g_hi = fn(hi);
      if (g_hi <= 0.0) break;
    }
    if (g_hi > 0.0)
      throw Error(Errc::bad_bracket,
                  "g(upper_hint) > 0: hint does not bound the root from above");
  }
  if (g_hi == 0.0) return hi;

  double lo = hi;
  int halvings = 0;
  do {
    lo *= 0.5;
    if (++halvings > 2200)
      throw Error(Errc::bad_bracket, "failed to bracket the root from below");
  } while (!(fn(lo) > 0.0));

  double mid = 0.5 * (lo + hi);
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return hi;  // interval no longer splittable
    double gm = fn(mid);
    if (gm == 0.0) return mid;
    double width = hi - lo;
    if (width <= opts.rel_tol * mid && std::fabs(gm) <= opts.residual_tol) return mid;
    if (width <= 4.0 * std::ldexp(mid, -52)) return mid;  // at the precision floor
    if (gm > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  throw Error(Errc::max_iterations, "bisection did not converge within iteration budget");
}

}  // namespace ccdel
