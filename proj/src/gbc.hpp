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
 * @file gbc.hpp
 * @brief Capacity region of the unit-power degraded Gaussian broadcast
 *        channel, in two equivalent parametrizations: per-receiver power
 *        shares (superposition coding) and the single-inequality boundary
 *        form used by the delivery-time solver.
 *
 * Receivers are indexed by ascending channel gain, so receiver 1 is the
 * weakest. A rate tuple (r_1..r_G) is achievable with unit total power iff
 * region_lhs(r, gains) <= 1.
 */

#ifndef CCDEL_GBC_HPP
#define CCDEL_GBC_HPP

#include <vector>

namespace ccdel {

/// log2(1 + gain): the channel's single-receiver capacity.
double single_user_capacity(double gain);

/// Left-hand side of the region inequality
///   sum_i (1/g_i - 1/g_{i+1}) * 2^(r_1+..+r_i) - 1/g_1, with 1/g_{G+1} = 0.
/// Values <= 1 are achievable. Gains must be sorted ascending.
double region_lhs(const std::vector<double>& rates, const std::vector<double>& gains);

/// Rates achieved by power shares alpha (summing to at most 1) under
/// superposition coding with successive decoding at the stronger receivers:
///   r_i = log2(1 + alpha_i g_i / (1 + g_i * sum_{j>i} alpha_j)).
std::vector<double> rates_from_power(const std::vector<double>& alpha,
                                     const std::vector<double>& gains);

/// Inverts rates_from_power. Residual power (1 - needed) is assigned to the
/// weakest receiver, so the returned shares always sum to exactly 1.
/// Throws Errc::infeasible_rates when region_lhs(rates, gains) > 1 + 1e-6.
std::vector<double> power_from_rates(const std::vector<double>& rates,
                                     const std::vector<double>& gains);

}  // namespace ccdel

#endif  // CCDEL_GBC_HPP
