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

#include "gbc.hpp"

#include <cmath>
#include <string>

#include "core.hpp"

namespace ccdel {

namespace {

void check_gains(const std::vector<double>& gains) {
  if (gains.empty()) throw Error(Errc::invalid_argument, "need at least one gain");
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!(gains[i] > 0.0) || !std::isfinite(gains[i]))
      throw Error(Errc::zero_gain, "gains must be positive and finite");
    if (i > 0 && gains[i] < gains[i - 1])
      throw Error(Errc::invalid_argument, "gains must be sorted ascending");
  }
}

void check_rates(const std::vector<double>& rates, std::size_t gain_count) {
  if (rates.size() != gain_count)
    throw Error(Errc::invalid_argument, "rates and gains must have equal length, got " +
                                            std::to_string(rates.size()) + " vs " +
                                            std::to_string(gain_count));
  for (double r : rates) {
    if (!(r >= 0.0) || !std::isfinite(r))
      throw Error(Errc::invalid_argument, "rates must be finite and non-negative");
  }
}

}  // namespace

double single_user_capacity(double gain) {
  if (!(gain > 0.0) || !std::isfinite(gain))
    throw Error(Errc::zero_gain, "gain must be positive and finite");
  // log1p keeps relative accuracy when the gain is far below 1.
  return std::log1p(gain) / std::log(2.0);
}

double region_lhs(const std::vector<double>& rates, const std::vector<double>& gains) {
  check_gains(gains);
  check_rates(rates, gains.size());
  std::size_t g = gains.size();
  double lhs = -1.0 / gains[0];
  double cum = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    cum += rates[i];
    double inv_next = (i + 1 < g) ? 1.0 / gains[i + 1] : 0.0;
    lhs += (1.0 / gains[i] - inv_next) * std::exp2(cum);
  }
  return lhs;
}

std::vector<double> rates_from_power(const std::vector<double>& alpha,
                                     const std::vector<double>& gains) {
  check_gains(gains);
  if (alpha.size() != gains.size())
    throw Error(Errc::invalid_argument, "power shares and gains must have equal length");
  double total = 0.0;
  for (double a : alpha) {
    if (!std::isfinite(a) || a < -1e-9)
      throw Error(Errc::invalid_argument, "power shares must be non-negative");
    total += a;
  }
  if (total > 1.0 + 1e-9)
    throw Error(Errc::invalid_argument,
                "power shares sum to " + std::to_string(total) + " > 1");

  std::size_t g = gains.size();
  std::vector<double> rates(g);
  // Receiver i treats the signals of stronger receivers (j > i) as noise;
  // its own layer and the weaker layers are decoded and removed.
  double interference = 0.0;
  for (std::size_t j = 0; j < g; ++j) interference += alpha[j] > 0.0 ? alpha[j] : 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    double a = alpha[i] > 0.0 ? alpha[i] : 0.0;
    interference -= a;
    if (interference < 0.0) interference = 0.0;
    rates[i] = std::log2(1.0 + a * gains[i] / (1.0 + interference * gains[i]));
  }
  return rates;
}

std::vector<double> power_from_rates(const std::vector<double>& rates,
                                     const std::vector<double>& gains) {
  check_gains(gains);
  check_rates(rates, gains.size());
  std::size_t g = gains.size();
  // delta[i] is the total power the top (g - i + 1) layers need; delta[0]
  // equals region_lhs, so feasibility is checked on it directly.
  std::vector<double> delta(g + 1, 0.0);
  for (std::size_t i = g; i-- > 0;) {
    double inv = 1.0 / gains[i];
    delta[i] = std::exp2(rates[i]) * (delta[i + 1] + inv) - inv;
  }
  if (delta[0] > 1.0 + 1e-6)
    throw Error(Errc::infeasible_rates,
                "rates outside capacity region: required power " + std::to_string(delta[0]));

  std::vector<double> alpha(g);
  for (std::size_t i = 1; i < g; ++i) alpha[i] = delta[i] - delta[i + 1];
  alpha[0] = 1.0 - delta[1];
  if (alpha[0] < 0.0) alpha[0] = 0.0;  // only when delta[0] is within tolerance above 1
  return alpha;
}

}  // namespace ccdel
