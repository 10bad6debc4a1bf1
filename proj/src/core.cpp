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

#include "core.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace ccdel {

namespace {

std::int64_t parse_int64(const std::string& text, const std::string& context) {
  if (text.empty()) throw Error(Errc::invalid_argument, "empty number in " + context);
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "cannot parse '" + text + "' as integer in " + context);
  }
  if (pos != text.size())
    throw Error(Errc::invalid_argument, "trailing characters in '" + text + "' in " + context);
  return static_cast<std::int64_t>(value);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw Error(Errc::invalid_argument, "empty rational literal");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::int64_t num = parse_int64(s.substr(0, slash), "rational numerator");
    std::int64_t den = parse_int64(s.substr(slash + 1), "rational denominator");
    if (den == 0) throw Error(Errc::invalid_argument, "zero denominator in '" + text + "'");
    return Rational(num, den);
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (frac.empty() && whole.empty())
      throw Error(Errc::invalid_argument, "malformed decimal '" + text + "'");
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative) whole = whole.substr(1);
    if (!whole.empty() && whole[0] == '+') whole = whole.substr(1);
    if (frac.size() > 18)
      throw Error(Errc::invalid_argument, "too many decimal digits in '" + text + "'");
    std::int64_t ipart = whole.empty() ? 0 : parse_int64(whole, "decimal integer part");
    std::int64_t fpart = frac.empty() ? 0 : parse_int64(frac, "decimal fraction part");
    if (fpart < 0)
      throw Error(Errc::invalid_argument, "malformed decimal '" + text + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational value = Rational(ipart) + Rational(fpart, scale);
    return negative ? -value : value;
  }

  return Rational(parse_int64(s, "rational literal"));
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream out;
  if (r.denominator() == 1) {
    out << r.numerator();
  } else {
    out << r.numerator() << '/' << r.denominator();
  }
  return out.str();
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (n > 64) throw Error(Errc::range, "binomial supports n <= 64, got n=" + std::to_string(n));
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  // Multiply/divide incrementally; each prefix is itself a binomial
  // coefficient so no intermediate exceeds the final value.
  std::uint64_t result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    std::uint64_t num = n - k + i;
    std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    std::uint64_t ri = result / g;
    std::uint64_t di = i / g;
    result = ri * (num / di);
  }
  return result;
}

const char* mode_name(PlacementMode mode) {
  return mode == PlacementMode::centralized ? "centralized" : "decentralized";
}

SystemParams SystemParams::create(std::uint32_t users, std::uint32_t files,
                                  const Rational& cache_size) {
  SystemParams p;
  p.users = users;
  p.files = files;
  p.cache_size = cache_size;
  if (files > 0) {
    p.t = cache_size * Rational(static_cast<std::int64_t>(users), static_cast<std::int64_t>(files));
    p.q = cache_size / Rational(static_cast<std::int64_t>(files));
  }
  return p;
}

std::uint32_t SystemParams::t_int() const {
  if (!integer_t()) throw Error(Errc::non_integer_t, "t = " + rational_to_string(t) + " is not an integer");
  return static_cast<std::uint32_t>(t.numerator());
}

SystemParams validate_params(const SystemParams& params, PlacementMode mode) {
  if (params.users == 0)
    throw Error(Errc::range, "need at least one user");
  if (params.files == 0)
    throw Error(Errc::range, "need at least one file");
  if (params.files < params.users)
    throw Error(Errc::range, "need files >= users so every request can be distinct, got N=" +
                                 std::to_string(params.files) + " < K=" + std::to_string(params.users));
  if (params.cache_size < Rational(0) || params.cache_size > Rational(static_cast<std::int64_t>(params.files)))
    throw Error(Errc::range, "cache size M must satisfy 0 <= M <= N, got M=" +
                                 rational_to_string(params.cache_size));
  if (params.users > 64)
    throw Error(Errc::range, "supports at most 64 users, got K=" + std::to_string(params.users));
  if (mode == PlacementMode::centralized && !params.integer_t()) {
    throw Error(Errc::non_integer_t,
                "centralized placement needs integer t = K*M/N, got t = " + rational_to_string(params.t));
  }
  return params;
}

ChannelState::ChannelState(std::vector<double> gains) {
  if (gains.empty()) throw Error(Errc::invalid_argument, "channel needs at least one gain");
  for (double g : gains) {
    if (!(g >= kMinGain))
      throw Error(Errc::zero_gain, "channel gains must be >= 1e-12, got " + std::to_string(g));
  }
  std::vector<std::uint32_t> order(gains.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&gains](std::uint32_t a, std::uint32_t b) { return gains[a] < gains[b]; });
  gains_.reserve(gains.size());
  for (std::uint32_t idx : order) gains_.push_back(gains[idx]);
  original_order_ = std::move(order);
}

RequestVector RequestVector::distinct(const SystemParams& params) {
  RequestVector r;
  r.d.resize(params.users);
  for (std::uint32_t k = 0; k < params.users; ++k) r.d[k] = k + 1;
  return r;
}

RequestVector RequestVector::from(const SystemParams& params, std::vector<std::uint32_t> requests) {
  if (requests.size() != params.users)
    throw Error(Errc::invalid_argument,
                "request vector needs exactly K=" + std::to_string(params.users) + " entries, got " +
                    std::to_string(requests.size()));
  for (std::uint32_t file : requests) {
    if (file == 0 || file > params.files)
      throw Error(Errc::range, "requested file " + std::to_string(file) + " outside 1.." +
                                   std::to_string(params.files));
  }
  RequestVector r;
  r.d = std::move(requests);
  return r;
}

LoadProfile::LoadProfile(std::vector<double> loads) {
  // Trailing zero-load groups carry no payload and would break the strictly
  // increasing cumulative invariant, so they are dropped up front.
  while (!loads.empty() && loads.back() == 0.0) loads.pop_back();
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (!(loads[i] > 0.0))
      throw Error(Errc::invalid_argument,
                  "group load " + std::to_string(i + 1) + " must be positive, got " +
                      std::to_string(loads[i]));
    if (i + 1 < loads.size() && loads[i + 1] > loads[i] * (1.0 + 1e-12))
      throw Error(Errc::invalid_argument, "group loads must be non-increasing");
  }
  cumulative_.resize(loads.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < loads.size(); ++i) {
    sum += loads[i];
    cumulative_[i] = sum;
  }
  loads_ = std::move(loads);
}

}  // namespace ccdel
