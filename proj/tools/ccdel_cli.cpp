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

/*
 * Command line front end over the shared library's C interface.
 *
 * Exit codes: 0 success, 1 verify found property violations, 2 invalid
 * usage or parameters, 3 bit-level decode failure, 4 I/O failure.
 */

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccdel.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDecodeFailed = 3;
constexpr int kExitIo = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) { throw CliError{code, message}; }

void check(ccdel_status status) {
  if (status != CCDEL_OK) fail(kExitUsage, ccdel_last_error());
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item =
        comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(kExitUsage, "cannot parse '" + item + "' as a number");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

std::vector<std::uint32_t> parse_u32s(const std::string& text) {
  std::vector<std::uint32_t> values;
  for (double v : parse_doubles(text)) {
    if (v < 0 || v != static_cast<std::uint32_t>(v))
      fail(kExitUsage, "expected a non-negative integer list, got '" + text + "'");
    values.push_back(static_cast<std::uint32_t>(v));
  }
  return values;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitIo, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) fail(kExitIo, "failed writing '" + path + "'");
}

struct ChannelOptions {
  std::string gains_text;
  std::uint64_t channel_seed = 0;
  CLI::Option* seed_option = nullptr;
};

void add_channel_options(CLI::App* cmd, ChannelOptions& opts) {
  auto* gains = cmd->add_option("--gains", opts.gains_text,
                                "comma separated squared channel gains, one per user");
  opts.seed_option = cmd->add_option("--channel-seed", opts.channel_seed,
                                     "draw Rayleigh-faded gains from this seed instead");
  opts.seed_option->excludes(gains);
  gains->excludes(opts.seed_option);
}

using ChannelPtr = std::unique_ptr<ccdel_channel, decltype(&ccdel_channel_destroy)>;
using ParamsPtr = std::unique_ptr<ccdel_params, decltype(&ccdel_params_destroy)>;

ChannelPtr make_channel(const ChannelOptions& opts, std::uint32_t users) {
  ccdel_channel* channel = nullptr;
  if (opts.seed_option != nullptr && opts.seed_option->count() > 0) {
    check(ccdel_channel_sample(users, opts.channel_seed, &channel));
  } else if (!opts.gains_text.empty()) {
    std::vector<double> gains = parse_doubles(opts.gains_text);
    if (gains.size() != users)
      fail(kExitUsage, "need exactly " + std::to_string(users) + " gains, got " +
                           std::to_string(gains.size()));
    if (!std::is_sorted(gains.begin(), gains.end()))
      std::cerr << "note: gains sorted ascending; user k is the k-th weakest receiver,"
                   " see original_order in the output\n";
    check(ccdel_channel_create(gains.data(), gains.size(), &channel));
  } else {
    fail(kExitUsage, "provide either --gains or --channel-seed");
  }
  return ChannelPtr(channel, &ccdel_channel_destroy);
}

std::string take_string(char* owned) {
  std::string out = owned ? owned : "";
  ccdel_string_free(owned);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded caching delivery over a degraded Gaussian broadcast channel"};
  app.require_subcommand(1);

  std::uint32_t users = 0, files = 0;
  std::string cache_size = "0";
  std::string mode = "centralized";
  std::string scheme = "orthogonal";
  std::string out_path;

  auto add_system_options = [&](CLI::App* cmd) {
    cmd->add_option("-K,--users", users, "number of users")->required();
    cmd->add_option("-N,--files", files, "number of files")->required();
    cmd->add_option("-M,--cache-size", cache_size,
                    "per-user cache size in files (rational, e.g. 2 or 3/2)")
        ->required();
    cmd->add_option("--mode", mode, "placement: centralized or decentralized")
        ->check(CLI::IsMember({"centralized", "decentralized"}));
    cmd->add_option("-o,--out", out_path, "write the result here instead of stdout");
  };

  // compute
  auto* compute = app.add_subcommand("compute", "build a delivery schedule and print it as JSON");
  ChannelOptions compute_channel;
  bool with_sets = false;
  add_system_options(compute);
  compute->add_option("--scheme", scheme, "orthogonal or concurrent")
      ->check(CLI::IsMember({"orthogonal", "concurrent"}));
  compute->add_flag("--with-sets", with_sets, "include multicast set listings in the JSON");
  add_channel_options(compute, compute_channel);

  // trace
  auto* trace = app.add_subcommand("trace", "bit-level placement / delivery / decode replay");
  ChannelOptions trace_channel;
  std::uint64_t file_bits = 0;
  std::uint64_t seed = 0;
  std::string requests_text;
  add_system_options(trace);
  trace->add_option("--scheme", scheme, "orthogonal or concurrent")
      ->check(CLI::IsMember({"orthogonal", "concurrent"}));
  trace->add_option("--file-bits", file_bits, "bits per file")->required();
  trace->add_option("--seed", seed, "placement and file-content seed")->required();
  trace->add_option("--requests", requests_text,
                    "comma separated requested file per user (default: user k requests file k)");
  add_channel_options(trace, trace_channel);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo completion-time sweep, CSV output");
  std::string m_grid;
  std::uint32_t trials = 10000;
  sweep->add_option("-K,--users", users, "number of users")->required();
  sweep->add_option("-N,--files", files, "number of files")->required();
  sweep->add_option("--m-grid", m_grid,
                    "comma separated cache sizes (default 0,N/4,N/2,3N/4,N)");
  sweep->add_option("--trials", trials, "Rayleigh channel draws per cache size");
  sweep->add_option("--seed", seed, "base seed for the channel draws")->required();
  sweep->add_option("-o,--out", out_path, "write the CSV here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "bulk-check scheme ordering guarantees");
  std::string k_list_text;
  double gap_bound = 1.5;
  verify->add_option("--k-list", k_list_text, "user counts to test (default 2,4,8)");
  verify->add_option("--trials", trials, "Rayleigh channel draws per user count");
  verify->add_option("--seed", seed, "base seed for the channel draws")->required();
  verify->add_option("--gap-bound", gap_bound,
                     "upper bound for the randomized/deterministic time ratio");
  verify->add_option("-o,--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (compute->parsed()) {
      ccdel_params* params = nullptr;
      check(ccdel_params_create(users, files, cache_size.c_str(), mode.c_str(), &params));
      ParamsPtr params_owner(params, &ccdel_params_destroy);
      ChannelPtr channel = make_channel(compute_channel, users);
      ccdel_schedule* schedule = nullptr;
      check(ccdel_schedule_build(params, channel.get(), scheme.c_str(), with_sets ? 1 : 0,
                                 &schedule));
      std::unique_ptr<ccdel_schedule, decltype(&ccdel_schedule_destroy)> schedule_owner(
          schedule, &ccdel_schedule_destroy);
      char* json = nullptr;
      check(ccdel_schedule_to_json(schedule, &json));
      write_output(out_path, take_string(json));
    } else if (trace->parsed()) {
      ccdel_params* params = nullptr;
      check(ccdel_params_create(users, files, cache_size.c_str(), mode.c_str(), &params));
      ParamsPtr params_owner(params, &ccdel_params_destroy);
      ChannelPtr channel = make_channel(trace_channel, users);
      std::vector<std::uint32_t> requests;
      if (!requests_text.empty()) requests = parse_u32s(requests_text);
      int decode_ok = 0;
      char* report = nullptr;
      check(ccdel_trace_run(params, channel.get(), scheme.c_str(), file_bits, seed,
                            requests.empty() ? nullptr : requests.data(), requests.size(),
                            &decode_ok, &report));
      write_output(out_path, take_string(report));
      if (!decode_ok) fail(kExitDecodeFailed, "bit-level decode failed; see report for details");
    } else if (sweep->parsed()) {
      ccdel_sweep* result = nullptr;
      check(ccdel_sweep_run(users, files, m_grid.empty() ? nullptr : m_grid.c_str(), trials, seed,
                            &result));
      std::unique_ptr<ccdel_sweep, decltype(&ccdel_sweep_destroy)> sweep_owner(
          result, &ccdel_sweep_destroy);
      char* csv = nullptr;
      check(ccdel_sweep_csv(result, &csv));
      write_output(out_path, take_string(csv));
    } else if (verify->parsed()) {
      std::vector<std::uint32_t> k_list;
      if (!k_list_text.empty()) k_list = parse_u32s(k_list_text);
      int ok = 0;
      char* report = nullptr;
      check(ccdel_verify_run(k_list.empty() ? nullptr : k_list.data(), k_list.size(), trials,
                             seed, gap_bound, &ok, &report));
      write_output(out_path, take_string(report));
      if (!ok) fail(kExitVerifyFailed, "property checks failed; see report for details");
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  }
  return kExitOk;
}
