// Copyright 2026 The bipexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bipexp/config.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>

#include "bipexp/error.hpp"
#include "csv.hpp"

namespace bipexp {
namespace {

constexpr std::string_view kKeys =
    "regime, n, m, max_degree, p, gamma, reps, alpha, master_seed, degree_covariate, noise_scale, tau0, "
    "null_at_truth";

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  fail(ErrorCode::kInvalidConfig,
       "key '" + std::string(key) + "': cannot read '" + std::string(value) + "' as " + std::string(expected));
}

std::uint64_t to_unsigned(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a non-negative integer");
  return out;
}

double to_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "a number");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_value(key, v, "true or false");
}

std::string_view unquote(std::string_view v) {
  v = csv::trim(v);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return v;
}

std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    if (line[k] == '"') quoted = !quoted;
    if (line[k] == '#' && !quoted) return line.substr(0, k);
  }
  return line;
}

// Shortest text that reads back to the same double.
std::string real_text(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void set_config_value(DGPConfig& cfg, std::string_view key, std::string_view raw) {
  key = csv::trim(key);
  const std::string_view v = unquote(raw);
  if (key == "regime") {
    cfg.regime = parse_regime(v);
  } else if (key == "n") {
    cfg.n = to_unsigned(key, v);
  } else if (key == "m") {
    cfg.m = to_unsigned(key, v);
  } else if (key == "max_degree") {
    cfg.max_degree = to_unsigned(key, v);
  } else if (key == "p") {
    cfg.p = to_real(key, v);
  } else if (key == "gamma") {
    std::string_view body = v;
    if (!body.empty() && body.front() == '[') {
      if (body.back() != ']') bad_value(key, v, "a list like [5, 5]");
      body = body.substr(1, body.size() - 2);
    }
    cfg.gamma.clear();
    for (std::string_view part : csv::split(body)) cfg.gamma.push_back(to_real(key, csv::trim(part)));
  } else if (key == "reps") {
    cfg.reps = to_unsigned(key, v);
  } else if (key == "alpha") {
    cfg.alpha = to_real(key, v);
  } else if (key == "master_seed") {
    cfg.master_seed = to_unsigned(key, v);
  } else if (key == "degree_covariate") {
    cfg.degree_covariate = to_bool(key, v);
  } else if (key == "noise_scale") {
    cfg.noise_scale = parse_noise_scale(v);
  } else if (key == "tau0") {
    cfg.tau0 = to_real(key, v);
  } else if (key == "null_at_truth") {
    cfg.null_at_truth = to_bool(key, v);
  } else {
    fail(ErrorCode::kInvalidConfig, "unknown key '" + std::string(key) + "' (valid: " + std::string(kKeys) + ")");
  }
}

DGPConfig parse_config(std::string_view text, const std::string& source) {
  DGPConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    ++line_no;
    const std::string_view line = csv::trim(strip_comment(text.substr(start, end - start)));
    start = end + 1;
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    try {
      if (eq == std::string_view::npos) fail(ErrorCode::kInvalidConfig, "expected 'key = value'");
      set_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      std::ostringstream os;
      os << source << ":" << line_no << ": " << e.detail();
      fail(ErrorCode::kInvalidConfig, os.str());
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kInvalidConfig, source + ": " + e.detail());
  }
  return cfg;
}

DGPConfig read_config(const std::string& path) { return parse_config(csv::read_file(path), path); }

std::string format_config(const DGPConfig& cfg) {
  std::ostringstream os;
  os << "regime = \"" << to_string(cfg.regime) << "\"\n";
  os << "n = " << cfg.n << "\n";
  os << "m = " << cfg.m << "\n";
  os << "max_degree = " << cfg.max_degree << "\n";
  os << "p = " << real_text(cfg.p) << "\n";
  os << "gamma = [";
  for (std::size_t k = 0; k < cfg.gamma.size(); ++k) os << (k ? ", " : "") << real_text(cfg.gamma[k]);
  os << "]\n";
  os << "reps = " << cfg.reps << "\n";
  os << "alpha = " << real_text(cfg.alpha) << "\n";
  os << "master_seed = " << cfg.master_seed << "\n";
  os << "degree_covariate = " << (cfg.degree_covariate ? "true" : "false") << "\n";
  os << "noise_scale = \"" << to_string(cfg.noise_scale) << "\"\n";
  os << "tau0 = " << real_text(cfg.tau0) << "\n";
  os << "null_at_truth = " << (cfg.null_at_truth ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace bipexp
