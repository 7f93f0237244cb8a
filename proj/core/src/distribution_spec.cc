// Copyright 2026 The Win-Exp Lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "winexp/distribution_spec.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr int kMaxRejections = 10000;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseNumber(std::string_view text, std::string_view context) {
  text = Trim(text);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("bad number '" + std::string(text) + "' in '" +
                      std::string(context) + "'");
  }
  return value;
}

}  // namespace

DistributionSpec::DistributionSpec(Kind kind, double first, double second)
    : kind_(kind), first_(first), second_(second) {}

DistributionSpec DistributionSpec::Uniform(double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
    throw ConfigError("uniform(lo,hi) needs 0 <= lo <= hi <= 1");
  }
  return DistributionSpec(Kind::kUniform, lo, hi);
}

DistributionSpec DistributionSpec::Normal(double mean, double sd) {
  if (!(mean >= 0.0 && mean <= 1.0 && sd >= 0.0)) {
    throw ConfigError("normal(mean,sd) needs mean in [0,1] and sd >= 0");
  }
  return DistributionSpec(Kind::kNormal, mean, sd);
}

DistributionSpec DistributionSpec::Constant(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError("constant(x) needs x in [0,1]");
  }
  return DistributionSpec(Kind::kConstant, value, 0.0);
}

DistributionSpec DistributionSpec::Parse(std::string_view text) {
  const std::string_view whole = Trim(text);
  const auto open = whole.find('(');
  if (open == std::string_view::npos || whole.back() != ')') {
    throw ConfigError("malformed distribution '" + std::string(whole) + "'");
  }
  const std::string_view name = Trim(whole.substr(0, open));
  std::string_view inner = whole.substr(open + 1, whole.size() - open - 2);
  std::vector<double> args;
  while (true) {
    const auto comma = inner.find(',');
    args.push_back(ParseNumber(inner.substr(0, comma), whole));
    if (comma == std::string_view::npos) break;
    inner.remove_prefix(comma + 1);
  }
  if (name == "uniform" && args.size() == 2) return Uniform(args[0], args[1]);
  if (name == "normal" && args.size() == 2) return Normal(args[0], args[1]);
  if (name == "constant" && args.size() == 1) return Constant(args[0]);
  throw ConfigError("unknown distribution '" + std::string(whole) + "'");
}

double DistributionSpec::Sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kConstant:
      return first_;
    case Kind::kUniform:
      return std::uniform_real_distribution<double>(first_, second_)(rng);
    case Kind::kNormal: {
      if (second_ == 0.0) return first_;
      std::normal_distribution<double> normal(first_, second_);
      for (int i = 0; i < kMaxRejections; ++i) {
        const double x = normal(rng);
        if (x >= 0.0 && x <= 1.0) return x;
      }
      throw ConfigError("normal draw rejected too often: " + ToString());
    }
  }
  throw ConfigError("unhandled distribution kind");
}

std::string DistributionSpec::ToString() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::kUniform:
      out << "uniform(" << first_ << "," << second_ << ")";
      break;
    case Kind::kNormal:
      out << "normal(" << first_ << "," << second_ << ")";
      break;
    case Kind::kConstant:
      out << "constant(" << first_ << ")";
      break;
  }
  return out.str();
}

}  // namespace winexp
