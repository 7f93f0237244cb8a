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

#include "winexp/value_process.h"

#include <fstream>
#include <random>

#include "winexp/distribution_spec.h"
#include "winexp/errors.h"

namespace winexp {
namespace {

constexpr double kDriftStep = 0.05;

bool HasCall(std::string_view tag, std::string_view name) {
  return tag.size() > name.size() + 1 && tag.substr(0, name.size()) == name &&
         tag[name.size()] == '(' && tag.back() == ')';
}

std::string_view CallArgument(std::string_view tag, std::string_view name) {
  return tag.substr(name.size() + 1, tag.size() - name.size() - 2);
}

std::vector<double> ReadValueFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read value file '" + path + "'");
  std::vector<double> values;
  double v = 0.0;
  while (in >> v) values.push_back(v);
  if (!in.eof()) throw ConfigError("malformed value file '" + path + "'");
  if (values.empty()) throw ConfigError("empty value file '" + path + "'");
  return values;
}

}  // namespace

ValueProcess::ValueProcess(std::vector<double> values)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("values must lie in [0, 1]");
    }
  }
}

ValueProcess ValueProcess::FromValues(std::vector<double> values) {
  return ValueProcess(std::move(values));
}

void ValidateValueTag(std::string_view tag) {
  if (tag == "iid-uniform" || tag == "drift" || HasCall(tag, "file")) return;
  if (HasCall(tag, "constant")) {
    DistributionSpec::Parse(tag);
    return;
  }
  throw ConfigError("unknown value process '" + std::string(tag) + "'");
}

ValueProcess ValueProcess::Generate(std::string_view tag, std::size_t horizon,
                                    Rng& rng) {
  ValidateValueTag(tag);
  std::vector<double> values(horizon);
  if (tag == "iid-uniform") {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& v : values) v = unit(rng);
  } else if (tag == "drift") {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> step(0.0, kDriftStep);
    double v = unit(rng);
    for (double& out : values) {
      out = v;
      v += step(rng);
      if (v < 0.0) v = -v;
      if (v > 1.0) v = 2.0 - v;
    }
  } else if (HasCall(tag, "constant")) {
    const double x = DistributionSpec::Parse(tag).first();
    for (double& v : values) v = x;
  } else {
    const std::vector<double> source =
        ReadValueFile(std::string(CallArgument(tag, "file")));
    for (std::size_t t = 0; t < horizon; ++t) {
      values[t] = source[t % source.size()];
    }
  }
  return ValueProcess(std::move(values));
}

}  // namespace winexp
