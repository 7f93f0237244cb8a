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

#ifndef WINEXP_VALUE_PROCESS_H_
#define WINEXP_VALUE_PROCESS_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "winexp/bid_distribution.h"

namespace winexp {

// Oblivious value sequence v_1..v_T in [0, 1], fixed before a run starts.
// Generator tags:
//   iid-uniform   independent uniform(0,1) draws
//   drift         reflected random walk with N(0, 0.05^2) steps
//   constant(x)   v_t = x
//   file(path)    one value per line; cycled when shorter than T
class ValueProcess {
 public:
  // Throws ConfigError on unknown tags and IoError on unreadable files.
  static ValueProcess Generate(std::string_view tag, std::size_t horizon,
                               Rng& rng);
  static ValueProcess FromValues(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t t) const { return values_[t]; }
  std::span<const double> values() const { return values_; }

 private:
  explicit ValueProcess(std::vector<double> values);

  std::vector<double> values_;
};

// Throws ConfigError unless `tag` names a generator.
void ValidateValueTag(std::string_view tag);

}  // namespace winexp

#endif  // WINEXP_VALUE_PROCESS_H_
