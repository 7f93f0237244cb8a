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

#ifndef WINEXP_TESTS_SUPPORT_ORACLES_H_
#define WINEXP_TESTS_SUPPORT_ORACLES_H_

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "winexp/bid_distribution.h"
#include "winexp/outcome_model.h"

namespace winexp::testing {

// A small learning instance written with plain vectors so that the oracles
// below never route through library arithmetic.
struct Instance {
  std::vector<double> pi;                  // |B|
  std::vector<std::vector<double>> x;      // |B| x |O|
  std::vector<std::vector<double>> r;      // |B| x |O|

  std::size_t bids() const { return pi.size(); }
  std::size_t outcomes() const { return x.front().size(); }
};

inline std::vector<double> Dirichlet(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> out(n);
  double total = 0.0;
  for (double& v : out) {
    v = e(rng) + 1e-9;
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

inline Instance RandomInstance(std::size_t bids, std::size_t outcomes,
                               Rng& rng) {
  std::uniform_real_distribution<double> reward(-1.0, 1.0);
  Instance inst;
  inst.pi = Dirichlet(bids, rng);
  for (std::size_t b = 0; b < bids; ++b) {
    inst.x.push_back(Dirichlet(outcomes, rng));
    std::vector<double> row(outcomes);
    for (double& v : row) v = reward(rng);
    inst.r.push_back(row);
  }
  return inst;
}

// |B| in [2, max_bids], |O| in [2, max_outcomes].
inline Instance RandomSmallInstance(Rng& rng, std::size_t max_bids = 10,
                                    std::size_t max_outcomes = 5) {
  std::uniform_int_distribution<std::size_t> nb(2, max_bids);
  std::uniform_int_distribution<std::size_t> no(2, max_outcomes);
  const std::size_t bids = nb(rng);
  const std::size_t outcomes = no(rng);
  return RandomInstance(bids, outcomes, rng);
}

inline double Marginal(const Instance& inst, std::size_t o) {
  double m = 0.0;
  for (std::size_t b = 0; b < inst.bids(); ++b) m += inst.pi[b] * inst.x[b][o];
  return m;
}

// u(b) = sum_o x(b, o) r(b, o).
inline double Utility(const Instance& inst, std::size_t b) {
  double u = 0.0;
  for (std::size_t o = 0; o < inst.outcomes(); ++o) {
    u += inst.x[b][o] * inst.r[b][o];
  }
  return u;
}

inline BidDistribution Distribution(const Instance& inst) {
  return BidDistribution::FromMasses(inst.pi);
}

inline AllocationCurve Allocation(const Instance& inst) {
  BidOutcomeTable t(inst.bids(), inst.outcomes());
  for (std::size_t b = 0; b < inst.bids(); ++b) {
    for (std::size_t o = 0; o < inst.outcomes(); ++o) t(b, o) = inst.x[b][o];
  }
  return AllocationCurve(t);
}

inline RewardTable Rewards(const Instance& inst) {
  BidOutcomeTable t(inst.bids(), inst.outcomes());
  for (std::size_t b = 0; b < inst.bids(); ++b) {
    for (std::size_t o = 0; o < inst.outcomes(); ++o) t(b, o) = inst.r[b][o];
  }
  return RewardTable(t);
}

inline std::vector<double> RewardColumn(const Instance& inst, std::size_t o) {
  std::vector<double> col(inst.bids());
  for (std::size_t b = 0; b < inst.bids(); ++b) col[b] = inst.r[b][o];
  return col;
}

// Two-outcome instance: outcome 0 wins with reward r(b, 0), outcome 1 loses
// with reward 0.
inline Instance RandomBinaryInstance(Rng& rng, std::size_t max_bids = 10) {
  std::uniform_int_distribution<std::size_t> nb(2, max_bids);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> reward(-1.0, 1.0);
  const std::size_t bids = nb(rng);
  Instance inst;
  inst.pi = Dirichlet(bids, rng);
  for (std::size_t b = 0; b < bids; ++b) {
    const double win = unit(rng);
    inst.x.push_back({win, 1.0 - win});
    inst.r.push_back({reward(rng), 0.0});
  }
  return inst;
}

// All compositions of n contests over the outcomes of p with their multinomial
// probabilities.
struct Composition {
  std::vector<std::size_t> counts;
  double probability = 0.0;
};

inline std::vector<Composition> Multinomial(std::size_t n,
                                            const std::vector<double>& p) {
  std::vector<Composition> out;
  std::vector<std::size_t> counts(p.size(), 0);
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t left) -> void {
    if (pos + 1 == p.size()) {
      counts[pos] = left;
      double log_coef = std::lgamma(static_cast<double>(n) + 1.0);
      double prob = 1.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        log_coef -= std::lgamma(static_cast<double>(counts[i]) + 1.0);
        prob *= std::pow(p[i], static_cast<double>(counts[i]));
      }
      out.push_back({counts, std::exp(log_coef) * prob});
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[pos] = c;
      self(self, pos + 1, left - c);
    }
  };
  recurse(recurse, 0, n);
  return out;
}

}  // namespace winexp::testing

#endif  // WINEXP_TESTS_SUPPORT_ORACLES_H_
