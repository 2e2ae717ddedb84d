// Copyright 2026 The DASE Authors.
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

#include "dase/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dase::theory {

double profile_log_likelihood(const std::vector<double>& values, int q) {
  const int p = static_cast<int>(values.size());
  if (p < 3) throw std::invalid_argument("profile likelihood needs at least three values");
  if (q < 1 || q >= p) throw std::invalid_argument("split must leave both segments nonempty");
  auto segment_ss = [&](int lo, int hi) {
    double mean = 0.0;
    for (int i = lo; i < hi; ++i) mean += values[static_cast<std::size_t>(i)];
    mean /= hi - lo;
    double ss = 0.0;
    for (int i = lo; i < hi; ++i) {
      const double d = values[static_cast<std::size_t>(i)] - mean;
      ss += d * d;
    }
    return ss;
  };
  const double ss = segment_ss(0, q) + segment_ss(q, p);
  // A perfect fit has zero variance; keep it finite so ties resolve by order.
  const double var = std::max(ss / (p - 2), 1e-300);
  return -0.5 * p * std::log(2.0 * std::numbers::pi * var) - ss / (2.0 * var);
}

int choose_k_profile_likelihood(const std::vector<double>& values, int max_k) {
  const int p = static_cast<int>(values.size());
  if (p < 3) throw std::invalid_argument("profile likelihood needs at least three values");
  if (max_k < 1) throw std::invalid_argument("max_k must be positive");
  for (int i = 1; i < p; ++i) {
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(i - 1)]) {
      throw std::invalid_argument("scree values must be nonincreasing");
    }
  }
  const int upper = std::min(max_k, p - 1);
  int best_q = 1;
  double best = profile_log_likelihood(values, 1);
  for (int q = 2; q <= upper; ++q) {
    const double ll = profile_log_likelihood(values, q);
    if (ll > best) {
      best = ll;
      best_q = q;
    }
  }
  return best_q;
}

}  // namespace dase::theory
