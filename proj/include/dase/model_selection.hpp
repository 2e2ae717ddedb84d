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

#pragma once

#include <vector>

namespace dase::theory {

/// Two-segment Gaussian profile log-likelihood of a nonincreasing scree
/// split after the first q values: segment means, pooled variance
/// SS / (p - 2).
double profile_log_likelihood(const std::vector<double>& values, int q);

/// Split q in [1, min(max_k, p - 1)] maximizing the profile log-likelihood
/// (first maximum on ties). Throws for fewer than three values or an
/// increasing sequence.
int choose_k_profile_likelihood(const std::vector<double>& values, int max_k);

}  // namespace dase::theory
