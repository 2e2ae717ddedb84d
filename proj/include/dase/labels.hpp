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

#include <cstddef>
#include <vector>

namespace dase {

/// A partition of N nodes into K groups. Labels are 0-based: every entry is in
/// [0, K).
struct ClusterLabels {
  std::vector<int> labels;
  int K = 1;

  std::size_t size() const { return labels.size(); }

  /// Builds labels and infers K as max(label) + 1. Throws on negative labels.
  static ClusterLabels from_vector(std::vector<int> labels);

  /// Throws std::invalid_argument if any label is outside [0, K) or K < 1.
  void validate() const;

  /// Number of nodes carrying each label.
  std::vector<std::size_t> counts() const;
};

}  // namespace dase
