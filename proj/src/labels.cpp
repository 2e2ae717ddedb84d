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

#include "dase/labels.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dase {

ClusterLabels ClusterLabels::from_vector(std::vector<int> labels) {
  ClusterLabels out;
  int max_label = 0;
  for (int l : labels) {
    if (l < 0) throw std::invalid_argument("negative cluster label");
    max_label = std::max(max_label, l);
  }
  out.labels = std::move(labels);
  out.K = max_label + 1;
  return out;
}

void ClusterLabels::validate() const {
  if (K < 1) throw std::invalid_argument("cluster count must be positive");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= K) {
      throw std::invalid_argument("label " + std::to_string(labels[i]) +
                                  " at node " + std::to_string(i) +
                                  " outside [0, " + std::to_string(K) + ")");
    }
  }
}

std::vector<std::size_t> ClusterLabels::counts() const {
  std::vector<std::size_t> c(static_cast<std::size_t>(K), 0);
  for (int l : labels) ++c[static_cast<std::size_t>(l)];
  return c;
}

}  // namespace dase
