# Copyright 2026 The DASE Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Doubled adjacency spectral embedding for stochastic block models."""

from ._dase import (
    ConvergenceError,
    Graph,
    ParseError,
    bound_constants,
    choose_k,
    chernoff_ase,
    chernoff_dase,
    cluster,
    doubled_adjacency,
    embed,
    ingest_edge_list,
    misclustering_rate,
    nmi,
    run_sweep,
    sample_sbm,
    truncated_svd,
)

__all__ = [
    "ConvergenceError",
    "Graph",
    "ParseError",
    "bound_constants",
    "choose_k",
    "chernoff_ase",
    "chernoff_dase",
    "cluster",
    "doubled_adjacency",
    "embed",
    "ingest_edge_list",
    "misclustering_rate",
    "nmi",
    "run_sweep",
    "sample_sbm",
    "truncated_svd",
]
