// Copyright 2026 The qfab Authors
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

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "qfab/ir/gate.hpp"

namespace qfab::verify {

/// A batch of state vectors, one per column. Row index bit q is qubit q.
using StateBatch =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Apply gates in order to every column of `states` (2^width rows).
/// Runs of single-qubit gates are fused into the next two-qubit gate on
/// the same wire before application.
void apply_gates(StateBatch& states, int width, const std::vector<ir::Gate>& gates);

void apply_1q(StateBatch& states, int q, const Eigen::Matrix2cd& m);
/// Matrix index 2*bit(q0) + bit(q1).
void apply_2q(StateBatch& states, int q0, int q1, const Eigen::Matrix4cd& m);

/// `count` Haar-random states on `width` qubits (normalized complex Gaussians).
StateBatch haar_states(int width, int count, std::uint64_t seed);

/// Computational basis columns |0>, ..., |2^width - 1>.
StateBatch basis_states(int width);

}  // namespace qfab::verify
