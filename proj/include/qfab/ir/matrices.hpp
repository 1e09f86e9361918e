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

#include "qfab/ir/gate.hpp"

namespace qfab::ir {

/// Exact 2x2 matrix of a single-qubit gate.
Eigen::Matrix2cd single_qubit_matrix(const Gate& g);

/// Exact 4x4 matrix of a two-qubit gate, basis index 2*bit(wires[0]) +
/// bit(wires[1]). Mirrored gates include the trailing SWAP.
Eigen::Matrix4cd two_qubit_matrix(const Gate& g);

/// n-th root of iSWAP with entries cos(pi/2n) and i sin(pi/2n).
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 4, 4> root_iswap_matrix(int n) {
  using C = std::complex<Scalar>;
  const Scalar angle = Scalar(EIGEN_PI) / (Scalar(2) * Scalar(n));
  Eigen::Matrix<std::complex<Scalar>, 4, 4> m =
      Eigen::Matrix<std::complex<Scalar>, 4, 4>::Zero();
  m(0, 0) = C(1);
  m(3, 3) = C(1);
  m(1, 1) = m(2, 2) = C(std::cos(angle));
  m(1, 2) = m(2, 1) = C(0, std::sin(angle));
  return m;
}

Eigen::Matrix4cd swap_matrix();

}  // namespace qfab::ir
