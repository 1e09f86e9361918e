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

#include "qfab/ir/matrices.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "qfab/common/error.hpp"

namespace qfab::ir {

using C = std::complex<double>;

Eigen::Matrix4cd swap_matrix() {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

Eigen::Matrix2cd single_qubit_matrix(const Gate& g) {
  const C i(0, 1);
  const double r = std::numbers::sqrt2 / 2.0;
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case GateKind::H:
      m << r, r, r, -r;
      break;
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    case GateKind::Y:
      m << 0, -i, i, 0;
      break;
    case GateKind::Z:
      m << 1, 0, 0, -1;
      break;
    case GateKind::S:
      m << 1, 0, 0, i;
      break;
    case GateKind::Sdg:
      m << 1, 0, 0, -i;
      break;
    case GateKind::T:
      m << 1, 0, 0, std::polar(1.0, std::numbers::pi / 4);
      break;
    case GateKind::Tdg:
      m << 1, 0, 0, std::polar(1.0, -std::numbers::pi / 4);
      break;
    case GateKind::RX: {
      const double c = std::cos(g.params[0] / 2), s = std::sin(g.params[0] / 2);
      m << c, -i * s, -i * s, c;
      break;
    }
    case GateKind::RY: {
      const double c = std::cos(g.params[0] / 2), s = std::sin(g.params[0] / 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::RZ:
      m << std::polar(1.0, -g.params[0] / 2), 0, 0,
          std::polar(1.0, g.params[0] / 2);
      break;
    case GateKind::U: {
      const double th = g.params[0], ph = g.params[1], la = g.params[2];
      const double c = std::cos(th / 2), s = std::sin(th / 2);
      m << c, -std::polar(1.0, la) * s, std::polar(1.0, ph) * s,
          std::polar(1.0, ph + la) * c;
      break;
    }
    default:
      throw ValidationError("'" + g.qasm_name() + "' is not a single-qubit gate");
  }
  return m;
}

Eigen::Matrix4cd two_qubit_matrix(const Gate& g) {
  const C i(0, 1);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (g.kind) {
    case GateKind::CX:
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      break;
    case GateKind::CZ:
      m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
      m(3, 3) = -1.0;
      break;
    case GateKind::Swap:
      m = swap_matrix();
      break;
    case GateKind::ISwap:
      m = root_iswap_matrix(1);
      break;
    case GateKind::RootISwap:
      m = root_iswap_matrix(g.root);
      break;
    case GateKind::ECR: {
      const double r = std::numbers::sqrt2 / 2.0;
      m << 0, r, 0, r * i,
           r, 0, -r * i, 0,
           0, r * i, 0, r,
           -r * i, 0, r, 0;
      break;
    }
    case GateKind::Unitary:
      if (!g.matrix) throw ValidationError("opaque unitary without a matrix");
      m = *g.matrix;
      break;
    default:
      throw ValidationError("'" + g.qasm_name() + "' is not a two-qubit gate");
  }
  if (g.mirrored) m = swap_matrix() * m;
  return m;
}

}  // namespace qfab::ir
