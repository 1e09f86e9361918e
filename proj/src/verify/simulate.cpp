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

#include "qfab/verify/simulate.hpp"

#include <optional>

#include "qfab/common/error.hpp"
#include "qfab/common/rng.hpp"
#include "qfab/ir/matrices.hpp"

namespace qfab::verify {

using C = std::complex<double>;

namespace {

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

// Spread the bits of `i` so that positions lo < hi are zero.
inline std::size_t insert_zero_bits(std::size_t i, int lo, int hi) {
  const std::size_t lo_mask = (std::size_t{1} << lo) - 1;
  i = (i & lo_mask) | ((i & ~lo_mask) << 1);
  const std::size_t hi_mask = (std::size_t{1} << hi) - 1;
  return (i & hi_mask) | ((i & ~hi_mask) << 1);
}

}  // namespace

void apply_1q(StateBatch& s, int q, const Eigen::Matrix2cd& m) {
  const std::size_t rows = static_cast<std::size_t>(s.rows());
  const auto cols = static_cast<std::size_t>(s.cols());
  const std::size_t stride = std::size_t{1} << q;
  const C m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  C* data = s.data();
  for (std::size_t base = 0; base < rows; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      C* r0 = data + (base + off) * cols;
      C* r1 = data + (base + off + stride) * cols;
      for (std::size_t k = 0; k < cols; ++k) {
        const C a = r0[k], b = r1[k];
        r0[k] = m00 * a + m01 * b;
        r1[k] = m10 * a + m11 * b;
      }
    }
  }
}

void apply_2q(StateBatch& s, int q0, int q1, const Eigen::Matrix4cd& m) {
  const std::size_t rows = static_cast<std::size_t>(s.rows());
  const auto cols = static_cast<std::size_t>(s.cols());
  const std::size_t b0 = std::size_t{1} << q0, b1 = std::size_t{1} << q1;
  const int lo = std::min(q0, q1), hi = std::max(q0, q1);
  C mm[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mm[i][j] = m(i, j);
  C* data = s.data();
  const std::size_t groups = rows >> 2;
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t i00 = insert_zero_bits(g, lo, hi);
    C* r[4] = {data + i00 * cols, data + (i00 | b1) * cols, data + (i00 | b0) * cols,
               data + (i00 | b0 | b1) * cols};
    for (std::size_t k = 0; k < cols; ++k) {
      const C v0 = r[0][k], v1 = r[1][k], v2 = r[2][k], v3 = r[3][k];
      for (int i = 0; i < 4; ++i)
        r[i][k] = mm[i][0] * v0 + mm[i][1] * v1 + mm[i][2] * v2 + mm[i][3] * v3;
    }
  }
}

void apply_gates(StateBatch& states, int width, const std::vector<ir::Gate>& gates) {
  if (states.rows() != (Eigen::Index{1} << width))
    throw ValidationError("state batch does not match circuit width");
  std::vector<std::optional<Eigen::Matrix2cd>> pending(static_cast<std::size_t>(width));
  auto take = [&](int q) {
    auto& p = pending[static_cast<std::size_t>(q)];
    Eigen::Matrix2cd m = p ? *p : Eigen::Matrix2cd::Identity();
    p.reset();
    return m;
  };
  for (const ir::Gate& g : gates) {
    if (g.is_barrier()) continue;
    if (g.is_single_qubit()) {
      auto& p = pending[static_cast<std::size_t>(g.wires[0])];
      const Eigen::Matrix2cd m = ir::single_qubit_matrix(g);
      p = p ? Eigen::Matrix2cd(m * *p) : m;
      continue;
    }
    const int a = g.wires[0], b = g.wires[1];
    Eigen::Matrix4cd m = ir::two_qubit_matrix(g);
    const bool pa = pending[static_cast<std::size_t>(a)].has_value();
    const bool pb = pending[static_cast<std::size_t>(b)].has_value();
    if (pa || pb) m = m * kron(take(a), take(b));
    apply_2q(states, a, b, m);
  }
  for (int q = 0; q < width; ++q)
    if (pending[static_cast<std::size_t>(q)]) apply_1q(states, q, take(q));
}

StateBatch haar_states(int width, int count, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::Index dim = Eigen::Index{1} << width;
  StateBatch s(dim, count);
  for (int k = 0; k < count; ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      s(i, k) = C(re, im);
    }
    s.col(k).normalize();
  }
  return s;
}

StateBatch basis_states(int width) {
  const Eigen::Index dim = Eigen::Index{1} << width;
  return StateBatch::Identity(dim, dim);
}

}  // namespace qfab::verify
