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

#include "qfab/verify/tableau.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>

#include "qfab/common/error.hpp"
#include "qfab/ir/matrices.hpp"

namespace qfab::verify {

using C = std::complex<double>;

void Pauli::multiply(const Pauli& o) {
  int ph = phase + o.phase;
  for (std::size_t q = 0; q < x.size(); ++q) {
    // Z^z1 X^x2 = (-1)^(z1 x2) X^x2 Z^z1
    ph += 2 * (z[q] & o.x[q]);
    x[q] ^= o.x[q];
    z[q] ^= o.z[q];
  }
  phase = ((ph % 4) + 4) % 4;
}

namespace {

// Single-qubit Pauli matrices indexed I, X, Y, Z.
const std::array<Eigen::Matrix2cd, 4>& paulis() {
  static const std::array<Eigen::Matrix2cd, 4> p = [] {
    std::array<Eigen::Matrix2cd, 4> a;
    const C i(0, 1);
    a[0] << 1, 0, 0, 1;
    a[1] << 0, 1, 1, 0;
    a[2] << 0, -i, i, 0;
    a[3] << 1, 0, 0, -1;
    return a;
  }();
  return p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

// Pauli string over `n` local qubits from per-qubit labels (0..3);
// label[0] is the high (first-wire) factor.
Eigen::MatrixXcd pauli_matrix(const std::vector<int>& labels) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int l : labels) m = kron(m, paulis()[static_cast<std::size_t>(l)]);
  return m;
}

// Decompose m = c * P; returns nullopt unless m is a signed Pauli string.
std::optional<Pauli> as_pauli(const Eigen::MatrixXcd& m, int n) {
  const int total = 1 << (2 * n);
  const double dim = static_cast<double>(1 << n);
  for (int code = 0; code < total; ++code) {
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) labels[static_cast<std::size_t>(q)] = (code >> (2 * (n - 1 - q))) & 3;
    const Eigen::MatrixXcd p = pauli_matrix(labels);
    const C c = (p.adjoint() * m).trace() / dim;
    if (std::abs(c) < 0.5) continue;
    if ((m - c * p).cwiseAbs().maxCoeff() > 1e-9) return std::nullopt;
    int k;
    if (std::abs(c - C(1, 0)) < 1e-9) k = 0;
    else if (std::abs(c - C(0, 1)) < 1e-9) k = 1;
    else if (std::abs(c - C(-1, 0)) < 1e-9) k = 2;
    else if (std::abs(c - C(0, -1)) < 1e-9) k = 3;
    else return std::nullopt;
    Pauli out(n);
    for (int q = 0; q < n; ++q) {
      const int l = labels[static_cast<std::size_t>(q)];
      out.x[static_cast<std::size_t>(q)] = (l == 1 || l == 2);
      out.z[static_cast<std::size_t>(q)] = (l == 2 || l == 3);
      if (l == 2) ++k;  // Y = i X Z
    }
    out.phase = k % 4;
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Pauli>> clifford_images(const ir::Gate& g) {
  if (g.is_barrier()) return std::vector<Pauli>{};
  const int n = g.is_two_qubit() ? 2 : 1;
  Eigen::MatrixXcd u;
  if (n == 1) u = ir::single_qubit_matrix(g);
  else u = ir::two_qubit_matrix(g);
  std::vector<Pauli> images;
  for (int which : {1, 3}) {  // X then Z
    for (int q = 0; q < n; ++q) {
      std::vector<int> labels(static_cast<std::size_t>(n), 0);
      labels[static_cast<std::size_t>(q)] = which;
      auto img = as_pauli(u * pauli_matrix(labels) * u.adjoint(), n);
      if (!img) return std::nullopt;
      images.push_back(std::move(*img));
    }
  }
  return images;
}

bool is_clifford(const ir::Gate& g) { return clifford_images(g).has_value(); }

Tableau::Tableau(int n) : n_(n) {
  rows_.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < 2 * n; ++k) {
    Pauli p(n);
    if (k < n) p.x[static_cast<std::size_t>(k)] = 1;
    else p.z[static_cast<std::size_t>(k - n)] = 1;
    rows_.push_back(std::move(p));
  }
}

void Tableau::apply(const ir::Gate& g) {
  if (g.is_barrier()) return;
  const auto images = clifford_images(g);
  if (!images) throw ValidationError("non-Clifford gate '" + g.qasm_name() + "'");
  const int m = static_cast<int>(g.wires.size());
  // images[0..m-1]: X of each local wire; images[m..2m-1]: Z.
  for (Pauli& row : rows_) {
    Pauli local(m);
    for (int q = 0; q < m; ++q) {
      const auto w = static_cast<std::size_t>(g.wires[static_cast<std::size_t>(q)]);
      if (row.x[w]) local.multiply((*images)[static_cast<std::size_t>(q)]);
      if (row.z[w]) local.multiply((*images)[static_cast<std::size_t>(m + q)]);
    }
    for (int q = 0; q < m; ++q) {
      const auto w = static_cast<std::size_t>(g.wires[static_cast<std::size_t>(q)]);
      row.x[w] = local.x[static_cast<std::size_t>(q)];
      row.z[w] = local.z[static_cast<std::size_t>(q)];
    }
    row.phase = (row.phase + local.phase) % 4;
  }
}

void Tableau::relabel(const std::vector<int>& target) {
  if (static_cast<int>(target.size()) != n_) throw ValidationError("relabel size mismatch");
  auto move = [&](const std::vector<std::uint8_t>& v) {
    std::vector<std::uint8_t> out(v.size());
    for (std::size_t q = 0; q < v.size(); ++q) out[static_cast<std::size_t>(target[q])] = v[q];
    return out;
  };
  // Only the output side moves: each image's columns are permuted.
  for (Pauli& p : rows_) {
    p.x = move(p.x);
    p.z = move(p.z);
  }
}

}  // namespace qfab::verify
