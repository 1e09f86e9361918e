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

// Reference implementations used as test oracles. They share no code with
// the library beyond the Gate record, the random generator and the simplex search.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qfab/common/nelder_mead.hpp"
#include "qfab/common/rng.hpp"
#include "qfab/ir/gate.hpp"

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
inline constexpr double kPi = std::numbers::pi;

inline Eigen::Matrix2cd mat1(const qfab::ir::Gate& g) {
  using K = qfab::ir::GateKind;
  const C i(0, 1);
  const double r = 1 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  auto p = [&](std::size_t k) { return g.params.at(k); };
  switch (g.kind) {
    case K::H: m << r, r, r, -r; break;
    case K::X: m << 0, 1, 1, 0; break;
    case K::Y: m << 0, -i, i, 0; break;
    case K::Z: m << 1, 0, 0, -1; break;
    case K::S: m << 1, 0, 0, i; break;
    case K::Sdg: m << 1, 0, 0, -i; break;
    case K::T: m << 1, 0, 0, std::exp(i * kPi / 4.0); break;
    case K::Tdg: m << 1, 0, 0, std::exp(-i * kPi / 4.0); break;
    case K::RX: m << std::cos(p(0) / 2), -i * std::sin(p(0) / 2), -i * std::sin(p(0) / 2),
        std::cos(p(0) / 2); break;
    case K::RY: m << std::cos(p(0) / 2), -std::sin(p(0) / 2), std::sin(p(0) / 2),
        std::cos(p(0) / 2); break;
    case K::RZ: m << std::exp(-i * p(0) / 2.0), 0, 0, std::exp(i * p(0) / 2.0); break;
    case K::U:
      m << std::cos(p(0) / 2), -std::exp(i * p(2)) * std::sin(p(0) / 2),
          std::exp(i * p(1)) * std::sin(p(0) / 2), std::exp(i * (p(1) + p(2))) * std::cos(p(0) / 2);
      break;
    default: throw std::logic_error("not a single-qubit gate");
  }
  return m;
}

/// Kronecker product with `a` on the high index bit.
inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

/// Index 2*bit(w0) + bit(w1).
inline Eigen::Matrix4cd mat2(const qfab::ir::Gate& g) {
  using K = qfab::ir::GateKind;
  const C i(0, 1);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  switch (g.kind) {
    case K::CX: m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1; break;
    case K::CZ: m(0, 0) = m(1, 1) = m(2, 2) = 1; m(3, 3) = -1; break;
    case K::Swap: m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1; break;
    case K::ISwap: m(0, 0) = m(3, 3) = 1; m(1, 2) = m(2, 1) = i; break;
    case K::RootISwap: {
      const double th = kPi / (2.0 * g.root);
      m(0, 0) = m(3, 3) = 1;
      m(1, 1) = m(2, 2) = std::cos(th);
      m(1, 2) = m(2, 1) = i * std::sin(th);
      break;
    }
    case K::ECR: {
      // (I x X - X x Y) / sqrt 2 with w0 as the left factor.
      Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity(), px, py;
      px << 0, 1, 1, 0;
      py << 0, -i, i, 0;
      m = (kron(id, px) - kron(px, py)) / std::sqrt(2.0);
      break;
    }
    case K::Unitary: m = *g.matrix; break;
    default: throw std::logic_error("unsupported two-qubit gate in oracle");
  }
  if (g.mirrored) {
    Eigen::Matrix4cd sw = Eigen::Matrix4cd::Zero();
    sw(0, 0) = sw(1, 2) = sw(2, 1) = sw(3, 3) = 1;
    m = sw * m;
  }
  return m;
}

/// Dense 2^n unitary; basis index bit q is qubit q.
inline Mat dense_unitary(int n, const std::vector<qfab::ir::Gate>& gates) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  Mat u = Mat::Identity(dim, dim);
  for (const auto& g : gates) {
    if (g.is_barrier()) continue;
    Mat next = Mat::Zero(dim, dim);
    if (g.is_single_qubit()) {
      const auto m = mat1(g);
      const int q = g.wires[0];
      for (Eigen::Index r = 0; r < dim; ++r) {
        const int b = static_cast<int>((r >> q) & 1);
        for (int b2 = 0; b2 < 2; ++b2) {
          const Eigen::Index src = (r & ~(Eigen::Index{1} << q)) | (Eigen::Index{b2} << q);
          next.row(r) += m(b, b2) * u.row(src);
        }
      }
    } else {
      const auto m = mat2(g);
      const int q0 = g.wires[0], q1 = g.wires[1];
      for (Eigen::Index r = 0; r < dim; ++r) {
        const int idx = 2 * static_cast<int>((r >> q0) & 1) + static_cast<int>((r >> q1) & 1);
        for (int k = 0; k < 4; ++k) {
          Eigen::Index src = r & ~((Eigen::Index{1} << q0) | (Eigen::Index{1} << q1));
          src |= Eigen::Index{(k >> 1) & 1} << q0;
          src |= Eigen::Index{k & 1} << q1;
          next.row(r) += m(idx, k) * u.row(src);
        }
      }
    }
    u = std::move(next);
  }
  return u;
}

/// Routed circuit on `num_physical` wires against a reference on n logical
/// qubits. Logical l starts on the physical p with init[p] == l and must end
/// on the p with final[p] == l; other wires start and end in |0>.
inline bool routed_matches(int n, const std::vector<qfab::ir::Gate>& ref, int num_physical,
                           const std::vector<qfab::ir::Gate>& routed,
                           const std::vector<int>& init, const std::vector<int>& final,
                           double tol = 1e-8) {
  const Mat uref = dense_unitary(n, ref);
  const Mat urt = dense_unitary(num_physical, routed);
  auto embed = [&](Eigen::Index x, const std::vector<int>& p2l) {
    Eigen::Index y = 0;
    for (int p = 0; p < num_physical; ++p)
      if (p2l[static_cast<std::size_t>(p)] < n && ((x >> p2l[static_cast<std::size_t>(p)]) & 1))
        y |= Eigen::Index{1} << p;
    return y;
  };
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index big = Eigen::Index{1} << num_physical;
  C phase(0, 0);
  for (Eigen::Index x = 0; x < dim; ++x) {
    Eigen::VectorXcd expect = Eigen::VectorXcd::Zero(big);
    for (Eigen::Index y = 0; y < dim; ++y) expect(embed(y, final)) = uref(y, x);
    const Eigen::VectorXcd got = urt.col(embed(x, init));
    if (phase == C(0, 0)) {
      Eigen::Index k;
      expect.cwiseAbs().maxCoeff(&k);
      phase = got(k) / expect(k);
      if (std::abs(std::abs(phase) - 1.0) > tol) return false;
    }
    if ((got - phase * expect).norm() > tol * std::sqrt(static_cast<double>(big))) return false;
  }
  return true;
}

/// Haar-random 4x4 unitary via QR of a complex Gaussian matrix.
inline Eigen::Matrix4cd haar4(qfab::Rng& rng) {
  Eigen::Matrix4cd z;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) z(r, c) = C(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Eigen::Matrix4cd> qr(z);
  Eigen::Matrix4cd q = qr.householderQ();
  const Eigen::Matrix4cd rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 4; ++k) q.col(k) *= rr(k, k) / std::abs(rr(k, k));
  return q;
}

inline Eigen::Matrix2cd u3(double th, double ph, double la) {
  qfab::ir::Gate g;
  g.kind = qfab::ir::GateKind::U;
  g.params = {th, ph, la};
  return mat1(g);
}


/// Makhlin invariants (Re G1, Im G1, G2) computed in the magic basis.
inline Eigen::Vector3d makhlin(const Eigen::Matrix4cd& u) {
  const C i(0, 1);
  Eigen::Matrix4cd q;
  q << 1, 0, 0, i, 0, i, 1, 0, 0, i, -1, 0, 1, 0, 0, -i;
  q /= std::sqrt(2.0);
  const Eigen::Matrix4cd ub = q.adjoint() * u * q;
  const Eigen::Matrix4cd m = ub.transpose() * ub;
  const C det = u.determinant();
  const C tr = m.trace();
  const C g1 = tr * tr / (16.0 * det);
  const C g2 = (tr * tr - (m * m).trace()) / (4.0 * det);
  return {g1.real(), g1.imag(), g2.real()};
}

/// Smallest k such that the Makhlin invariants of `u` are reached by k
/// applications of `basis` with random local layers in between. Local
/// layers are searched by random restarts of a simplex search; k = 3 is
/// returned when k <= 2 is not found.
inline int coverage_count(const Eigen::Matrix4cd& u, const Eigen::Matrix4cd& basis,
                          qfab::Rng& rng, double tol = 1e-7) {
  const Eigen::Vector3d target = makhlin(u);
  if ((makhlin(Eigen::Matrix4cd::Identity()) - target).norm() < tol) return 0;
  if ((makhlin(basis) - target).norm() < tol) return 1;
  auto residual = [&](const Eigen::VectorXd& x) {
    const Eigen::Matrix4cd mid = kron(u3(x[0], x[1], x[2]), u3(x[3], x[4], x[5]));
    return (makhlin(basis * mid * basis) - target).squaredNorm();
  };
  qfab::NelderMeadOptions<double> opts;
  opts.initial_step = 0.5;
  opts.f_tolerance = 1e-24;
  opts.max_iterations = 2000;
  for (int restart = 0; restart < 6; ++restart) {
    Eigen::VectorXd x(6);
    for (auto& v : x) v = rng.uniform(-kPi, kPi);
    if (qfab::nelder_mead<double>(residual, x, opts).f <= tol * tol) return 2;
  }
  return 3;
}

/// Minimum over all simple paths of the summed edge weights.
inline double brute_force_distance(int n, const std::vector<std::vector<double>>& w, int s,
                                   int t) {
  if (s == t) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  auto dfs = [&](auto&& self, int u, double acc) -> void {
    if (u == t) {
      best = std::min(best, acc);
      return;
    }
    seen[static_cast<std::size_t>(u)] = true;
    for (int v = 0; v < n; ++v)
      if (!seen[static_cast<std::size_t>(v)] &&
          std::isfinite(w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]))
        self(self, v, acc + w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
    seen[static_cast<std::size_t>(u)] = false;
  };
  dfs(dfs, s, 0.0);
  return best;
}

}  // namespace oracle
