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

#include "qfab/weyl/weyl.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qfab/common/error.hpp"
#include "qfab/common/nelder_mead.hpp"
#include "qfab/common/rng.hpp"
#include "qfab/ir/matrices.hpp"

namespace qfab::weyl {

namespace {

using C = std::complex<double>;
constexpr double kPi4 = std::numbers::pi / 4;
constexpr double kTol = 1e-8;

const Eigen::Matrix4cd& magic() {
  static const Eigen::Matrix4cd m = [] {
    const double r = std::numbers::sqrt2 / 2;
    const C i(0, 1);
    Eigen::Matrix4cd b;
    b << r, 0, 0, i * r,
         0, i * r, r, 0,
         0, i * r, -r, 0,
         r, 0, 0, -i * r;
    return b;
  }();
  return m;
}

Eigen::Matrix4cd to_special(const Eigen::Matrix4cd& u) {
  const C det = u.determinant();
  return u / std::pow(det, 0.25);
}

// Reduce x into (-pi/4, pi/4] modulo pi/2.
double fold(double x) {
  const double h = std::numbers::pi / 2;
  double r = x - h * std::round(x / h);
  if (r <= -kPi4 + 1e-10) r += h;
  return r;
}

Eigen::Matrix2cd su2(double th, double ph, double la) {
  const double c = std::cos(th / 2), s = std::sin(th / 2);
  Eigen::Matrix2cd m;
  m << c, -std::polar(1.0, la) * s, std::polar(1.0, ph) * s, std::polar(1.0, ph + la) * c;
  return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return k;
}

bool near_coords(const WeylCoordinates& w, double a, double b, double c) {
  return std::abs(w.c1 - a) < kTol && std::abs(w.c2 - b) < kTol && std::abs(w.c3 - c) < kTol;
}

// Minimum invariant-space distance from u to products of k basis gates
// interleaved with local gates.
double reach_distance(const Eigen::Matrix4cd& u, const Eigen::Matrix4cd& b, int k) {
  const Eigen::Vector3d target = makhlin_invariants(u);
  const int dim = 6 * (k - 1);
  auto product = [&](const Eigen::VectorXd& x) {
    Eigen::Matrix4cd p = b;
    for (int s = 0; s < k - 1; ++s) {
      const int o = 6 * s;
      p = b * kron(su2(x(o), x(o + 1), x(o + 2)), su2(x(o + 3), x(o + 4), x(o + 5))) * p;
    }
    return p;
  };
  auto cost = [&](const Eigen::VectorXd& x) {
    return (makhlin_invariants(product(x)) - target).squaredNorm();
  };
  Rng rng(0x5eed);
  NelderMeadOptions<double> opts;
  opts.initial_step = 0.5;
  opts.max_iterations = 6000;
  opts.f_tolerance = 1e-24;
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < 24 && best > 1e-20; ++r) {
    Eigen::VectorXd x0(dim);
    for (int i = 0; i < dim; ++i) x0(i) = rng.uniform(0, 2 * std::numbers::pi);
    auto res = nelder_mead<double>(cost, x0, opts);
    // Polish from the best vertex.
    res = nelder_mead<double>(cost, res.x, opts);
    best = std::min(best, res.f);
  }
  return std::sqrt(best);
}

int numeric_count(const Eigen::Matrix4cd& u, const BasisGate& basis) {
  const Eigen::Matrix4cd b = basis.unitary();
  for (int k = 2; k <= 3; ++k)
    if (reach_distance(u, b, k) < 1e-6) return k;
  throw NumericalError("unitary is not reachable with three applications of " + basis.name());
}

}  // namespace

void check_unitary(const Eigen::Matrix4cd& u) {
  if (!u.allFinite() ||
      (u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("matrix is not unitary");
}

WeylCoordinates weyl_coordinates(const Eigen::Matrix4cd& u) {
  check_unitary(u);
  const Eigen::Matrix4cd ub = magic().adjoint() * to_special(u) * magic();
  const Eigen::Matrix4cd m = ub.transpose() * ub;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m, false);
  std::array<double, 4> th{};
  for (int k = 0; k < 4; ++k) th[static_cast<std::size_t>(k)] = std::arg(es.eigenvalues()(k)) / 2;
  std::sort(th.begin(), th.end());
  std::array<double, 3> c = {fold((th[0] + th[1]) / 2), fold((th[1] + th[3]) / 2),
                             fold((th[0] + th[3]) / 2)};
  std::sort(c.begin(), c.end(), [](double x, double y) { return std::abs(x) > std::abs(y); });
  if (c[0] < 0) {
    c[0] = -c[0];
    c[2] = -c[2];
  }
  if (c[1] < 0) {
    c[1] = -c[1];
    c[2] = -c[2];
  }
  if (std::abs(c[0] - kPi4) < 1e-9) {
    c[0] = kPi4;
    c[2] = std::abs(c[2]);
  }
  for (double& x : c)
    if (std::abs(x) < 1e-13) x = 0.0;
  return {c[0], c[1], c[2]};
}

Eigen::Matrix4cd canonical_gate(double a, double b, double c) {
  // Diagonal in the magic basis with eigenphases a-b+c, a+b-c, -a-b-c, -a+b+c.
  Eigen::Vector4cd d;
  d << std::polar(1.0, a - b + c), std::polar(1.0, a + b - c), std::polar(1.0, -a - b - c),
      std::polar(1.0, -a + b + c);
  return magic() * d.asDiagonal() * magic().adjoint();
}

Eigen::Vector3d makhlin_invariants(const Eigen::Matrix4cd& u) {
  const Eigen::Matrix4cd ub = magic().adjoint() * to_special(u) * magic();
  const Eigen::Matrix4cd m = ub.transpose() * ub;
  const C tr = m.trace();
  const C g1 = tr * tr / 16.0;
  const C g2 = (tr * tr - (m * m).trace()) / 4.0;
  return {g1.real(), g1.imag(), g2.real()};
}

bool locally_equivalent(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b, double tol) {
  return (makhlin_invariants(a) - makhlin_invariants(b)).cwiseAbs().maxCoeff() < tol;
}

Eigen::Matrix4cd mirror(const Eigen::Matrix4cd& u) { return ir::swap_matrix() * u; }

Eigen::Matrix4cd gate_unitary(const ir::Gate& g) {
  if (!g.is_two_qubit())
    throw ValidationError("'" + g.qasm_name() + "' is not a two-qubit gate");
  return ir::two_qubit_matrix(g);
}

BasisGate BasisGate::from_name(std::string_view name) {
  if (name == "cx") return cx();
  if (name == "ecr") return ecr();
  if (name == "iswap") return iswap();
  if (name == "sqrt_iswap" || name == "siswap") return sqrt_iswap();
  if (name.starts_with("riswap_")) {
    const std::string digits(name.substr(7));
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const int n = std::stoi(digits);
      if (n >= 1) return n == 1 ? iswap() : root_iswap(n);
    }
  }
  throw ValidationError("unknown basis gate '" + std::string(name) + "'");
}

std::string BasisGate::name() const {
  switch (kind) {
    case BasisKind::CX: return "cx";
    case BasisKind::ECR: return "ecr";
    case BasisKind::ISwap: return "iswap";
    case BasisKind::RootISwap:
      return root == 2 ? std::string("sqrt_iswap") : "riswap_" + std::to_string(root);
  }
  return "?";
}

Eigen::Matrix4cd BasisGate::unitary() const {
  switch (kind) {
    case BasisKind::CX: return ir::two_qubit_matrix(ir::gates::cx(0, 1));
    case BasisKind::ECR: return ir::two_qubit_matrix(ir::gates::ecr(0, 1));
    case BasisKind::ISwap: return ir::root_iswap_matrix(1);
    case BasisKind::RootISwap: return ir::root_iswap_matrix(root);
  }
  return Eigen::Matrix4cd::Identity();
}

int basis_gate_count(const Eigen::Matrix4cd& u, const BasisGate& basis) {
  const WeylCoordinates w = weyl_coordinates(u);
  if (near_coords(w, 0, 0, 0)) return 0;
  const bool super_controlled = basis.kind == BasisKind::CX || basis.kind == BasisKind::ECR ||
                                basis.kind == BasisKind::ISwap ||
                                (basis.kind == BasisKind::RootISwap && basis.root == 1);
  const WeylCoordinates bw = weyl_coordinates(basis.unitary());
  if (near_coords(w, bw.c1, bw.c2, bw.c3)) return 1;
  if (super_controlled) return std::abs(w.c3) < kTol ? 2 : 3;
  if (basis.kind == BasisKind::RootISwap && basis.root == 2)
    return w.c1 + kTol >= w.c2 + std::abs(w.c3) ? 2 : 3;

  static std::mutex mu;
  static std::map<std::tuple<int, long long, long long, long long>, int> cache;
  const auto key = std::make_tuple(basis.root, std::llround(w.c1 * 1e9),
                                   std::llround(w.c2 * 1e9), std::llround(w.c3 * 1e9));
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const int k = numeric_count(u, basis);
  std::lock_guard lock(mu);
  cache.emplace(key, k);
  return k;
}

int GateCounter::lookup(const ir::Gate& g) const {
  if (!g.is_two_qubit()) return 0;
  if (g.kind == ir::GateKind::Unitary) return basis_gate_count(gate_unitary(g), basis_);
  Key key{static_cast<int>(g.kind), g.root, g.mirrored, g.params};
  {
    std::lock_guard lock(mu_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  const int k = basis_gate_count(gate_unitary(g), basis_);
  std::lock_guard lock(mu_);
  cache_.emplace(std::move(key), k);
  return k;
}

int GateCounter::count(const ir::Gate& g) const { return lookup(g); }

int GateCounter::mirror_count(const ir::Gate& g) const {
  if (!g.is_two_qubit()) return 0;
  return lookup(ir::gates::mirrored(g));
}

int GateCounter::swap_count() const { return lookup(ir::gates::swap(0, 1)); }

}  // namespace qfab::weyl
