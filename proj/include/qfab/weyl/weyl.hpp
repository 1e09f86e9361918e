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
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <tuple>

#include "qfab/ir/gate.hpp"

namespace qfab::weyl {

/// Canonical coordinates of exp(i(c1 XX + c2 YY + c3 ZZ)).
///
/// Chamber: pi/4 >= c1 >= c2 >= |c3|, and c3 >= 0 when c1 = pi/4.
struct WeylCoordinates {
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;

  Eigen::Vector3d vec() const { return {c1, c2, c3}; }
};

/// Throws ValidationError when `u` is not unitary to 1e-10.
void check_unitary(const Eigen::Matrix4cd& u);

WeylCoordinates weyl_coordinates(const Eigen::Matrix4cd& u);

/// exp(i(a XX + b YY + c ZZ)).
Eigen::Matrix4cd canonical_gate(double a, double b, double c);

/// Makhlin local invariants (G1 real, G1 imaginary, G2).
Eigen::Vector3d makhlin_invariants(const Eigen::Matrix4cd& u);

bool locally_equivalent(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b,
                        double tol = 1e-8);

/// SWAP * u.
Eigen::Matrix4cd mirror(const Eigen::Matrix4cd& u);

/// Exact matrix of a two-qubit gate. Throws ValidationError for 1q gates.
Eigen::Matrix4cd gate_unitary(const ir::Gate& g);

enum class BasisKind { CX, ECR, ISwap, RootISwap };

struct BasisGate {
  BasisKind kind = BasisKind::RootISwap;
  int root = 2;

  static BasisGate cx() { return {BasisKind::CX, 1}; }
  static BasisGate ecr() { return {BasisKind::ECR, 1}; }
  static BasisGate iswap() { return {BasisKind::ISwap, 1}; }
  static BasisGate root_iswap(int n) { return {BasisKind::RootISwap, n}; }
  static BasisGate sqrt_iswap() { return root_iswap(2); }

  /// "cx", "ecr", "iswap", "sqrt_iswap", or "riswap_<n>".
  static BasisGate from_name(std::string_view name);
  std::string name() const;

  Eigen::Matrix4cd unitary() const;
  bool operator==(const BasisGate&) const = default;
};

/// Smallest k in {0..3} such that u is reachable with k applications of
/// `basis` interleaved with single-qubit gates. Throws NumericalError when
/// three applications do not suffice.
int basis_gate_count(const Eigen::Matrix4cd& u, const BasisGate& basis);

/// Memoizing count lookup for circuit gates. Thread safe.
class GateCounter {
 public:
  explicit GateCounter(BasisGate basis) : basis_(basis) {}

  const BasisGate& basis() const noexcept { return basis_; }

  /// 0 for single-qubit gates and barriers.
  int count(const ir::Gate& g) const;
  /// Count of the mirror SWAP * U(g).
  int mirror_count(const ir::Gate& g) const;
  int swap_count() const;

 private:
  using Key = std::tuple<int, int, bool, std::vector<double>>;
  int lookup(const ir::Gate& g) const;

  BasisGate basis_;
  mutable std::mutex mu_;
  mutable std::map<Key, int> cache_;
};

}  // namespace qfab::weyl
