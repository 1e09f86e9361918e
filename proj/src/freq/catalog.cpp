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


#include "qfab/freq/catalog.hpp"

#include <cmath>

#include "qfab/common/error.hpp"

namespace qfab::freq {

const std::vector<SpectatorTerm>& spectator_catalog() {
  using C = Category;
  using R = Resonance;
  static const std::vector<SpectatorTerm> terms = {
      {C::Driven, "q_a^+ q_b + h.c.", "6|eta| lambda^2 g3", R::QubitPair, 1.0, true},
      {C::IntraModule, "s^+ + s", "3|eta|^2 g3", R::SnailHalf, 100.0, false},
      {C::IntraModule, "s^+ q_a + h.c.", "6|eta| lambda g3", R::SnailQubit, 10.0, true},
      {C::IntraModule, "q_a^+ + q_a", "3|eta|^2 lambda g3", R::QubitHalf, 10.0, true},
      {C::IntraModule, "s^+ q_a + h.c.", "alpha |eta|^2 lambda^3", R::SnailQubitHalf, 0.067, true},
      {C::IntraModule, "q_a^+ + q_a", "alpha |eta|^3 lambda^3 / 3", R::QubitThird, 0.044, true},
      {C::IntraModule, "s^+ + s", "N_q alpha |eta|^3 lambda^4 / 3", R::SnailThird, 0.018, false},
      {C::InterModule, "s_n^+ + s_n", "3|eta|^2 lambda^2 g3", R::NeighborSnailHalf, 1.0, false},
      {C::InterModule, "s^+ q_c + h.c.", "6|eta| lambda^3 g3", R::SnailNeighborQubit, 0.1, true},
      {C::InterModule, "q_c^+ + q_c", "3|eta|^2 lambda^3 g3", R::NeighborQubitHalf, 0.1, true},
      {C::InterModule, "q_a^+ q_c + h.c.", "6|eta| lambda^4 g3", R::QubitNeighborQubit, 0.01, true},
      {C::InterModule, "s_n^+ q_a + h.c.", "6|eta| lambda^5 g3", R::NeighborSnailQubit, 0.001,
       true},
      {C::InterModule, "q_c^+ q_d + h.c.", "6|eta| lambda^6 g3", R::NeighborQubitPair, 0.0001,
       true},
  };
  return terms;
}

std::vector<Spectator> spectator_frequencies(const FrequencyAssignment& assign,
                                             std::pair<int, int> driven_pair,
                                             const std::vector<SpectatorTerm>& catalog) {
  const int n = assign.num_qubits();
  auto [da, db] = driven_pair;
  if (da > db) std::swap(da, db);
  if (da < 0 || db >= n || da == db) throw ValidationError("invalid driven pair");
  const auto& wq = assign.omega_q;
  const auto& nq = assign.neighbor_omega_q;
  const auto& ns = assign.neighbor_omega_s;
  const double ws = assign.omega_s;
  const int nn = static_cast<int>(nq.size());
  auto q = [&](int i) { return wq[static_cast<std::size_t>(i)]; };
  auto c = [&](int i) { return nq[static_cast<std::size_t>(i)]; };

  std::vector<Spectator> out;
  for (std::size_t t = 0; t < catalog.size(); ++t) {
    const SpectatorTerm& term = catalog[t];
    const double r = term.normalized_prefactor;
    const int id = static_cast<int>(t);
    auto add = [&](double f, std::vector<int> modes) {
      out.push_back({f, r, id, std::move(modes)});
    };
    switch (term.resonance) {
      case Resonance::QubitPair:
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (a != da || b != db) add(std::abs(q(b) - q(a)), {a, b});
        break;
      case Resonance::SnailHalf: add(ws / 2, {-1}); break;
      case Resonance::SnailQubit:
        for (int a = 0; a < n; ++a) add(std::abs(ws - q(a)), {-1, a});
        break;
      case Resonance::QubitHalf:
        for (int a = 0; a < n; ++a) add(q(a) / 2, {a});
        break;
      case Resonance::SnailQubitHalf:
        for (int a = 0; a < n; ++a) add(std::abs(ws - q(a)) / 2, {-1, a});
        break;
      case Resonance::QubitThird:
        for (int a = 0; a < n; ++a) add(q(a) / 3, {a});
        break;
      case Resonance::SnailThird: add(ws / 3, {-1}); break;
      case Resonance::NeighborSnailHalf:
        for (double s : ns) add(s / 2, {-1});
        break;
      case Resonance::SnailNeighborQubit:
        for (int k = 0; k < nn; ++k) add(std::abs(ws - c(k)), {-1, n + k});
        break;
      case Resonance::NeighborQubitHalf:
        for (int k = 0; k < nn; ++k) add(c(k) / 2, {n + k});
        break;
      case Resonance::QubitNeighborQubit:
        for (int a = 0; a < n; ++a)
          for (int k = 0; k < nn; ++k) add(std::abs(c(k) - q(a)), {a, n + k});
        break;
      case Resonance::NeighborSnailQubit:
        for (double s : ns)
          for (int a = 0; a < n; ++a) add(std::abs(s - q(a)), {-1, a});
        break;
      case Resonance::NeighborQubitPair:
        for (int k = 0; k < nn; ++k)
          for (int l = k + 1; l < nn; ++l) add(std::abs(c(l) - c(k)), {n + k, n + l});
        break;
    }
  }
  return out;
}

}  // namespace qfab::freq
