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


#include "qfab/freq/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "qfab/common/error.hpp"
#include "qfab/common/nelder_mead.hpp"
#include "qfab/common/rng.hpp"

namespace qfab::freq {

namespace {
// The soft penalty leaves optima a few kHz inside the hard separation.
constexpr double kSeparationTolerance = 1e-4;
}  // namespace

Module Module::complete(int n) {
  Module m;
  m.num_qubits = n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) m.gates.emplace_back(a, b);
  m.validate();
  return m;
}

void Module::validate() const {
  if (num_qubits < 2) throw ValidationError("module needs at least two qubits");
  if (gates.empty()) throw ValidationError("module has no gates");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : gates) {
    if (a < 0 || b < 0 || a >= num_qubits || b >= num_qubits || a == b)
      throw ValidationError("invalid module gate");
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw ValidationError("duplicate module gate");
  }
}

void FrequencyBounds::validate() const {
  if (!(q_lo > 0) || !(q_hi > q_lo) || !(s_lo > 0) || !(s_hi >= s_lo))
    throw ValidationError("invalid frequency bounds");
}

std::vector<GateInfidelity> gate_infidelities(const FrequencyAssignment& assign,
                                              const Module& module,
                                              const CostModelParams& params,
                                              const std::vector<SpectatorTerm>& catalog) {
  if (assign.num_qubits() != module.num_qubits)
    throw ValidationError("assignment size does not match the module");
  // Resolve each term's fit once.
  std::vector<const ModelFit*> fits(catalog.size(), nullptr);
  for (std::size_t t = 0; t < catalog.size(); ++t)
    if (catalog[t].coherent) fits[t] = &params.coherent_for(catalog[t].normalized_prefactor);

  std::vector<GateInfidelity> out;
  out.reserve(module.gates.size());
  for (auto [a, b] : module.gates) {
    GateInfidelity g;
    g.a = a;
    g.b = b;
    const double wa = assign.omega_q[static_cast<std::size_t>(a)];
    const double wb = assign.omega_q[static_cast<std::size_t>(b)];
    g.pump = std::abs(wb - wa);
    double coh = 0.0;
    for (const Spectator& s : spectator_frequencies(assign, {a, b}, catalog)) {
      const ModelFit* f = fits[static_cast<std::size_t>(s.term)];
      if (!f) continue;
      coh += coherent_infidelity(std::abs(g.pump - s.frequency), f->x0, f->x1);
    }
    g.eps_coh = std::min(coh, 1.0);
    g.eps_inc = incoherent_infidelity(std::abs(std::min(wa, wb) - assign.omega_s / 2),
                                      params.incoherent.x0, params.incoherent.x1);
    g.eps_gate = compose_infidelity(g.eps_coh, g.eps_inc);
    out.push_back(g);
  }
  return out;
}

namespace {

double separation_penalty(const FrequencyAssignment& assign, double delta_q) {
  double pen = 0.0;
  const auto& w = assign.omega_q;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      const double v = delta_q - std::abs(w[i] - w[j]);
      if (v > 0) pen += 1e3 * (v / delta_q) * (v / delta_q);
    }
  return pen;
}

// Indices of the k largest eps_gate (ties to the lower index).
std::vector<int> worst(const std::vector<GateInfidelity>& g, int k) {
  std::vector<int> idx(g.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    return g[static_cast<std::size_t>(x)].eps_gate > g[static_cast<std::size_t>(y)].eps_gate;
  });
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

double allocation_cost(const FrequencyAssignment& assign, const Module& module,
                       const CostModelParams& params, int k, double delta_q,
                       const std::vector<SpectatorTerm>& catalog) {
  const auto g = gate_infidelities(assign, module, params, catalog);
  if (k < 0 || k >= static_cast<int>(g.size()))
    throw ValidationError("k must be smaller than the number of gates");
  std::vector<double> e;
  for (const auto& x : g) e.push_back(x.eps_gate);
  std::sort(e.begin(), e.end(), std::greater<>());
  double sum = 0.0;
  for (std::size_t i = static_cast<std::size_t>(k); i < e.size(); ++i) sum += e[i];
  return sum + separation_penalty(assign, delta_q);
}

GateInfidelityReport make_report(const FrequencyAssignment& assign, const Module& module,
                                 const CostModelParams& params, int k, double delta_q,
                                 const std::vector<SpectatorTerm>& catalog) {
  GateInfidelityReport r;
  r.gates = gate_infidelities(assign, module, params, catalog);
  if (k < 0 || k >= static_cast<int>(r.gates.size()))
    throw ValidationError("k must be smaller than the number of gates");
  r.dropped = worst(r.gates, k);
  double log_sum = 0.0;
  int kept = 0;
  for (std::size_t i = 0; i < r.gates.size(); ++i) {
    if (std::binary_search(r.dropped.begin(), r.dropped.end(), static_cast<int>(i))) continue;
    log_sum += std::log(1.0 - r.gates[i].eps_gate);
    ++kept;
  }
  r.geometric_mean_fidelity = std::exp(log_sum / kept);
  const auto& w = assign.omega_q;
  r.min_qubit_separation = w.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      r.min_qubit_separation = std::min(r.min_qubit_separation, std::abs(w[i] - w[j]));
  r.min_interaction_separation = r.gates.size() < 2 ? 0.0 : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.gates.size(); ++i)
    for (std::size_t j = i + 1; j < r.gates.size(); ++j)
      r.min_interaction_separation =
          std::min(r.min_interaction_separation, std::abs(r.gates[i].pump - r.gates[j].pump));
  r.feasible = r.min_qubit_separation >= delta_q * (1.0 - kSeparationTolerance);
  return r;
}

AllocationResult optimize_frequencies(const Module& module, const CostModelParams& params,
                                      const AllocationOptions& opts,
                                      const std::vector<SpectatorTerm>& catalog) {
  module.validate();
  opts.bounds.validate();
  if (opts.restarts < 1) throw ValidationError("restarts must be >= 1");
  if (!(opts.delta_q > 0)) throw ValidationError("delta_q must be positive");
  const int n = module.num_qubits;
  if (opts.k < 0 || opts.k >= static_cast<int>(module.gates.size()))
    throw ValidationError("k must be smaller than the number of gates");

  // Optimize in GHz so the simplex is well scaled.
  Eigen::VectorXd lo(n + 1), hi(n + 1);
  for (int i = 0; i < n; ++i) {
    lo(i) = opts.bounds.q_lo / kGHz;
    hi(i) = opts.bounds.q_hi / kGHz;
  }
  lo(n) = opts.bounds.s_lo / kGHz;
  hi(n) = opts.bounds.s_hi / kGHz;
  auto unpack = [&](const Eigen::VectorXd& x) {
    FrequencyAssignment a;
    a.omega_q.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) a.omega_q[static_cast<std::size_t>(i)] = x(i) * kGHz;
    a.omega_s = x(n) * kGHz;
    return a;
  };
  auto cost = [&](const Eigen::VectorXd& x) {
    return allocation_cost(unpack(x), module, params, opts.k, opts.delta_q, catalog);
  };
  auto clamp = [&](const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return x.cwiseMax(lo).cwiseMin(hi);
  };
  NelderMeadOptions<double> nm;
  nm.f_tolerance = opts.f_tolerance;
  nm.max_iterations = opts.max_iterations;
  nm.initial_step = 0.25;

  Eigen::VectorXd best_x;
  double best_f = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng = Rng::stream(opts.seed, static_cast<std::uint64_t>(r));
    Eigen::VectorXd x0(n + 1);
    for (int i = 0; i <= n; ++i) x0(i) = rng.uniform(lo(i), hi(i));
    const auto res = nelder_mead_projected<double>(cost, x0, clamp, nm);
    if (res.f < best_f) {
      best_f = res.f;
      best_x = res.x;
    }
  }
  AllocationResult out;
  out.assignment = unpack(best_x);
  out.cost = best_f;
  out.report = make_report(out.assignment, module, params, opts.k, opts.delta_q, catalog);
  return out;
}

hw::ModuleSpec fidelity_table(const GateInfidelityReport& report, const Module& module,
                              std::string name) {
  if (report.gates.empty()) throw ValidationError("empty module report");
  hw::ModuleSpec spec;
  spec.name = std::move(name);
  spec.qubits_per_module = module.num_qubits;
  for (std::size_t i = 0; i < report.gates.size(); ++i) {
    if (std::binary_search(report.dropped.begin(), report.dropped.end(), static_cast<int>(i)))
      continue;
    const auto& g = report.gates[i];
    spec.edges.emplace_back(std::min(g.a, g.b), std::max(g.a, g.b));
    spec.fidelities.push_back(1.0 - g.eps_gate);
  }
  spec.link_exit = module.num_qubits / 2;
  spec.link_entry = 0;
  spec.validate();
  return spec;
}

nlohmann::json to_json(const AllocationResult& r) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : r.report.gates)
    gates.push_back({{"a", g.a},
                     {"b", g.b},
                     {"pump_hz", g.pump},
                     {"eps_coh", g.eps_coh},
                     {"eps_inc", g.eps_inc},
                     {"eps_gate", g.eps_gate}});
  return {{"omega_q_hz", r.assignment.omega_q},
          {"omega_s_hz", r.assignment.omega_s},
          {"cost", r.cost},
          {"gates", gates},
          {"dropped", r.report.dropped},
          {"geometric_mean_fidelity", r.report.geometric_mean_fidelity},
          {"min_qubit_separation_hz", r.report.min_qubit_separation},
          {"min_interaction_separation_hz", r.report.min_interaction_separation},
          {"feasible", r.report.feasible}};
}

}  // namespace qfab::freq
