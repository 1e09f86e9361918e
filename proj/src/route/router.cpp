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

#include "qfab/route/router.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qfab/common/error.hpp"

namespace qfab::route {

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Sabre: return "sabre";
    case Algorithm::Fasst: return "fasst";
    case Algorithm::Mirage: return "mirage";
    case Algorithm::Finesse: return "finesse";
  }
  return "?";
}

Algorithm algorithm_from_name(std::string_view name) {
  for (Algorithm a : {Algorithm::Sabre, Algorithm::Fasst, Algorithm::Mirage, Algorithm::Finesse})
    if (algorithm_name(a) == name) return a;
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view post_selection_name(PostSelection p) {
  return p == PostSelection::Native ? "native" : "fidelity";
}

PostSelection post_selection_from_name(std::string_view name) {
  if (name == "native") return PostSelection::Native;
  if (name == "fidelity") return PostSelection::Fidelity;
  throw ValidationError("unknown post-selection '" + std::string(name) + "'");
}

bool uses_fidelity_routing(Algorithm a) {
  return a == Algorithm::Fasst || a == Algorithm::Finesse;
}

bool uses_mirrors(Algorithm a) { return a == Algorithm::Mirage || a == Algorithm::Finesse; }

void RouterConfig::validate() const {
  if (W < 0) throw ValidationError("W must be non-negative");
  if (extended_size < 0) throw ValidationError("extended_size must be non-negative");
  if (beta < 0) throw ValidationError("beta must be non-negative");
  if (aggression < 0 || aggression > 3) throw ValidationError("aggression must be 0..3");
  if (release_valve_threshold < 1) throw ValidationError("release_valve_threshold must be >= 1");
  if (num_seeds < 1) throw ValidationError("num_seeds must be >= 1");
  if (passes < 1 || passes % 2 == 0) throw ValidationError("passes must be odd and positive");
  if (decay_increment < 0 || decay_reset < 1) throw ValidationError("invalid decay settings");
}

double RoutingState::gate_distance(int gate_id, const ir::Layout& l) const {
  const ir::Gate& g = dag->gate(gate_id);
  return (*distance)(l.physical(g.wires[0]), l.physical(g.wires[1]));
}

double RoutingState::gate_distance(int gate_id) const { return gate_distance(gate_id, layout); }

double heuristic_score(const RoutingState& state, const RouterConfig& config,
                       const ir::Layout& layout) {
  double front = 0.0;
  for (int g : state.front) front += state.gate_distance(g, layout);
  double ext = 0.0;
  for (int g : state.extended) ext += state.gate_distance(g, layout);
  if (!state.extended.empty()) ext *= config.W / static_cast<double>(state.extended.size());
  return front + ext;
}

double heuristic_score(const RoutingState& state, const RouterConfig& config) {
  return heuristic_score(state, config, state.layout);
}

std::vector<std::pair<int, int>> candidate_swaps(const RoutingState& state) {
  std::vector<std::pair<int, int>> out;
  for (int id : state.front) {
    for (int l : state.dag->gate(id).wires) {
      const int p = state.layout.physical(l);
      for (int q : state.map->neighbors(p)) out.emplace_back(std::min(p, q), std::max(p, q));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Change in sum of D over `gates` when the logical qubits on physical p and
// q trade places.
double swap_delta(const RoutingState& s, const std::vector<int>& gates, int p, int q) {
  const int la = s.layout.logical(p), lb = s.layout.logical(q);
  const Eigen::MatrixXd& d = *s.distance;
  double delta = 0.0;
  auto moved = [&](int l) {
    if (l == la) return q;
    if (l == lb) return p;
    return s.layout.physical(l);
  };
  for (int id : gates) {
    const ir::Gate& g = s.dag->gate(id);
    const int u = g.wires[0], v = g.wires[1];
    if (u != la && u != lb && v != la && v != lb) continue;
    delta += d(moved(u), moved(v)) - d(s.layout.physical(u), s.layout.physical(v));
  }
  return delta;
}

}  // namespace

std::pair<int, int> select_swap(const RoutingState& state, const RouterConfig& config, Rng& rng) {
  const auto candidates = candidate_swaps(state);
  if (candidates.empty()) throw ValidationError("no candidate swaps");
  const double ext_w =
      state.extended.empty() ? 0.0 : config.W / static_cast<double>(state.extended.size());
  const double base = config.decay_enabled ? heuristic_score(state, config) : 0.0;
  std::vector<std::size_t> best;
  double best_score = 0.0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto [p, q] = candidates[c];
    double score = swap_delta(state, state.front, p, q) +
                   ext_w * swap_delta(state, state.extended, p, q);
    if (config.decay_enabled) {
      const double f = std::max(state.decay[static_cast<std::size_t>(p)],
                                state.decay[static_cast<std::size_t>(q)]);
      score = f * (base + score);
    }
    if (best.empty() || score < best_score - 1e-12) {
      best.assign(1, c);
      best_score = score;
    } else if (std::abs(score - best_score) <= 1e-12) {
      best.push_back(c);
    }
  }
  const std::size_t pick = best.size() == 1 ? best[0] : best[rng.below(best.size())];
  return candidates[pick];
}

std::vector<std::pair<int, int>> release_valve(const RoutingState& state,
                                               const RouterConfig& /*config*/,
                                               const Eigen::VectorXd& path_weights) {
  if (state.front.empty()) return {};
  int target = state.front.front();
  double best = state.gate_distance(target);
  for (int id : state.front) {
    const double d = state.gate_distance(id);
    if (d < best || (d == best && id < target)) {
      best = d;
      target = id;
    }
  }
  const ir::Gate& g = state.dag->gate(target);
  const auto path = hw::shortest_path(*state.map, path_weights, state.layout.physical(g.wires[0]),
                                      state.layout.physical(g.wires[1]));
  std::vector<std::pair<int, int>> swaps;
  std::size_t left = 0, right = path.size() - 1;
  bool from_left = true;
  while (right - left > 1) {
    if (from_left) {
      swaps.emplace_back(path[left], path[left + 1]);
      ++left;
    } else {
      swaps.emplace_back(path[right], path[right - 1]);
      --right;
    }
    from_left = !from_left;
  }
  return swaps;
}

bool mirror_decision(int gate_id, const RoutingState& state, const RouterConfig& config,
                     const weyl::GateCounter& counter) {
  if (!uses_mirrors(config.algorithm)) return false;
  if (config.aggression == 0) return false;
  if (config.aggression == 3) return true;
  const ir::Gate& g = state.dag->gate(gate_id);
  const int k = counter.count(g);
  const int km = counter.mirror_count(g);
  const int p0 = state.layout.physical(g.wires[0]), p1 = state.layout.physical(g.wires[1]);
  ir::Layout after = state.layout;
  after.swap_physical(p0, p1);
  if (config.algorithm == Algorithm::Mirage) {
    if (km < k) return true;
    if (config.aggression == 1 || km > k) return false;
    return heuristic_score(state, config, after) <= heuristic_score(state, config, state.layout);
  }
  const double l = hw::log_weight(state.map->fidelity(p0, p1));
  return heuristic_score(state, config, after) + km * l <=
         heuristic_score(state, config, state.layout) + k * l;
}

RoutingContext::RoutingContext(const hw::CouplingMap& m, const hw::DistanceSet& dist,
                               const RouterConfig& config)
    : map(&m) {
  const bool fid = uses_fidelity_routing(config.algorithm);
  distance = fid ? dist.blend : Eigen::MatrixXd(dist.hop.cast<double>());
  log_weights = hw::log_weights(m);
  const double beta = fid ? dist.beta : 0.0;
  path_weights = Eigen::VectorXd::Ones(log_weights.size()) + beta * dist.k_swap * log_weights;
}

PassResult route_pass(const ir::CircuitDag& dag, const RoutingContext& ctx,
                      const RouterConfig& config, const weyl::GateCounter& counter,
                      const ir::Layout& initial, Rng& rng, bool allow_mirrors) {
  const hw::CouplingMap& map = *ctx.map;
  const int num_phys = map.num_physical();
  if (dag.num_qubits() > num_phys)
    throw ValidationError("circuit has " + std::to_string(dag.num_qubits()) +
                          " qubits but the device only " + std::to_string(num_phys));
  if (initial.size() != num_phys) throw ValidationError("initial layout size mismatch");

  RoutingState st;
  st.dag = &dag;
  st.map = &map;
  st.distance = &ctx.distance;
  st.layout = initial;
  st.decay.assign(static_cast<std::size_t>(num_phys), 1.0);

  PassResult out;
  out.initial_layout = initial;

  const std::size_t total = dag.size();
  std::vector<int> npred(total);
  std::set<int> ready;
  for (std::size_t i = 0; i < total; ++i) {
    npred[i] = static_cast<int>(dag.predecessors(static_cast<int>(i)).size());
    if (npred[i] == 0) ready.insert(static_cast<int>(i));
  }
  std::size_t done = 0;
  int swaps_since_reset = 0;

  auto reset_decay = [&] {
    std::fill(st.decay.begin(), st.decay.end(), 1.0);
    swaps_since_reset = 0;
  };
  auto finish = [&](int id) {
    ready.erase(id);
    ++done;
    for (int s : dag.successors(id))
      if (--npred[static_cast<std::size_t>(s)] == 0) ready.insert(s);
  };
  auto physical = [&](const ir::Gate& g) {
    ir::Gate h = g;
    for (int& w : h.wires) w = st.layout.physical(w);
    return h;
  };
  auto do_swap = [&](int p, int q, bool forced) {
    out.gates.push_back(ir::gates::swap(p, q));
    st.layout.swap_physical(p, q);
    out.swap_trace.push_back({std::min(p, q), std::max(p, q), forced});
    ++out.swap_count;
  };
  auto ready_two_qubit = [&] {
    std::vector<int> f;
    for (int id : ready)
      if (dag.gate(id).is_two_qubit()) f.push_back(id);
    return f;
  };
  const bool mirrors = allow_mirrors && uses_mirrors(config.algorithm);

  // Execute everything executable; returns true when any gate ran.
  auto advance = [&] {
    bool any = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int id : std::vector<int>(ready.begin(), ready.end())) {
        const ir::Gate& g = dag.gate(id);
        if (!g.is_two_qubit()) {
          out.gates.push_back(physical(g));
          finish(id);
          changed = true;
          continue;
        }
        const int p0 = st.layout.physical(g.wires[0]), p1 = st.layout.physical(g.wires[1]);
        if (!map.has_edge(p0, p1)) continue;
        bool mirror = false;
        if (mirrors) {
          std::vector<int> all = ready_two_qubit();
          st.extended = ir::extended_set(dag, all, config.extended_size);
          all.erase(std::remove(all.begin(), all.end(), id), all.end());
          st.front = std::move(all);
          mirror = mirror_decision(id, st, config, counter);
        }
        ir::Gate h = physical(g);
        if (mirror) {
          h = ir::gates::mirrored(std::move(h));
          st.layout.swap_physical(p0, p1);
          ++out.mirror_count;
        }
        out.gates.push_back(std::move(h));
        finish(id);
        changed = true;
      }
      any = any || changed;
    }
    return any;
  };

  while (done < total) {
    if (advance()) {
      st.stalled = 0;
      reset_decay();
      if (done == total) break;
    }
    st.front = ready_two_qubit();
    st.extended = ir::extended_set(dag, st.front, config.extended_size);
    if (release_valve_due(st.stalled, config.release_valve_threshold)) {
      for (auto [p, q] : release_valve(st, config, ctx.path_weights)) do_swap(p, q, true);
      st.stalled = 0;
      reset_decay();
      continue;
    }
    const auto [p, q] = select_swap(st, config, rng);
    do_swap(p, q, false);
    ++st.stalled;
    if (config.decay_enabled) {
      st.decay[static_cast<std::size_t>(p)] += config.decay_increment;
      st.decay[static_cast<std::size_t>(q)] += config.decay_increment;
      if (++swaps_since_reset >= config.decay_reset) reset_decay();
    }
  }
  out.final_layout = st.layout;
  return out;
}

}  // namespace qfab::route
