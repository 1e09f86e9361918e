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

#include <algorithm>
#include <numeric>
#include <vector>

namespace qfab {

template <typename Scalar>
struct NelderMeadOptions {
  Scalar reflection = 1;
  Scalar expansion = 2;
  Scalar contraction = 0.5;
  Scalar shrink = 0.5;
  /// Stop when max(f) - min(f) over the simplex falls below this.
  Scalar f_tolerance = 1e-12;
  int max_iterations = 10000;
  /// Initial simplex edge along each axis.
  Scalar initial_step = 0.1;
};

template <typename Scalar>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar f;
  int iterations;
  bool converged;
};

/// Derivative-free minimization of `f` starting at `x0`.
///
/// `project` maps every trial point back into the feasible set (identity
/// for unconstrained problems, a clamp for box constraints) before it is
/// evaluated, so `f` only ever sees feasible points.
template <typename Scalar, typename F, typename Project>
NelderMeadResult<Scalar> nelder_mead_projected(
    F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
    Project&& project, const NelderMeadOptions<Scalar>& opts = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = x0.size();

  std::vector<Vec> pts;
  std::vector<Scalar> vals;
  pts.reserve(n + 1);
  pts.push_back(project(Vec(x0)));
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec p = pts.front();
    p(i) += opts.initial_step;
    p = project(p);
    if (p(i) == pts.front()(i)) {
      // Pinned at the upper bound; step the other way.
      p(i) -= 2 * opts.initial_step;
      p = project(p);
    }
    pts.push_back(p);
  }
  for (const auto& p : pts) vals.push_back(f(p));

  std::vector<int> order(n + 1);
  int it = 0;
  bool converged = false;
  for (; it < opts.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order.front();
    const int worst = order.back();
    const int second = order[n - 1];
    if (vals[worst] - vals[best] < opts.f_tolerance) {
      converged = true;
      break;
    }

    Vec centroid = Vec::Zero(n);
    for (int k = 0; k < n; ++k) centroid += pts[order[k]];
    centroid /= static_cast<Scalar>(n);

    const Vec xr =
        project(Vec(centroid + opts.reflection * (centroid - pts[worst])));
    const Scalar fr = f(xr);
    if (fr < vals[best]) {
      const Vec xe =
          project(Vec(centroid + opts.expansion * (xr - centroid)));
      const Scalar fe = f(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    // Outside contraction when the reflection helped a little, inside otherwise.
    const bool outside = fr < vals[worst];
    const Vec xc =
        outside
            ? project(Vec(centroid + opts.contraction * (xr - centroid)))
            : project(Vec(centroid + opts.contraction * (pts[worst] - centroid)));
    const Scalar fc = f(xc);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (int k = 1; k <= n; ++k) {
      const int idx = order[k];
      pts[idx] = project(Vec(pts[best] + opts.shrink * (pts[idx] - pts[best])));
      vals[idx] = f(pts[idx]);
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  const auto b = static_cast<std::size_t>(best_it - vals.begin());
  return {pts[b], vals[b], it, converged};
}

template <typename Scalar, typename F>
NelderMeadResult<Scalar> nelder_mead(
    F&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
    const NelderMeadOptions<Scalar>& opts = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  return nelder_mead_projected<Scalar>(
      std::forward<F>(f), x0, [](const Vec& v) { return v; }, opts);
}

}  // namespace qfab
