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

#include <vector>

#include <json.hpp>

#include "qfab/freq/catalog.hpp"
#include "qfab/freq/models.hpp"

namespace qfab::freq {

/// (d + |Tr U^dagger V|^2) / (d (d + 1)).
double average_gate_fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// Infidelity of exp(-i(g1t (q1^+ q2 + h.c.) + phi (q3^+ q4 + h.c.)))
/// against the spectator-free gate, four two-level modes (d = 16).
double spectator_oracle_infidelity(double g1t, double phi);

/// Spectator coupling (Hz) of a unit-prefactor term, fixed so that the
/// threshold class reaches F = 0.99 at the threshold detuning.
double reference_spectator_coupling(const PhysicalConstants& c);

/// Log-spaced detunings from `lo` to `hi` (Hz), `count` points.
std::vector<double> log_grid(double lo, double hi, int count);

struct ModelFit {
  double x0 = 0.0;
  double x1 = 0.0;
  /// RMS of log(model) - log(data) over the grid.
  double rms_log_residual = 0.0;
};

/// Evaluate the oracle for a spectator of the given prefactor on `grid`
/// and fit 2 x0 / (x1 + delta)^2. An empty grid picks a default one
/// starting where the spectator angle is below pi/2.
ModelFit calibrate_coherent_model(double prefactor_ratio, const std::vector<double>& grid,
                                  const PhysicalConstants& c);

/// Gate time at the pump limit, turned into T1 loss and fitted to
/// x0 / (x1 + delta). The usable |eta| grows linearly with detuning from
/// the SNAIL subharmonic, matching the anchor gate time at the anchor.
ModelFit calibrate_incoherent_model(const std::vector<double>& grid, const PhysicalConstants& c);

/// Incoherent infidelity data the fit is made against.
double incoherent_oracle_infidelity(double delta, const PhysicalConstants& c);

/// Fitted cost models, one coherent pair per distinct prefactor.
struct CostModelParams {
  std::vector<std::pair<double, ModelFit>> coherent;
  ModelFit incoherent;

  /// Throws ValidationError for an unknown prefactor.
  const ModelFit& coherent_for(double prefactor) const;

  static CostModelParams calibrate(const PhysicalConstants& c,
                                   const std::vector<SpectatorTerm>& catalog);
};

nlohmann::json to_json(const CostModelParams& p);
CostModelParams cost_params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PhysicalConstants& c);
PhysicalConstants constants_from_json(const nlohmann::json& j);

}  // namespace qfab::freq
