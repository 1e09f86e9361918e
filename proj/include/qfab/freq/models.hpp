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

#include <string>
#include <vector>

namespace qfab::freq {

inline constexpr double kGHz = 1e9;
inline constexpr double kMHz = 1e6;

/// Device constants. Frequencies in Hz, times in seconds.
struct PhysicalConstants {
  /// Third-order SNAIL nonlinearity (rad/s).
  double g3 = 2.0 * 3.14159265358979323846 * 50e6;
  /// SNAIL-qubit hybridization.
  double lambda = 0.1;
  /// Transmon anharmonicity magnitude (rad/s).
  double alpha = 2.0 * 3.14159265358979323846 * 200e6;
  /// Root of the native gate (2 for sqrt-iSWAP).
  int gate_root = 2;
  double T1 = 80e-6;
  /// Reference SNAIL frequency for the pump-strength anchor.
  double omega_s_ref = 4.45e9;
  /// A viable gate of this duration exists ...
  double anchor_gate_time = 250e-9;
  /// ... with the pump this far below omega_s / 2.
  double anchor_detuning = 1e9;
  /// Detuning at which the strongest coherent spectator class reaches
  /// F = 0.99.
  double coherent_threshold_detuning = 160e6;
  /// Normalized prefactor of that class.
  double coherent_threshold_prefactor = 10.0;

  void validate() const;
};

/// 2 x0 / (x1 + delta)^2, clamped to [0, 1].
double coherent_infidelity(double delta, double x0, double x1);
/// x0 / (x1 + delta), clamped to [0, 1].
double incoherent_infidelity(double delta, double x0, double x1);
/// 1 - (1 - eps_inc)(1 - eps_coh).
double compose_infidelity(double eps_coh, double eps_inc);

/// |eta| = eps * omega_s / |omega_p^2 - omega_s^2|. Throws NumericalError
/// near the pole omega_p = omega_s.
double pump_strength(double omega_p, double omega_s, double eps_drive);

/// t_f = pi / (12 n |eta| g3 lambda^2).
double iswap_gate_time(int n, double eta, double g3, double lambda);

/// |eta| that gives the anchor gate time.
double anchor_pump_strength(const PhysicalConstants& c);
/// Drive amplitude giving anchor_pump_strength at the anchor pump frequency.
double anchor_drive_amplitude(const PhysicalConstants& c);

/// f_k = f_min + c (2 p k + (k^2 mod p)), k = 0..p-1. A composite p adds a
/// warning: the differences are then not guaranteed distinct.
std::vector<double> golomb_frequencies(int p, double c, double f_min,
                                       std::vector<std::string>* warnings = nullptr);

/// True when all pairwise differences are distinct.
bool differences_distinct(const std::vector<double>& marks);

}  // namespace qfab::freq
