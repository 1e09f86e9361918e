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


#include "qfab/freq/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "qfab/common/error.hpp"

namespace qfab::freq {

void PhysicalConstants::validate() const {
  if (!(g3 > 0) || !(lambda > 0) || !(alpha > 0) || !(T1 > 0) || !(omega_s_ref > 0) ||
      !(anchor_gate_time > 0) || !(anchor_detuning > 0) || !(coherent_threshold_detuning > 0) ||
      !(coherent_threshold_prefactor > 0))
    throw ValidationError("physical constants must be positive");
  if (lambda >= 0.5) throw ValidationError("lambda must be < 0.5");
  if (gate_root < 1) throw ValidationError("gate_root must be >= 1");
  if (anchor_detuning >= omega_s_ref / 2)
    throw ValidationError("anchor detuning must stay below omega_s / 2");
}

double coherent_infidelity(double delta, double x0, double x1) {
  if (delta < 0) throw ValidationError("detuning must be non-negative");
  const double d = x1 + delta;
  if (d <= 0) return 1.0;
  return std::clamp(2.0 * x0 / (d * d), 0.0, 1.0);
}

double incoherent_infidelity(double delta, double x0, double x1) {
  if (delta < 0) throw ValidationError("detuning must be non-negative");
  const double d = x1 + delta;
  if (d <= 0) return 1.0;
  return std::clamp(x0 / d, 0.0, 1.0);
}

double compose_infidelity(double eps_coh, double eps_inc) {
  if (eps_coh < 0 || eps_coh > 1 || eps_inc < 0 || eps_inc > 1)
    throw ValidationError("infidelities must lie in [0, 1]");
  return 1.0 - (1.0 - eps_inc) * (1.0 - eps_coh);
}

double pump_strength(double omega_p, double omega_s, double eps_drive) {
  if (std::abs(omega_p - omega_s) <= 1e-9 * std::max(1.0, std::abs(omega_s)))
    throw NumericalError("pump at the SNAIL resonance");
  return std::abs(eps_drive * omega_s / (omega_p * omega_p - omega_s * omega_s));
}

double iswap_gate_time(int n, double eta, double g3, double lambda) {
  if (n < 1 || !(eta > 0) || !(g3 > 0) || !(lambda > 0))
    throw ValidationError("gate time arguments must be positive");
  return std::numbers::pi / (12.0 * n * eta * g3 * lambda * lambda);
}

double anchor_pump_strength(const PhysicalConstants& c) {
  return std::numbers::pi /
         (12.0 * c.gate_root * c.anchor_gate_time * c.g3 * c.lambda * c.lambda);
}

double anchor_drive_amplitude(const PhysicalConstants& c) {
  const double wp = c.omega_s_ref / 2 - c.anchor_detuning;
  const double ws = c.omega_s_ref;
  return anchor_pump_strength(c) * std::abs(wp * wp - ws * ws) / ws;
}

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

std::vector<double> golomb_frequencies(int p, double c, double f_min,
                                       std::vector<std::string>* warnings) {
  if (p < 2) throw ValidationError("golomb ruler needs p >= 2");
  if (!(c > 0)) throw ValidationError("golomb scale must be positive");
  if (!is_prime(p) && warnings)
    warnings->push_back("p = " + std::to_string(p) +
                        " is composite; differences may repeat");
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) f.push_back(f_min + c * (2.0 * p * k + (k * k) % p));
  return f;
}

bool differences_distinct(const std::vector<double>& marks) {
  std::vector<double> d;
  for (std::size_t i = 0; i < marks.size(); ++i)
    for (std::size_t j = i + 1; j < marks.size(); ++j) d.push_back(std::abs(marks[i] - marks[j]));
  std::sort(d.begin(), d.end());
  for (std::size_t i = 1; i < d.size(); ++i)
    if (std::abs(d[i] - d[i - 1]) <= 1e-9 * std::max(1.0, d[i])) return false;
  return true;
}

}  // namespace qfab::freq
