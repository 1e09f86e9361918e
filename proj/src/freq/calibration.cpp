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


#include "qfab/freq/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qfab/common/error.hpp"
#include "qfab/common/nelder_mead.hpp"

namespace qfab::freq {

using C = std::complex<double>;

double average_gate_fidelity(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw ValidationError("fidelity needs square matrices of equal size");
  const double d = static_cast<double>(u.rows());
  const double tr = std::norm((u.adjoint() * v).trace());
  return (d + tr) / (d * (d + 1.0));
}

namespace {

// Hopping (a^+ b + a b^+) between two-level modes a and b over 4 modes.
Eigen::MatrixXd hopping(int a, int b) {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(16, 16);
  for (int s = 0; s < 16; ++s) {
    const bool ba = (s >> a) & 1, bb = (s >> b) & 1;
    if (ba != bb) h(s ^ (1 << a) ^ (1 << b), s) = 1.0;
  }
  return h;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd ph(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < ph.size(); ++i) ph(i) = std::exp(C(0, -es.eigenvalues()(i)));
  const Eigen::MatrixXcd v = es.eigenvectors().cast<C>();
  return v * ph.asDiagonal() * v.adjoint();
}

// Least squares on log residuals over (log x0, log x1).
template <typename Model>
ModelFit fit_log(const std::vector<double>& grid, const std::vector<double>& data, Model model,
                 double x0_guess, double x1_guess) {
  auto residual = [&](const Eigen::VectorXd& p) {
    const double x0 = std::exp(p(0)), x1 = std::exp(p(1));
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double r = std::log(model(grid[i], x0, x1)) - std::log(data[i]);
      s += r * r;
    }
    return s;
  };
  Eigen::VectorXd p(2);
  p << std::log(x0_guess), std::log(x1_guess);
  NelderMeadOptions<double> opts;
  opts.initial_step = 1.0;
  opts.f_tolerance = 1e-14;
  opts.max_iterations = 20000;
  for (int round = 0; round < 4; ++round) p = nelder_mead<double>(residual, p, opts).x;
  ModelFit fit{std::exp(p(0)), std::exp(p(1)), 0.0};
  fit.rms_log_residual = std::sqrt(residual(p) / static_cast<double>(grid.size()));
  return fit;
}

constexpr double kMaxRmsLogResidual = 0.25;

}  // namespace

double spectator_oracle_infidelity(double g1t, double phi) {
  const Eigen::MatrixXd target = g1t * hopping(0, 1);
  const Eigen::MatrixXcd u = expm_hermitian(target);
  const Eigen::MatrixXcd v = expm_hermitian(target + phi * hopping(2, 3));
  return 1.0 - average_gate_fidelity(u, v);
}

double reference_spectator_coupling(const PhysicalConstants& c) {
  c.validate();
  const double g1t = std::numbers::pi / (2.0 * c.gate_root);
  // The oracle infidelity rises monotonically in phi on [0, pi].
  double lo = 0.0, hi = std::numbers::pi;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (spectator_oracle_infidelity(g1t, mid) < 0.01 ? lo : hi) = mid;
  }
  const double phi = 0.5 * (lo + hi);
  return phi * c.coherent_threshold_detuning / (2.0 * c.coherent_threshold_prefactor);
}

std::vector<double> log_grid(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) throw ValidationError("invalid grid");
  std::vector<double> g(static_cast<std::size_t>(count));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  return g;
}

ModelFit calibrate_coherent_model(double prefactor_ratio, const std::vector<double>& grid_in,
                                  const PhysicalConstants& c) {
  if (prefactor_ratio < 0) throw ValidationError("prefactor must be non-negative");
  const double g2 = prefactor_ratio * reference_spectator_coupling(c);
  const double g1t = std::numbers::pi / (2.0 * c.gate_root);
  std::vector<double> grid = grid_in;
  if (grid.empty() && g2 > 0.0) {
    const double lo = 1.05 * 4.0 * g2 / std::numbers::pi;
    grid = log_grid(lo, 1e3 * lo, 60);
  }
  if (grid.empty()) grid = log_grid(1e6, 1e10, 60);
  if (grid.front() <= 0 || grid.back() / grid.front() < 100.0 * (1.0 - 1e-9))
    throw ValidationError("detuning grid must span at least two decades");
  if (g2 == 0.0) return {0.0, 1.0, 0.0};

  std::vector<double> data;
  for (double d : grid) {
    const double phi = 2.0 * g2 / d;
    if (phi > std::numbers::pi)
      throw ValidationError("grid starts below the monotone range of the oracle");
    data.push_back(std::max(spectator_oracle_infidelity(g1t, phi), 1e-300));
  }
  const double x0 = data.back() * grid.back() * grid.back() / 2.0;
  const ModelFit fit = fit_log(
      grid, data, [](double d, double a, double b) { return 2.0 * a / ((b + d) * (b + d)); },
      x0, grid.front() * 0.1);
  if (fit.rms_log_residual > kMaxRmsLogResidual)
    throw NumericalError("coherent fit residual " + std::to_string(fit.rms_log_residual) +
                         " exceeds " + std::to_string(kMaxRmsLogResidual));
  return fit;
}

double incoherent_oracle_infidelity(double delta, const PhysicalConstants& c) {
  if (!(delta > 0)) throw ValidationError("detuning must be positive");
  const double eta = anchor_pump_strength(c) * delta / c.anchor_detuning;
  const double t = iswap_gate_time(c.gate_root, eta, c.g3, c.lambda);
  return 1.0 - std::exp(-t / c.T1);
}

ModelFit calibrate_incoherent_model(const std::vector<double>& grid_in,
                                    const PhysicalConstants& c) {
  c.validate();
  std::vector<double> grid = grid_in.empty() ? log_grid(20e6, 10e9, 60) : grid_in;
  if (grid.front() <= 0 || grid.back() / grid.front() < 100.0 * (1.0 - 1e-9))
    throw ValidationError("detuning grid must span at least two decades");
  std::vector<double> data;
  for (double d : grid) data.push_back(incoherent_oracle_infidelity(d, c));
  const ModelFit fit = fit_log(
      grid, data, [](double d, double a, double b) { return a / (b + d); },
      data.back() * grid.back(), grid.front() * 0.1);
  if (fit.rms_log_residual > kMaxRmsLogResidual)
    throw NumericalError("incoherent fit residual " + std::to_string(fit.rms_log_residual) +
                         " exceeds " + std::to_string(kMaxRmsLogResidual));
  return fit;
}

const ModelFit& CostModelParams::coherent_for(double prefactor) const {
  for (const auto& [r, fit] : coherent)
    if (r == prefactor) return fit;
  throw ValidationError("no coherent model for prefactor " + std::to_string(prefactor));
}

CostModelParams CostModelParams::calibrate(const PhysicalConstants& c,
                                           const std::vector<SpectatorTerm>& catalog) {
  CostModelParams p;
  for (const SpectatorTerm& t : catalog) {
    if (!t.coherent) continue;
    const double r = t.normalized_prefactor;
    const bool seen = std::any_of(p.coherent.begin(), p.coherent.end(),
                                  [&](const auto& e) { return e.first == r; });
    if (!seen) p.coherent.emplace_back(r, calibrate_coherent_model(r, {}, c));
  }
  std::sort(p.coherent.begin(), p.coherent.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  p.incoherent = calibrate_incoherent_model({}, c);
  return p;
}

nlohmann::json to_json(const CostModelParams& p) {
  nlohmann::json coh = nlohmann::json::array();
  for (const auto& [r, f] : p.coherent)
    coh.push_back({{"prefactor", r}, {"x0", f.x0}, {"x1", f.x1}});
  return {{"coherent", coh}, {"incoherent", {{"x0", p.incoherent.x0}, {"x1", p.incoherent.x1}}}};
}

CostModelParams cost_params_from_json(const nlohmann::json& j) {
  CostModelParams p;
  try {
    for (const auto& e : j.at("coherent"))
      p.coherent.emplace_back(e.at("prefactor").get<double>(),
                              ModelFit{e.at("x0").get<double>(), e.at("x1").get<double>(), 0.0});
    p.incoherent.x0 = j.at("incoherent").at("x0").get<double>();
    p.incoherent.x1 = j.at("incoherent").at("x1").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("cost model parameters: ") + e.what());
  }
  for (const auto& [r, f] : p.coherent)
    if (r < 0 || f.x0 < 0 || f.x1 < 0) throw ValidationError("fit parameters must be >= 0");
  if (p.incoherent.x0 < 0 || p.incoherent.x1 < 0)
    throw ValidationError("fit parameters must be >= 0");
  return p;
}

nlohmann::json to_json(const PhysicalConstants& c) {
  return {{"g3", c.g3},
          {"lambda", c.lambda},
          {"alpha", c.alpha},
          {"gate_root", c.gate_root},
          {"T1", c.T1},
          {"omega_s_ref", c.omega_s_ref},
          {"anchor_gate_time", c.anchor_gate_time},
          {"anchor_detuning", c.anchor_detuning},
          {"coherent_threshold_detuning", c.coherent_threshold_detuning},
          {"coherent_threshold_prefactor", c.coherent_threshold_prefactor}};
}

PhysicalConstants constants_from_json(const nlohmann::json& j) {
  PhysicalConstants c;
  auto read = [&](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  try {
    read("g3", c.g3);
    read("lambda", c.lambda);
    read("alpha", c.alpha);
    read("gate_root", c.gate_root);
    read("T1", c.T1);
    read("omega_s_ref", c.omega_s_ref);
    read("anchor_gate_time", c.anchor_gate_time);
    read("anchor_detuning", c.anchor_detuning);
    read("coherent_threshold_detuning", c.coherent_threshold_detuning);
    read("coherent_threshold_prefactor", c.coherent_threshold_prefactor);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("constants: ") + e.what());
  }
  c.validate();
  return c;
}

}  // namespace qfab::freq
