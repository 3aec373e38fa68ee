#include "chargeflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "chargeflow/errors.hpp"
#include "chargeflow/evolution.hpp"
#include "chargeflow/kernels.hpp"
#include "chargeflow/transforms.hpp"

namespace chargeflow::oracle {

namespace {

constexpr std::size_t kReseedInterval = 4096;

double current_of(cplx psi, cplx dpsi, const UnitSystem& units) {
  return units.hbar / units.mass * std::imag(std::conj(psi) * dpsi);
}

/// Polynomial extrapolation to zero through (xs[i], ys[i]).
double neville_at_zero(const double* xs, const double* ys, std::size_t m) {
  std::vector<double> t(ys, ys + m);
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      double xi = xs[i];
      double xj = xs[i + level];
      t[i] = (xi * t[i + 1] - xj * t[i]) / (xi - xj);
    }
  }
  return t[0];
}

struct SimpsonWeights {
  double h;
  std::size_t count;

  double weight(std::size_t j) const {
    if (j == 0 || j + 1 == count) return h / 3.0;
    return (j % 2 == 1) ? 4.0 * h / 3.0 : 2.0 * h / 3.0;
  }
};

double simpson(const std::vector<double>& s, double h) {
  SimpsonWeights w{h, s.size()};
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) acc += w.weight(j) * s[j];
  return acc;
}

double simpson_damped(const std::vector<double>& s, double h, double eps) {
  SimpsonWeights w{h, s.size()};
  double acc = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j)
    acc += w.weight(j) * s[j] * std::exp(-eps * h * static_cast<double>(j));
  return acc;
}

struct SeriesResult {
  std::vector<double> j1;
  std::vector<double> jc;
  double h = 0.0;
};

/// Evaluates j1(t) and jc(t) at the probe on a uniform time lattice by
/// summing the spectral band with running phase factors.  The phases are
/// reseeded from exact exponentials every few thousand steps so rounding
/// drift never accumulates.
SeriesResult current_series(const cvec& band_c, const cvec& band_d,
                            const std::vector<double>& band_omega,
                            double carrier_phase0, double omega0, double p0,
                            double t_max, double dt_request,
                            const UnitSystem& units) {
  std::size_t steps = static_cast<std::size_t>(std::ceil(t_max / dt_request - 1e-12));
  if (steps % 2 != 0) ++steps;
  if (steps < 2) steps = 2;
  double h = t_max / static_cast<double>(steps);
  std::size_t nb = band_c.size();

  cvec cc(nb), dd(nb), mult(nb), phase(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    cc[k] = std::conj(band_c[k]);
    dd[k] = std::conj(band_d[k]);
    mult[k] = std::polar(1.0, -band_omega[k] * h);
  }

  SeriesResult out;
  out.h = h;
  out.j1.resize(steps + 1);
  out.jc.resize(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    double t = h * static_cast<double>(j);
    if (j % kReseedInterval == 0) {
      for (std::size_t k = 0; k < nb; ++k)
        phase[k] = std::polar(1.0, -band_omega[k] * t);
    } else {
      kernels::cmul_inplace(phase.data(), mult.data(), nb);
    }
    cplx psi = kernels::dot_conj(cc.data(), phase.data(), nb);
    cplx dpsi = kernels::dot_conj(dd.data(), phase.data(), nb);
    out.j1[j] = current_of(psi, dpsi, units);
    cplx psi0 = std::polar(1.0, carrier_phase0 - omega0 * t);
    out.jc[j] = units.hbar / units.mass * std::imag(std::conj(psi0) * dpsi) +
                p0 / units.mass * std::real(std::conj(psi) * psi0);
  }
  return out;
}

}  // namespace

CurrentSample current_components(const WaveFunction& psi1, const PlaneWave& pw,
                                 double x, double t, const UnitSystem& units) {
  units.validate();
  const Grid& grid = psi1.grid;
  grid.momentum_index(pw.p0());
  std::size_t idx = grid.index_near(x);
  double xi = grid.x(idx);

  WaveFunction dpsi1 = spatial_derivative(psi1);
  cplx psi0 = pw.amplitude(xi, t, units);
  cplx dpsi0 = cplx(0.0, pw.p0() / units.hbar) * psi0;

  CurrentSample s;
  s.x = xi;
  s.t = t;
  s.j0 = pw.p0() / units.mass;
  s.j1 = current_of(psi1.samples[idx], dpsi1.samples[idx], units);
  s.jc = units.hbar / units.mass *
         std::imag(std::conj(psi0) * dpsi1.samples[idx] +
                   std::conj(psi1.samples[idx]) * dpsi0);

  cvec total(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    total[i] = pw.amplitude(grid.x(i), t, units) + psi1.samples[i];
  WaveFunction full(grid, std::move(total));
  WaveFunction dfull = spatial_derivative(full);
  s.j_total = current_of(full.samples[idx], dfull.samples[idx], units);
  return s;
}

IntegratedCharge integrated_charge(const WaveFunction& psi1_0,
                                   const PlaneWave& pw, double x_probe,
                                   double t_max, const UnitSystem& units,
                                   const IntegratedChargeOptions& opts) {
  units.validate();
  if (!(t_max > 0.0))
    throw DomainError("integrated_charge: t_max must be positive");
  const auto& eps = opts.eps_schedule;
  if (opts.include_cross) {
    if (eps.size() < 3)
      throw DomainError("integrated_charge: need at least three damping rates");
    for (std::size_t i = 0; i < eps.size(); ++i) {
      if (!(eps[i] > 0.0))
        throw DomainError("integrated_charge: damping rates must be positive");
      if (i > 0 && !(eps[i] < eps[i - 1]))
        throw DomainError(
            "integrated_charge: damping rates must be strictly decreasing");
    }
  }
  if (!(opts.band_cutoff > 0.0) || !(opts.quad_tolerance > 0.0) ||
      !(opts.spread_tolerance > 0.0))
    throw DomainError("integrated_charge: tolerances must be positive");

  const Grid& grid = psi1_0.grid;
  std::size_t idx = grid.index_near(x_probe);
  double xp = grid.x(idx);

  IntegratedCharge result;
  result.x = xp;

  SpectralFunction spec = to_momentum(psi1_0);
  double amax = 0.0;
  for (const cplx& a : spec.samples) amax = std::max(amax, std::abs(a));
  if (amax == 0.0) return result;

  // Restrict the mode sum to the band where the spectrum is non-negligible.
  std::size_t lo = spec.samples.size(), hi = 0;
  for (std::size_t k = 0; k < spec.samples.size(); ++k) {
    if (std::abs(spec.samples[k]) > opts.band_cutoff * amax) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  std::size_t nb = hi - lo + 1;
  double scale = grid.dp() / std::sqrt(2.0 * std::numbers::pi * units.hbar);
  cvec band_c(nb), band_d(nb);
  std::vector<double> band_omega(nb);
  double omega_max = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    double p = grid.p(lo + k);
    band_c[k] = spec.samples[lo + k] *
                std::polar(scale, p * xp / units.hbar);
    band_d[k] = band_c[k] * cplx(0.0, p / units.hbar);
    band_omega[k] = dispersion(p, units);
    omega_max = std::max(omega_max, band_omega[k]);
  }

  double p0 = pw.p0();
  double omega0 = pw.omega(units);
  double carrier_phase0 = p0 * xp / units.hbar;
  double freq = omega_max + (opts.include_cross ? omega0 : 0.0);
  double dt0 = opts.dt_initial > 0.0 ? opts.dt_initial
                                     : 0.25 / std::max(freq, 1e-12);

  // Step-halving loop: accept once successive refinements of the undamped
  // packet integral and every damped cross integral agree.
  std::vector<double> prev_reg;
  double prev_j1 = 0.0;
  SeriesResult series;
  bool converged = false;
  std::size_t levels = opts.max_refinements + 2;
  for (std::size_t level = 0; level < levels; ++level) {
    series = current_series(band_c, band_d, band_omega, carrier_phase0, omega0,
                            p0, t_max, dt0 / std::pow(2.0, level), units);
    double ij1 = simpson(series.j1, series.h);
    std::vector<double> reg;
    if (opts.include_cross) {
      reg.reserve(eps.size());
      for (double e : eps)
        reg.push_back(ij1 + simpson_damped(series.jc, series.h, e));
    }
    if (level > 0) {
      double diff = std::abs(ij1 - prev_j1);
      for (std::size_t i = 0; i < reg.size(); ++i)
        diff = std::max(diff, std::abs(reg[i] - prev_reg[i]));
      if (diff <= opts.quad_tolerance) {
        result.packet_term = ij1;
        result.regularized = reg;
        converged = true;
        break;
      }
    }
    prev_j1 = ij1;
    prev_reg = std::move(reg);
  }
  if (!converged)
    throw ConvergenceError(
        "integrated_charge: time quadrature did not converge to " +
        std::to_string(opts.quad_tolerance));

  result.dt = series.h;
  result.steps = series.j1.size() - 1;
  std::size_t tail_from = result.steps - result.steps / 10;
  for (std::size_t j = tail_from; j < series.j1.size(); ++j)
    result.tail_level = std::max(result.tail_level, std::abs(series.j1[j]));

  if (!opts.include_cross) {
    result.value = result.packet_term;
    return result;
  }

  // Quadratic extrapolation of the damped cross integrals to rate zero,
  // with the spread against neighboring orders as the error estimate.
  std::size_t m = eps.size();
  std::vector<double> ic(m);
  for (std::size_t i = 0; i < m; ++i)
    ic[i] = result.regularized[i] - result.packet_term;
  double quad = neville_at_zero(&eps[m - 3], &ic[m - 3], 3);
  double lin = neville_at_zero(&eps[m - 2], &ic[m - 2], 2);
  double spread = std::abs(quad - lin);
  if (m >= 4) {
    double cubic = neville_at_zero(&eps[m - 4], &ic[m - 4], 4);
    spread = std::max(spread, std::abs(quad - cubic));
  }
  if (spread > opts.spread_tolerance)
    throw ConvergenceError("integrated_charge: extrapolation spread " +
                           std::to_string(spread) + " exceeds tolerance");
  result.cross_term = quad;
  result.spread = spread;
  result.value = result.packet_term + result.cross_term;
  return result;
}

double depletion_charge(const WaveFunction& psi1_0, const PlaneWave& pw,
                        double x1, double x2, double t_final,
                        const UnitSystem& units, const DepletionOptions& opts) {
  units.validate();
  if (!(t_final >= 0.0))
    throw DomainError("depletion_charge: t_final must be nonnegative");
  if (t_final == 0.0) return 0.0;

  const Grid& grid = psi1_0.grid;
  std::size_t i1 = grid.index_near(x1);
  std::size_t i2 = grid.index_near(x2);
  if (i1 == i2) return 0.0;
  double sign = i2 > i1 ? 1.0 : -1.0;
  std::size_t lo = std::min(i1, i2);
  std::size_t hi = std::max(i1, i2);

  WaveFunction late = free_propagate(psi1_0, t_final, units);

  // rho - 1 = |psi1|^2 + 2 Re(psi0* psi1) for a unit-amplitude carrier.
  auto excess = [&](const WaveFunction& psi1, double t, std::size_t i) {
    cplx p1 = psi1.samples[i];
    cplx p0 = pw.amplitude(grid.x(i), t, units);
    return std::norm(p1) + 2.0 * std::real(std::conj(p0) * p1);
  };

  double residual = 0.0;
  for (std::size_t i = lo; i <= hi; ++i)
    residual = std::max(residual, std::abs(excess(late, t_final, i)));
  if (residual >= opts.residual_threshold)
    throw AccuracyError("depletion_charge: residual density " +
                        std::to_string(residual) +
                        " at t_final; the packet has not dispersed");

  double acc = 0.0;
  for (std::size_t i = lo; i <= hi; ++i) {
    double term = excess(psi1_0, 0.0, i) - excess(late, t_final, i);
    double w = (i == lo || i == hi) ? 0.5 : 1.0;
    acc += w * term;
  }
  return sign * acc * grid.dx();
}

}  // namespace chargeflow::oracle
