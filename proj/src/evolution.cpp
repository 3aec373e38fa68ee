#include "chargeflow/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chargeflow/transforms.hpp"

namespace chargeflow {

namespace {

// Temporal factor sin^2(pi t/tau) cos(omega0 t) and its derivative.
double pulse_s(const PulseParams& pp, double t) {
  if (t < -pp.tau || t > 0.0) return 0.0;
  double env = std::sin(std::numbers::pi * t / pp.tau);
  return env * env * std::cos(pp.omega0 * t);
}

double pulse_s_dot(const PulseParams& pp, double t) {
  if (t < -pp.tau || t > 0.0) return 0.0;
  double a = std::numbers::pi * t / pp.tau;
  double env = std::sin(a);
  return (std::numbers::pi / pp.tau) * std::sin(2.0 * a) * std::cos(pp.omega0 * t) -
         pp.omega0 * env * env * std::sin(pp.omega0 * t);
}

double pulse_c(const PulseParams& pp, double x) {
  if (x < pp.x_left() || x > pp.x_right()) return 0.0;
  double c = std::cos(std::numbers::pi * (x - pp.x_center) / pp.width);
  return c * c;
}

// max over t in [-tau, 0] of |s_dot|: dense scan plus golden-section
// refinement of the best bracket.
double peak_s_dot(const PulseParams& pp) {
  constexpr int samples = 8192;
  double best_t = 0.0, best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    double t = -pp.tau + pp.tau * i / samples;
    double v = std::abs(pulse_s_dot(pp, t));
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  double lo = std::max(-pp.tau, best_t - pp.tau / samples);
  double hi = std::min(0.0, best_t + pp.tau / samples);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * pp.tau; ++it) {
    if (std::abs(pulse_s_dot(pp, c)) > std::abs(pulse_s_dot(pp, d))) {
      hi = d;
    } else {
      lo = c;
    }
    c = hi - gr * (hi - lo);
    d = lo + gr * (hi - lo);
  }
  double t = 0.5 * (lo + hi);
  return std::max(best, std::abs(pulse_s_dot(pp, t)));
}

}  // namespace

PulseParams PulseParams::from_a0(double a0, double omega0, double x_center,
                                 double width, double tau) {
  PulseParams pp;
  pp.a0 = a0;
  pp.omega0 = omega0;
  pp.x_center = x_center;
  pp.width = width;
  pp.tau = tau > 0.0 ? tau : 8.0 * std::numbers::pi / omega0;
  pp.validate();
  pp.f0 = std::abs(a0) * peak_s_dot(pp);
  return pp;
}

PulseParams PulseParams::from_f0(double f0, double omega0, double x_center,
                                 double width, double tau) {
  if (!(f0 >= 0.0)) throw DomainError("PulseParams: f0 must be nonnegative");
  PulseParams pp = from_a0(0.0, omega0, x_center, width, tau);
  pp.f0 = f0;
  if (f0 == 0.0) return pp;

  // Bracket a0 on the monotone map a0 -> max|E|, then bisect.
  double hi = 1.0;
  auto peak = [&](double a) {
    PulseParams q = pp;
    q.a0 = a;
    return peak_electric_field(q);
  };
  while (peak(hi) < f0) {
    hi *= 2.0;
    if (hi > 1e12)
      throw ConvergenceError("PulseParams: failed to bracket a0 for f0");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (peak(mid) < f0 ? lo : hi) = mid;
  }
  pp.a0 = 0.5 * (lo + hi);
  return pp;
}

double vector_potential(const PulseParams& pp, double x, double t) {
  return pp.a0 * pulse_c(pp, x) * pulse_s(pp, t);
}

double electric_field(const PulseParams& pp, double x, double t) {
  return -pp.a0 * pulse_c(pp, x) * pulse_s_dot(pp, t);
}

double peak_electric_field(const PulseParams& pp) {
  // The spatial envelope peaks at x_center with value 1.
  return std::abs(pp.a0) * peak_s_dot(pp);
}

WaveFunction free_propagate(const WaveFunction& psi, double t,
                            const UnitSystem& units) {
  return to_position(free_propagate(to_momentum(psi), t, units));
}

SpectralFunction free_propagate(const SpectralFunction& spec, double t,
                                const UnitSystem& units) {
  SpectralFunction out = spec;
  const Grid& g = out.grid;
  for (std::size_t k = 0; k < g.size(); ++k)
    out.samples[k] *= std::polar(1.0, -dispersion(g.p(k), units) * t);
  return out;
}

namespace detail {

namespace {

// Solves the cyclic tridiagonal system with diagonal diag, upper off-diagonal
// up (coupling j -> j+1), lower low (j -> j-1), and periodic corner entries
// corner_low = A[0][n-1], corner_up = A[n-1][0], via Thomas elimination and a
// Sherman-Morrison rank-one update.
void solve_cyclic(const cvec& diag, const cvec& up, const cvec& low,
                  cplx corner_low, cplx corner_up, cvec& rhs, cvec& work_diag,
                  cvec& work_y, cvec& work_z) {
  const std::size_t n = diag.size();
  cplx gamma = -diag[0];

  work_diag = diag;
  work_diag[0] -= gamma;
  work_diag[n - 1] -= corner_up * corner_low / gamma;

  auto thomas = [&](cvec& x, const cvec& b_init, bool rhs_is_u) {
    // Forward elimination on a fresh copy of the modified diagonal.
    work_y = work_diag;
    x = b_init;
    if (rhs_is_u) {
      std::fill(x.begin(), x.end(), cplx(0.0));
      x[0] = gamma;
      x[n - 1] = corner_up;
    }
    for (std::size_t j = 1; j < n; ++j) {
      cplx m = low[j] / work_y[j - 1];
      work_y[j] -= m * up[j - 1];
      x[j] -= m * x[j - 1];
    }
    x[n - 1] /= work_y[n - 1];
    for (std::size_t j = n - 1; j-- > 0;)
      x[j] = (x[j] - up[j] * x[j + 1]) / work_y[j];
  };

  thomas(work_z, rhs, true);      // T z = u
  cvec& y = rhs;                  // solve in place: T y = b
  thomas(y, rhs, false);

  cplx vy = y[0] + (corner_low / gamma) * y[n - 1];
  cplx vz = work_z[0] + (corner_low / gamma) * work_z[n - 1];
  cplx factor = vy / (1.0 + vz);
  for (std::size_t j = 0; j < n; ++j) y[j] -= factor * work_z[j];
}

}  // namespace

cvec evolve_comoving(const Grid& grid, const PlaneWave& pw,
                     const std::function<double(double, double)>& a,
                     double t_start, double t_end, double dt,
                     const UnitSystem& units) {
  if (!(dt > 0.0)) throw DomainError("evolve_comoving: dt must be positive");
  const std::size_t n = grid.size();
  const double hbar = units.hbar;
  const double m = units.mass;
  const double e = units.charge;
  const double dx = grid.dx();
  const double p0 = pw.p0();

  const double kinetic_off = -hbar * hbar / (2.0 * m * dx * dx);
  const double kinetic_diag = hbar * hbar / (m * dx * dx);

  long long steps = std::llround(std::ceil((t_end - t_start) / dt - 1e-12));
  if (steps < 1) steps = 1;
  double h = (t_end - t_start) / static_cast<double>(steps);
  const double lambda = h / (2.0 * hbar);

  cvec u(n, cplx(1.0, 0.0));
  std::vector<double> b(n);
  cvec diag(n), up(n), low(n), rhs(n);
  cvec work_diag(n), work_y(n), work_z(n);

  for (long long s = 0; s < steps; ++s) {
    double t_mid = t_start + (static_cast<double>(s) + 0.5) * h;
    for (std::size_t j = 0; j < n; ++j)
      b[j] = p0 - e * a(grid.x(j), t_mid);

    // Comoving Hamiltonian H' = [p^2 + {p,B} + B^2 - p0^2]/(2m), with the
    // anticommutator on the antisymmetric three-point stencil.  For A = 0 the
    // row sums vanish identically, so a constant u is an exact eigenstate.
    // H'[j][j+1] = kinetic_off - i hbar (B_j + B_{j+1})/(4 m dx), and the
    // lower entry is its conjugate.
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t jn = (j + 1) % n;
      double hd = kinetic_diag + (b[j] * b[j] - p0 * p0) / (2.0 * m);
      cplx hu(kinetic_off, -hbar * (b[j] + b[jn]) / (4.0 * m * dx));
      diag[j] = 1.0 + cplx(0.0, lambda) * hd;
      up[j] = cplx(0.0, lambda) * hu;
      low[jn] = cplx(0.0, lambda) * std::conj(hu);
    }

    // rhs = (2 I - M) u where M u is the Crank-Nicolson left-hand operator.
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t jn = (j + 1) % n;
      std::size_t jp = (j + n - 1) % n;
      rhs[j] = (2.0 - diag[j]) * u[j] - up[j] * u[jn] - low[j] * u[jp];
    }

    solve_cyclic(diag, up, low, low[0], up[n - 1], rhs, work_diag, work_y,
                 work_z);
    u = rhs;
  }
  return u;
}

}  // namespace detail

WaveFunction evolve_pulse(const Grid& grid, const PlaneWave& pw,
                          const PulseParams& pp, const SolverConfig& cfg,
                          const UnitSystem& units) {
  pp.validate();
  if (!(cfg.dt > 0.0)) throw DomainError("evolve_pulse: dt must be positive");
  grid.momentum_index(pw.p0());  // carrier must live on the lattice

  if (pp.x_left() - grid.x_min() < pp.width ||
      grid.x_max() - pp.x_right() < pp.width)
    throw DomainError(
        "evolve_pulse: pulse region must sit inside the grid with margin of "
        "at least one region width");

  auto a = [&pp](double x, double t) { return vector_potential(pp, x, t); };
  cvec coarse =
      detail::evolve_comoving(grid, pw, a, -pp.tau, 0.0, cfg.dt, units);
  cvec fine =
      detail::evolve_comoving(grid, pw, a, -pp.tau, 0.0, 0.5 * cfg.dt, units);

  double diff = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    diff = std::max(diff, std::abs(fine[j] - coarse[j]));
  if (diff > cfg.convergence)
    throw ConvergenceError(
        "evolve_pulse: dt-halving changes the state by " + std::to_string(diff) +
        ", above the configured tolerance");

  // Back to the lab frame at t = 0: psi = u e^{i p0 x / hbar}.
  cvec psi(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
    psi[j] = fine[j] * std::polar(1.0, pw.p0() * grid.x(j) / units.hbar);
  return WaveFunction(grid, std::move(psi));
}

WaveFunction extract_excitation(const WaveFunction& psi, const PlaneWave& pw,
                                const UnitSystem& units,
                                double localization_threshold) {
  const Grid& g = psi.grid;
  cvec out(g.size());
  for (std::size_t j = 0; j < g.size(); ++j)
    out[j] = psi.samples[j] - std::polar(1.0, pw.p0() * g.x(j) / units.hbar);

  std::size_t margin = std::max<std::size_t>(1, g.size() / 10);
  double edge = 0.0;
  for (std::size_t j = 0; j < margin; ++j) {
    edge = std::max(edge, std::abs(out[j]));
    edge = std::max(edge, std::abs(out[g.size() - 1 - j]));
  }
  if (edge > localization_threshold)
    throw AccuracyError(
        "extract_excitation: excitation reaches the grid edges (amplitude " +
        std::to_string(edge) + ")");
  return WaveFunction(g, std::move(out));
}

}  // namespace chargeflow
