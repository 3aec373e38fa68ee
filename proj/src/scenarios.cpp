#include "chargeflow/scenarios.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "chargeflow/charge.hpp"
#include "chargeflow/errors.hpp"
#include "chargeflow/evolution.hpp"
#include "chargeflow/gaussian.hpp"
#include "chargeflow/grid.hpp"
#include "chargeflow/oracle.hpp"
#include "chargeflow/state.hpp"
#include "chargeflow/units.hpp"

namespace chargeflow::cli {

using gaussian::GaussianPacket;
using gaussian::delta_qd_analytic;
using gaussian::sample_position;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header(std::ostream& out, const RunConfig& cfg,
                  const std::string& columns) {
  out << "# chargeflow " << cfg.scenario << "\n";
  out << "# config " << cfg.resolved.dump() << "\n";
  out << "# columns " << columns << "\n";
}

/// Runs fn(i) for i in [0, count) on the configured number of threads.
/// Cells must be independent; the first exception is rethrown after join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  unsigned t = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (t <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  t = std::min<unsigned>(t, static_cast<unsigned>(count));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  std::vector<double> v(points);
  for (std::size_t i = 0; i < points; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) /
                    static_cast<double>(points - 1);
  return v;
}

std::vector<double> logspace(double lo, double hi, std::size_t points) {
  std::vector<double> v(points);
  double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < points; ++i)
    v[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                              static_cast<double>(points - 1));
  return v;
}

GaussianPacket packet_of(const RunConfig& cfg) {
  GaussianPacket g{cfg.packet.x_g, cfg.packet.p_g, cfg.packet.sigma_p};
  g.validate();
  return g;
}

}  // namespace

int cmd_gauss_map(const RunConfig& cfg, std::ostream& out) {
  GaussianPacket g = packet_of(cfg);
  PlaneWave pw(cfg.p0);
  UnitSystem units;
  std::vector<double> probes = linspace(cfg.map.lo, cfg.map.hi, cfg.map.points);

  std::size_t n = probes.size();
  std::vector<double> values(n * n);
  parallel_for(n * n, cfg.threads, [&](std::size_t cell) {
    double x1 = probes[cell / n];
    double x2 = probes[cell % n];
    values[cell] = delta_qd_analytic(g, pw, x1, x2, units);
  });

  write_header(out, cfg, "x1,x2,delta_qd");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out << fmt(probes[i]) << ',' << fmt(probes[j]) << ','
          << fmt(values[i * n + j]) << '\n';
  return 0;
}

int cmd_gauss_scan(const RunConfig& cfg, std::ostream& out) {
  UnitSystem units;
  std::vector<double> xgs =
      linspace(cfg.scan.xg_lo, cfg.scan.xg_hi, cfg.scan.xg_points);
  std::vector<double> p0s =
      linspace(cfg.scan.p0_lo, cfg.scan.p0_hi, cfg.scan.p0_points);

  std::size_t n = xgs.size();
  std::vector<double> values(p0s.size() * n);
  parallel_for(values.size(), cfg.threads, [&](std::size_t cell) {
    double p0 = p0s[cell / n];
    GaussianPacket g{xgs[cell % n], cfg.packet.p_g, cfg.packet.sigma_p};
    values[cell] =
        delta_qd_analytic(g, PlaneWave(p0), cfg.scan.x1, cfg.scan.x2, units);
  });

  write_header(out, cfg, "x_g,p0,delta_qd");
  for (std::size_t i = 0; i < p0s.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      out << fmt(xgs[j]) << ',' << fmt(p0s[i]) << ','
          << fmt(values[i * n + j]) << '\n';
  return 0;
}

int cmd_laser_sweep(const RunConfig& cfg, std::ostream& out) {
  UnitSystem units;
  const LaserConfig& lc = cfg.laser;
  double omega0 = UnitSystem::omega_from_wavelength_nm(lc.wavelength_nm);
  double width = lc.region_nm * UnitSystem::bohr_per_nm;
  double tau = lc.cycles * 2.0 * std::numbers::pi / omega0;
  double length = lc.length_factor * width;
  Grid grid = commensurate_grid(lc.x_center - 0.5 * length, length, lc.grid_n,
                                lc.p0, units.hbar);
  PlaneWave pw(lc.p0);
  double x1 = lc.x_center - 0.5 * width;
  double x2 = lc.x_center + 0.5 * width;

  std::vector<double> f0s = lc.f0_values.empty()
                                ? logspace(lc.f0_lo, lc.f0_hi, lc.points)
                                : lc.f0_values;

  struct Row {
    double f0 = 0.0;
    double a0 = 0.0;
    double delta_qd = 0.0;
    double norm_drift = 0.0;
    std::string status = "ok";
  };
  std::vector<Row> rows(f0s.size());

  parallel_for(f0s.size(), cfg.threads, [&](std::size_t i) {
    Row& row = rows[i];
    row.f0 = f0s[i];
    try {
      PulseParams pp =
          PulseParams::from_f0(f0s[i], omega0, lc.x_center, width, tau);
      row.a0 = pp.a0;
      SolverConfig solver;
      solver.dt = lc.dt;
      solver.convergence = lc.convergence;
      WaveFunction psi = evolve_pulse(grid, pw, pp, solver, units);
      double carrier_norm = std::sqrt(grid.length());
      row.norm_drift = norm(psi) / carrier_norm - 1.0;
      WaveFunction psi1 = extract_excitation(psi, pw, units);
      row.delta_qd = delta_charge(psi1, pw, x1, x2, units).delta_qd;
    } catch (const ConvergenceError&) {
      row.status = "convergence-error";
      row.delta_qd = std::nan("");
      row.norm_drift = std::nan("");
    }
  });

  write_header(out, cfg, "f0,a0,delta_qd,norm_drift,status");
  for (const Row& r : rows)
    out << fmt(r.f0) << ',' << fmt(r.a0) << ',' << fmt(r.delta_qd) << ','
        << fmt(r.norm_drift) << ',' << r.status << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  UnitSystem units;
  GaussianPacket g = packet_of(cfg);
  PlaneWave pw(cfg.p0);
  const VerifyConfig& vc = cfg.verify;

  nlohmann::json checks = nlohmann::json::array();
  bool all_pass = true;

  auto fine_grid = [&] {
    return commensurate_grid(-0.5 * vc.fine_length, vc.fine_length, vc.fine_n,
                             cfg.p0, units.hbar);
  };

  for (const std::string& name : cfg.verify.checks) {
    nlohmann::json check;
    check["name"] = name;
    if (name == "analytic") {
      WaveFunction psi1 = sample_position(g, fine_grid(), units);
      ChargeBreakdown numeric = detail::delta_charge_weighted(
          psi1, pw, vc.x1, vc.x2, vc.coefficient, units);
      double analytic =
          delta_qd_analytic(g, pw, numeric.x1, numeric.x2, units);
      double err = std::abs(numeric.delta_qd - analytic);
      check["numeric"] = numeric.delta_qd;
      check["analytic"] = analytic;
      check["error"] = err;
      check["tolerance"] = vc.tolerance_analytic;
      check["pass"] = err <= vc.tolerance_analytic;
    } else if (name == "triangle") {
      WaveFunction fine_psi1 = sample_position(g, fine_grid(), units);
      ChargeBreakdown direct = detail::delta_charge_weighted(
          fine_psi1, pw, vc.x1, vc.x2, vc.coefficient, units);

      Grid ogrid = commensurate_grid(-0.5 * vc.oracle_length, vc.oracle_length,
                                     vc.oracle_n, cfg.p0, units.hbar);
      WaveFunction psi1 = sample_position(g, ogrid, units);
      oracle::IntegratedCharge lower =
          oracle::integrated_charge(psi1, pw, vc.x1, vc.t_max, units);
      oracle::IntegratedCharge upper =
          oracle::integrated_charge(psi1, pw, vc.x2, vc.t_max, units);
      double integrated = upper.value - lower.value;
      oracle::DepletionOptions dep_opts;
      dep_opts.residual_threshold = vc.residual_threshold;
      double depleted = oracle::depletion_charge(psi1, pw, vc.x1, vc.x2,
                                                 vc.t_final, units, dep_opts);

      double d1 = std::abs(direct.delta_qd - integrated);
      double d2 = std::abs(direct.delta_qd - depleted);
      double d3 = std::abs(integrated - depleted);
      double worst = std::max({d1, d2, d3});
      check["direct"] = direct.delta_qd;
      check["integrated"] = integrated;
      check["depletion"] = depleted;
      check["spread"] = lower.spread + upper.spread;
      check["worst_disagreement"] = worst;
      check["tolerance"] = vc.tolerance_triangle;
      check["pass"] = worst <= vc.tolerance_triangle;
    }
    if (!check["pass"].get<bool>()) all_pass = false;
    checks.push_back(check);
  }

  nlohmann::json report;
  report["scenario"] = "verify";
  report["case"] = std::string(1, cfg.case_label);
  report["coefficient"] = vc.coefficient;
  report["checks"] = checks;
  report["pass"] = all_pass;
  out << report.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

int run_scenario(const RunConfig& cfg) {
  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw ConfigError("cannot open output file " + cfg.out);
  }
  std::ostream& out = cfg.out.empty() ? std::cout : file;

  if (cfg.scenario == "gauss-map") return cmd_gauss_map(cfg, out);
  if (cfg.scenario == "gauss-scan") return cmd_gauss_scan(cfg, out);
  if (cfg.scenario == "laser-sweep") return cmd_laser_sweep(cfg, out);
  if (cfg.scenario == "verify") return cmd_verify(cfg, out);
  throw ConfigError("unknown scenario " + cfg.scenario);
}

}  // namespace chargeflow::cli
