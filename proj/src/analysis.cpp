#include "mkdv/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "mkdv/errors.hpp"
#include "mkdv/parallel.hpp"

namespace mkdv {

namespace {

// Neumaier-compensated sum; invariant drifts are measured near 1e-13, below
// what plain accumulation guarantees at these lengths.
double stable_sum(const GridFunction& f) {
  double s = 0.0, c = 0.0;
  for (double x : f) {
    const double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  return s + c;
}

double max_drift(const std::vector<double>& series) {
  double worst = 0.0;
  for (double s : series) worst = std::max(worst, std::abs(s - series[0]));
  return worst;
}

}  // namespace

const char* problem_name(BenchmarkProblem p) {
  return p == BenchmarkProblem::TwoSoliton ? "two_soliton" : "breather";
}

BenchmarkProblem problem_from_name(const std::string& name) {
  if (name == "two_soliton") return BenchmarkProblem::TwoSoliton;
  if (name == "breather") return BenchmarkProblem::Breather;
  throw ConfigError("unknown problem '" + name +
                    "' (expected two_soliton or breather)");
}

double solution_error(const GridFunction& numerical,
                      const GridFunction& exact) {
  if (numerical.size() != exact.size())
    throw ConfigError("solution_error: length mismatch");
  double diff2 = 0.0, ref2 = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double d = numerical[i] - exact[i];
    diff2 += d * d;
    ref2 += exact[i] * exact[i];
  }
  if (ref2 == 0.0) throw ConfigError("solution_error: zero exact field");
  return std::sqrt(diff2 / ref2);
}

InvariantSeries invariant_series(const Trajectory& traj) {
  const SchemeSpec& spec = traj.scheme;
  const Grid& g = traj.grid;
  const std::size_t levels = traj.states.size();
  InvariantSeries out;
  bool have[4] = {false, false, false, false};

  for (const ConservationLawEval& law : conservation_laws(spec)) {
    std::vector<double> series(levels);
    for (std::size_t j = 0; j < levels; ++j) {
      const TwoLevelField F(g, traj.states[j], traj.states[j]);
      series[j] = stable_sum(law.density(F));
    }
    out.sums[law.law_index] = std::move(series);
    have[law.law_index] = true;
  }

  // Remaining laws: generic momentum / energy sums of v. The energy density
  // splits into a quartic part v^4/12 and a gradient part v*(Dm^2 v)_{i-1}/2
  // whose drifts almost cancel: each follows the solution's own excursion
  // (large while solitons overlap or a breather pulses), and only their sum
  // isolates scheme error. The box-scheme diagnostics track the gradient
  // part alone, so for them the reported drift is that physical excursion
  // perturbed by the scheme; the mass-and-momentum / mass-and-energy
  // families keep the full density.
  const bool ten = is_ten_point(spec.family);
  const bool gradient_only = spec.family == SchemeFamily::NarrowBox ||
                             spec.family == SchemeFamily::Multisymplectic;
  for (int law = 2; law <= 3; ++law) {
    if (have[law]) continue;
    out.fallback[law] = true;
    std::vector<double> series(levels);
    for (std::size_t j = 0; j < levels; ++j) {
      const GridFunction v =
          ten ? traj.states[j] : fwd_avg_space(traj.states[j]);
      GridFunction dens(g.M);
      if (law == 2) {
        for (int i = 0; i < g.M; ++i) dens[i] = 0.5 * v[i] * v[i];
      } else {
        const GridFunction d2 = shift_space(
            fwd_diff_space(fwd_diff_space(v, g.dx), g.dx), -1);
        for (int i = 0; i < g.M; ++i)
          dens[i] = (gradient_only ? 0.0
                                   : (1.0 / 12.0) * v[i] * v[i] * v[i] * v[i]) +
                    0.5 * v[i] * d2[i];
      }
      series[j] = stable_sum(dens);
    }
    out.sums[law] = std::move(series);
  }
  return out;
}

void invariant_errors(const Trajectory& traj, ErrorReport& out) {
  const InvariantSeries s = invariant_series(traj);
  out.preserved_laws = preserved_laws(traj.scheme.family);
  out.fallback_laws.clear();
  for (int law = 2; law <= 3; ++law)
    if (s.fallback[law]) out.fallback_laws.push_back(law);
  out.err1 = traj.grid.dx * max_drift(s.sums[1]);
  out.err2 = traj.grid.dx * max_drift(s.sums[2]);
  out.err3 = traj.grid.dx * max_drift(s.sums[3]);
}

double peak_location(const Grid& grid, const GridFunction& f,
                     std::optional<double> near, double halfwidth) {
  int lo_w = 0, hi_w = grid.M - 1;
  if (near) {
    lo_w = static_cast<int>(
        std::ceil((*near - halfwidth - grid.a) / grid.dx - 1e-9));
    hi_w = static_cast<int>(
        std::floor((*near + halfwidth - grid.a) / grid.dx + 1e-9));
    if (hi_w - lo_w + 1 > grid.M) hi_w = lo_w + grid.M - 1;
    if (hi_w - lo_w < 2) throw PeakError("peak search window too narrow");
  }
  int k = lo_w;
  double fk = f[grid.wrap(lo_w)];
  for (int w = lo_w + 1; w <= hi_w; ++w) {
    const double v = f[grid.wrap(w)];
    if (v > fk) {
      fk = v;
      k = w;
    }
  }
  if (near && (k == lo_w || k == hi_w))
    throw PeakError("discrete maximum sits on the search window boundary near x=" +
                    std::to_string(*near));

  const auto val = [&](int w) { return f[grid.wrap(w)]; };
  double best_x = grid.a + k * grid.dx;
  double best_v = fk;
  // Piecewise cubic with central-difference slopes on the two intervals
  // bracketing the discrete maximum; stationary points solve a quadratic.
  for (int j : {k - 1, k}) {
    const double fm1 = val(j - 1);
    const double f0 = val(j);
    const double f1 = val(j + 1);
    const double f2 = val(j + 2);
    const double m0 = 0.5 * (f1 - fm1);
    const double m1 = 0.5 * (f2 - f0);
    const double c2 = -3.0 * f0 + 3.0 * f1 - 2.0 * m0 - m1;
    const double c3 = 2.0 * f0 - 2.0 * f1 + m0 + m1;
    const double A = 3.0 * c3, B = 2.0 * c2, C = m0;
    double roots[2];
    int nroots = 0;
    const double scale = std::abs(A) + std::abs(B) + std::abs(C);
    if (std::abs(A) <= 1e-14 * scale) {
      if (std::abs(B) > 1e-14 * scale) roots[nroots++] = -C / B;
    } else {
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
        roots[nroots++] = q / A;
        if (q != 0.0) roots[nroots++] = C / q;
      }
    }
    for (int r = 0; r < nroots; ++r) {
      const double s = roots[r];
      if (!(s >= 0.0 && s <= 1.0)) continue;
      const double v = f0 + s * (m0 + s * (c2 + s * c3));
      if (v > best_v) {
        best_v = v;
        best_x = grid.a + (j + s) * grid.dx;
      }
    }
  }
  return best_x;
}

PhaseErrors phase_errors(const Grid& grid, const GridFunction& num_final,
                         const TwoSolitonParams& params, double T) {
  const auto profile = [&](double x) {
    return exact_two_soliton(params, x, T);
  };
  // Free-flight positions seed the exact search; the interaction shift is
  // well under the window halfwidth.
  const double seed_fast = params.c1 * T - params.d1;
  const double seed_slow = params.c2 * T - params.d2;
  const double exact_fast =
      max_location(profile, seed_fast - 2.0, seed_fast + 2.0);
  const double exact_slow =
      max_location(profile, seed_slow - 2.0, seed_slow + 2.0);
  const double num_fast = peak_location(grid, num_final, exact_fast, 2.0);
  const double num_slow = peak_location(grid, num_final, exact_slow, 2.0);
  PhaseErrors pe;
  pe.err_phi1 = num_fast - exact_fast;
  pe.err_phi2 = num_slow - exact_slow;
  pe.err_phi = pe.err_phi1 - pe.err_phi2;
  return pe;
}

RunSetup two_soliton_setup(const SchemeSpec& s, double dx, double dt) {
  RunSetup r;
  r.problem = BenchmarkProblem::TwoSoliton;
  r.scheme = s;
  r.a = -20.0;
  r.b = 20.0;
  r.dx = dx;
  r.dt = dt;
  r.T = 10.0;
  return r;
}

RunSetup breather_setup(const SchemeSpec& s) {
  RunSetup r;
  r.problem = BenchmarkProblem::Breather;
  r.scheme = s;
  r.a = -2.0;
  r.b = 2.0;
  r.dx = 0.02;
  r.dt = 0.002;
  r.T = 0.4;
  return r;
}

RunSetup benchmark_setup(BenchmarkProblem p, const SchemeSpec& s) {
  return p == BenchmarkProblem::TwoSoliton ? two_soliton_setup(s)
                                           : breather_setup(s);
}

Grid make_grid(const RunSetup& setup) {
  if (!(setup.dx > 0.0) || !(setup.dt > 0.0))
    throw ConfigError("dx and dt must be positive");
  if (!(setup.b > setup.a)) throw ConfigError("domain must satisfy b > a");
  const double ratio = (setup.b - setup.a) / setup.dx;
  const long long M = std::llround(ratio);
  if (std::abs(ratio - static_cast<double>(M)) > 1e-9)
    throw ConfigError("(b - a) / dx must be an integer (got " +
                      std::to_string(ratio) + ")");
  return Grid(setup.a, setup.b, static_cast<int>(M), setup.dt);
}

int step_count(const RunSetup& setup) {
  if (setup.T < 0.0) throw ConfigError("T must be >= 0");
  return static_cast<int>(std::llround(setup.T / setup.dt));
}

GridFunction exact_state(const RunSetup& setup, const Grid& g, double t) {
  return setup.problem == BenchmarkProblem::TwoSoliton
             ? sample_two_soliton(setup.soliton, g, t)
             : sample_breather(g, t);
}

RunResult run_benchmark(const RunSetup& setup) {
  const Grid g = make_grid(setup);
  const int N = step_count(setup);
  GridFunction init = exact_state(setup, g, 0.0);

  const auto t_start = std::chrono::steady_clock::now();
  Trajectory traj =
      integrate(setup.scheme, g, std::move(init), N, setup.newton);
  const auto t_end = std::chrono::steady_clock::now();

  RunResult res;
  res.wall_seconds =
      std::chrono::duration<double>(t_end - t_start).count();
  res.exact_final = exact_state(setup, g, N * g.dt);
  res.report.sol_err = solution_error(traj.states.back(), res.exact_final);
  if (!traj.newton_iters.empty()) {
    double total = 0.0;
    for (int it : traj.newton_iters) {
      res.newton_iters_max = std::max(res.newton_iters_max, it);
      total += it;
    }
    res.newton_iters_mean = total / traj.newton_iters.size();
  }
  invariant_errors(traj, res.report);
  if (setup.problem == BenchmarkProblem::TwoSoliton) {
    try {
      const PhaseErrors pe =
          phase_errors(g, traj.states.back(), setup.soliton, N * g.dt);
      res.report.err_phi1 = pe.err_phi1;
      res.report.err_phi2 = pe.err_phi2;
      res.report.err_phi = pe.err_phi;
    } catch (const PeakError&) {
      // Peak left the window: report the run without phase columns.
    }
  }
  res.traj = std::move(traj);
  return res;
}

namespace {

double unpreserved_error(SchemeFamily family, const ErrorReport& rep) {
  switch (family) {
    case SchemeFamily::EC8:
    case SchemeFamily::EC10:
      return rep.err2;
    case SchemeFamily::MC8:
    case SchemeFamily::MC10:
      return rep.err3;
    default:
      throw ConfigError("objective undefined for this scheme");
  }
}

}  // namespace

SweepResult sweep_lambda(SchemeFamily family, BenchmarkProblem problem,
                         SweepObjective objective, double lo, double hi,
                         int samples) {
  if (samples < 3) throw ConfigError("sweep requires samples >= 3");
  if (!(hi > lo)) throw ConfigError("sweep range must satisfy hi > lo");
  if (family == SchemeFamily::NarrowBox ||
      family == SchemeFamily::Multisymplectic)
    throw ConfigError(std::string(family_name(family)) +
                      " has no parameter to sweep");

  const auto objective_of = [&](double lambda) -> double {
    const RunSetup setup = benchmark_setup(problem, SchemeSpec{family, lambda});
    const RunResult r = run_benchmark(setup);
    return objective == SweepObjective::SolutionError
               ? r.report.sol_err
               : unpreserved_error(family, r.report);
  };
  const auto try_objective = [&](double lambda) -> double {
    try {
      return objective_of(lambda);
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  SweepResult out;
  out.scan.resize(samples);
  parallel_for(samples, [&](int i) {
    SweepSample smp;
    smp.lambda = lo + (hi - lo) * i / (samples - 1);
    smp.objective = try_objective(smp.lambda);
    smp.ok = std::isfinite(smp.objective);
    out.scan[i] = smp;
  });

  int k = -1;
  for (int i = 0; i < samples; ++i)
    if (out.scan[i].ok && (k < 0 || out.scan[i].objective < out.scan[k].objective))
      k = i;
  if (k < 0) throw SweepError("every lambda sample failed to integrate");

  double best_lambda = out.scan[k].lambda;
  double best_value = out.scan[k].objective;

  // Refine between the nearest successful neighbours of the scan minimum.
  double a = best_lambda, b = best_lambda;
  for (int i = k - 1; i >= 0; --i)
    if (out.scan[i].ok) {
      a = out.scan[i].lambda;
      break;
    }
  for (int i = k + 1; i < samples; ++i)
    if (out.scan[i].ok) {
      b = out.scan[i].lambda;
      break;
    }
  if (b > a) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = try_objective(x1);
    double f2 = try_objective(x2);
    const double width_stop = 1e-3 * (hi - lo);
    for (int iter = 0; iter < 40 && (b - a) > width_stop; ++iter) {
      if (f1 < best_value && std::isfinite(f1)) {
        best_value = f1;
        best_lambda = x1;
      }
      if (f2 < best_value && std::isfinite(f2)) {
        best_value = f2;
        best_lambda = x2;
      }
      if (f1 >= f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + invphi * (b - a);
        f2 = try_objective(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - invphi * (b - a);
        f1 = try_objective(x1);
      }
    }
    if (std::isfinite(f1) && f1 < best_value) {
      best_value = f1;
      best_lambda = x1;
    }
    if (std::isfinite(f2) && f2 < best_value) {
      best_value = f2;
      best_lambda = x2;
    }
  }
  out.lambda_star = best_lambda;
  out.objective_value = best_value;
  return out;
}

double convergence_order(const SchemeSpec& spec, BenchmarkProblem problem,
                         const std::vector<std::pair<double, double>>& levels) {
  if (levels.size() < 2)
    throw ConfigError("convergence study needs at least two levels");
  const int n = static_cast<int>(levels.size());
  std::vector<double> lx(n), ly(n);
  parallel_for(n, [&](int i) {
    RunSetup setup = benchmark_setup(problem, spec);
    setup.dx = levels[i].first;
    setup.dt = levels[i].second;
    const RunResult r = run_benchmark(setup);
    lx[i] = std::log(levels[i].first);
    ly[i] = std::log(r.report.sol_err);
  });
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mkdv
