#include "cli/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "brlab/divergence.hpp"
#include "brlab/family.hpp"
#include "brlab/truncop.hpp"
#include "brlab/weyl.hpp"
#include "cli/pool.hpp"

namespace brlab::cli {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

Row row(std::string check, std::string criterion, bool pass, double measured, double expected, double tol,
        std::string kind, std::string note = {}) {
  return {std::move(check), std::move(criterion), pass, measured, expected, tol, std::move(kind),
          std::move(note)};
}

std::shared_ptr<const SchwartzProfile> even(SuiteContext& ctx) { return ctx.cache.psi(PsiConvention::Even); }

std::vector<FamilyMember> grid_members(SuiteContext& ctx) {
  const auto& c = ctx.cfg;
  std::vector<FamilyMember> out;
  for (double e : c.eps()) out.push_back(ctx.cache.member(Params(c.d, c.p, c.delta, c.gamma, e), even(ctx)));
  return out;
}

FamilyMember schedule_member_cached(SuiteContext& ctx, int j) {
  const auto& c = ctx.cfg;
  const auto e = schedule(j, c.gamma);
  return ctx.cache.member(Params(c.d, c.p, c.delta, c.gamma, e.epsilon), even(ctx));
}

// envelope table evaluations of members built in this run
long table_evals(const std::vector<FamilyMember>& ms) {
  long n = 0;
  for (const auto& m : ms)
    if (const auto s = m.snapshot(); s.envelope) n += s.envelope->evals();
  return n;
}

// stores the members and, in no-cache mode, reports the comparison with the stored values
void finish(Report& r, SuiteContext& ctx, const std::vector<FamilyMember>& members, const Timer& t) {
  for (const auto& m : members) ctx.cache.store(m);
  const auto& s = ctx.cache.stats();
  if (!ctx.cache.enabled() && s.compared > 0)
    r.rows.push_back(row("recomputed values match the cache", "", s.max_rel_diff <= ctx.cfg.tol.cache,
                         s.max_rel_diff, 0, ctx.cfg.tol.cache, "identity",
                         std::to_string(s.compared) + " comparisons"));
  r.cache = s;
  r.wall_clock = t.seconds();
}

std::string eps_label(double e) { return "2^" + num(std::log2(e)); }

}  // namespace

// ---------------------------------------------------------------- decay

Report run_decay(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "decay";
  auto ms = grid_members(ctx);
  std::vector<FamilyMember> far_ms;
  for (int k : c.grids.far_eps_k)
    far_ms.push_back(ctx.cache.member(Params(c.d, c.p, c.delta, c.gamma, std::ldexp(1.0, -k)), even(ctx)));
  std::vector<DecayReport> reps(ms.size());
  std::vector<double> far(far_ms.size());
  parallel_for(ms.size() + far_ms.size(), c.jobs, [&](std::size_t i) {
    if (i >= ms.size()) {
      const auto& m = far_ms[i - ms.size()];
      const double lo = m.magnitude_lower(10 * m.x_c());
      far[i - ms.size()] = lo > 0 ? m.magnitude_upper(100 * m.x_c()) / lo : INFINITY;
      return;
    }
    const auto& m = ms[i];
    std::vector<double> xs;
    for (double s : c.grids.x_over_xc) xs.push_back(s * m.x_c());
    reps[i] = decay_report(m, 2, xs);
  });
  r.data.header = {"eps", "N", "x_c", "x_over_xc", "x", "regime", "value", "is_bound", "shape", "constant",
                   "violation"};
  int violations = 0;
  bool all_ok = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    all_ok = all_ok && reps[i].ok();
    for (const auto& d : reps[i].rows) {
      violations += d.violation;
      r.data.add({num(ms[i].epsilon()), num(ms[i].N()), num(ms[i].x_c()), num(d.x / ms[i].x_c()), num(d.x),
                  to_string(d.regime), num(d.value), d.is_bound ? "1" : "0", num(d.shape), num(d.constant),
                  d.violation ? "1" : "0"});
    }
  }
  r.rows.push_back(row("decay bounds with fitted constants", "", all_ok, violations, 0, 0, "fitted",
                       "violations over " + std::to_string(ms.size()) + " members, M = 2"));
  const double worst = *std::max_element(far.begin(), far.end());
  r.rows.push_back(row("|f(100 x_c)| / |f(10 x_c)|", "C7", worst <= c.tol.far_ratio, worst, 0, c.tol.far_ratio,
                       "bound", "certified ratio, max over far_eps_k"));
  ms.insert(ms.end(), far_ms.begin(), far_ms.end());
  r.evals = table_evals(ms);
  finish(r, ctx, ms, timer);
  return r;
}

// ---------------------------------------------------------------- lp

Report run_lp(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "lp";
  auto ms = grid_members(ctx);
  const bool two = !c.p.is_infinite() && c.p.value() == 2;
  std::vector<double> norm(ms.size()), peak(ms.size()), peak_x(ms.size()), planch(ms.size(), NAN);
  parallel_for(ms.size(), c.jobs, [&](std::size_t i) {
    norm[i] = ms[i].lp_norm(c.p);
    const auto pk = ms[i].peak();
    peak[i] = pk.value;
    peak_x[i] = pk.x;
    if (two) planch[i] = ms[i].plancherel_l2();
  });
  const auto eps = c.eps();
  r.data.header = {"eps", "N", "x_c", "norm", "peak_x", "peak", "plancherel_l2"};
  for (std::size_t i = 0; i < ms.size(); ++i)
    r.data.add({num(eps[i]), num(ms[i].N()), num(ms[i].x_c()), num(norm[i]), num(peak_x[i]), num(peak[i]),
                two ? num(planch[i]) : ""});

  const double expect = lp_predicted_slope(c.d, c.p, c.gamma);
  const auto fit = fit_power_law(eps, norm);
  r.rows.push_back(row("L^p norm exponent, p = " + c.p.str(), "C6",
                       !fit.degenerate && std::abs(fit.slope - expect) <= c.tol.lp_slope, fit.slope, expect,
                       c.tol.lp_slope, "predicted"));
  r.plots.push_back({"lp_fit.svg", "||f_eps||_p, d = " + std::to_string(c.d) + ", p = " + c.p.str(), "eps",
                     "||f_eps||_p", eps, norm, fit, expect});

  const double pexpect = 0.5 + (1 - c.gamma) * c.d / 2;
  const auto pfit = fit_power_law(eps, peak);
  r.rows.push_back(row("peak exponent", "C5", !pfit.degenerate && std::abs(pfit.slope - pexpect) <= c.tol.lp_slope,
                       pfit.slope, pexpect, c.tol.lp_slope, "predicted"));
  r.plots.push_back({"peak_fit.svg", "sup |f_eps|, d = " + std::to_string(c.d), "eps", "sup |f_eps|", eps, peak, pfit,
                     pexpect});

  if (two) {
    double worst = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) worst = std::max(worst, std::abs(norm[i] / planch[i] - 1));
    r.rows.push_back(row("L^2 norm against Plancherel", "C6", worst < c.tol.plancherel, worst, 0, c.tol.plancherel,
                         "identity"));
  }
  r.evals = table_evals(ms);
  finish(r, ctx, ms, timer);
  return r;
}

// ---------------------------------------------------------------- welldef

Report run_welldef(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "welldef";
  r.data.header = {"section", "k", "regime", "value_re", "value_im", "err", "shape", "constant", "violation"};
  const DyadicPartition part(4);

  const auto m = ctx.cache.member(Params(c.d, c.p, c.delta, c.gamma, std::ldexp(1.0, -c.grids.truncation_eps_k)),
                                  even(ctx));
  std::vector<FamilyMember> members{m};
  for (int j = 0; j <= 1; ++j) members.push_back(schedule_member_cached(ctx, j));

  RegimeReport reg;
  WelldefReport wd;
  ChirpReport chirp, control;
  std::vector<std::function<void()>> tasks = {
      [&] {
        const TruncationSpec s{0, Cutoff::annular(part), c.grids.t, c.delta};
        reg = regime_bound_check(s, m, 2, c.grids.ks, 0, c.tol.regime_factor);
      },
      [&] {
        wd = welldef_probe({members[1], members[2]}, c.p, c.delta, c.grids.t, 0.0, c.grids.welldef_ks,
                           Cutoff::ball(part), Cutoff::ball(BumpSpec{-3, 3, -1.2, 1.2, 0.5}));
      },
      [&] {
        chirp = chirp_truncation_decay(chirp_profile(c.d, c.grids.chirp_p, true, 8192), c.delta, c.grids.t,
                                       c.grids.chirp_ks, Cutoff::annular(part));
      },
      [&] {
        control = chirp_truncation_decay(chirp_profile(c.d, c.grids.chirp_p, false, 8192), c.delta, c.grids.t,
                                         c.grids.chirp_ks, Cutoff::annular(part));
      },
  };
  parallel_for(tasks.size(), c.jobs, [&](std::size_t i) { tasks[i](); });

  int violations = 0;
  for (const auto& x : reg.rows) {
    violations += x.violation;
    r.data.add({"regime", std::to_string(x.k), to_string(x.regime), num(x.value.real()), num(x.value.imag()),
                num(x.err), num(x.shape), num(x.constant), x.violation ? "1" : "0"});
  }
  std::ostringstream spread;
  spread << "eps = " << eps_label(m.epsilon()) << "; raw ratio spreads near/critical/far " << reg.spread_near << ", "
         << reg.spread_critical << ", " << reg.spread_far;
  r.rows.push_back(row("truncation regime bounds", "C8", reg.covers_all_regimes() && reg.ok(), violations, 0,
                       c.tol.regime_factor, "fitted", spread.str()));

  auto seq = [&](const CutoffSequence& s) {
    for (std::size_t i = 0; i < s.values.size(); ++i)
      r.data.add({"welldef " + s.cutoff, std::to_string(wd.ks[i]), "", num(s.values[i].real()),
                  num(s.values[i].imag()), num(s.errs[i]), "", "", ""});
  };
  seq(wd.a);
  seq(wd.b);
  const double rate = std::min(wd.a.rate, wd.b.rate);
  r.rows.push_back(row("Cauchy rate of the truncated partial sums", "C8", wd.stabilized && rate > 0, rate, 0, 0,
                       "fitted", "smaller of the two cutoffs' fitted rates"));
  r.rows.push_back(row("cutoff independence of the limit", "C8", wd.cutoff_independent, wd.limit_difference, 0,
                       wd.combined_err, "identity", "tolerance is the combined quadrature error"));

  auto chirp_rows = [&](const ChirpReport& rep, const std::string& name) {
    for (const auto& x : rep.rows)
      r.data.add({name, std::to_string(x.k), x.resolved ? "resolved" : "bound", num(x.value.real()),
                  num(x.value.imag()), num(x.err), "", "", ""});
  };
  chirp_rows(chirp, "chirp");
  chirp_rows(control, "control");
  const double cfirst = chirp.rows.front().upper(), clast = chirp.rows.back().upper();
  r.rows.push_back(row("chirped input decays over k", "C9", chirp.monotone() && chirp.decays(), clast / cfirst, 0,
                       1e-2, "bound", "last upper bound over first value"));
  const double kfirst = control.rows.front().upper(), klast = control.rows.back().upper();
  r.rows.push_back(row("unchirped control does not decay", "C9", !control.decays(), klast / kfirst, 1, 1e-2, "bound",
                       "last upper bound over first value"));
  r.evals = table_evals(members);
  finish(r, ctx, members, timer);
  return r;
}

// ---------------------------------------------------------------- weyl

Report run_weyl(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "weyl";
  r.data.header = {"section", "index", "value"};
  const auto psi = CompactProfile::bump(eta_spec(), 1.0, 0.25);
  std::vector<double> ts;
  for (int i = 0; i <= 40; ++i) ts.push_back(psi.lo() - 0.5 + (psi.hi() + 0.1 - psi.lo() + 0.5) * i / 40);
  const auto& nus = c.grids.nu;
  std::vector<double> err(nus.size());
  std::vector<WeylBoundReport> bounds(3);
  parallel_for(nus.size() + bounds.size(), c.jobs, [&](std::size_t i) {
    if (i < nus.size())
      err[i] = reconstruction_check(psi, nus[i], ts);
    else
      bounds[i - nus.size()] = psi_j_weyl_bound_check(static_cast<int>(i - nus.size()), c.gamma, c.delta, 400);
  });
  double worst = 0;
  for (std::size_t i = 0; i < nus.size(); ++i) {
    worst = std::max(worst, err[i]);
    r.data.add({"reconstruction", num(nus[i]), num(err[i])});
  }
  r.rows.push_back(row("reconstruction identity", "C10", worst < c.tol.reconstruction, worst, 0, c.tol.reconstruction,
                       "identity", "max over nu and the t grid"));
  double lo = INFINITY, hi = 0;
  for (const auto& b : bounds) {
    lo = std::min(lo, b.constant);
    hi = std::max(hi, b.constant);
    r.data.add({"bound constant", std::to_string(b.j), num(b.constant)});
  }
  const double spread = hi / lo;
  r.rows.push_back(row("Weyl derivative bound constant across j", "", spread < c.tol.weyl_constant_spread, spread, 1,
                       c.tol.weyl_constant_spread, "fitted", "max / min of the fitted constant, j = 0..2"));
  finish(r, ctx, {}, timer);
  return r;
}

// ---------------------------------------------------------------- subordination

Report run_subordination(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "subordination";
  r.data.header = {"delta", "x", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_diff"};
  const int d = c.d;
  const double norm = std::pow(2 * pi, d / 2.0);
  const RadialProfile g =
      RadialProfile(d, [](double s) { return cd(std::exp(-s * s / 2), 0); }, {0, 12, 1e-30})
          .with_spectrum({[norm](double rho) { return cd(norm * std::exp(-rho * rho / 2), 0); }, 0.0, 12.0, 1.0, {}});
  const auto window = CompactProfile::bump(eta_spec(), 4.0, 1.0);
  const auto& ds = c.grids.subordination_delta;
  const auto& xs = c.grids.subordination_x;
  std::vector<SubordinationResult> res(ds.size() * xs.size());
  parallel_for(res.size(), c.jobs, [&](std::size_t i) {
    res[i] = subordination_check(g, window, ds[i / xs.size()], d, xs[i % xs.size()]);
  });
  double worst = 0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    worst = std::max(worst, res[i].rel_diff());
    r.data.add({num(ds[i / xs.size()]), num(xs[i % xs.size()]), num(res[i].lhs.real()), num(res[i].lhs.imag()),
                num(res[i].rhs.real()), num(res[i].rhs.imag()), num(res[i].rel_diff())});
  }
  r.rows.push_back(row("subordination identity on a Gaussian", "C10", worst < c.tol.subordination, worst, 0,
                       c.tol.subordination, "identity"));
  finish(r, ctx, {}, timer);
  return r;
}

// ---------------------------------------------------------------- divergence

Report run_divergence(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "divergence";
  r.data.header = {"section", "index", "eps", "N", "x", "value", "norm", "ratio", "predicted"};
  const double dc = critical_index(c.d, c.p);
  const bool control = dc == 0;
  auto ms = grid_members(ctx);
  parallel_for(ms.size(), c.jobs, [&](std::size_t i) { ms[i].lp_norm(c.p); });

  const auto sweep = exponent_sweep(ms, c.p, c.grids.per_interval);
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    const auto& x = sweep.rows[i];
    r.data.add({"sweep", std::to_string(i), num(ms[i].epsilon()), num(ms[i].N()), num(x.x), num(x.value),
                num(x.norm), num(x.ratio), num(x.predicted)});
  }
  if (control)
    r.rows.push_back(row("divergence slope (control, delta(d,p) = 0)", "C11",
                         !sweep.fit.degenerate && std::abs(sweep.fit.slope) < c.tol.control_slope, sweep.fit.slope,
                         0, c.tol.control_slope, "predicted", "the ratio stays bounded"));
  else
    r.rows.push_back(row("divergence slope", "C11", sweep.within(c.tol.divergence_slope), sweep.fit.slope,
                         sweep.expected, c.tol.divergence_slope, "predicted", "tolerance relative to the target"));
  {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      xs.push_back(ms[i].epsilon() * std::sqrt(ms[i].N()));
      ys.push_back(sweep.rows[i].ratio);
    }
    r.plots.push_back({"divergence_fit.svg",
                       "max over A of |Psi(-Delta) f| / ||f||_p, d = " + std::to_string(c.d) + ", p = " + c.p.str(),
                       "eps N^1/2", "ratio", xs, ys, sweep.fit, sweep.expected});
  }

  // lower bound at random points of A
  if (c.grids.random_x > 0) {
    std::vector<std::vector<DivergenceRatio>> rnd(ms.size());
    parallel_for(ms.size(), c.jobs, [&](std::size_t i) {
      std::mt19937_64 rng(c.seed + i);
      const auto A = set_A(ms[i].N(), c.d);
      double total = 0;
      for (const auto& [a, b] : A.intervals) total += b - a;
      std::uniform_real_distribution<double> u(0, total);
      while (static_cast<int>(rnd[i].size()) < c.grids.random_x) {
        double s = u(rng);
        double x = A.intervals.back().second;
        for (const auto& [a, b] : A.intervals) {
          if (s < b - a) {
            x = a + s;
            break;
          }
          s -= b - a;
        }
        if (A.cosine(x) > 0.55) rnd[i].push_back(divergence_ratio(ms[i], c.p, x));
      }
    });
    double low = INFINITY, high = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      high = std::max(high, sweep.rows[i].ratio / sweep.rows[i].predicted);
      for (std::size_t k = 0; k < rnd[i].size(); ++k) {
        const auto& x = rnd[i][k];
        low = std::min(low, x.ratio / x.predicted);
        r.data.add({"random", std::to_string(i), num(ms[i].epsilon()), num(ms[i].N()), num(x.x), num(x.value),
                    num(x.norm), num(x.ratio), num(x.predicted)});
      }
    }
    r.rows.push_back(row("lower bound on A, uniform over eps", "", low / high >= c.tol.uniformity, low / high,
                         c.tol.uniformity, c.tol.uniformity, "bound",
                         "lower threshold: min ratio/predicted at random x over max at the sweep maxima, seed " +
                             std::to_string(c.seed)));
  }

  // routes, cross terms and the measure of A over the schedule
  const int J = kDefaultPrecisionCeiling;
  std::vector<FamilyMember> sched;
  for (int j = 0; j < J; ++j) sched.push_back(schedule_member_cached(ctx, j));
  std::vector<double> route(sched.size()), route_x(sched.size());
  std::vector<CrossTerm> cross(J);
  parallel_for(sched.size() + cross.size(), c.jobs, [&](std::size_t i) {
    if (i < sched.size()) {
      const auto& m = sched[i];
      const double x = set_A(m.N(), c.d).samples(1).front();
      const cd ex = spectral_apply(m, x, BesselMode::Exact).value;
      double w = 0;
      for (auto src : {MultiplierSource::KnownSpectrum, MultiplierSource::SpatialValues})
        w = std::max(w, std::abs(window_apply(m, m, x, src).value - ex) / std::abs(ex));
      route[i] = w;
      route_x[i] = x;
    } else {
      const int j = static_cast<int>(i - sched.size());
      const double x = set_A(j, c.gamma, c.d).samples(1).front();
      cross[j] = cross_term(j, j + 1, c.gamma, c.d, x, even(ctx));
    }
  });
  double wr = 0;
  for (std::size_t j = 0; j < sched.size(); ++j) {
    wr = std::max(wr, route[j]);
    r.data.add({"route", std::to_string(j), num(sched[j].epsilon()), num(sched[j].N()), num(route_x[j]),
                num(route[j]), "", "", ""});
  }
  r.rows.push_back(row("route independence of Psi_j(-Delta) f_j", "C11", wr < c.tol.route, wr, 0, c.tol.route,
                       "identity", "spectral integral against both multiplier routes"));
  double wc = 0;
  for (const auto& x : cross) {
    wc = std::max(wc, x.ratio());
    r.data.add({"cross", std::to_string(x.j) + "-" + std::to_string(x.k), "", "", num(x.x), num(x.cross),
                num(x.diagonal), num(x.ratio()), ""});
  }
  r.rows.push_back(row("adjacent cross terms relative to the diagonal", "C11", wc < c.tol.cross, wc, 0, c.tol.cross,
                       "bound", "max over (j, j+1), j = 0.." + std::to_string(J - 1)));
  double wf = 0;
  for (double N : {1e4, 1e5, 1e6}) wf = std::max(wf, std::abs(set_A(N, c.d).fraction() * 3 - 1));
  r.rows.push_back(row("measure of A relative to 1/3 of the annulus", "C11", wf < c.tol.fraction, wf, 0,
                       c.tol.fraction, "closed form", "N = 1e4, 1e5, 1e6"));

  if (!control) {
    const auto t = blowup_trajectory(c.d, c.p, c.delta, c.gamma, c.grids.trajectory_J);
    bool inc = t.matches_closed_form();
    for (int j = t.turning_point; j < c.grids.trajectory_J; ++j) inc = inc && t.terms[j + 1] > t.terms[j];
    for (std::size_t j = 0; j < t.terms.size(); ++j)
      r.data.add({"trajectory", std::to_string(j), "", "", "", num(t.terms[j]), "", "", ""});
    r.rows.push_back(row("blow-up trajectory beyond its turning point", "C12", inc, t.turning_point, t.turning_point,
                         0, "closed form", "sigma = " + num(t.sigma)));
    if (c.grids.blowup_numerical) {
      std::vector<int> js;
      for (int j = 1; j <= c.grids.blowup_J; ++j) js.push_back(j);
      const auto rows = blowup_numerical(c.d, c.p, c.delta, c.gamma, js, c.grids.blowup_J, even(ctx),
                                         c.grids.per_interval);
      bool up = true;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) up = up && rows[i].scaled > rows[i - 1].scaled;
        r.data.add({"blowup", std::to_string(rows[i].j), "", "", num(rows[i].x), num(rows[i].scaled), "",
                    num(rows[i].diagonal_share), ""});
      }
      r.rows.push_back(row("numerical blow-up increases over j", "C12", up,
                           rows.size() > 1 ? rows.back().scaled / rows.front().scaled : 0, 1, 0, "predicted",
                           "eps_j^delta max over A_j of |Psi_j(-Delta) F_partial|"));
    }
  }
  std::vector<FamilyMember> all = ms;
  all.insert(all.end(), sched.begin(), sched.end());
  r.evals = table_evals(all);
  finish(r, ctx, all, timer);
  return r;
}

// ---------------------------------------------------------------- cache

Report cache_profiles(SuiteContext& ctx) {
  const Timer timer;
  const auto& c = ctx.cfg;
  Report r;
  r.suite = "cache";
  r.data.header = {"kind", "key", "d", "gamma", "eps"};
  ctx.cache.psi(PsiConvention::OneSided);
  auto ms = grid_members(ctx);
  ms.push_back(ctx.cache.member(Params(c.d, c.p, c.delta, c.gamma, std::ldexp(1.0, -c.grids.truncation_eps_k)),
                                even(ctx)));
  for (int j = 0; j <= kDefaultPrecisionCeiling; ++j) ms.push_back(schedule_member_cached(ctx, j));
  parallel_for(ms.size(), c.jobs, [&](std::size_t i) {
    ms[i].envelope_table();
    ms[i].lp_norm(c.p);
    ms[i].peak();
  });
  for (const auto& m : ms)
    r.data.add({"member", ProfileCache::member_key(m), std::to_string(m.dim()), num(m.params().gamma()),
                num(m.epsilon())});
  r.evals = table_evals(ms);
  finish(r, ctx, ms, timer);
  ctx.cache.write_manifest();
  const auto& s = ctx.cache.stats();
  r.rows.push_back(row("profile tables cached", "", true, s.hits + s.stored, 0, 0, "identity",
                       std::to_string(s.hits) + " hits, " + std::to_string(s.misses) + " misses, " +
                           std::to_string(s.rebuilt) + " rebuilt"));
  return r;
}

std::vector<Report> run_suite(const RunConfig& cfg, std::ostream& log) {
  cfg.validate();
  ProfileCache cache(cfg.cache_dir, !cfg.no_cache, log);
  SuiteContext ctx{cfg, cache, log};
  using Fn = Report (*)(SuiteContext&);
  const std::vector<std::pair<std::string, Fn>> table = {
      {"decay", run_decay},   {"lp", run_lp},           {"welldef", run_welldef},
      {"weyl", run_weyl},     {"subordination", run_subordination}, {"divergence", run_divergence},
      {"cache", cache_profiles},
  };
  std::vector<Report> out;
  for (const auto& [name, fn] : table) {
    const bool want = cfg.suite == name || (cfg.suite == "all" && name != "cache");
    if (!want) continue;
    log << "running " << name << "\n";
    out.push_back(fn(ctx));
    write_report(out.back(), (std::filesystem::path(cfg.out_dir) / name).string());
  }
  cache.write_manifest();
  if (cfg.suite == "all") {
    Report all;
    all.suite = "all";
    all.data.header = {"suite", "check", "criterion", "pass", "measured", "expected", "tolerance"};
    for (const auto& rep : out) {
      for (auto x : rep.rows) {
        all.data.add({rep.suite, x.check, x.criterion, x.pass ? "1" : "0", num(x.measured), num(x.expected),
                      num(x.tolerance)});
        x.check = rep.suite + ": " + x.check;
        all.rows.push_back(std::move(x));
      }
      all.wall_clock += rep.wall_clock;
      all.evals += rep.evals;
    }
    all.cache = cache.stats();
    write_report(all, (std::filesystem::path(cfg.out_dir) / "all").string());
  }
  return out;
}

}  // namespace brlab::cli
