#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "strichartz/error.hpp"
#include "strichartz/scaling.hpp"

using strichartz::AdmissiblePair;
using strichartz::CheckStatus;
using strichartz::Exponent;
using strichartz::ProblemConfig;
using strichartz::Rational;
using strichartz::SweepRow;

namespace {

ProblemConfig default_config(double c = 1.0) { return ProblemConfig::make(3, Rational(3, 2), Rational(4, 5), c); }
AdmissiblePair pair26() { return AdmissiblePair::make(Exponent(2), Exponent(6), 3); }

const strichartz::VerdictCheck* find_check(const strichartz::Verdict& v, const std::string& name) {
  for (const auto& c : v.checks)
    if (c.name == name) return &c;
  return nullptr;
}

strichartz::NormResult norm(double v) {
  strichartz::NormResult r;
  r.value = v;
  return r;
}

// Rows following the predicted power laws exactly, with the ratio growing like R^{ratio_slope}.
std::vector<SweepRow> synthetic_rows(const strichartz::ExponentSet& e, double ratio_slope) {
  std::vector<SweepRow> rows;
  for (double r : strichartz::geometric_grid(32.0, 4096.0, 8)) {
    SweepRow row;
    row.radius = r;
    row.f_r = norm(std::pow(r, e.f_r_slope.to_double()));
    row.w_r_fixed_t = norm(std::pow(r, e.w_r_spatial_slope.to_double()));
    row.w_r = norm(std::pow(r, e.w_r_slope.to_double()));
    row.forcing = norm(std::pow(r, e.forcing_bound_slope.to_double()));
    row.rest = norm(1.0);
    row.forcing_tilde = norm(2.0);
    row.ratio = 0.1 * std::pow(r, ratio_slope);
    row.forcing_bound_ratio = 0.5;
    rows.push_back(row);
  }
  return rows;
}

double closed_form_rectangle_norm(double r) {
  const double w = std::pow(r, 0.8);
  return std::sqrt(std::numbers::pi * (std::pow(r + w, 2.5) - std::pow(r - w, 2.5)) / 2.5);
}

strichartz::SweepOptions f_r_only(strichartz::CutoffMode cutoff = strichartz::CutoffMode::smooth) {
  strichartz::SweepOptions opts;
  opts.quantities = {true, false, false, false, false};
  opts.cutoff = cutoff;
  return opts;
}

}  // namespace

TEST(AdmissiblePairs, EndpointsAndExactIdentity) {
  const auto pairs3 = strichartz::admissible_pairs(3, 5);
  ASSERT_EQ(pairs3.size(), 5u);
  EXPECT_EQ(pairs3.front().p, Exponent(2));
  EXPECT_EQ(pairs3.front().q, Exponent(6));
  EXPECT_TRUE(pairs3.back().is_energy_endpoint());
  EXPECT_EQ(pairs3.back().q, Exponent(2));
  const auto pairs4 = strichartz::admissible_pairs(4, 3);
  EXPECT_EQ(pairs4.front().q, Exponent(4));
  EXPECT_THROW(strichartz::admissible_pairs(2, 3), strichartz::InvalidArgument);
}

TEST(AdmissiblePairsProperty, IdentityAndDualInvolution) {
  for (int n = 3; n <= 9; ++n) {
    for (const auto& pr : strichartz::admissible_pairs(n, 13)) {
      EXPECT_EQ(Rational(2) * pr.p.reciprocal() + Rational(n) * pr.q.reciprocal(), Rational(n, 2));
      const auto [pd, qd] = strichartz::dual_pair(pr.p, pr.q);
      const auto [pp, qq] = strichartz::dual_pair(pd, qd);
      EXPECT_EQ(pp, pr.p);
      EXPECT_EQ(qq, pr.q);
    }
  }
}

TEST(GammaWindow, Examples) {
  const auto w3 = strichartz::gamma_window(3, Rational(3, 2));
  EXPECT_EQ(w3.lo, Rational(3, 4));
  EXPECT_EQ(w3.hi, Rational(1));
  const auto w4 = strichartz::gamma_window(4, Rational(3, 2));
  EXPECT_EQ(w4.lo, Rational(3, 4));
  EXPECT_EQ(w4.hi, Rational(11, 12));
  EXPECT_TRUE(w3.contains(Rational(4, 5)));
  EXPECT_FALSE(w3.contains(Rational(3, 5)));
  EXPECT_THROW(strichartz::gamma_window(3, Rational(2)), strichartz::InvalidArgument);
}

TEST(GammaWindowProperty, NonemptyAndDeltaPositiveInside) {
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k <= 19; ++k) {
      const Rational alpha = Rational(1) + Rational(k, 20);
      const auto w = strichartz::gamma_window(n, alpha);
      ASSERT_TRUE(w.nonempty()) << "n=" << n << " alpha=" << alpha.str();
      EXPECT_GE(w.lo, Rational(1, 2));
      EXPECT_LE(w.hi, Rational(1));
      for (int j = 1; j <= 9; ++j) {
        const Rational g = w.lo + (w.hi - w.lo) * Rational(j, 10);
        EXPECT_GT(strichartz::delta_at_threshold(n, alpha, g).value.sign(), 0)
            << "n=" << n << " alpha=" << alpha.str() << " gamma=" << g.str();
      }
      // At the lower edge the binding term vanishes.
      if (w.lo == alpha / Rational(2)) {
        EXPECT_LE(strichartz::delta_at_threshold(n, alpha, w.lo).value.sign(), 0);
      }
    }
  }
}

TEST(BetaThreshold, Examples) {
  EXPECT_EQ(strichartz::beta_threshold(default_config()), Rational(23, 15));
  EXPECT_EQ(strichartz::beta_threshold(ProblemConfig::make(4, Rational(3, 2), Rational(4, 5))), Rational(31, 20));
  Rational prev(100);
  for (int k = 19; k >= 11; --k) {
    const auto t = strichartz::beta_threshold(ProblemConfig::make(3, Rational(3, 2), Rational(k, 20)));
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(DeltaExponent, DefaultConfiguration) {
  const auto d = strichartz::delta_at_threshold(3, Rational(3, 2), Rational(4, 5));
  EXPECT_EQ(d.value, Rational(1, 15));
  EXPECT_EQ(d.attaining, std::vector<std::string>{"2gamma-beta"});
  const auto e = strichartz::predicted_exponents(default_config(), pair26());
  EXPECT_EQ(e.delta.value, Rational(1, 15));
  EXPECT_EQ(e.delta.attaining, std::vector<std::string>{"2gamma-beta"});
}

TEST(DeltaExponentProperty, ClosedFormEqualsMinimumAtThreshold) {
  for (int n = 3; n <= 8; ++n) {
    for (int ka = 1; ka <= 9; ++ka) {
      const Rational alpha = Rational(1) + Rational(ka, 10);
      for (int kg = 11; kg <= 19; ++kg) {
        const Rational gamma(kg, 20);
        const auto cfg = ProblemConfig::make(n, alpha, gamma, 1.0, std::nullopt);
        const auto at = strichartz::delta_exponent(n, alpha, gamma, cfg.beta_threshold(), Exponent(2));
        const auto closed = strichartz::delta_at_threshold(n, alpha, gamma);
        EXPECT_EQ(at.value, closed.value);
        EXPECT_EQ(at.attaining, closed.attaining);
      }
    }
  }
}

TEST(DeltaExponentProperty, ContinuousInAlpha) {
  // Each term is affine in alpha with slope at most 3/2 in magnitude at the threshold.
  for (int n : {3, 4, 5, 6}) {
    const Rational gamma(19, 20);
    Rational prev = strichartz::delta_at_threshold(n, Rational(105, 100), gamma).value;
    for (int k = 110; k <= 195; k += 5) {
      const Rational alpha(k, 100);
      const Rational d = strichartz::delta_at_threshold(n, alpha, gamma).value;
      EXPECT_LE(strichartz::abs(d - prev), Rational(3, 2) * Rational(5, 100));
      prev = d;
    }
  }
}

TEST(PredictedExponents, Examples) {
  const auto e = strichartz::predicted_exponents(default_config(), pair26());
  EXPECT_EQ(e.weight, Rational(23, 5));
  EXPECT_EQ(e.f_r_slope, Rational(23, 20));
  EXPECT_EQ(e.w_r_spatial_slope, Rational(23, 60));
  EXPECT_EQ(e.beta_threshold, Rational(23, 15));
  EXPECT_EQ(e.ratio_wf_slope, (e.beta * Rational(3) - e.weight) / Rational(6));
  EXPECT_EQ(e.w_r_slope, e.beta / Rational(2) + Rational(23, 60));
  const auto even = strichartz::predicted_exponents(ProblemConfig::make(4, Rational(3, 2), Rational(4, 5)),
                                                    AdmissiblePair::make(Exponent(2), Exponent(4), 4));
  EXPECT_EQ(even.f_r_slope, Rational(31, 20));
  EXPECT_EQ(even.gamma_window.hi, Rational(11, 12));
  EXPECT_THROW(strichartz::predicted_exponents(default_config(), AdmissiblePair::make(Exponent(2), Exponent(4), 4)),
               strichartz::InvalidArgument);
}

TEST(GeometricGrid, ExactEndpointsAndPowers) {
  const auto g = strichartz::geometric_grid(32.0, 4096.0, 8);
  ASSERT_EQ(g.size(), 8u);
  for (int i = 0; i < 8; ++i) EXPECT_EQ(g[i], std::ldexp(1.0, 5 + i));
  const auto h = strichartz::geometric_grid(3.0, 1000.0, 7);
  EXPECT_EQ(h.front(), 3.0);
  EXPECT_EQ(h.back(), 1000.0);
  EXPECT_THROW(strichartz::geometric_grid(2.0, 10.0, 3), strichartz::InvalidArgument);
  EXPECT_THROW(strichartz::geometric_grid(5.0, 10.0, 1), strichartz::InvalidArgument);
}

TEST(FitPowerLaw, ExactPowerLawAndConstant) {
  const std::vector<double> x{10.0, 100.0, 1000.0}, y{100.0, 1e4, 1e6};
  const auto f = strichartz::fit_power_law(x, y);
  EXPECT_NEAR(f.slope, 2.0, 1e-14);
  EXPECT_NEAR(f.max_abs_residual, 0.0, 1e-13);
  EXPECT_TRUE(f.spans_two_decades);
  EXPECT_EQ(f.sample_count, 3);
  const std::vector<double> c{4.0, 4.0, 4.0};
  EXPECT_NEAR(strichartz::fit_power_law(x, c).slope, 0.0, 1e-15);
  const std::vector<double> bad{1.0, -1.0, 2.0};
  EXPECT_THROW(strichartz::fit_power_law(x, bad), strichartz::InvalidArgument);
}

TEST(FitExponent, NeedsFiveConvergedRows) {
  auto rows = synthetic_rows(strichartz::predicted_exponents(default_config(), pair26()), 0.1);
  EXPECT_NEAR(strichartz::fit_exponent(rows, "f_R_norm").slope, 1.15, 1e-12);
  EXPECT_NEAR(strichartz::fit_exponent(rows, "ratio_wf").slope,
              strichartz::fit_exponent(rows, "W_R_norm").slope - 1.15, 1e-12);
  for (std::size_t i = 0; i < 4; ++i) rows[i].converged = false;
  EXPECT_THROW(strichartz::fit_exponent(rows, "f_R_norm"), strichartz::InvalidArgument);
  EXPECT_THROW(strichartz::fit_exponent(rows, "nope"), strichartz::InvalidArgument);
}

TEST(Verdict, ExactPowerLawsPass) {
  const auto e = strichartz::predicted_exponents(default_config(), pair26());
  const auto rows = synthetic_rows(e, 0.12);
  const auto v = strichartz::verdict(default_config(), pair26(), rows);
  EXPECT_EQ(v.overall, CheckStatus::pass);
  for (const auto& c : v.checks) EXPECT_EQ(c.status, CheckStatus::pass) << c.name;
  EXPECT_NE(find_check(v, "ratio_slope"), nullptr);
}

TEST(Verdict, DetectsEachFailureMode) {
  const auto e = strichartz::predicted_exponents(default_config(), pair26());
  {
    auto rows = synthetic_rows(e, 0.12);
    for (auto& r : rows) r.f_r.value *= std::pow(r.radius, 0.05);
    const auto v = strichartz::verdict(default_config(), pair26(), rows);
    EXPECT_EQ(find_check(v, "f_R_slope")->status, CheckStatus::fail);
    EXPECT_EQ(v.overall, CheckStatus::fail);
  }
  {
    auto rows = synthetic_rows(e, 0.01);
    const auto v = strichartz::verdict(default_config(), pair26(), rows);
    EXPECT_EQ(find_check(v, "ratio_slope")->status, CheckStatus::fail);
  }
  {
    auto rows = synthetic_rows(e, 0.12);
    std::swap(rows[2].ratio, rows[3].ratio);
    const auto v = strichartz::verdict(default_config(), pair26(), rows);
    EXPECT_EQ(find_check(v, "ratio_increasing")->status, CheckStatus::fail);
  }
  {
    auto rows = synthetic_rows(e, 0.12);
    for (auto& r : rows) r.forcing_bound_ratio = std::pow(r.radius, 0.1);
    const auto v = strichartz::verdict(default_config(), pair26(), rows);
    EXPECT_EQ(find_check(v, "F_R_bound_slope")->status, CheckStatus::fail);
  }
  {
    auto rows = synthetic_rows(e, 0.12);
    rows[5].converged = false;
    const auto v = strichartz::verdict(default_config(), pair26(), rows);
    EXPECT_EQ(find_check(v, "converged")->status, CheckStatus::fail);
  }
}

TEST(Verdict, GammaOutsideWindowMarksRatioNotApplicable) {
  const auto cfg = ProblemConfig::make(3, Rational(3, 2), Rational(3, 5));
  const auto e = strichartz::predicted_exponents(cfg, pair26());
  EXPECT_LE(e.delta.value.sign(), 0);
  const auto v = strichartz::verdict(cfg, pair26(), synthetic_rows(e, -0.3));
  EXPECT_EQ(find_check(v, "ratio_slope")->status, CheckStatus::not_applicable);
  EXPECT_EQ(find_check(v, "ratio_increasing")->status, CheckStatus::not_applicable);
  EXPECT_EQ(v.overall, CheckStatus::pass);
  EXPECT_THROW(strichartz::verdict(cfg, AdmissiblePair::make(Exponent::infinity(), Exponent(2), 3), {}),
               strichartz::InvalidArgument);
}

TEST(DefaultWorkers, ReadsEnvironment) {
  ::setenv("STRICHARTZ_WORKERS", "3", 1);
  EXPECT_EQ(strichartz::default_workers(), 3);
  ::setenv("STRICHARTZ_WORKERS", "bogus", 1);
  EXPECT_GE(strichartz::default_workers(), 1);
  ::unsetenv("STRICHARTZ_WORKERS");
  EXPECT_GE(strichartz::default_workers(), 1);
}

TEST(RunSweep, RejectsBadInput) {
  const std::vector<double> desc{64.0, 32.0}, small{2.0, 32.0};
  EXPECT_THROW(strichartz::run_sweep(default_config(), pair26(), desc), strichartz::InvalidArgument);
  EXPECT_THROW(strichartz::run_sweep(default_config(), pair26(), small), strichartz::InvalidArgument);
  EXPECT_THROW(
      strichartz::run_sweep(default_config(), AdmissiblePair::make(Exponent::infinity(), Exponent(2), 3), desc),
      strichartz::InvalidArgument);
}

TEST(RunSweep, InitialDatumSlopeStableAndCoefficientIndependent) {
  const auto grid = strichartz::geometric_grid(32.0, 4096.0, 8);
  const auto rows1 = strichartz::run_sweep(default_config(1.0), pair26(), grid, f_r_only());
  const auto rows2 = strichartz::run_sweep(default_config(2.0), pair26(), grid, f_r_only());
  ASSERT_EQ(rows1.size(), 8u);
  for (const auto& r : rows1) {
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(std::isnan(r.w_r.value));
    EXPECT_TRUE(std::isnan(r.ratio));
  }
  const double s1 = strichartz::fit_exponent(rows1, "f_R_norm").slope;
  const double s2 = strichartz::fit_exponent(rows2, "f_R_norm").slope;
  EXPECT_NEAR(s1, 1.15, 0.02);
  EXPECT_NEAR(s1, s2, 0.005);
  const std::span<const SweepRow> tail(rows1.begin() + 1, rows1.end());
  EXPECT_NEAR(strichartz::fit_exponent(tail, "f_R_norm").slope, s1, 0.005);
  const auto v = strichartz::verdict(default_config(), pair26(), rows1);
  EXPECT_EQ(find_check(v, "f_R_slope")->status, CheckStatus::pass);
  EXPECT_EQ(find_check(v, "ratio_slope")->status, CheckStatus::not_applicable);
}

TEST(RunSweep, RectangleModeMatchesClosedFormSlope) {
  const auto grid = strichartz::geometric_grid(32.0, 4096.0, 8);
  const auto rows = strichartz::run_sweep(default_config(), pair26(), grid, f_r_only(strichartz::CutoffMode::rectangle));
  std::vector<double> closed;
  for (double r : grid) closed.push_back(closed_form_rectangle_norm(r));
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_NEAR(rows[i].f_r.value / closed[i], 1.0, 1e-8);
  const double numeric = strichartz::fit_exponent(rows, "f_R_norm").slope;
  EXPECT_NEAR(numeric, strichartz::fit_power_law(grid, closed).slope, 1e-3);
  EXPECT_NEAR(numeric, 1.15, 0.005);
}

TEST(RunSweep, DeterministicAcrossWorkerCounts) {
  const std::vector<double> grid{16.0, 24.0, 40.0};
  strichartz::SweepOptions opts;
  opts.quad.radial_nodes = 24;
  opts.quad.z_nodes = 16;
  opts.quad.t_nodes = 16;
  opts.workers = 1;
  const auto a = strichartz::run_sweep(default_config(), pair26(), grid, opts);
  opts.workers = 3;
  const auto b = strichartz::run_sweep(default_config(), pair26(), grid, opts);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].radius, grid[i]);
    for (const auto& col : strichartz::sweep_columns())
      EXPECT_EQ(strichartz::column_value(a[i], col), strichartz::column_value(b[i], col)) << col;
  }
}

TEST(RunSweep, RowsAreInternallyConsistent) {
  const std::vector<double> grid{32.0};
  const auto rows = strichartz::run_sweep(default_config(), pair26(), grid);
  const SweepRow& r = rows.front();
  EXPECT_TRUE(r.converged);
  EXPECT_DOUBLE_EQ(r.ratio, r.w_r.value / (r.f_r.value + r.forcing_tilde.value));
  const double beta = default_config().beta_value().to_double();
  const double horizon = std::pow(32.0, beta);
  EXPECT_NEAR(r.w_r.value / r.w_r_fixed_t.value, std::sqrt(horizon), 1e-12 * std::sqrt(horizon));
  const double bound = std::sqrt(horizon) * std::pow(32.0, 4.6 / 12.0) *
                       std::max(std::pow(32.0, -1.6), horizon * horizon * std::pow(32.0, -5.0));
  EXPECT_NEAR(r.forcing_bound_ratio, r.forcing.value / bound, 1e-12 * r.forcing_bound_ratio);
}

TEST(RunSweep, NodeDoublingChangesRatioBelowTolerance) {
  const std::vector<double> grid{32.0, 256.0};
  strichartz::SweepOptions opts;
  const auto base = strichartz::run_sweep(default_config(), pair26(), grid, opts);
  opts.quad = opts.quad.refined();
  const auto fine = strichartz::run_sweep(default_config(), pair26(), grid, opts);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(base[i].ratio / fine[i].ratio, 1.0, 1e-5) << grid[i];
}

TEST(Verdict, TooFewConvergedRowsFailsWithoutThrowing) {
  const auto e = strichartz::predicted_exponents(default_config(), pair26());
  auto rows = synthetic_rows(e, 0.12);
  for (std::size_t i = 0; i < 4; ++i) rows[i].converged = false;
  const auto v = strichartz::verdict(default_config(), pair26(), rows);
  EXPECT_EQ(v.overall, CheckStatus::fail);
  EXPECT_EQ(find_check(v, "f_R_slope")->status, CheckStatus::fail);
  EXPECT_EQ(find_check(v, "converged")->measured, 4.0);
}
