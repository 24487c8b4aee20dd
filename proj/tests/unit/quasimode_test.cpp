#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "strichartz/bump.hpp"
#include "strichartz/error.hpp"
#include "strichartz/quasimode.hpp"

using strichartz::FieldKind;
using strichartz::ProblemConfig;
using strichartz::QuasiModeField;
using strichartz::Rational;
using cplx = std::complex<double>;

namespace {

ProblemConfig odd_config(double c = 1.0) { return ProblemConfig::make(3, Rational(3, 2), Rational(4, 5), c); }
ProblemConfig even_config(double c = 1.0) { return ProblemConfig::make(4, Rational(3, 2), Rational(4, 5), c); }

struct Point {
  std::vector<double> y;
  std::vector<double> z;
  double t;
};

// Uniform samples of the support {|y| < |z|} x {|z_i - R| < R^gamma} x (0, 1).
std::vector<Point> support_points(const QuasiModeField& f, int count, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ut(0.0, 1.0);
  const auto& cfg = f.config();
  std::vector<Point> out;
  while (static_cast<int>(out.size()) < count) {
    Point p;
    double zn2 = 0.0;
    for (int i = 0; i < cfg.dim_z(); ++i) {
      p.z.push_back(f.radius() + 0.98 * f.cutoff_width() * u(gen));
      zn2 += p.z.back() * p.z.back();
    }
    double yn2 = 0.0;
    for (int i = 0; i < cfg.dim_y(); ++i) {
      p.y.push_back(std::sqrt(zn2) * u(gen));
      yn2 += p.y.back() * p.y.back();
    }
    if (yn2 >= 0.98 * zn2) continue;
    p.t = ut(gen);
    out.push_back(p);
  }
  return out;
}

double cutoff_product(const QuasiModeField& f, const Point& p) {
  double zn2 = 0.0, yn2 = 0.0, prod = 1.0;
  for (double z : p.z) {
    zn2 += z * z;
    prod *= strichartz::bump((z - f.radius()) / f.cutoff_width());
  }
  for (double y : p.y) yn2 += y * y;
  return prod * strichartz::bump(yn2 / zn2);
}

}  // namespace

TEST(ProblemConfig, DerivedQuantities) {
  const auto odd = odd_config();
  EXPECT_EQ(odd.dim_y(), 2);
  EXPECT_EQ(odd.dim_z(), 1);
  EXPECT_EQ(odd.beta_threshold(), Rational(23, 15));
  EXPECT_EQ(odd.beta_value(), Rational(23, 15) * Rational(51, 50));
  const auto even = even_config();
  EXPECT_EQ(even.dim_y(), 2);
  EXPECT_EQ(even.dim_z(), 2);
  EXPECT_EQ(even.beta_threshold(), Rational(31, 20));
  EXPECT_THROW(ProblemConfig::make(2, Rational(3, 2), Rational(4, 5)), strichartz::InvalidArgument);
  EXPECT_THROW(ProblemConfig::make(3, Rational(2), Rational(4, 5)), strichartz::InvalidArgument);
  EXPECT_THROW(ProblemConfig::make(3, Rational(3, 2), Rational(1, 2)), strichartz::InvalidArgument);
  EXPECT_THROW(ProblemConfig::make(3, Rational(3, 2), Rational(4, 5), 1.0, Rational(3, 2)),
               strichartz::InvalidArgument);
}

TEST(QuasiModeField, RejectsSmallRadiusAndNonRadialProfile) {
  EXPECT_THROW(QuasiModeField(odd_config(), 2.0), strichartz::InvalidArgument);
  auto cfg = odd_config();
  cfg.eigen.radial = false;
  EXPECT_THROW(QuasiModeField(cfg, 16.0), strichartz::InvalidArgument);
  const QuasiModeField f(odd_config(), 16.0);
  const std::vector<double> y{0.1, 0.2}, z0{0.0}, zbad{1.0, 2.0};
  EXPECT_THROW((void)f.eval_omega(y, z0), strichartz::SingularityError);
  EXPECT_THROW((void)f.eval_omega(y, zbad), strichartz::InvalidArgument);
}

TEST(EvalOmega, Examples) {
  const QuasiModeField f(odd_config(2.0), 16.0);
  const std::vector<double> y0{0.0, 0.0}, y1{1.0, 0.0}, y2{0.3, -0.4}, z1{1.0}, z4{4.0};
  EXPECT_DOUBLE_EQ(f.eval_omega(y0, z4), 1.0);
  EXPECT_DOUBLE_EQ(f.eval_omega(y2, z1), std::exp(-0.25 / std::sqrt(2.0)));
  EXPECT_NEAR(f.eval_omega(y1, z4), 0.915405, 1e-6);
  EXPECT_NEAR(f.eval_omega(y1, z4), std::exp(-std::pow(4.0, -1.5) / std::sqrt(2.0)), 1e-15);
}

TEST(EvalOmegaProperty, SelfSimilarAlongTheCone) {
  const QuasiModeField f(odd_config(), 16.0);
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double s = u(gen);
    const std::vector<double> y{u(gen) - 1.5, u(gen) - 1.5}, z{u(gen)};
    const double k = std::pow(s, 0.75);
    const std::vector<double> ys{k * y[0], k * y[1]}, zs{s * z[0]};
    EXPECT_NEAR(f.eval_omega(ys, zs), f.eval_omega(y, z), 1e-14);
  }
}

TEST(EvalW, PhaseIsUnimodularAndPeriodic) {
  const QuasiModeField f(odd_config(2.0), 16.0);
  const std::vector<double> y{0.7, 0.2}, z{3.0};
  const double omega = f.eval_omega(y, z);
  EXPECT_EQ(f.eval_w(0.0, y, z), cplx(omega));
  for (double t : {0.1, 1.0, 7.3}) EXPECT_NEAR(std::abs(f.eval_w(t, y, z)), omega, 1e-15);
  const double period = 2.0 * std::numbers::pi * std::pow(3.0, 1.5) / f.lambda();
  EXPECT_NEAR(std::abs(f.eval_w(period, y, z) - omega), 0.0, 1e-13);
  EXPECT_TRUE(strichartz::is_unimodular_in_time(FieldKind::w_r));
  EXPECT_FALSE(strichartz::is_unimodular_in_time(FieldKind::forcing));
}

TEST(EvalWR, SupportAndCutoffProductOracle) {
  for (const auto& cfg : {odd_config(), even_config()}) {
    const QuasiModeField f(cfg, 40.0);
    for (const Point& p : support_points(f, 200, 3)) {
      const cplx expected = f.eval_w(p.t, p.y, p.z) * cutoff_product(f, p);
      EXPECT_NEAR(std::abs(f.eval_w_r(p.t, p.y, p.z) - expected), 0.0, 1e-14);
    }
    std::vector<double> z(cfg.dim_z(), 40.0), y(cfg.dim_y(), 0.0);
    z[0] = 40.0 + 1.01 * f.cutoff_width();
    EXPECT_EQ(f.eval_w_r(0.3, y, z), cplx(0.0));
    std::fill(z.begin(), z.end(), 40.0);
    y[0] = 60.0;
    EXPECT_EQ(f.eval_w_r(0.3, y, z), cplx(0.0));
  }
}

TEST(EvalWR, EqualsWOnPlateauAndInitialDatum) {
  const QuasiModeField f(odd_config(), 40.0);
  const std::vector<double> y{5.0, -3.0}, z{40.0 + 0.4 * f.cutoff_width()};
  EXPECT_EQ(f.eval_w_r(0.6, y, z), f.eval_w(0.6, y, z));
  for (const Point& p : support_points(f, 50, 8)) {
    EXPECT_EQ(cplx(f.eval_f_r(p.y, p.z)), f.eval_w_r(0.0, p.y, p.z));
  }
}

TEST(EvalWRProperty, VanishesSmoothlyAtSupportBoundary) {
  const QuasiModeField f(odd_config(), 40.0);
  const double w = f.cutoff_width();
  const std::vector<double> y{1.0, 1.0};
  for (double eps : {1e-2, 3e-3}) {
    for (double side : {-1.0, 1.0}) {
      const std::vector<double> z{40.0 + side * w * (1.0 - eps)};
      EXPECT_LT(std::abs(f.eval_w_r(0.2, y, z)), 1e-20);
      EXPECT_LT(std::abs(f.eval_f_direct(0.2, y, z)), 1e-15);
      EXPECT_LT(std::abs(f.eval_g_r_printed(0.2, y, z)), 1e-15);
    }
  }
  const std::vector<double> z{40.0};
  const std::vector<double> y_edge{40.0 * std::sqrt(1.0 - 1e-3), 0.0};
  EXPECT_LT(std::abs(f.eval_w_r(0.2, y_edge, z)), 1e-20);
}

TEST(EvalFPrinted, TrivialAndInitialTimeStructure) {
  const QuasiModeField f(odd_config(), 16.0);
  const std::vector<double> y0{0.0, 0.0}, z{3.0};
  EXPECT_NEAR(std::abs(f.eval_f_printed(0.0, y0, z)), 0.0, 1e-16);
  const double a = 1.5;
  const auto& v = f.config().eigen.profile;
  for (double r : {0.3, 1.1, 2.5}) {
    const std::vector<double> y{r, 0.0};
    const double s = r / std::pow(3.0, 0.75);
    const double expected = -(v.g_term(s) * a * (a + 2.0) / 4.0 + a * a / 4.0 * v.h_term(s)) / 9.0;
    EXPECT_NEAR(f.eval_f_printed(0.0, y, z).real(), expected, 1e-15);
    EXPECT_EQ(f.eval_f_printed(0.0, y, z).imag(), 0.0);
  }
}

TEST(EvalGRPrinted, VanishesOnPlateaus) {
  for (const auto& cfg : {odd_config(), even_config()}) {
    const QuasiModeField f(cfg, 64.0);
    std::vector<double> z(cfg.dim_z(), 64.0 + 0.3 * f.cutoff_width());
    const std::vector<double> y{6.0, -2.0};
    EXPECT_EQ(f.eval_g_r_printed(0.4, y, z), cplx(0.0));
  }
}

TEST(EvalFDirect, ZeroAtOriginOfProfileAtInitialTime) {
  const QuasiModeField f(odd_config(), 16.0);
  const std::vector<double> y0{0.0, 0.0}, z{16.0};
  EXPECT_NEAR(std::abs(f.eval_f_direct(0.0, y0, z)), 0.0, 1e-15);
}

TEST(EvalFDirect, MatchesPrintedOnPlateauOddCase) {
  const QuasiModeField f(odd_config(), 64.0);
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ut(0.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const std::vector<double> z{64.0 + 0.45 * f.cutoff_width() * u(gen)};
    const std::vector<double> y{0.5 * z[0] * u(gen), 0.5 * z[0] * u(gen)};
    const double t = ut(gen);
    const cplx direct = f.eval_f_direct(t, y, z);
    const cplx printed = f.eval_f_printed(t, y, z);
    EXPECT_LE(std::abs(direct - printed), 1e-10 * (std::abs(direct) + 1e-12));
    EXPECT_LE(std::abs(f.eval(FieldKind::forcing_printed, t, y, z) - printed), 1e-14 * std::abs(printed));
  }
}

TEST(EvalFFd, AgreesWithExactDifferentiation) {
  for (const auto& cfg : {odd_config(), even_config()}) {
    const QuasiModeField f(cfg, 8.0);
    for (const Point& p : support_points(f, 10, 21)) {
      const cplx exact = f.eval_f_direct(p.t, p.y, p.z);
      const cplx fd = f.eval_f_fd(p.t, p.y, p.z, 0.02, 2);
      EXPECT_LE(std::abs(fd - exact), 1e-6 * (1.0 + std::abs(exact)));
    }
  }
  const QuasiModeField f(odd_config(), 8.0);
  const std::vector<double> y{0.1, 0.1}, z{8.0};
  EXPECT_THROW((void)f.eval_f_fd(0.0, y, z, 0.01, 5), strichartz::InvalidArgument);
  EXPECT_THROW((void)f.eval_f_fd(0.0, y, z, 10.0, 1), strichartz::InvalidArgument);
}

TEST(EvalRestForcing, VanishesAtExpansionPointAndOutsideSupport) {
  const QuasiModeField f(odd_config(), 16.0);
  const std::vector<double> y0{0.0, 0.0}, z{16.0}, zout{30.0}, y{0.4, 0.2};
  EXPECT_EQ(f.eval_rest_forcing(0.3, y0, z), cplx(0.0));
  EXPECT_EQ(f.eval_rest_forcing(0.3, y, zout), cplx(0.0));
  EXPECT_NE(f.eval_rest_forcing(0.3, y, z), cplx(0.0));
}

TEST(QuasiModeProperty, LinearInTheProfile) {
  const double mu = -1.75;
  for (const auto& cfg : {odd_config(), even_config()}) {
    auto scaled = cfg;
    scaled.eigen.profile = cfg.eigen.profile.scaled(mu);
    const QuasiModeField f(cfg, 16.0), g(scaled, 16.0);
    for (const Point& p : support_points(f, 30, 13)) {
      for (FieldKind k : {FieldKind::w_r, FieldKind::f_r, FieldKind::forcing, FieldKind::rest,
                          FieldKind::forcing_tilde, FieldKind::forcing_printed}) {
        const cplx a = f.eval(k, p.t, p.y, p.z), b = g.eval(k, p.t, p.y, p.z);
        EXPECT_LE(std::abs(b - mu * a), 1e-13 * (std::abs(b) + 1e-300)) << strichartz::to_string(k);
      }
    }
  }
}

TEST(QuasiModeProperty, ReducedAndBatchedEvaluationAgree) {
  const QuasiModeField f(even_config(), 16.0);
  const auto pts = support_points(f, 20, 29);
  Eigen::MatrixXd x(4, static_cast<Eigen::Index>(pts.size()));
  std::vector<double> t(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    x.col(static_cast<Eigen::Index>(i)) << pts[i].y[0], pts[i].y[1], pts[i].z[0], pts[i].z[1];
    t[i] = pts[i].t;
  }
  std::vector<cplx> out(pts.size());
  f.eval_batch(FieldKind::forcing_tilde, t, x, out);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx full = f.eval(FieldKind::forcing_tilde, pts[i].t, pts[i].y, pts[i].z);
    EXPECT_LE(std::abs(out[i] - full), 1e-12 * (std::abs(full) + 1e-300));
    const double r = std::hypot(pts[i].y[0], pts[i].y[1]);
    const cplx red = f.eval_reduced(FieldKind::forcing, pts[i].t, r, pts[i].z);
    const cplx dir = f.eval_f_direct(pts[i].t, pts[i].y, pts[i].z);
    EXPECT_LE(std::abs(red - dir), 1e-12 * (std::abs(dir) + 1e-300));
  }
  std::vector<cplx> small(3);
  EXPECT_THROW(f.eval_batch(FieldKind::w_r, t, x, small), strichartz::InvalidArgument);
}

TEST(QuasiModeProperty, TimePolynomialReproducesFields) {
  for (const auto& cfg : {odd_config(), even_config()}) {
    const QuasiModeField f(cfg, 16.0);
    for (const Point& p : support_points(f, 10, 31)) {
      double r = 0.0;
      for (double y : p.y) r += y * y;
      r = std::sqrt(r);
      for (FieldKind k : {FieldKind::forcing, FieldKind::rest, FieldKind::w_r}) {
        const auto poly = f.time_polynomial(k, r, p.z, 5.0);
        for (double t : {0.0, 0.7, 2.9, 5.0}) {
          const cplx direct = f.eval_reduced(k, t, r, p.z);
          EXPECT_LE(std::abs(poly(t) - direct), 1e-10 * (std::abs(direct) + 1e-300)) << strichartz::to_string(k);
        }
      }
    }
  }
}

TEST(QuasiModeProperty, EvenParityUsesProductCutoff) {
  const QuasiModeField f(even_config(), 40.0);
  const double w = f.cutoff_width();
  const std::vector<double> y{2.0, 1.0};
  const std::vector<double> corner{40.0 + 0.75 * w, 40.0 - 0.75 * w};
  const double expected = strichartz::bump(0.75) * strichartz::bump(-0.75);
  EXPECT_NEAR(std::abs(f.eval_w_r(0.0, y, corner)), expected * f.eval_omega(y, corner), 1e-15);
}

TEST(FieldKind, NamesRoundTrip) {
  for (FieldKind k : {FieldKind::omega, FieldKind::w, FieldKind::w_r, FieldKind::f_r, FieldKind::f_printed,
                      FieldKind::g_r_printed, FieldKind::forcing_printed, FieldKind::forcing, FieldKind::rest,
                      FieldKind::forcing_tilde}) {
    EXPECT_EQ(strichartz::field_kind_from_string(strichartz::to_string(k)), k);
  }
  EXPECT_THROW(strichartz::field_kind_from_string("nope"), strichartz::InvalidArgument);
}

TEST(ScaledProfile, WeightTimesBase) {
  const strichartz::ScaledProfile p{[](double s) { return std::exp(-s); }, 3};
  const double s = 2.0 / std::pow(9.0, 0.75);
  EXPECT_NEAR(p(2.0, 9.0, 1.5), s * s * s * std::exp(-s), 1e-15);
  const strichartz::ScaledProfile flat{[](double) { return 2.0; }, 0};
  EXPECT_DOUBLE_EQ(flat(5.0, 3.0, 1.2), 2.0);
}
