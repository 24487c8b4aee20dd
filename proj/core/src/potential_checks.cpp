#include "strichartz/potential_checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "strichartz/error.hpp"
#include "strichartz/scaling.hpp"

namespace strichartz {
namespace {

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

double ratio(double num, double den) { return den > 0.0 ? num / den : num; }

Eigen::VectorXd cone_point(int dz, double norm) {
  Eigen::VectorXd z = Eigen::VectorXd::Constant(dz, 1.0);
  return z * (norm / z.norm());
}

std::vector<Eigen::VectorXd> directions(int dy, int angles) {
  std::vector<Eigen::VectorXd> out;
  for (int j = 0; j < angles; ++j) {
    const double th = 2.0 * std::numbers::pi * j / angles;
    Eigen::VectorXd d = Eigen::VectorXd::Zero(dy);
    d(0) = std::cos(th);
    d(1) = std::sin(th);
    out.push_back(d);
  }
  out.push_back(Eigen::VectorXd::Constant(dy, 1.0 / std::sqrt(static_cast<double>(dy))));
  return out;
}

struct GridSup {
  double r1 = 0.0;
  double r2 = 0.0;
};

GridSup grid_sup(const PotentialSpec& spec, double c, int radii, int angles) {
  const int dy = spec.matrix.dim_y();
  const int dz = spec.matrix.dim_z();
  GridSup sup;
  for (double zn : {1.0, 2.0, 4.0}) {
    const Eigen::VectorXd z = cone_point(dz, zn);
    for (int i = 1; i <= radii; ++i) {
      const double wn = 0.5 * i / radii;
      for (const Eigen::VectorXd& d : directions(dy, angles)) {
        const RemainderSample s = taylor_remainders(d * (wn * zn), z, spec, c);
        sup.r1 = std::max(sup.r1, s.bound_ratio_r1);
        sup.r2 = std::max(sup.r2, s.bound_ratio_r2);
      }
    }
  }
  return sup;
}

}  // namespace

std::vector<Eigen::VectorXd> sample_points(int n, int count, std::uint64_t seed) {
  if (n < 1 || count < 0) throw InvalidArgument("sample_points: invalid dimension or count");
  std::mt19937_64 gen(seed);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = 4.0 * unit_uniform(gen) - 2.0;
    if (x.norm() >= 0.1) out.push_back(std::move(x));
  }
  return out;
}

std::vector<IdentityCheck> potential_identities(const PotentialSpec& spec, int samples, std::uint64_t seed,
                                                double tolerance) {
  if (samples < 1) throw InvalidArgument("need at least one sample point");
  const int n = spec.matrix.n;
  const int dz = spec.matrix.dim_z();
  const Eigen::MatrixXd& m = spec.matrix.m;
  IdentityCheck div{"div_a", samples, 0.0, tolerance};
  IdentityCheck tang{"b_tangential", samples, 0.0, tolerance};
  IdentityCheck anti{"b_antisymmetric", samples, 0.0, tolerance};
  IdentityCheck homog{"a_homogeneity", samples, 0.0, tolerance};
  IdentityCheck a_zero{"a_vanishes_on_z_subspace", samples, 0.0, tolerance};
  IdentityCheck da_m{"da_equals_m_on_z_subspace", samples, 0.0, tolerance};

  std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ULL);
  for (const Eigen::VectorXd& x : sample_points(n, samples, seed)) {
    const Eigen::MatrixXd da = eval_da(x, spec);
    const Eigen::MatrixXd b = eval_b(x, spec);
    div.max_error = std::max(div.max_error, ratio(std::abs(divergence_a(x, spec)), da.norm()));
    tang.max_error = std::max(tang.max_error, ratio(tangential_b(x, spec).norm(), b.norm()));
    anti.max_error = std::max(anti.max_error, ratio((b + b.transpose()).norm(), b.norm()));

    const double s = std::exp(std::log(0.1) + unit_uniform(gen) * std::log(100.0));
    if (!spec.regularized) {
      const Eigen::VectorXd expected = std::pow(s, 1.0 - spec.alpha) * eval_a(x, spec);
      homog.max_error =
          std::max(homog.max_error, ratio((eval_a(s * x, spec) - expected).norm(), expected.norm()));
    }

    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    p.tail(dz) = x.tail(dz);
    if (p.norm() < 1e-3) p(n - 1) = 1.0;
    const double pn = p.norm();
    const double weight = spec.regularized ? std::pow(1.0 + pn * pn, -0.5 * spec.alpha) : std::pow(pn, -spec.alpha);
    a_zero.max_error = std::max(a_zero.max_error, ratio(eval_a(p, spec).norm(), weight * pn));
    da_m.max_error = std::max(da_m.max_error, ratio((eval_da(p, spec) - weight * m).norm(), weight * m.norm()));
  }
  std::vector<IdentityCheck> out{div, tang, anti};
  if (!spec.regularized) out.push_back(homog);
  out.push_back(a_zero);
  out.push_back(da_m);
  return out;
}

RemainderStudy remainder_study(const PotentialSpec& spec, double c) {
  RemainderStudy st;
  st.c = c;
  const GridSup coarse = grid_sup(spec, c, 16, 8);
  const GridSup fine = grid_sup(spec, c, 32, 16);
  st.r1_bound_coarse = coarse.r1;
  st.r1_bound_fine = fine.r1;
  st.r1_bounded = std::isfinite(fine.r1) && std::abs(fine.r1 - coarse.r1) <= 0.01 * fine.r1;
  st.r2_bound_sup = coarse.r2;

  const int dy = spec.matrix.dim_y();
  const int dz = spec.matrix.dim_z();
  const Eigen::VectorXd z = cone_point(dz, 1.0);
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(dy, 0);
  std::vector<double> w, r2;
  constexpr int kPoints = 21;
  for (int i = 0; i < kPoints; ++i) {
    const double wn = std::pow(10.0, -3.0 + 2.0 * i / (kPoints - 1));
    w.push_back(wn);
    r2.push_back(std::abs(taylor_remainders(e1 * wn, z, spec, c).r2));
  }
  st.r2_small_w_exponent = fit_power_law(w, r2).slope;
  st.r2_cubic_bound = st.r2_small_w_exponent >= 3.0;
  return st;
}

}  // namespace strichartz
