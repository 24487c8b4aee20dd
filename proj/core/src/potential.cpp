#include "strichartz/potential.hpp"

#include <cmath>
#include <string>

#include "strichartz/error.hpp"

namespace strichartz {
namespace {

void check_point(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  if (x.size() != spec.matrix.n) {
    throw InvalidArgument("point has dimension " + std::to_string(x.size()) + ", expected " +
                          std::to_string(spec.matrix.n));
  }
  if (!spec.regularized && x.squaredNorm() == 0.0) {
    throw SingularityError("potential is singular at the origin");
  }
}

// rho and the scalar factor s with grad rho = s * x.
std::pair<double, double> weight(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  const double r2 = x.squaredNorm();
  const double base = spec.regularized ? 1.0 + r2 : r2;
  const double rho = std::pow(base, -0.5 * spec.alpha);
  return {rho, -spec.alpha * rho / base};
}

}  // namespace

Eigen::MatrixXd build_omega(int k) {
  if (k < 1) throw InvalidArgument("build_omega: block count must be at least 1");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  for (int b = 0; b < k; ++b) {
    omega(2 * b, 2 * b + 1) = 1.0;
    omega(2 * b + 1, 2 * b) = -1.0;
  }
  return omega;
}

MatrixSpec build_m(int n) {
  if (n < 3) throw InvalidArgument("build_m: dimension must be at least 3, got " + std::to_string(n));
  MatrixSpec spec;
  spec.n = n;
  spec.parity = n % 2 == 1 ? Parity::odd : Parity::even;
  spec.k = spec.parity == Parity::odd ? (n - 1) / 2 : (n - 2) / 2;
  spec.omega = build_omega(spec.k);
  spec.m = Eigen::MatrixXd::Zero(n, n);
  spec.m.topLeftCorner(2 * spec.k, 2 * spec.k) = spec.omega;
  return spec;
}

PotentialSpec PotentialSpec::make(int n, double alpha, bool regularized) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw InvalidArgument("alpha must lie in (1, 2)");
  return PotentialSpec{build_m(n), alpha, regularized};
}

Eigen::VectorXd eval_a(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  check_point(x, spec);
  return weight(x, spec).first * (spec.matrix.m * x);
}

Eigen::MatrixXd eval_da(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  check_point(x, spec);
  const auto [rho, s] = weight(x, spec);
  const Eigen::VectorXd mx = spec.matrix.m * x;
  return rho * spec.matrix.m + s * mx * x.transpose();
}

Eigen::MatrixXd eval_b(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  const Eigen::MatrixXd da = eval_da(x, spec);
  return da - da.transpose();
}

Eigen::VectorXd tangential_b(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  const Eigen::MatrixXd b = eval_b(x, spec);
  const double norm = x.norm();
  if (norm == 0.0) throw SingularityError("tangential component undefined at the origin");
  return (x.transpose() * b).transpose() / norm;
}

double divergence_a(const Eigen::Ref<const Eigen::VectorXd>& x, const PotentialSpec& spec) {
  check_point(x, spec);
  const auto [rho, s] = weight(x, spec);
  return rho * spec.matrix.m.trace() + s * x.dot(spec.matrix.m * x);
}

RemainderSample taylor_remainders(const Eigen::Ref<const Eigen::VectorXd>& y,
                                  const Eigen::Ref<const Eigen::VectorXd>& z, const PotentialSpec& spec,
                                  double c) {
  const MatrixSpec& ms = spec.matrix;
  if (y.size() != ms.dim_y() || z.size() != ms.dim_z()) {
    throw InvalidArgument("taylor_remainders: y/z dimensions do not match the potential");
  }
  const double zn = z.norm();
  if (ms.parity == Parity::odd && !(z(0) > 0.0)) throw InvalidArgument("taylor_remainders: z must be positive");
  if (ms.parity == Parity::even && !(z.minCoeff() > 0.0)) {
    throw InvalidArgument("taylor_remainders: z must lie in the positive quadrant");
  }
  const double yn = y.norm();
  if (!(yn < zn)) throw InvalidArgument("taylor_remainders: requires |y| < |z|");

  RemainderSample out;
  out.y = y;
  out.z = z;
  const Eigen::VectorXd w = y / zn;
  const double w2 = w.squaredNorm();
  Eigen::VectorXd mw = Eigen::VectorXd::Zero(ms.n);
  mw.head(ms.dim_y()) = ms.omega * w;

  if (spec.regularized) {
    Eigen::VectorXd x(ms.n);
    x << y, z;
    Eigen::VectorXd ly = Eigen::VectorXd::Zero(ms.n);
    ly.head(ms.dim_y()) = ms.omega * y;
    const double za = std::pow(zn, -spec.alpha);
    out.r1 = std::pow(zn, spec.alpha - 1.0) * (eval_a(x, spec) - za * ly);
    out.r2 = std::pow(zn, 2.0 * spec.alpha - 2.0) * (eval_a(x, spec).squaredNorm() - c * y.squaredNorm() * za * za);
  } else {
    // (1+|w|^2)^{-a} - 1 via expm1/log1p to keep small-w accuracy.
    const double f1 = std::expm1(-0.5 * spec.alpha * std::log1p(w2));
    const double f2 = std::expm1(-spec.alpha * std::log1p(w2));
    out.r1 = f1 * mw;
    out.r2 = w2 * (f2 + 1.0 - c);
  }
  if (yn > 0.0) {
    out.bound_ratio_r1 = out.r1.norm() / w2;
    out.bound_ratio_r2 = std::abs(out.r2) / (w2 * std::sqrt(w2));
  }
  return out;
}

}  // namespace strichartz
