#include "strichartz/landau.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/SparseCholesky>

#include "strichartz/error.hpp"
#include "strichartz/lanczos.hpp"
#include "strichartz/quadrature.hpp"

namespace strichartz {
namespace {

struct Stencil {
  std::vector<double> d2;  // offsets -w..w
  std::vector<double> d1;
  int width = 1;
};

Stencil central_stencil(int order) {
  switch (order) {
    case 2:
      return {{1.0, -2.0, 1.0}, {-0.5, 0.0, 0.5}, 1};
    case 4:
      return {{-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12}, {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12}, 2};
    case 6:
      return {{1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90},
              {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60},
              3};
    default:
      throw InvalidArgument("stencil order must be 2, 4 or 6, got " + std::to_string(order));
  }
}

// Cubic Lagrange weights for a point at fractional offset t in [0,1) from node 1 of nodes {0,1,2,3}.
std::array<double, 4> lagrange4(double t) {
  const double s = t + 1.0;
  return {-(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0, s * (s - 2.0) * (s - 3.0) / 2.0,
          -s * (s - 1.0) * (s - 3.0) / 2.0, s * (s - 1.0) * (s - 2.0) / 6.0};
}

std::complex<double> interpolate(const BlockGrid& grid, const Eigen::VectorXcd& vec, double x, double y) {
  const double h = grid.spacing();
  const double fx = (x + grid.half_width) / h - 1.0;
  const double fy = (y + grid.half_width) / h - 1.0;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const auto wx = lagrange4(fx - ix);
  const auto wy = lagrange4(fy - iy);
  std::complex<double> sum = 0.0;
  for (int b = 0; b < 4; ++b) {
    const int j = iy - 1 + b;
    if (j < 0 || j >= grid.points) continue;
    for (int a = 0; a < 4; ++a) {
      const int i = ix - 1 + a;
      if (i < 0 || i >= grid.points) continue;
      sum += wx[a] * wy[b] * vec(grid.index(i, j));
    }
  }
  return sum;
}

}  // namespace

void TwistedOscillator::validate() const {
  if (k < 1) throw InvalidArgument("block count k must be at least 1");
  if (c != 1.0 && c != 2.0) throw InvalidArgument("model coefficient c must be 1 or 2");
}

void BlockGrid::validate() const {
  if (points < 16) throw InvalidArgument("grid too coarse: need at least 16 points per direction");
  if (!(half_width > 0.0)) throw InvalidArgument("grid half-width must be positive");
  central_stencil(stencil_order);
}

double sphere_area(int d) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

RadialProfile RadialProfile::gaussian(double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("Gaussian scale must be positive");
  RadialProfile p;
  p.kind_ = Kind::gaussian;
  p.scale_ = scale;
  return p;
}

RadialProfile RadialProfile::from_samples(std::vector<double> samples, double r_max) {
  if (samples.size() < 4) throw InvalidArgument("radial profile needs at least 4 samples");
  if (!(r_max > 0.0)) throw InvalidArgument("radial profile range must be positive");
  RadialProfile p;
  p.kind_ = Kind::grid;
  p.r_max_ = r_max;
  const std::size_t n = samples.size();
  const double h = r_max / static_cast<double>(n - 1);
  // Clamped spline (zero slope at both ends) via the Thomas algorithm.
  std::vector<double> diag(n, 4.0), rhs(n), upper(n, 1.0), lower(n, 1.0);
  diag[0] = 2.0;
  diag[n - 1] = 2.0;
  rhs[0] = 6.0 / h * ((samples[1] - samples[0]) / h);
  rhs[n - 1] = 6.0 / h * (-(samples[n - 1] - samples[n - 2]) / h);
  for (std::size_t i = 1; i + 1 < n; ++i) rhs[i] = 6.0 / (h * h) * (samples[i + 1] - 2.0 * samples[i] + samples[i - 1]);
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> second(n);
  second[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) second[i] = (rhs[i] - upper[i] * second[i + 1]) / diag[i];
  p.samples_ = std::move(samples);
  p.second_ = std::move(second);
  return p;
}

double RadialProfile::support_radius() const {
  return kind_ == Kind::gaussian ? std::numeric_limits<double>::infinity() : r_max_;
}

RadialProfile RadialProfile::scaled(double mu) const {
  RadialProfile p = *this;
  p.amplitude_ *= mu;
  return p;
}

Derivs RadialProfile::derivs(double r) const {
  r = std::abs(r);
  if (kind_ == Kind::gaussian) {
    const double v = amplitude_ * std::exp(-r * r / (2.0 * scale_));
    return {v, -r / scale_ * v, (r * r / (scale_ * scale_) - 1.0 / scale_) * v};
  }
  if (r >= r_max_) return {};
  const std::size_t n = samples_.size();
  const double h = r_max_ / static_cast<double>(n - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(r / h), n - 2);
  const double a = (static_cast<double>(i + 1) * h - r) / h;
  const double b = 1.0 - a;
  const double y0 = samples_[i], y1 = samples_[i + 1];
  const double m0 = second_[i], m1 = second_[i + 1];
  const double v = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
  const double d1 = (y1 - y0) / h - (3.0 * a * a - 1.0) / 6.0 * h * m0 + (3.0 * b * b - 1.0) / 6.0 * h * m1;
  const double d2 = a * m0 + b * m1;
  return {amplitude_ * v, amplitude_ * d1, amplitude_ * d2};
}

double RadialProfile::d1_over_r(double r) const {
  r = std::abs(r);
  if (kind_ == Kind::gaussian) return -value(r) / scale_;
  if (r < 1e-8) return derivs(0.0).d2;
  return derivs(r).d1 / r;
}

SparseMatrixC assemble_block_operator(const TwistedOscillator& osc, const BlockGrid& grid) {
  osc.validate();
  grid.validate();
  const Stencil st = central_stencil(grid.stencil_order);
  const double h = grid.spacing();
  const int n = grid.points;
  const std::complex<double> two_i(0.0, 2.0);
  std::vector<Eigen::Triplet<std::complex<double>>> triplets;
  triplets.reserve(static_cast<std::size_t>(grid.size()) * (4 * st.width + 1));
  for (int j = 0; j < n; ++j) {
    const double y2 = grid.coordinate(j);
    for (int i = 0; i < n; ++i) {
      const double y1 = grid.coordinate(i);
      const Eigen::Index row = grid.index(i, j);
      double diag = osc.c * (y1 * y1 + y2 * y2) - 2.0 * st.d2[st.width] / (h * h);
      triplets.emplace_back(row, row, diag);
      for (int o = -st.width; o <= st.width; ++o) {
        if (o == 0) continue;
        const double d2 = st.d2[o + st.width] / (h * h);
        const double d1 = st.d1[o + st.width] / h;
        if (i + o >= 0 && i + o < n) {
          // -d^2/dy1^2 + 2i y2 d/dy1
          triplets.emplace_back(row, grid.index(i + o, j), -d2 + two_i * y2 * d1);
        }
        if (j + o >= 0 && j + o < n) {
          // -d^2/dy2^2 - 2i y1 d/dy2
          triplets.emplace_back(row, grid.index(i, j + o), -d2 - two_i * y1 * d1);
        }
      }
    }
  }
  SparseMatrixC mat(grid.size(), grid.size());
  mat.setFromTriplets(triplets.begin(), triplets.end());
  return mat;
}

Eigen::VectorXcd apply_t(const TwistedOscillator& osc, const BlockGrid& grid, const Eigen::VectorXcd& u) {
  grid.validate();
  if (u.size() != grid.size()) throw InvalidArgument("apply_t: field size does not match grid");
  return assemble_block_operator(osc, grid) * u;
}

Eigen::VectorXcd sample_on_grid(const BlockGrid& grid, const RadialProfile& profile) {
  grid.validate();
  Eigen::VectorXcd out(grid.size());
  for (int j = 0; j < grid.points; ++j) {
    for (int i = 0; i < grid.points; ++i) {
      out(grid.index(i, j)) = profile.value(std::hypot(grid.coordinate(i), grid.coordinate(j)));
    }
  }
  return out;
}

Eigenpair ground_state(int k, double c) {
  TwistedOscillator{k, c}.validate();
  Eigenpair pair;
  pair.lambda = 2.0 * k * std::sqrt(c);
  pair.profile = RadialProfile::gaussian(1.0 / std::sqrt(c));
  pair.closed_form = true;
  return pair;
}

Eigenpair extract_radial(const BlockGrid& grid, const Eigen::VectorXcd& vec, double lambda) {
  const double h = grid.spacing();
  const double r_max = grid.half_width - 3.0 * h;
  const int radial_points = 2 * static_cast<int>(r_max / h) + 1;
  constexpr int kAngles = 64;
  const std::complex<double> center = interpolate(grid, vec, 0.0, 0.0);
  Eigenpair pair;
  pair.lambda = lambda;
  pair.closed_form = false;
  const double peak = vec.cwiseAbs().maxCoeff();
  if (std::abs(center) < 1e-3 * peak) {
    // Vanishing centre value: not a radial ground-state-like profile.
    pair.radial = false;
    pair.angular_variance = 1.0;
    pair.profile = RadialProfile::gaussian(1.0);
    return pair;
  }
  const std::complex<double> normalizer = 1.0 / center;
  std::vector<double> samples(radial_points);
  double max_variance = 0.0;
  for (int s = 0; s < radial_points; ++s) {
    const double r = r_max * s / (radial_points - 1);
    std::complex<double> mean = 0.0;
    double abs_sum = 0.0, abs_sq = 0.0;
    for (int a = 0; a < kAngles; ++a) {
      const double theta = 2.0 * std::numbers::pi * a / kAngles;
      const std::complex<double> val = normalizer * interpolate(grid, vec, r * std::cos(theta), r * std::sin(theta));
      mean += val;
      abs_sum += std::abs(val);
      abs_sq += std::norm(val);
    }
    mean /= static_cast<double>(kAngles);
    const double abs_mean = abs_sum / kAngles;
    max_variance = std::max(max_variance, abs_sq / kAngles - abs_mean * abs_mean);
    samples[s] = mean.real();
  }
  pair.angular_variance = max_variance;
  pair.radial = max_variance <= 1e-6;
  samples.back() = 0.0;
  pair.profile = RadialProfile::from_samples(std::move(samples), r_max);
  return pair;
}

std::vector<Eigenpair> solve_eigen_numeric(const TwistedOscillator& osc, const BlockGrid& grid, int count,
                                           EigenSolveInfo* info) {
  osc.validate();
  grid.validate();
  if (count < 1) throw InvalidArgument("eigenvalue count must be positive");
  const SparseMatrixC mat = assemble_block_operator(osc, grid);
  constexpr double kShift = -1.0;
  SparseMatrixC shifted = mat;
  for (Eigen::Index i = 0; i < shifted.rows(); ++i) shifted.coeffRef(i, i) -= kShift;
  Eigen::SimplicialLLT<SparseMatrixC, Eigen::Lower, Eigen::AMDOrdering<int>> llt(shifted);
  if (llt.info() != Eigen::Success) throw ConvergenceError("shifted block operator is not positive definite");

  LanczosOptions opts;
  opts.count = count;
  const LanczosResult lr = lanczos_largest(
      [&](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) { out = llt.solve(in); }, mat.rows(), opts);

  std::vector<double> block(count);
  double max_imag = 0.0;
  for (int i = 0; i < count; ++i) {
    block[i] = 1.0 / lr.values(i) + kShift;
    const std::complex<double> rq = lr.vectors[i].dot(mat * lr.vectors[i]);
    max_imag = std::max(max_imag, std::abs(rq.imag()));
  }

  std::vector<Eigenpair> pairs;
  if (osc.k == 1) {
    for (int i = 0; i < count; ++i) pairs.push_back(extract_radial(grid, lr.vectors[i], block[i]));
  } else {
    std::vector<double> sums{0.0};
    for (int b = 0; b < osc.k; ++b) {
      std::vector<double> next;
      for (double s : sums)
        for (double e : block) next.push_back(s + e);
      std::sort(next.begin(), next.end());
      next.resize(std::min<std::size_t>(next.size(), count));
      sums = std::move(next);
    }
    for (double s : sums) {
      Eigenpair p;
      p.lambda = s;
      p.radial = false;
      pairs.push_back(p);
    }
  }

  if (info) {
    info->iterations = lr.iterations;
    info->residuals.assign(lr.residuals.data(), lr.residuals.data() + lr.residuals.size());
    info->max_rayleigh_imag = max_imag;
    info->block_values = block;
    info->block_vectors = lr.vectors;
  }
  return pairs;
}

std::vector<double> profile_norms(const Eigenpair& pair, int k, std::span<const double> exponents) {
  if (k < 1) throw InvalidArgument("block count must be at least 1");
  const int d = 2 * k;
  std::vector<double> out;
  for (double p : exponents) {
    if (!(p >= 1.0)) throw InvalidArgument("norm exponent must be at least 1");
    const RadialProfile& v = pair.profile;
    if (std::isinf(p)) {
      if (v.kind() == RadialProfile::Kind::gaussian) {
        out.push_back(std::abs(v.amplitude()));
      } else {
        double m = 0.0;
        for (double s : v.samples()) m = std::max(m, std::abs(s));
        out.push_back(m * std::abs(v.amplitude()));
      }
      continue;
    }
    const double r_cut = v.kind() == RadialProfile::Kind::gaussian
                             ? std::sqrt(2.0 * v.scale() * 60.0 / p)
                             : v.support_radius();
    std::vector<double> breaks(17);
    for (int i = 0; i <= 16; ++i) breaks[i] = r_cut * i / 16.0;
    const QuadratureRule rule = composite_gauss_legendre(32, breaks);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double r = rule.nodes[i];
      sum += rule.weights[i] * std::pow(std::abs(v.value(r)), p) * std::pow(r, d - 1);
    }
    out.push_back(std::pow(sphere_area(d) * sum, 1.0 / p));
  }
  return out;
}

}  // namespace strichartz
