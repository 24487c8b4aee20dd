#include "strichartz/errata.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/SVD>

#include "strichartz/error.hpp"
#include "strichartz/quasimode.hpp"
#include "strichartz/scaling.hpp"

namespace strichartz {
namespace {

struct Sample {
  double t = 0.0;
  double r = 0.0;
  std::array<double, 2> z{};
  std::vector<PrintedTerm> terms;
  std::complex<double> direct;
  double scale = 0.0;
};

}  // namespace

std::vector<std::string> ErrataReport::discrepant_terms() const {
  std::vector<std::string> out;
  for (const ErrataTerm& t : terms)
    if (t.discrepant) out.push_back(t.name);
  return out;
}

ErrataReport residual_errata(const ProblemConfig& config, const ErrataOptions& options) {
  config.validate();
  if (options.samples < 1) throw InvalidArgument("errata: need at least one sample");
  if (!(options.r_min > 2.0) || options.r_max < options.r_min) throw InvalidArgument("errata: invalid radius range");
  const int dz = config.dim_z();
  const double beta = config.beta_value().to_double();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Sample> samples;
  samples.reserve(options.samples);
  std::vector<double> printed;
  for (int s = 0; s < options.samples; ++s) {
    const double radius = options.r_min + (options.r_max - options.r_min) * unit(rng);
    const QuasiModeField field(config, radius);
    const double width = field.cutoff_width();
    Sample smp;
    for (int i = 0; i < dz; ++i) smp.z[i] = radius + width * (2.0 * unit(rng) - 1.0);
    const double rho = dz == 1 ? smp.z[0] : std::hypot(smp.z[0], smp.z[1]);
    smp.r = rho * unit(rng);
    smp.t = std::pow(radius, beta) * unit(rng);
    const std::span<const double> z(smp.z.data(), dz);
    smp.terms = field.printed_terms(smp.t, smp.r, z);
    smp.direct = field.eval_reduced(FieldKind::forcing, smp.t, smp.r, z);
    for (const PrintedTerm& term : smp.terms) smp.scale += std::abs(term.coefficient * term.basis);
    smp.scale += std::abs(smp.direct);
    if (printed.empty()) {
      for (const PrintedTerm& term : smp.terms) printed.push_back(term.coefficient);
      for (const auto& [name, delta] : options.perturb) {
        const auto it = std::find_if(smp.terms.begin(), smp.terms.end(), [&](const PrintedTerm& t) { return t.name == name; });
        if (it == smp.terms.end()) throw InvalidArgument("errata: unknown term '" + name + "'");
        printed[it - smp.terms.begin()] += delta;
      }
    }
    samples.push_back(std::move(smp));
  }

  const std::size_t nterms = printed.size();
  const auto relative_misfit = [&](const std::vector<double>& coefs) {
    double worst = 0.0;
    for (const Sample& smp : samples) {
      if (smp.scale == 0.0) continue;
      std::complex<double> sum = 0.0;
      for (std::size_t j = 0; j < nterms; ++j) sum += coefs[j] * smp.terms[j].basis;
      worst = std::max(worst, std::abs(smp.direct - sum) / smp.scale);
    }
    return worst;
  };

  // Least squares on real and imaginary parts, rows scaled by the sample magnitude and columns normalized.
  Eigen::MatrixXd a(2 * samples.size(), nterms);
  Eigen::VectorXd b(2 * samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = samples[i].scale > 0.0 ? 1.0 / samples[i].scale : 0.0;
    for (std::size_t j = 0; j < nterms; ++j) {
      a(2 * i, j) = w * samples[i].terms[j].basis.real();
      a(2 * i + 1, j) = w * samples[i].terms[j].basis.imag();
    }
    b(2 * i) = w * samples[i].direct.real();
    b(2 * i + 1) = w * samples[i].direct.imag();
  }
  Eigen::VectorXd norms = a.colwise().norm();
  for (std::size_t j = 0; j < nterms; ++j)
    if (norms(j) == 0.0) norms(j) = 1.0;
  const Eigen::MatrixXd an = a * norms.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(an, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-12);
  const Eigen::VectorXd fitted = svd.solve(b).cwiseQuotient(norms);

  ErrataReport report;
  report.samples = options.samples;
  report.seed = options.seed;
  report.tolerance = options.tolerance;
  report.fit_rank = static_cast<int>(svd.rank());
  const Eigen::VectorXd& sv = svd.singularValues();
  report.fit_condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  report.max_relative_printed = relative_misfit(printed);

  std::vector<double> corrected = printed;
  for (std::size_t j = 0; j < nterms; ++j) {
    ErrataTerm term;
    term.name = samples.front().terms[j].name;
    term.printed = printed[j];
    term.fitted = fitted(j);
    for (const Sample& smp : samples) {
      if (smp.scale == 0.0) continue;
      term.max_relative_effect =
          std::max(term.max_relative_effect, std::abs((term.fitted - term.printed) * smp.terms[j].basis) / smp.scale);
    }
    term.discrepant = std::abs(term.fitted - term.printed) > options.coefficient_tolerance * std::max(1.0, std::abs(term.printed)) &&
                      term.max_relative_effect > options.tolerance;
    if (term.discrepant) corrected[j] = term.fitted;
    report.terms.push_back(term);
  }
  report.max_relative_corrected = relative_misfit(corrected);

  // Plateau check: G_R must vanish where every cutoff derivative does.
  std::mt19937_64 plateau_rng(options.seed + 1);
  for (int s = 0; s < std::max(10, options.samples / 10); ++s) {
    const double radius = options.r_min + (options.r_max - options.r_min) * unit(plateau_rng);
    const QuasiModeField field(config, radius);
    std::array<double, 2> zc{};
    for (int i = 0; i < dz; ++i) zc[i] = radius + 0.5 * field.cutoff_width() * (2.0 * unit(plateau_rng) - 1.0);
    const double rho = dz == 1 ? zc[0] : std::hypot(zc[0], zc[1]);
    const double r = rho * std::sqrt(0.5) * unit(plateau_rng);
    const double t = std::pow(radius, beta) * unit(plateau_rng);
    const std::span<const double> z(zc.data(), dz);
    const std::complex<double> g = field.eval_reduced(FieldKind::g_r_printed, t, r, z);
    const std::complex<double> f = field.eval_reduced(FieldKind::forcing, t, r, z);
    const double scale = std::abs(f) + std::abs(field.eval_reduced(FieldKind::f_printed, t, r, z));
    if (scale > 0.0) report.max_relative_plateau_g = std::max(report.max_relative_plateau_g, std::abs(g) / scale);
  }
  return report;
}

FdConvergence fd_convergence(const ProblemConfig& config, double radius, int points, std::uint64_t seed,
                             int levels) {
  if (points < 1) throw InvalidArgument("fd_convergence: need at least one point");
  const QuasiModeField field(config, radius);
  const int dy = config.dim_y();
  const int dz = config.dim_z();
  const double width = field.cutoff_width();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  struct Point {
    double t;
    std::vector<double> y;
    std::array<double, 2> z;
    std::complex<double> direct;
  };
  std::vector<Point> pts;
  double scale = 0.0;
  double min_rho = radius;
  for (int p = 0; p < points; ++p) {
    Point pt{unit(rng), std::vector<double>(dy), {}, {}};
    for (int i = 0; i < dz; ++i) pt.z[i] = radius + 0.95 * width * (2.0 * unit(rng) - 1.0);
    const double rho = dz == 1 ? pt.z[0] : std::hypot(pt.z[0], pt.z[1]);
    min_rho = std::min(min_rho, rho);
    Eigen::VectorXd dir(dy);
    for (int i = 0; i < dy; ++i) dir(i) = 2.0 * unit(rng) - 1.0;
    dir *= 0.95 * rho * unit(rng) / std::max(dir.norm(), 1e-12);
    for (int i = 0; i < dy; ++i) pt.y[i] = dir(i);
    pt.direct = field.eval_f_direct(pt.t, pt.y, std::span<const double>(pt.z.data(), dz));
    scale = std::max(scale, std::abs(pt.direct));
    pts.push_back(std::move(pt));
  }
  FdConvergence out;
  out.radius = radius;
  out.points = points;
  const double h0 = 0.04 * std::min(width, min_rho);
  for (double h : {h0, 0.5 * h0, 0.25 * h0}) {
    double worst = 0.0;
    for (const Point& pt : pts) {
      const std::complex<double> fd = field.eval_f_fd(pt.t, pt.y, std::span<const double>(pt.z.data(), dz), h, levels);
      worst = std::max(worst, std::abs(fd - pt.direct) / scale);
    }
    out.steps.push_back(h);
    out.max_error.push_back(worst);
  }
  out.observed_order = fit_power_law(out.steps, out.max_error).slope;
  return out;
}

}  // namespace strichartz
