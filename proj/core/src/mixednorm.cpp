#include "strichartz/mixednorm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "strichartz/error.hpp"
#include "strichartz/landau.hpp"
#include "strichartz/quadrature.hpp"

namespace strichartz {
namespace {

struct SpatialGrid {
  std::vector<double> weight;
  std::vector<double> r;
  std::vector<std::array<double, 2>> z;
  NodeCounts counts;
};

SpatialGrid build_grid(const QuasiModeField& mode, const QuadratureSpec& quad) {
  const ProblemConfig& cfg = mode.config();
  const double radius = mode.radius();
  const double width = mode.cutoff_width();
  const double alpha = cfg.alpha_value();
  const int dy = cfg.dim_y();
  const int dz = cfg.dim_z();
  const bool rect = mode.cutoff_mode() == CutoffMode::rectangle;

  std::vector<double> zbreaks;
  if (rect) {
    zbreaks = {radius - width, radius, radius + width};
  } else {
    zbreaks = {radius - width, radius - 0.5 * width, radius + 0.5 * width, radius + width};
  }
  const QuadratureRule zrule = composite_gauss_legendre(quad.z_nodes, zbreaks);
  const QuadratureRule& uref = gauss_legendre(quad.radial_nodes);
  const double area = sphere_area(dy);
  double tail = 0.0;
  if (rect) {
    const RadialProfile& prof = cfg.eigen.profile;
    tail = prof.kind() == RadialProfile::Kind::gaussian ? std::sqrt(2.0 * prof.scale() * 60.0) : prof.support_radius();
  }

  SpatialGrid grid;
  const std::size_t nz = zrule.size();
  const std::size_t zcount = dz == 1 ? nz : nz * nz;
  grid.weight.reserve(zcount * 2 * uref.size());
  grid.r.reserve(zcount * 2 * uref.size());
  grid.z.reserve(zcount * 2 * uref.size());
  for (std::size_t iz = 0; iz < zcount; ++iz) {
    std::array<double, 2> z{};
    double wz = 0.0;
    if (dz == 1) {
      z[0] = zrule.nodes[iz];
      wz = zrule.weights[iz];
    } else {
      z[0] = zrule.nodes[iz % nz];
      z[1] = zrule.nodes[iz / nz];
      wz = zrule.weights[iz % nz] * zrule.weights[iz / nz];
    }
    const double rho = dz == 1 ? std::abs(z[0]) : std::hypot(z[0], z[1]);
    const double scale = std::pow(rho, 0.5 * alpha);
    const double jac = std::pow(scale, dy);
    const double u_max = rect ? tail : std::pow(rho, 1.0 - 0.5 * alpha);
    const std::array<double, 3> ubreaks = {0.0, u_max / std::sqrt(2.0), u_max};
    for (int panel = 0; panel < 2; ++panel) {
      const double mid = 0.5 * (ubreaks[panel] + ubreaks[panel + 1]);
      const double half = 0.5 * (ubreaks[panel + 1] - ubreaks[panel]);
      for (std::size_t k = 0; k < uref.size(); ++k) {
        const double u = mid + half * uref.nodes[k];
        grid.weight.push_back(wz * half * uref.weights[k] * area * jac * std::pow(u, dy - 1));
        grid.r.push_back(scale * u);
        grid.z.push_back(z);
      }
    }
  }
  grid.counts.radial = 2 * quad.radial_nodes;
  grid.counts.z = static_cast<int>(nz);
  grid.counts.spatial_points = static_cast<long long>(grid.weight.size());
  return grid;
}

double lq_from_sum(double sum, const Exponent& q) { return std::pow(sum, 1.0 / q.to_double()); }

template <class Value>
double spatial_value(const SpatialGrid& grid, const Exponent& q, const Value& value_at) {
  if (q.is_infinite()) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.r.size(); ++i) m = std::max(m, std::abs(value_at(i)));
    return m;
  }
  const double qd = q.to_double();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.r.size(); ++i) {
    const double a = std::abs(value_at(i));
    if (a != 0.0) sum += grid.weight[i] * std::pow(a, qd);
  }
  return lq_from_sum(sum, q);
}

NormResult combine(double coarse, double fine, const NodeCounts& counts, const QuadratureSpec& quad) {
  NormResult res;
  res.value = fine;
  res.nodes_used = counts;
  if (fine == 0.0) {
    res.rel_error_estimate = coarse == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    res.rel_error_estimate = std::abs(fine - coarse) / std::abs(fine);
  }
  res.converged = res.rel_error_estimate <= quad.tolerance;
  return res;
}

/// |a|^q from |a|^2, exact for even integer q.
double power_from_square(double a2, double q) {
  if (q == 2.0) return a2;
  if (q == 4.0) return a2 * a2;
  if (q == 6.0) return a2 * a2 * a2;
  return std::pow(a2, 0.5 * q);
}

double time_integral(const SpatialGrid& grid, const std::vector<TimePolynomial>& polys, const Exponent& p,
                     const Exponent& q, const QuadratureRule& trule) {
  double acc = 0.0;
  for (std::size_t k = 0; k < trule.size(); ++k) {
    const double t = trule.nodes[k];
    double s = 0.0;
    if (q.is_infinite()) {
      for (std::size_t i = 0; i < polys.size(); ++i) s = std::max(s, std::abs(polys[i].envelope(t)));
    } else {
      const double qd = q.to_double();
      double sum = 0.0;
      for (std::size_t i = 0; i < polys.size(); ++i) {
        const double a2 = std::norm(polys[i].envelope(t));
        if (a2 != 0.0) sum += grid.weight[i] * power_from_square(a2, qd);
      }
      s = lq_from_sum(sum, q);
    }
    if (p.is_infinite()) {
      acc = std::max(acc, s);
    } else {
      acc += trule.weights[k] * std::pow(s, p.to_double());
    }
  }
  return p.is_infinite() ? acc : std::pow(acc, 1.0 / p.to_double());
}

std::vector<double> mixed_values(std::span<const NormRequest> requests, double horizon, const QuasiModeField& mode,
                                 const QuadratureSpec& quad, NodeCounts* counts) {
  const SpatialGrid grid = build_grid(mode, quad);
  if (counts) {
    *counts = grid.counts;
    counts->t = quad.t_nodes;
  }
  const int dz = mode.config().dim_z();
  const auto wanted = [&](FieldKind kind) {
    return std::any_of(requests.begin(), requests.end(), [&](const NormRequest& r) { return r.field == kind; });
  };
  const bool split_tilde = wanted(FieldKind::forcing_tilde);
  std::map<FieldKind, std::vector<TimePolynomial>> polys;
  for (const NormRequest& r : requests) {
    if (r.field == FieldKind::forcing_tilde) {
      polys.emplace(FieldKind::forcing, std::vector<TimePolynomial>{});
      polys.emplace(FieldKind::rest, std::vector<TimePolynomial>{});
    }
    polys.emplace(r.field, std::vector<TimePolynomial>{});
  }
  for (auto& [kind, list] : polys) {
    if (split_tilde && kind == FieldKind::forcing_tilde) continue;
    list.resize(grid.r.size());
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
      list[i] = mode.time_polynomial(kind, grid.r[i], std::span<const double>(grid.z[i].data(), dz), horizon);
    }
  }
  if (split_tilde) {
    const auto& f = polys.at(FieldKind::forcing);
    const auto& rest = polys.at(FieldKind::rest);
    auto& sum = polys.at(FieldKind::forcing_tilde);
    sum.resize(grid.r.size());
    for (std::size_t i = 0; i < grid.r.size(); ++i) {
      sum[i] = f[i];
      sum[i].c0 += rest[i].c0;
      sum[i].c1 += rest[i].c1;
      sum[i].c2 += rest[i].c2;
    }
  }
  const QuadratureRule trule = gauss_legendre(quad.t_nodes, 0.0, horizon);
  std::vector<double> out;
  out.reserve(requests.size());
  for (const NormRequest& r : requests) out.push_back(time_integral(grid, polys.at(r.field), r.p, r.q, trule));
  return out;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (radial_nodes < 8 || z_nodes < 8 || t_nodes < 8) throw InvalidArgument("quadrature node counts must be at least 8");
  if (refinement_factor < 2) throw InvalidArgument("refinement factor must be at least 2");
  if (!(tolerance > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec r = *this;
  r.radial_nodes *= refinement_factor;
  r.z_nodes *= refinement_factor;
  r.t_nodes *= refinement_factor;
  return r;
}

NormResult spatial_norm(const RadialFieldFn& field, const Exponent& q, const QuasiModeField& mode,
                        const QuadratureSpec& quad) {
  quad.validate();
  if (!mode.config().eigen.radial) throw InvalidArgument("spatial_norm requires a radial profile");
  const int dz = mode.config().dim_z();
  const auto eval_on = [&](const QuadratureSpec& spec, NodeCounts* counts) {
    const SpatialGrid grid = build_grid(mode, spec);
    if (counts) *counts = grid.counts;
    return spatial_value(grid, q, [&](std::size_t i) {
      return field(grid.r[i], std::span<const double>(grid.z[i].data(), dz));
    });
  };
  NodeCounts counts;
  const double coarse = eval_on(quad, nullptr);
  const double fine = eval_on(quad.refined(), &counts);
  return combine(coarse, fine, counts, quad);
}

NormResult spatial_norm(FieldKind field, double t, const Exponent& q, const QuasiModeField& mode,
                        const QuadratureSpec& quad) {
  return spatial_norm([&](double r, std::span<const double> z) { return mode.eval_reduced(field, t, r, z); }, q, mode,
                      quad);
}

NormResult mixed_norm(FieldKind field, const Exponent& p, const Exponent& q, double horizon,
                      const QuasiModeField& mode, const QuadratureSpec& quad) {
  quad.validate();
  if (!(horizon > 0.0)) throw InvalidArgument("time horizon must be positive");
  if (is_unimodular_in_time(field)) {
    NormResult s = spatial_norm(field, 0.0, q, mode, quad);
    if (!p.is_infinite()) s.value *= std::pow(horizon, 1.0 / p.to_double());
    return s;
  }
  const NormRequest request{field, p, q};
  return mixed_norms(std::span<const NormRequest>(&request, 1), horizon, mode, quad).front();
}

std::vector<NormResult> mixed_norms(std::span<const NormRequest> requests, double horizon, const QuasiModeField& mode,
                                    const QuadratureSpec& quad) {
  quad.validate();
  if (!(horizon > 0.0)) throw InvalidArgument("time horizon must be positive");
  std::vector<NormResult> out(requests.size());
  std::vector<NormRequest> pending;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < requests.size(); ++i) {
    if (is_unimodular_in_time(requests[i].field)) {
      out[i] = mixed_norm(requests[i].field, requests[i].p, requests[i].q, horizon, mode, quad);
    } else {
      pending.push_back(requests[i]);
      slots.push_back(i);
    }
  }
  if (pending.empty()) return out;
  const std::vector<double> coarse = mixed_values(pending, horizon, mode, quad, nullptr);
  NodeCounts counts;
  const std::vector<double> fine = mixed_values(pending, horizon, mode, quad.refined(), &counts);
  for (std::size_t k = 0; k < pending.size(); ++k) out[slots[k]] = combine(coarse[k], fine[k], counts, quad);
  return out;
}

StrichartzRatio strichartz_ratio(const AdmissiblePair& pair, const QuasiModeField& mode, const QuadratureSpec& quad) {
  if (pair.is_energy_endpoint()) throw InvalidArgument("the (inf,2) endpoint is excluded");
  if (pair.n != mode.config().n) throw InvalidArgument("pair dimension does not match the configuration");
  const double horizon = std::pow(mode.radius(), mode.config().beta_value().to_double());
  const auto [pd, qd] = dual_pair(pair.p, pair.q);
  StrichartzRatio out;
  out.numerator = mixed_norm(FieldKind::w_r, pair.p, pair.q, horizon, mode, quad);
  out.initial = spatial_norm(FieldKind::f_r, 0.0, Exponent(2), mode, quad);
  out.forcing_tilde = mixed_norm(FieldKind::forcing_tilde, pd, qd, horizon, mode, quad);
  out.denominator = out.initial.value + out.forcing_tilde.value;
  out.ratio = out.numerator.value / out.denominator;
  return out;
}

}  // namespace strichartz
