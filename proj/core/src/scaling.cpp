#include "strichartz/scaling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "strichartz/error.hpp"

namespace strichartz {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Rational weight_of(int n, const Rational& alpha, const Rational& gamma) {
  const bool odd = n % 2 == 1;
  const int dy = odd ? n - 1 : n - 2;
  const int dz = odd ? 1 : 2;
  return alpha * Rational(dy) + Rational(2 * dz) * gamma;
}

DeltaValue minimum_of(const std::vector<std::pair<std::string, Rational>>& terms, const Rational& offset) {
  Rational best = terms.front().second;
  for (const auto& [name, value] : terms) best = min(best, value);
  DeltaValue out;
  out.value = offset + best;
  for (const auto& [name, value] : terms)
    if (value == best) out.attaining.push_back(name);
  return out;
}

NormResult missing() {
  NormResult r;
  r.value = kNaN;
  r.rel_error_estimate = kNaN;
  return r;
}

}  // namespace

std::vector<AdmissiblePair> admissible_pairs(int n, int count) {
  if (n < 3) throw InvalidArgument("dimension must be at least 3");
  if (count < 2) throw InvalidArgument("need at least two admissible pairs (both endpoints)");
  const Rational lo(n - 2, 2 * n);
  const Rational hi(1, 2);
  std::vector<AdmissiblePair> out;
  for (int k = 0; k < count; ++k) {
    const Rational inv_q = lo + (hi - lo) * Rational(k, count - 1);
    out.push_back(AdmissiblePair::from_q(Exponent(Rational(1) / inv_q), n));
  }
  return out;
}

GammaWindow gamma_window(int n, const Rational& alpha) {
  if (n < 3) throw InvalidArgument("dimension must be at least 3");
  if (!(alpha > Rational(1) && alpha < Rational(2))) throw InvalidArgument("alpha must lie in (1, 2)");
  const Rational half_alpha = alpha / Rational(2);
  const int denom = n % 2 == 1 ? 6 : 12;
  const Rational upper = half_alpha + (Rational(2) - alpha) * Rational(n, denom);
  return GammaWindow{max(half_alpha, Rational(1, 2)), min(upper, Rational(1))};
}

Rational beta_threshold(const ProblemConfig& config) { return config.beta_threshold(); }

DeltaValue delta_exponent(int n, const Rational& alpha, const Rational& gamma, const Rational& beta,
                          const Exponent& p) {
  const Rational x = weight_of(n, alpha, gamma);
  const Rational offset = Rational(2) * (beta * Rational(n) - x) / Rational(n) * p.reciprocal();
  const Rational one(1), two(2), three(3);
  return minimum_of({{"2gamma-beta", two * gamma - beta},
                     {"2alpha+2-3beta", two * alpha + two - three * beta},
                     {"alpha/2+1-beta", alpha / two + one - beta},
                     {"3-alpha/2-beta", three - alpha / two - beta},
                     {"gamma+1-beta", gamma + one - beta},
                     {"alpha+2-2beta", alpha + two - two * beta}},
                    offset);
}

DeltaValue delta_at_threshold(int n, const Rational& alpha, const Rational& gamma) {
  const Rational nn(n);
  const Rational two(2), three(3);
  const Rational two_minus = two - alpha;
  if (n % 2 == 1) {
    return minimum_of({{"2gamma-beta", (nn - Rational(1)) * (two * gamma - alpha) / nn},
                       {"2alpha+2-3beta", (two_minus * nn + three * alpha - Rational(6) * gamma) / nn},
                       {"alpha/2+1-beta", (two_minus * nn + two * alpha - Rational(4) * gamma) / (two * nn)},
                       {"3-alpha/2-beta", (three * two_minus * nn + two * alpha - Rational(4) * gamma) / (two * nn)},
                       {"gamma+1-beta", (nn * (gamma + Rational(1)) - (nn - Rational(1)) * alpha - two * gamma) / nn},
                       {"alpha+2-2beta", (two_minus * nn + two * alpha - Rational(4) * gamma) / nn}},
                      Rational(0));
  }
  return minimum_of({{"2gamma-beta", (nn - two) * (two * gamma - alpha) / nn},
                     {"2alpha+2-3beta", (two_minus * nn + Rational(6) * alpha - Rational(12) * gamma) / nn},
                     {"alpha/2+1-beta", (two_minus * nn + Rational(4) * alpha - Rational(8) * gamma) / (two * nn)},
                     {"3-alpha/2-beta", (three * two_minus * nn + Rational(4) * alpha - Rational(8) * gamma) / (two * nn)},
                     {"gamma+1-beta", (nn * (gamma + Rational(1)) - (nn - two) * alpha - Rational(4) * gamma) / nn},
                     {"alpha+2-2beta", (two_minus * nn + Rational(4) * alpha - Rational(8) * gamma) / nn}},
                    Rational(0));
}

ExponentSet predicted_exponents(const ProblemConfig& config, const AdmissiblePair& pair) {
  config.validate();
  if (pair.n != config.n) throw InvalidArgument("pair dimension does not match the configuration");
  ExponentSet e;
  const Rational x = weight_of(config.n, config.alpha, config.gamma);
  const Rational beta = config.beta_value();
  const Rational inv_p = pair.p.reciprocal();
  const Rational inv_q = pair.q.reciprocal();
  const Rational nn(config.n);
  e.weight = x;
  e.beta = beta;
  e.beta_threshold = config.beta_threshold();
  e.f_r_slope = x / Rational(4);
  e.w_r_spatial_slope = x * inv_q / Rational(2);
  e.w_r_slope = beta * inv_p + e.w_r_spatial_slope;
  e.forcing_bound_slope = e.w_r_slope + max(Rational(-2) * config.gamma,
                                            Rational(2) * beta - Rational(2) * config.alpha - Rational(2));
  e.ratio_wf_slope = (beta * nn - x) / nn * inv_p;
  e.kappa = Rational(2) * e.ratio_wf_slope +
            min(Rational(2) * config.gamma - beta, Rational(2) * config.alpha + Rational(2) - Rational(3) * beta);
  e.delta = delta_exponent(config.n, config.alpha, config.gamma, beta, pair.p);
  e.gamma_window = gamma_window(config.n, config.alpha);
  return e;
}

int default_workers() {
  if (const char* env = std::getenv("STRICHARTZ_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<int>(v);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::vector<double> geometric_grid(double r_min, double r_max, int points) {
  if (points < 2) throw InvalidArgument("radius grid needs at least two points");
  if (!(r_min > 2.0) || !(r_max > r_min)) throw InvalidArgument("radius grid needs 2 < r_min < r_max");
  std::vector<double> out(points);
  const double lo = std::log2(r_min);
  const double step = (std::log2(r_max) - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = std::exp2(lo + step * i);
  out.front() = r_min;
  out.back() = r_max;
  return out;
}

std::vector<SweepRow> run_sweep(const ProblemConfig& config, const AdmissiblePair& pair, std::span<const double> r_grid,
                                const SweepOptions& options) {
  config.validate();
  options.quad.validate();
  if (pair.is_energy_endpoint()) throw InvalidArgument("the (inf,2) endpoint is excluded");
  if (pair.n != config.n) throw InvalidArgument("pair dimension does not match the configuration");
  if (r_grid.empty()) throw InvalidArgument("empty radius grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] > 2.0)) throw InvalidArgument("all radii must exceed 2");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw InvalidArgument("radius grid must be ascending");
  }
  const ExponentSet pred = predicted_exponents(config, pair);
  const double beta = pred.beta.to_double();
  const double inv_p = pair.p.reciprocal().to_double();
  const double alpha = config.alpha_value();
  const double gamma = config.gamma_value();
  const auto [pd, qd] = dual_pair(pair.p, pair.q);
  const SweepQuantities& want = options.quantities;

  std::vector<SweepRow> rows(r_grid.size());
  const auto compute_row = [&](std::size_t i) {
    const double radius = r_grid[i];
    const QuasiModeField field(config, radius, options.cutoff);
    const double horizon = std::pow(radius, beta);
    SweepRow row;
    row.radius = radius;
    row.f_r = want.f_r ? spatial_norm(FieldKind::f_r, 0.0, Exponent(2), field, options.quad) : missing();
    row.w_r = want.w_r ? mixed_norm(FieldKind::w_r, pair.p, pair.q, horizon, field, options.quad) : missing();
    row.w_r_fixed_t = want.w_r ? mixed_norm(FieldKind::w_r, pair.p, pair.q, 1.0, field, options.quad) : missing();
    std::vector<NormRequest> requests;
    std::vector<NormResult*> targets;
    const auto request = [&](bool enabled, FieldKind kind, const Exponent& p, const Exponent& q, NormResult& slot) {
      slot = missing();
      if (!enabled) return;
      requests.push_back({kind, p, q});
      targets.push_back(&slot);
    };
    request(want.forcing, FieldKind::forcing, pair.p, pair.q, row.forcing);
    request(want.rest, FieldKind::rest, pd, qd, row.rest);
    request(want.forcing_tilde, FieldKind::forcing_tilde, pd, qd, row.forcing_tilde);
    if (!requests.empty()) {
      const std::vector<NormResult> norms = mixed_norms(requests, horizon, field, options.quad);
      for (std::size_t k = 0; k < norms.size(); ++k) *targets[k] = norms[k];
    }
    row.ratio = row.w_r.value / (row.f_r.value + row.forcing_tilde.value);
    const double bound = std::pow(horizon, inv_p) * std::pow(radius, pred.w_r_spatial_slope.to_double()) *
                         std::max(std::pow(radius, -2.0 * gamma), horizon * horizon * std::pow(radius, -(2.0 * alpha + 2.0)));
    row.forcing_bound_ratio = row.forcing.value / bound;
    row.converged = true;
    for (const NormResult* r : {&row.f_r, &row.w_r, &row.w_r_fixed_t, &row.forcing, &row.rest, &row.forcing_tilde}) {
      if (!std::isnan(r->value) && !r->converged) row.converged = false;
    }
    rows[i] = row;
  };

  const int workers = std::max(1, std::min<int>(options.workers > 0 ? options.workers : default_workers(),
                                                static_cast<int>(r_grid.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < r_grid.size(); i = next++) {
      try {
        compute_row(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

ScalingFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit: size mismatch");
  if (x.size() < 2) throw InvalidArgument("fit: need at least two points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InvalidArgument("fit: values must be positive");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit: abscissae must not all coincide");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  for (std::size_t i = 0; i < n; ++i) {
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(ly[i] - fit.intercept - fit.slope * lx[i]));
  }
  fit.r_values.assign(x.begin(), x.end());
  fit.sample_count = static_cast<int>(n);
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  fit.spans_two_decades = std::log10(*hi / *lo) >= 2.0;
  return fit;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols{"f_R_norm", "W_R_norm",  "W_R_fixed_T_norm", "F_R_norm",       "rest_norm",
                                             "Ftilde_norm", "ratio", "ratio_wf",         "F_R_bound_ratio"};
  return cols;
}

double column_value(const SweepRow& row, const std::string& column) {
  if (column == "f_R_norm") return row.f_r.value;
  if (column == "W_R_norm") return row.w_r.value;
  if (column == "W_R_fixed_T_norm") return row.w_r_fixed_t.value;
  if (column == "F_R_norm") return row.forcing.value;
  if (column == "rest_norm") return row.rest.value;
  if (column == "Ftilde_norm") return row.forcing_tilde.value;
  if (column == "ratio") return row.ratio;
  if (column == "ratio_wf") return row.w_r.value / row.f_r.value;
  if (column == "F_R_bound_ratio") return row.forcing_bound_ratio;
  throw InvalidArgument("unknown sweep column '" + column + "'");
}

ScalingFit fit_exponent(std::span<const SweepRow> rows, const std::string& column) {
  std::vector<double> x, y;
  for (const SweepRow& row : rows) {
    if (!row.converged) continue;
    const double v = column_value(row, column);
    if (std::isnan(v)) continue;
    x.push_back(row.radius);
    y.push_back(v);
  }
  if (x.size() < 5) throw InvalidArgument("fit_exponent: need at least five converged rows for '" + column + "'");
  return fit_power_law(x, y);
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::not_applicable:
      return "N/A";
  }
  return "?";
}

Verdict verdict(const ProblemConfig& config, const AdmissiblePair& pair, std::span<const SweepRow> rows,
                const VerdictTolerances& tol) {
  if (pair.is_energy_endpoint()) throw InvalidArgument("the (inf,2) endpoint is excluded");
  Verdict v;
  v.predicted = predicted_exponents(config, pair);
  const ExponentSet& e = v.predicted;

  const auto available = [&](const std::string& column) {
    return std::any_of(rows.begin(), rows.end(), [&](const SweepRow& r) { return !std::isnan(column_value(r, column)); });
  };
  const auto fit = [&](const std::string& column) -> const ScalingFit* {
    if (!available(column)) return nullptr;
    auto [it, inserted] = v.fits.emplace(column, ScalingFit{});
    if (inserted) it->second = fit_exponent(rows, column);
    return &it->second;
  };
  const auto add = [&](VerdictCheck check) { v.checks.push_back(std::move(check)); };
  const auto na = [&](std::string name, std::string detail) {
    VerdictCheck c;
    c.name = std::move(name);
    c.status = CheckStatus::not_applicable;
    c.detail = std::move(detail);
    add(c);
  };

  {
    VerdictCheck c{"converged", 0.0, 0.0, 0.0, "all rows", CheckStatus::pass, ""};
    int bad = 0;
    for (const SweepRow& r : rows) bad += r.converged ? 0 : 1;
    c.measured = bad;
    if (bad > 0) {
      c.status = CheckStatus::fail;
      c.detail = std::to_string(bad) + " unconverged rows";
    }
    add(c);
    if (static_cast<int>(rows.size()) - bad < 5) {
      for (const char* name : {"f_R_slope", "W_R_fixed_T_slope", "W_R_over_f_R_slope", "F_R_bound_slope",
                               "ratio_increasing", "ratio_slope"}) {
        VerdictCheck f;
        f.name = name;
        f.status = CheckStatus::fail;
        f.detail = "fewer than five converged rows";
        add(f);
      }
      v.overall = CheckStatus::fail;
      return v;
    }
  }

  if (const ScalingFit* f = fit("f_R_norm")) {
    VerdictCheck c{"f_R_slope", f->slope, e.f_r_slope.to_double(), tol.slope, "|measured-predicted|<=tol",
                   CheckStatus::pass, ""};
    if (std::abs(c.measured - c.predicted) > tol.slope) c.status = CheckStatus::fail;
    add(c);
  } else {
    na("f_R_slope", "f_R not computed");
  }

  if (const ScalingFit* f = fit("W_R_fixed_T_norm")) {
    VerdictCheck c{"W_R_fixed_T_slope", f->slope, e.w_r_spatial_slope.to_double(), tol.slope,
                   "|measured-predicted|<=tol", CheckStatus::pass, ""};
    if (std::abs(c.measured - c.predicted) > tol.slope) c.status = CheckStatus::fail;
    add(c);
  } else {
    na("W_R_fixed_T_slope", "W_R not computed");
  }

  if (available("f_R_norm") && available("W_R_norm")) {
    const ScalingFit* f = fit("ratio_wf");
    VerdictCheck c{"W_R_over_f_R_slope", f->slope, e.ratio_wf_slope.to_double(), tol.slope, "measured>=predicted-tol",
                   CheckStatus::pass, ""};
    if (c.measured < c.predicted - tol.slope) c.status = CheckStatus::fail;
    add(c);
  } else {
    na("W_R_over_f_R_slope", "W_R or f_R not computed");
  }

  if (const ScalingFit* f = fit("F_R_bound_ratio")) {
    VerdictCheck c{"F_R_bound_slope", f->slope, 0.0, tol.bound_slope, "measured<=tol", CheckStatus::pass, ""};
    if (c.measured > tol.bound_slope) c.status = CheckStatus::fail;
    add(c);
  } else {
    na("F_R_bound_slope", "F_R not computed");
  }

  const bool window_ok = e.gamma_window.contains(config.gamma) && e.delta.value.sign() > 0;
  const bool ratio_available = available("ratio") && available("Ftilde_norm");
  if (!ratio_available) {
    na("ratio_increasing", "ratio not computed");
    na("ratio_slope", "ratio not computed");
  } else if (!window_ok) {
    na("ratio_increasing", "gamma outside the positivity window (delta = " + e.delta.value.str() + ")");
    na("ratio_slope", "gamma outside the positivity window (delta = " + e.delta.value.str() + ")");
  } else {
    VerdictCheck inc{"ratio_increasing", 0.0, 0.0, 0.0, "strictly increasing in R", CheckStatus::pass, ""};
    int drops = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) drops += rows[i].ratio > rows[i - 1].ratio ? 0 : 1;
    inc.measured = drops;
    if (drops > 0) {
      inc.status = CheckStatus::fail;
      inc.detail = std::to_string(drops) + " non-increasing steps";
    }
    add(inc);
    const ScalingFit* f = fit("ratio");
    VerdictCheck c{"ratio_slope", f->slope, e.delta.value.to_double(), tol.delta_margin,
                   "measured>0 and measured>=delta-tol", CheckStatus::pass, ""};
    if (!(c.measured > 0.0) || c.measured < c.predicted - tol.delta_margin) c.status = CheckStatus::fail;
    add(c);
  }

  v.overall = CheckStatus::pass;
  for (const VerdictCheck& c : v.checks)
    if (c.status == CheckStatus::fail) v.overall = CheckStatus::fail;
  return v;
}

}  // namespace strichartz
