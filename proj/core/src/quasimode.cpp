#include "strichartz/quasimode.hpp"

#include <array>
#include <cmath>
#include <string>

#include "strichartz/bump.hpp"
#include "strichartz/error.hpp"
#include "strichartz/jet.hpp"

namespace strichartz {
namespace {

constexpr std::complex<double> kI(0.0, 1.0);

struct NamedKind {
  FieldKind kind;
  const char* name;
};

constexpr std::array<NamedKind, 10> kKindNames{{
    {FieldKind::omega, "omega"},
    {FieldKind::w, "w"},
    {FieldKind::w_r, "w_r"},
    {FieldKind::f_r, "f_r"},
    {FieldKind::f_printed, "f_printed"},
    {FieldKind::g_r_printed, "g_r_printed"},
    {FieldKind::forcing_printed, "forcing_printed"},
    {FieldKind::forcing, "forcing"},
    {FieldKind::rest, "rest"},
    {FieldKind::forcing_tilde, "forcing_tilde"},
}};

}  // namespace

std::string to_string(FieldKind kind) {
  for (const auto& entry : kKindNames)
    if (entry.kind == kind) return entry.name;
  return "unknown";
}

FieldKind field_kind_from_string(const std::string& name) {
  for (const auto& entry : kKindNames)
    if (name == entry.name) return entry.kind;
  throw InvalidArgument("unknown field '" + name + "'");
}

bool is_unimodular_in_time(FieldKind kind) {
  return kind == FieldKind::omega || kind == FieldKind::w || kind == FieldKind::w_r || kind == FieldKind::f_r;
}

double ScaledProfile::operator()(double y_norm, double z_norm, double alpha) const {
  const double s = y_norm / std::pow(z_norm, 0.5 * alpha);
  return std::pow(s, weight_power) * base(s);
}

struct QuasiModeField::CutoffParts {
  // y-cutoff psi(r^2/|z|^2) and its derivatives in the argument.
  Derivs y;
  // z-cutoffs psi_R (odd) or psi^1_R, psi^2_R (even), differentiated in z.
  std::array<Derivs, 2> z;
  [[nodiscard]] double z_product() const { return z[0].value * z[1].value; }
};

QuasiModeField::QuasiModeField(ProblemConfig config, double radius, CutoffMode mode)
    : config_(std::move(config)), radius_(radius), mode_(mode) {
  config_.validate();
  if (!(radius_ > 2.0)) throw InvalidArgument("truncation radius must exceed 2");
  if (!config_.eigen.radial) throw InvalidArgument("the construction requires a radial eigenfunction");
  potential_ = config_.potential();
  alpha_ = config_.alpha_value();
  width_ = std::pow(radius_, config_.gamma_value());
}

void QuasiModeField::check_point(std::span<const double> y, std::span<const double> z) const {
  if (static_cast<int>(y.size()) != config_.dim_y() || static_cast<int>(z.size()) != config_.dim_z()) {
    throw InvalidArgument("point dimensions do not match the configuration");
  }
  if (z_norm(z) == 0.0) throw SingularityError("fields are singular at z = 0");
}

double QuasiModeField::z_norm(std::span<const double> z) const {
  return z.size() == 1 ? std::abs(z[0]) : std::hypot(z[0], z[1]);
}

double QuasiModeField::phase_rate(double rho) const { return lambda() / std::pow(rho, alpha_); }

QuasiModeField::CutoffParts QuasiModeField::cutoffs(double r, std::span<const double> z) const {
  CutoffParts parts;
  parts.z[1] = {1.0, 0.0, 0.0};
  const double rho = z_norm(z);
  if (mode_ == CutoffMode::rectangle) {
    parts.y = {1.0, 0.0, 0.0};
    for (std::size_t i = 0; i < z.size(); ++i) {
      parts.z[i] = {std::abs(z[i] - radius_) <= width_ ? 1.0 : 0.0, 0.0, 0.0};
    }
    return parts;
  }
  parts.y = bump_derivs(r * r / (rho * rho));
  for (std::size_t i = 0; i < z.size(); ++i) parts.z[i] = shifted_bump(z[i], radius_, width_);
  return parts;
}

namespace {

// W_R as a jet along one variable; `r` and `z` carry the seeded direction.
template <class Cut>
CJet w_r_jet(const RJet& r, std::span<const RJet> z, double t, double lambda, double alpha,
             const RadialProfile& profile, const Cut& cut) {
  const RJet rho = z.size() == 1 ? z[0] : sqrt(z[0] * z[0] + z[1] * z[1]);
  const RJet s = r * pow(rho, -0.5 * alpha);
  const RJet v = compose(profile.derivs(s.v), s);
  const CJet phase = exp(scale(pow(rho, -alpha), kI * (lambda * t)));
  const RJet amplitude = v * cut(r, rho, z);
  return phase * amplitude;
}

}  // namespace

std::complex<double> QuasiModeField::w_r_reduced(double t, double r, std::span<const double> z) const {
  const CutoffParts cut = cutoffs(r, z);
  const double rho = z_norm(z);
  const double v = config_.eigen.profile.value(r / std::pow(rho, 0.5 * alpha_));
  return std::polar(1.0, phase_rate(rho) * t) * (v * cut.y.value * cut.z_product());
}

QuasiModeField::FieldJet QuasiModeField::w_r_jet(double t, double r, std::span<const double> z) const {
  const int dz = config_.dim_z();
  const auto cut = [&](const RJet& rr, const RJet& rho, std::span<const RJet> zz) {
    RJet prod = RJet::constant(1.0);
    if (mode_ == CutoffMode::rectangle) {
      for (const RJet& zi : zz) prod = prod * RJet::constant(std::abs(zi.v - radius_) <= width_ ? 1.0 : 0.0);
      return prod;
    }
    for (const RJet& zi : zz) {
      const RJet arg = scale(zi - RJet::constant(radius_), 1.0 / width_);
      prod = prod * compose(bump_derivs(arg.v), arg);
    }
    const RJet arg = rr * rr * pow(rho, -2.0);
    return prod * compose(bump_derivs(arg.v), arg);
  };
  std::array<RJet, 2> zj{};
  for (int i = 0; i < dz; ++i) zj[i] = RJet::variable(z[i], 1 + i);
  const RJet rj = RJet::variable(r, 0);
  const CJet w = ::strichartz::w_r_jet(rj, std::span<const RJet>(zj.data(), dz), t, lambda(), alpha_,
                                       config_.eigen.profile, cut);
  return {w.v, w.d, w.dd};
}

std::complex<double> QuasiModeField::forcing_reduced(double t, double r, std::span<const double> z) const {
  const int dz = config_.dim_z();
  const FieldJet jet = w_r_jet(t, r, z);
  std::complex<double> lap_z = 0.0;
  for (int i = 0; i < dz; ++i) lap_z += jet.dd[1 + i];
  const int dy = config_.dim_y();
  const std::complex<double> lap_y =
      r > 1e-12 ? jet.dd[0] + static_cast<double>(dy - 1) * jet.d[0] / r : static_cast<double>(dy) * jet.dd[0];

  const double rho = z_norm(z);
  const std::complex<double> w = jet.value;
  // grad_y W_R = (dW_R/dr) y/r; with y = r e_1 the magnetic term B.grad_y W_R is (Omega e_1).e_1 = 0.
  const Eigen::VectorXd e1 = Eigen::VectorXd::Unit(dy, 0);
  const double magnetic = (potential_.matrix.omega * e1).dot(e1);
  const std::complex<double> b_grad = std::pow(rho, -alpha_) * magnetic * jet.d[0];
  return -phase_rate(rho) * w - lap_y - lap_z + 2.0 * kI * b_grad +
         config_.c * r * r * std::pow(rho, -2.0 * alpha_) * w;
}

std::complex<double> QuasiModeField::f_printed_reduced(double t, double r, std::span<const double> z) const {
  const double rho = z_norm(z);
  const double a = alpha_;
  const double lam = lambda();
  const double s = r / std::pow(rho, 0.5 * a);
  const Derivs vd = config_.eigen.profile.derivs(s);
  const double v = vd.value, g = s * vd.d1, h = s * s * vd.d2;
  const std::complex<double> e = std::polar(1.0, phase_rate(rho) * t);
  const double ra = std::pow(rho, -a);
  const std::complex<double> ilt = kI * lam * t;
  if (config_.parity() == Parity::odd) {
    return e / (rho * rho) *
           ((a * a * lam * lam * t * t * ra * ra - a * (a + 1.0) * ilt * ra) * v -
            g * (a * a * ilt * ra + a * (a + 2.0) / 4.0) - a * a / 4.0 * h);
  }
  const double rho2 = rho * rho;
  return e * ((a * a * lam * lam * t * t * ra * ra / rho2 - a * a * ilt * ra / rho2) * v -
              g * (a * a * ilt * ra / rho2 - a * a / (4.0 * rho2)) - a * a / (4.0 * rho2) * h);
}

std::vector<PrintedTerm> QuasiModeField::printed_terms(double t, double r, std::span<const double> z) const {
  const double rho = z_norm(z);
  const double a = alpha_;
  const double lam = lambda();
  const double s = r / std::pow(rho, 0.5 * a);
  const Derivs vd = config_.eigen.profile.derivs(s);
  const double v = vd.value, g = s * vd.d1, h = s * s * vd.d2;
  const std::complex<double> e = std::polar(1.0, phase_rate(rho) * t);
  const double ra = std::pow(rho, -a);
  const std::complex<double> ilt = kI * lam * t;
  const CutoffParts cut = cutoffs(r, z);
  const double py = cut.y.value, py1 = cut.y.d1, py2 = cut.y.d2;
  const double r2 = r * r;
  const double n = config_.n;
  const double rho2 = rho * rho, rho3 = rho2 * rho, rho4 = rho2 * rho2, rho6 = rho4 * rho2;
  const double chi = cut.z_product() * py;
  std::vector<PrintedTerm> terms;
  const auto add = [&](const char* name, double coef, std::complex<double> basis) {
    terms.push_back({name, coef, basis});
  };

  // Cutoff product times the residual F of W.
  add("F.t2_v", a * a, e * chi * lam * lam * t * t * ra * ra / rho2 * v);
  add("F.t_v", config_.parity() == Parity::odd ? -a * (a + 1.0) : -a * a, e * chi * ilt * ra / rho2 * v);
  add("F.t_G", -a * a, e * chi * ilt * ra / rho2 * g);
  add("F.G", config_.parity() == Parity::odd ? -a * (a + 2.0) / 4.0 : a * a / 4.0, e * chi / rho2 * g);
  add("F.H", -a * a / 4.0, e * chi / rho2 * h);

  if (config_.parity() == Parity::odd) {
    const double pz = cut.z[0].value, pz1 = cut.z[0].d1, pz2 = cut.z[0].d2;
    add("G.v_psi1", -2.0 * (n - 1.0), e * v / rho2 * pz * py1);
    add("G.v_y2_psi2", -4.0, e * v * r2 / rho4 * pz * py2);
    add("G.v_psiR2", -1.0, e * v * pz2 * py);
    add("G.v_y2_psiR1_psi1", 4.0, e * v * r2 / rho3 * pz1 * py1);
    add("G.v_y4_psi2", -4.0, e * v * r2 * r2 / rho6 * pz * py2);
    add("G.v_y2_psi1", -6.0, e * v * r2 / rho4 * pz * py1);
    add("G.v_t_psiR1", 2.0 * a, e * v * ilt * ra / rho * pz1 * py);
    add("G.v_t_y2_psi1", -4.0 * a, e * v * ilt * r2 * ra / rho4 * pz * py1);
    add("G.G_psi1", -4.0, e * g / rho2 * pz * py1);
    add("G.G_psiR1", a, e * g / rho * pz1 * py);
    add("G.G_y2_psi1", -2.0 * a, e * g * r2 / rho4 * pz * py1);
  } else {
    const Derivs& p1 = cut.z[0];
    const Derivs& p2 = cut.z[1];
    const double pp = p1.value * p2.value;
    const double radial_d1 = p1.d1 * p2.value * z[0] + p1.value * p2.d1 * z[1];
    add("G.v_psi1", -2.0 * (n - 2.0), e * v / rho2 * pp * py1);
    add("G.v_y2_psi2", -4.0, e * v * r2 / rho4 * pp * py2);
    add("G.v_y2_psi1", -4.0, e * v * r2 / rho4 * pp * py1);
    add("G.v_psiR1_2", -1.0, e * v * p2.value * p1.d2 * py);
    add("G.v_psiR2_2", -1.0, e * v * p1.value * p2.d2 * py);
    add("G.v_y2_psiR1_psi1", 4.0, e * v * r2 / rho4 * radial_d1 * py1);
    add("G.v_y4_psi2", -4.0, e * v * r2 * r2 / rho6 * pp * py2);
    add("G.v_t_psiR1", 2.0 * a, e * v * ilt * ra / rho2 * radial_d1 * py);
    add("G.v_t_y2_psi1", -4.0 * a, e * v * ilt * r2 * ra / rho4 * pp * py1);
    add("G.G_psi1", -4.0, e * g / rho2 * pp * py1);
    add("G.G_y2_psi1", -2.0 * a, e * g * r2 / rho4 * pp * py1);
    add("G.G_psiR1", a, e * g / rho2 * radial_d1 * py);
  }
  return terms;
}

std::complex<double> QuasiModeField::g_r_printed_reduced(double t, double r, std::span<const double> z) const {
  std::complex<double> sum = 0.0;
  for (const PrintedTerm& term : printed_terms(t, r, z)) {
    if (term.name.starts_with("G.")) sum += term.coefficient * term.basis;
  }
  return sum;
}

std::complex<double> QuasiModeField::rest_full(double t, std::span<const double> y, std::span<const double> z) const {
  const int dy = config_.dim_y();
  const int dz = config_.dim_z();
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), dy);
  const Eigen::Map<const Eigen::VectorXd> zv(z.data(), dz);
  const double r = yv.norm();
  const double rho = zv.norm();
  const CutoffParts cut = cutoffs(r, z);
  if (cut.y.value * cut.z_product() == 0.0 || !(r < rho)) return 0.0;
  if (zv.minCoeff() <= 0.0) return 0.0;

  const RemainderSample rem = taylor_remainders(yv, zv, potential_, config_.c);
  // Gradient of W_R: radial part along y/r, plus z-derivatives. The remainder r1 has zero z-components.
  Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(dy + dz);
  const FieldJet jet = w_r_jet(t, r, z);
  if (r > 0.0) grad.head(dy) = (yv / r).cast<std::complex<double>>() * jet.d[0];
  for (int i = 0; i < dz; ++i) grad(dy + i) = jet.d[1 + i];
  const std::complex<double> w = jet.value;
  const std::complex<double> r1_grad = rem.r1.cast<std::complex<double>>().dot(grad);
  return 2.0 * kI * std::pow(rho, 1.0 - alpha_) * r1_grad + std::pow(rho, 2.0 - 2.0 * alpha_) * rem.r2 * w;
}

std::complex<double> QuasiModeField::rest_reduced(double t, double r, std::span<const double> z) const {
  std::vector<double> y(config_.dim_y(), 0.0);
  y[0] = r;
  return rest_full(t, y, z);
}

std::complex<double> QuasiModeField::eval_reduced(FieldKind kind, double t, double r,
                                                  std::span<const double> z) const {
  const double rho = z_norm(z);
  switch (kind) {
    case FieldKind::omega:
      return config_.eigen.profile.value(r / std::pow(rho, 0.5 * alpha_));
    case FieldKind::w:
      return std::polar(1.0, phase_rate(rho) * t) * config_.eigen.profile.value(r / std::pow(rho, 0.5 * alpha_));
    case FieldKind::w_r:
      return w_r_reduced(t, r, z);
    case FieldKind::f_r:
      return w_r_reduced(0.0, r, z);
    case FieldKind::f_printed:
      return f_printed_reduced(t, r, z);
    case FieldKind::g_r_printed:
      return g_r_printed_reduced(t, r, z);
    case FieldKind::forcing_printed: {
      std::complex<double> sum = 0.0;
      for (const PrintedTerm& term : printed_terms(t, r, z)) sum += term.coefficient * term.basis;
      return sum;
    }
    case FieldKind::forcing:
      return forcing_reduced(t, r, z);
    case FieldKind::rest:
      return rest_reduced(t, r, z);
    case FieldKind::forcing_tilde:
      return forcing_reduced(t, r, z) + rest_reduced(t, r, z);
  }
  throw InvalidArgument("unknown field kind");
}

double QuasiModeField::eval_omega(std::span<const double> y, std::span<const double> z) const {
  check_point(y, z);
  return eval_reduced(FieldKind::omega, 0.0, Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()).norm(), z).real();
}

std::complex<double> QuasiModeField::eval(FieldKind kind, double t, std::span<const double> y,
                                          std::span<const double> z) const {
  check_point(y, z);
  if (kind == FieldKind::rest) return rest_full(t, y, z);
  if (kind == FieldKind::forcing_tilde) return eval_f_direct(t, y, z) + rest_full(t, y, z);
  if (kind == FieldKind::forcing) return eval_f_direct(t, y, z);
  return eval_reduced(kind, t, Eigen::Map<const Eigen::VectorXd>(y.data(), y.size()).norm(), z);
}

std::complex<double> QuasiModeField::eval_w(double t, std::span<const double> y, std::span<const double> z) const {
  return eval(FieldKind::w, t, y, z);
}

std::complex<double> QuasiModeField::eval_w_r(double t, std::span<const double> y, std::span<const double> z) const {
  return eval(FieldKind::w_r, t, y, z);
}

double QuasiModeField::eval_f_r(std::span<const double> y, std::span<const double> z) const {
  return eval(FieldKind::f_r, 0.0, y, z).real();
}

std::complex<double> QuasiModeField::eval_f_printed(double t, std::span<const double> y,
                                                    std::span<const double> z) const {
  return eval(FieldKind::f_printed, t, y, z);
}

std::complex<double> QuasiModeField::eval_g_r_printed(double t, std::span<const double> y,
                                                      std::span<const double> z) const {
  return eval(FieldKind::g_r_printed, t, y, z);
}

std::complex<double> QuasiModeField::eval_rest_forcing(double t, std::span<const double> y,
                                                       std::span<const double> z) const {
  return eval(FieldKind::rest, t, y, z);
}

std::complex<double> QuasiModeField::eval_f_direct(double t, std::span<const double> y,
                                                   std::span<const double> z) const {
  check_point(y, z);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), y.size());
  const double r = yv.norm();
  // The reduced evaluator assembles the radial chain rule; the magnetic term is evaluated with the
  // actual direction of y, which makes it vanish only through Omega y . y = 0.
  std::complex<double> value = forcing_reduced(t, r, z);
  if (r > 0.0) {
    const double rho = z_norm(z);
    const double om_y_dot_y = (potential_.matrix.omega * yv).dot(yv) / r;
    value += 2.0 * kI * std::pow(rho, -alpha_) * om_y_dot_y * w_r_jet(t, r, z).d[0];
  }
  return value;
}

std::complex<double> QuasiModeField::eval_f_fd(double t, std::span<const double> y, std::span<const double> z,
                                               double h, int richardson_levels) const {
  check_point(y, z);
  const double rho = z_norm(z);
  if (!(h > 0.0) || h > 0.05 * std::min(width_, rho)) {
    throw InvalidArgument("finite-difference step too large for the cutoff scales");
  }
  const int dy = config_.dim_y();
  const int dz = config_.dim_z();
  const int n = dy + dz;
  Eigen::VectorXd x(n);
  for (int i = 0; i < dy; ++i) x(i) = y[i];
  for (int i = 0; i < dz; ++i) x(dy + i) = z[i];
  const auto w = [&](double tt, const Eigen::VectorXd& p) {
    return w_r_reduced(tt, p.head(dy).norm(), std::span<const double>(p.data() + dy, dz));
  };
  const Eigen::VectorXd ym = potential_.matrix.omega * x.head(dy);

  const auto residual = [&](double step) {
    const std::complex<double> w0 = w(t, x);
    std::complex<double> lap = 0.0;
    std::complex<double> b_grad = 0.0;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp(i) += step;
      xm(i) -= step;
      const std::complex<double> wp = w(t, xp), wm = w(t, xm);
      lap += (wp - 2.0 * w0 + wm) / (step * step);
      if (i < dy) b_grad += ym(i) * (wp - wm) / (2.0 * step);
    }
    b_grad *= std::pow(rho, -alpha_);
    const std::complex<double> dt = (w(t + step, x) - w(t - step, x)) / (2.0 * step);
    return kI * dt - lap + 2.0 * kI * b_grad + config_.c * x.head(dy).squaredNorm() * std::pow(rho, -2.0 * alpha_) * w0;
  };
  if (richardson_levels < 0 || richardson_levels > 4) throw InvalidArgument("richardson_levels must be in [0, 4]");
  std::vector<std::complex<double>> table;
  for (int level = 0; level <= richardson_levels; ++level) table.push_back(residual(h * std::ldexp(1.0, -level)));
  double factor = 4.0;
  for (int level = 1; level <= richardson_levels; ++level, factor *= 4.0) {
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
      table[i] = (factor * table[i + 1] - table[i]) / (factor - 1.0);
    }
    table.pop_back();
  }
  return table.front();
}

void QuasiModeField::eval_batch(FieldKind kind, std::span<const double> t, const Eigen::MatrixXd& x,
                                std::span<std::complex<double>> out) const {
  const int dy = config_.dim_y();
  const int dz = config_.dim_z();
  if (x.rows() != dy + dz) throw InvalidArgument("eval_batch: points must have n rows");
  if (static_cast<Eigen::Index>(t.size()) != x.cols() || static_cast<Eigen::Index>(out.size()) != x.cols()) {
    throw InvalidArgument("eval_batch: size mismatch");
  }
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double* col = x.col(j).data();
    out[j] = eval(kind, t[j], std::span<const double>(col, dy), std::span<const double>(col + dy, dz));
  }
}

TimePolynomial QuasiModeField::time_polynomial(FieldKind kind, double r, std::span<const double> z,
                                               double horizon) const {
  TimePolynomial poly;
  const double rate = phase_rate(z_norm(z));
  if (kind == FieldKind::omega || kind == FieldKind::f_r) {
    poly.c0 = eval_reduced(kind, 0.0, r, z);
    return poly;
  }
  poly.phase_rate = rate;
  poly.c0 = eval_reduced(kind, 0.0, r, z);
  if (is_unimodular_in_time(kind)) return poly;
  const double tau = std::max(1.0, horizon);
  const std::complex<double> gp = std::polar(1.0, -rate * tau) * eval_reduced(kind, tau, r, z);
  const std::complex<double> gm = std::polar(1.0, rate * tau) * eval_reduced(kind, -tau, r, z);
  poly.c1 = (gp - gm) / (2.0 * tau);
  poly.c2 = (gp + gm - 2.0 * poly.c0) / (2.0 * tau * tau);
  return poly;
}

}  // namespace strichartz
