#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "strichartz/exponents.hpp"
#include "strichartz/quasimode.hpp"

namespace strichartz {

/// Gauss-Legendre node counts. Radial and z counts are per panel (two radial panels, four z
/// panels per z-coordinate); time uses one panel on (0, T).
struct QuadratureSpec {
  int radial_nodes = 80;
  int z_nodes = 64;
  int t_nodes = 32;
  int refinement_factor = 2;
  double tolerance = 1e-6;

  void validate() const;
  [[nodiscard]] QuadratureSpec refined() const;
};

struct NodeCounts {
  int radial = 0;
  int z = 0;
  int t = 0;
  long long spatial_points = 0;
};

struct NormResult {
  double value = 0.0;
  double rel_error_estimate = 0.0;
  NodeCounts nodes_used;
  bool converged = true;
};

/// Field at reduced coordinates (r = |y|, z), at fixed time.
using RadialFieldFn = std::function<std::complex<double>(double r, std::span<const double> z)>;

/// ||field(t)||_{L^q(R^n)} of a field supported in the cutoff region and radial in y. The y-integral
/// is taken in u = y/|z|^{alpha/2} over |u| < |z|^{(2-alpha)/2} (Jacobian |z|^{d_y alpha/2}).
NormResult spatial_norm(const RadialFieldFn& field, const Exponent& q, const QuasiModeField& mode,
                        const QuadratureSpec& quad);
NormResult spatial_norm(FieldKind field, double t, const Exponent& q, const QuasiModeField& mode,
                        const QuadratureSpec& quad);

/// (int_0^T ||field(t)||_q^p dt)^{1/p}; exact T^{1/p} scaling for fields with t-independent modulus.
NormResult mixed_norm(FieldKind field, const Exponent& p, const Exponent& q, double horizon,
                      const QuasiModeField& mode, const QuadratureSpec& quad);

struct NormRequest {
  FieldKind field;
  Exponent p;
  Exponent q;
};

/// Several mixed norms on one quadrature grid. Time polynomials are shared between requests, and
/// forcing_tilde is assembled from the forcing and rest polynomials.
std::vector<NormResult> mixed_norms(std::span<const NormRequest> requests, double horizon, const QuasiModeField& mode,
                                    const QuadratureSpec& quad);

struct StrichartzRatio {
  NormResult numerator;      ///< ||W_R||_{L^p((0,R^beta); L^q)}
  NormResult initial;        ///< ||f_R||_2
  NormResult forcing_tilde;  ///< ||F~_R||_{L^p'((0,R^beta); L^q')}
  double denominator = 0.0;
  double ratio = 0.0;
  [[nodiscard]] bool converged() const {
    return numerator.converged && initial.converged && forcing_tilde.converged;
  }
};

/// Strichartz quotient at the field's radius with T = R^beta; the (inf, 2) endpoint is rejected.
StrichartzRatio strichartz_ratio(const AdmissiblePair& pair, const QuasiModeField& mode, const QuadratureSpec& quad);

}  // namespace strichartz
