#include "strichartz/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "strichartz/error.hpp"

namespace strichartz {

LanczosResult lanczos_largest(const LinearMap& op, Eigen::Index dim, const LanczosOptions& options) {
  if (options.count < 1 || options.count > dim) throw InvalidArgument("lanczos: invalid eigenvalue count");
  const int max_iter = static_cast<int>(std::min<Eigen::Index>(options.max_iterations, dim));

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd basis(dim, max_iter + 1);
  Eigen::VectorXcd q(dim);
  for (Eigen::Index i = 0; i < dim; ++i) q(i) = {normal(rng), normal(rng)};
  q.normalize();
  basis.col(0) = q;

  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXcd w(dim);
  LanczosResult result;
  Eigen::VectorXd last_residuals;

  for (int j = 0; j < max_iter; ++j) {
    op(basis.col(j), w);
    const double a = basis.col(j).dot(w).real();
    alpha.push_back(a);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd coeffs = basis.leftCols(j + 1).adjoint() * w;
      w.noalias() -= basis.leftCols(j + 1) * coeffs;
    }
    const double b = w.norm();

    const int m = j + 1;
    const bool check = m >= options.count && (m % options.check_every == 0 || m == max_iter || b < 1e-14);
    if (check) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
      Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd sub = m > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1))
                                  : Eigen::VectorXd();
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      const Eigen::VectorXd& theta = tri.eigenvalues();
      last_residuals.resize(options.count);
      bool converged = true;
      for (int i = 0; i < options.count; ++i) {
        const int col = m - 1 - i;
        last_residuals(i) = b * std::abs(tri.eigenvectors()(m - 1, col));
        if (last_residuals(i) > options.tolerance * std::abs(theta(col))) converged = false;
      }
      if (converged) {
        result.values.resize(options.count);
        result.residuals = last_residuals;
        for (int i = 0; i < options.count; ++i) {
          const int col = m - 1 - i;
          result.values(i) = theta(col);
          Eigen::VectorXcd v = basis.leftCols(m) * tri.eigenvectors().col(col).cast<std::complex<double>>();
          result.vectors.push_back(v.normalized());
        }
        result.iterations = m;
        return result;
      }
    }
    if (b < 1e-14) break;
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }

  std::ostringstream msg;
  msg << "lanczos: not converged after " << alpha.size() << " iterations; residuals";
  for (Eigen::Index i = 0; i < last_residuals.size(); ++i) msg << ' ' << last_residuals(i);
  msg << " (tolerance " << options.tolerance << ")";
  throw ConvergenceError(msg.str());
}

}  // namespace strichartz
