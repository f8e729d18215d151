#pragma once

#include <Eigen/Dense>

#include <complex>
#include <utility>
#include <vector>

namespace dfakit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Rank decisions for the SVD-backed solvers: singular values below
/// rel_tol * sigma_max * max(rows, cols) count as zero.
struct RankPolicy {
  double rel_tol = 1e-12;

  double threshold(double sigma_max, Eigen::Index rows, Eigen::Index cols) const {
    return rel_tol * sigma_max * static_cast<double>(std::max(rows, cols));
  }
};

/// Hilbert-Schmidt inner product Tr(a^* b), conjugate-linear in the first slot.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Splits x into the hermitian pair (x1, x2) with x = x1 + i*x2.
std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& x);

/// True iff lambda_min(a) >= -tol * max(1, lambda_max(a)). Throws if a is not
/// hermitian within tol relative to its norm.
bool is_psd(const ComplexMatrix& a, double tol);

/// Like is_psd but reports false instead of throwing when a is not hermitian.
bool is_positive_operator(const ComplexMatrix& a, double tol);

/// Column-major vectorization and its inverse. vec is a Hilbert-Schmidt
/// isometry, so orthonormality of matrices and of their vec images coincide.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols);

/// Orthonormal basis of {v : m v = 0}. When scale_floor is positive it
/// substitutes for sigma_max in the rank threshold whenever sigma_max falls
/// below it, so a matrix that is pure rounding noise relative to the scale of
/// its source data reads as exactly zero.
std::vector<ComplexVector> nullspace(const ComplexMatrix& m,
                                     const RankPolicy& policy = {},
                                     double scale_floor = 0.0);

/// A complex-linear subspace of n x n matrices, carried by a basis that is
/// orthonormal for the Hilbert-Schmidt inner product.
class MatrixSubspace {
 public:
  MatrixSubspace() = default;

  /// Wraps an already orthonormal basis; verifies <b_p, b_q> = delta_pq
  /// within 1e-10 and that every element is ambient_dim x ambient_dim.
  static MatrixSubspace from_orthonormal(Eigen::Index ambient_dim,
                                         std::vector<ComplexMatrix> basis);

  /// The whole matrix space, spanned by the matrix units.
  static MatrixSubspace full(Eigen::Index ambient_dim);

  Eigen::Index ambient_dim() const { return ambient_dim_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<ComplexMatrix>& basis() const { return basis_; }

  /// Orthogonal projection of x onto the subspace.
  ComplexMatrix project(const ComplexMatrix& x) const;

  /// Projector onto the vectorized subspace, an n^2 x n^2 matrix.
  ComplexMatrix vectorized_projector() const;

 private:
  Eigen::Index ambient_dim_ = 0;
  std::vector<ComplexMatrix> basis_;
};

/// Gram-Schmidt over the Hilbert-Schmidt inner product. Vectors whose
/// residual after projection falls below tol * (largest input norm) are
/// dropped. An empty input yields the empty subspace.
MatrixSubspace orthonormalize(const std::vector<ComplexMatrix>& vs, double tol);

struct SubspaceComparison {
  bool equal;
  bool s1_in_s2;
  bool s2_in_s1;
  double distance;            // ||P1 - P2||_F
  double s1_in_s2_residual;   // ||(1 - P2) P1||_F
  double s2_in_s1_residual;   // ||(1 - P1) P2||_F
};

/// Compares two subspaces of the same ambient space through their projectors.
/// Inclusion holds when the corresponding residual is below tol.
SubspaceComparison compare_subspaces(const MatrixSubspace& s1,
                                     const MatrixSubspace& s2, double tol);

}  // namespace dfakit
