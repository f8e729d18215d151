#include "dfakit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfakit {

namespace {

constexpr double kOrthoTol = 1e-10;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
}

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
}

}  // namespace

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  return a.conjugate().cwiseProduct(b).sum();
}

std::pair<ComplexMatrix, ComplexMatrix> hermitian_parts(const ComplexMatrix& x) {
  require_square(x);
  const ComplexMatrix adj = x.adjoint();
  ComplexMatrix x1 = (x + adj) / 2.0;
  ComplexMatrix x2 = (x - adj) * Complex(0.0, -0.5);  // (x - x^*) / (2i)
  return {std::move(x1), std::move(x2)};
}

bool is_psd(const ComplexMatrix& a, double tol) {
  require_square(a);
  if (a.rows() == 0) return true;
  const double herm_dev = (a - a.adjoint()).norm();
  if (herm_dev > tol * std::max(1.0, a.norm())) {
    throw std::invalid_argument("matrix is not hermitian within tolerance");
  }
  const ComplexMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev.minCoeff() >= -tol * std::max(1.0, ev.maxCoeff());
}

bool is_positive_operator(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  if (a.rows() == 0) return true;
  const double herm_dev = (a - a.adjoint()).norm();
  if (herm_dev > tol * std::max(1.0, a.norm())) return false;
  const ComplexMatrix sym = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev.minCoeff() >= -tol * std::max(1.0, ev.maxCoeff());
}

ComplexVector vec(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvec(const ComplexVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw std::invalid_argument("vector length does not match requested shape");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

std::vector<ComplexVector> nullspace(const ComplexMatrix& m,
                                     const RankPolicy& policy,
                                     double scale_floor) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  std::vector<ComplexVector> out;
  if (cols == 0) return out;
  if (rows == 0) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out.push_back(ComplexVector::Unit(cols, j));
    }
    return out;
  }

  // JacobiSVD rather than BDCSVD: the divide-and-conquer deflation in Eigen
  // 3.4 emits NaN singular vectors on matrices with many repeated singular
  // values, which is exactly what stacked commutator maps look like
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double ref = std::max(sigma_max, scale_floor);

  Eigen::Index rank = 0;
  if (ref > 0.0) {
    const double tau = policy.threshold(ref, rows, cols);
    while (rank < sv.size() && sv(rank) >= tau) ++rank;
  }

  const ComplexMatrix& v = svd.matrixV();
  out.reserve(static_cast<std::size_t>(cols - rank));
  for (Eigen::Index j = rank; j < cols; ++j) {
    out.push_back(v.col(j));
  }
  return out;
}

MatrixSubspace MatrixSubspace::from_orthonormal(Eigen::Index ambient_dim,
                                                std::vector<ComplexMatrix> basis) {
  if (ambient_dim < 0) throw std::invalid_argument("ambient dimension must be nonnegative");
  for (const auto& b : basis) {
    if (b.rows() != ambient_dim || b.cols() != ambient_dim) {
      throw std::invalid_argument("basis element has wrong shape");
    }
  }
  for (std::size_t p = 0; p < basis.size(); ++p) {
    for (std::size_t q = p; q < basis.size(); ++q) {
      const Complex ip = hs_inner(basis[p], basis[q]);
      const double expected = (p == q) ? 1.0 : 0.0;
      if (std::abs(ip - expected) > kOrthoTol) {
        throw std::invalid_argument("basis is not orthonormal");
      }
    }
  }
  MatrixSubspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = std::move(basis);
  return s;
}

MatrixSubspace MatrixSubspace::full(Eigen::Index ambient_dim) {
  std::vector<ComplexMatrix> units;
  units.reserve(static_cast<std::size_t>(ambient_dim * ambient_dim));
  for (Eigen::Index k = 0; k < ambient_dim; ++k) {
    for (Eigen::Index l = 0; l < ambient_dim; ++l) {
      ComplexMatrix e = ComplexMatrix::Zero(ambient_dim, ambient_dim);
      e(k, l) = 1.0;
      units.push_back(std::move(e));
    }
  }
  MatrixSubspace s;
  s.ambient_dim_ = ambient_dim;
  s.basis_ = std::move(units);
  return s;
}

ComplexMatrix MatrixSubspace::project(const ComplexMatrix& x) const {
  if (x.rows() != ambient_dim_ || x.cols() != ambient_dim_) {
    throw std::invalid_argument("matrix shape does not match ambient dimension");
  }
  ComplexMatrix acc = ComplexMatrix::Zero(ambient_dim_, ambient_dim_);
  for (const auto& b : basis_) {
    acc += hs_inner(b, x) * b;
  }
  return acc;
}

ComplexMatrix MatrixSubspace::vectorized_projector() const {
  const Eigen::Index n2 = ambient_dim_ * ambient_dim_;
  ComplexMatrix b(n2, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    b.col(static_cast<Eigen::Index>(j)) = vec(basis_[j]);
  }
  return b * b.adjoint();
}

MatrixSubspace orthonormalize(const std::vector<ComplexMatrix>& vs, double tol) {
  if (vs.empty()) return MatrixSubspace{};
  const Eigen::Index n = vs.front().rows();
  for (const auto& v : vs) {
    if (v.rows() != n || v.cols() != n) {
      throw std::invalid_argument("inputs must share one square shape");
    }
  }

  double max_norm = 0.0;
  for (const auto& v : vs) max_norm = std::max(max_norm, v.norm());
  if (max_norm == 0.0) return MatrixSubspace::from_orthonormal(n, {});

  std::vector<ComplexMatrix> basis;
  for (const auto& v : vs) {
    ComplexMatrix r = v;
    // two projection passes keep the basis orthonormal to machine precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) r -= hs_inner(b, r) * b;
    }
    const double rn = r.norm();
    if (rn > 0.0 && rn >= tol * max_norm) {
      basis.push_back(r / rn);
    }
  }
  return MatrixSubspace::from_orthonormal(n, std::move(basis));
}

SubspaceComparison compare_subspaces(const MatrixSubspace& s1,
                                     const MatrixSubspace& s2, double tol) {
  if (s1.ambient_dim() != s2.ambient_dim()) {
    throw std::invalid_argument("subspaces live in different ambient spaces");
  }
  const ComplexMatrix p1 = s1.vectorized_projector();
  const ComplexMatrix p2 = s2.vectorized_projector();

  SubspaceComparison cmp{};
  cmp.distance = (p1 - p2).norm();
  cmp.s1_in_s2_residual = (p1 - p2 * p1).norm();
  cmp.s2_in_s1_residual = (p2 - p1 * p2).norm();
  cmp.s1_in_s2 = cmp.s1_in_s2_residual < tol;
  cmp.s2_in_s1 = cmp.s2_in_s1_residual < tol;
  cmp.equal = cmp.s1_in_s2 && cmp.s2_in_s1;
  return cmp;
}

}  // namespace dfakit
