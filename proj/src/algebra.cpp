#include "dfakit/algebra.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <stdexcept>

namespace dfakit {

namespace {

constexpr double kAlgebraTol = 1e-10;

}  // namespace

GeneratorSet::GeneratorSet(std::vector<ComplexMatrix> generators)
    : ambient_dim(0), gens(std::move(generators)) {
  if (gens.empty()) throw std::invalid_argument("generator set must be non-empty");
  ambient_dim = gens.front().rows();
  for (const auto& g : gens) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim) {
      throw std::invalid_argument("generators must share one square shape");
    }
  }
}

MatrixSubspace commutant(const GeneratorSet& g, const RankPolicy& policy) {
  const Eigen::Index n = g.ambient_dim;
  const Eigen::Index n2 = n * n;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);

  // The scalar part of a generator commutes with everything; peel it off so
  // the stacked map carries only genuine structure. Generators that are
  // indistinguishable from scalars at working precision constrain nothing
  // and are dropped outright.
  std::vector<ComplexMatrix> kept;
  for (const auto& gen : g.gens) {
    const double gnorm = gen.norm();
    if (gnorm == 0.0) continue;
    ComplexMatrix traceless = gen - (gen.trace() / static_cast<double>(n)) * id;
    if (traceless.norm() <= policy.rel_tol * static_cast<double>(n2) * gnorm) continue;
    kept.push_back(std::move(traceless));
  }
  if (kept.empty()) {
    return MatrixSubspace::full(n);
  }

  const ComplexMatrix id2 = ComplexMatrix::Identity(n2, n2);
  ComplexMatrix stacked(2 * static_cast<Eigen::Index>(kept.size()) * n2, n2);
  Eigen::Index row = 0;
  for (const auto& t : kept) {
    // x -> t x - x t and x -> t^* x - x t^*, vectorized column-major
    stacked.block(row, 0, n2, n2) =
        Eigen::kroneckerProduct(id, t).eval() - Eigen::kroneckerProduct(t.transpose(), id).eval();
    row += n2;
    stacked.block(row, 0, n2, n2) =
        Eigen::kroneckerProduct(id, t.adjoint()).eval() -
        Eigen::kroneckerProduct(t.conjugate(), id).eval();
    row += n2;
  }

  const auto null_vectors = nullspace(stacked, policy);
  std::vector<ComplexMatrix> basis;
  basis.reserve(null_vectors.size());
  for (const auto& v : null_vectors) {
    basis.push_back(unvec(v, n, n));
  }
  MatrixSubspace result = MatrixSubspace::from_orthonormal(n, std::move(basis));

  if (!contains(result, id, kAlgebraTol)) {
    throw std::logic_error("commutant lost the identity");
  }
  for (const auto& b : result.basis()) {
    if (!contains(result, b.adjoint(), kAlgebraTol)) {
      throw std::logic_error("commutant is not adjoint-closed");
    }
  }
  return result;
}

MatrixSubspace algebra_closure(const GeneratorSet& g, double tol) {
  const Eigen::Index n = g.ambient_dim;
  const Eigen::Index n2 = n * n;

  std::vector<ComplexMatrix> seeds;
  seeds.reserve(2 * g.gens.size());
  for (const auto& gen : g.gens) {
    seeds.push_back(gen);
    seeds.push_back(gen.adjoint());
  }
  MatrixSubspace current = orthonormalize(seeds, tol);

  while (true) {
    std::vector<ComplexMatrix> candidates = current.basis();
    for (const auto& a : current.basis()) {
      for (const auto& b : current.basis()) {
        candidates.push_back(a * b);
      }
    }
    MatrixSubspace next = orthonormalize(candidates, tol);
    if (next.dim() > n2) {
      throw std::runtime_error("closure exceeded the ambient dimension");
    }
    if (next.dim() == current.dim()) {
      return next;
    }
    current = std::move(next);
  }
}

bool contains(const MatrixSubspace& s, const ComplexMatrix& x, double tol) {
  if (x.rows() != s.ambient_dim() || x.cols() != s.ambient_dim()) {
    throw std::invalid_argument("matrix shape does not match ambient dimension");
  }
  return (x - s.project(x)).norm() < tol * std::max(1.0, x.norm());
}

}  // namespace dfakit
