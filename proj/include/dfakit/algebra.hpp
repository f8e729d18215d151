#pragma once

#include "dfakit/matrix.hpp"

#include <vector>

namespace dfakit {

/// A finite family of square matrices generating a *-algebra.
struct GeneratorSet {
  Eigen::Index ambient_dim;
  std::vector<ComplexMatrix> gens;

  explicit GeneratorSet(std::vector<ComplexMatrix> generators);
};

/// Commutant {x : gx = xg and g^*x = xg^* for all generators g}, computed as
/// the joint nullspace of the vectorized commutator maps. The result is a
/// unital *-subalgebra; identity membership and adjoint closure are checked
/// before returning.
MatrixSubspace commutant(const GeneratorSet& g, const RankPolicy& policy = {});

/// Smallest *-closed subspace containing the generators and closed under
/// products: seeds with gens and their adjoints, then multiplies pairwise and
/// re-orthonormalizes until the dimension stabilizes. Does not adjoin the
/// identity. tol is the orthonormalization drop tolerance.
MatrixSubspace algebra_closure(const GeneratorSet& g, double tol = 1e-12);

/// True iff ||x - project(x)|| < tol * max(1, ||x||).
bool contains(const MatrixSubspace& s, const ComplexMatrix& x, double tol);

}  // namespace dfakit
