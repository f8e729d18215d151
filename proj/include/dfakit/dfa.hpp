#pragma once

#include "dfakit/algebra.hpp"
#include "dfakit/channel.hpp"
#include "dfakit/matrix.hpp"

#include <optional>

namespace dfakit {

struct AlgebraReport {
  Eigen::Index dim_a_commutant;  // commutant of the Kraus operators themselves
  Eigen::Index dim_fixed;        // fixed points of the channel
  Eigen::Index dim_dfa;          // multiplicative domain, commutant of {A_i A_j^*}
  Eigen::Index dim_b_commutant;  // commutant of the algebra generated by {A_i A_j^*}
  bool chain_ok;                 // A' in fixed, fixed in dfa, dfa = B'
  double oracle_distance;        // projector distance against the dissipation kernel
  bool luders_applicable;        // every Kraus operator positive semidefinite
  std::optional<bool> luders_ok; // when applicable: all four subspaces coincide
  double unital_residual;
  double trace_residual;
  double a_comm_in_fixed_residual;
  double fixed_in_dfa_residual;
  double dfa_vs_b_commutant_distance;
};

/// The m^2 products A_i A_j^*.
GeneratorSet generator_products(const KrausChannel& ch);

/// The largest subalgebra on which the channel is multiplicative, computed as
/// the commutant of the products A_i A_j^*.
MatrixSubspace decoherence_free_algebra(const KrausChannel& ch,
                                        const RankPolicy& policy = {});

/// Same subspace straight from the definition: the hermitian x with
/// phi(x^2) = phi(x)^2 form the kernel of the quadratic form
/// Q_ab = Tr[phi((h_a h_b + h_b h_a)/2) - (phi(h_a)phi(h_b) + phi(h_b)phi(h_a))/2]
/// over a hermitian orthonormal basis {h_a}; the result is their complex span.
/// Throws when Q has an eigenvalue below -1e-9 relative to its largest: the
/// form is positive semidefinite for unital channels, so that signals an
/// invalid channel or a defect.
MatrixSubspace dfa_oracle(const KrausChannel& ch, const RankPolicy& policy = {});

/// Fixed-point space {x : phi(x) = x}, the nullspace of the vectorized
/// transfer map minus the identity.
MatrixSubspace fixed_point_algebra(const KrausChannel& ch,
                                   const RankPolicy& policy = {});

/// Max over every basis element a of nphi and `trials` random b of
/// ||phi(ba) - phi(b)phi(a)|| and ||phi(ab) - phi(a)phi(b)||.
double choi_multiplicativity_check(const KrausChannel& ch,
                                   const MatrixSubspace& nphi, int trials,
                                   Rng& rng);

/// Full comparison of the four subspaces. Refuses channels that are not
/// unital and trace-preserving within tol; tol also drives the subspace
/// comparisons. Positivity of the Kraus operators is decided at 1e-10.
AlgebraReport inclusion_report(const KrausChannel& ch,
                               const RankPolicy& policy = {},
                               double tol = 1e-8);

}  // namespace dfakit
