#pragma once

#include "dfakit/matrix.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace dfakit {

/// A completely positive map on n x n matrices in the Heisenberg picture,
/// phi(x) = sum_i A_i^* x A_i, held by its Kraus operators A_i.
class KrausChannel {
 public:
  KrausChannel(Eigen::Index dim, std::vector<ComplexMatrix> kraus);

  Eigen::Index dim() const { return dim_; }
  Eigen::Index num_kraus() const { return static_cast<Eigen::Index>(kraus_.size()); }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

 private:
  Eigen::Index dim_;
  std::vector<ComplexMatrix> kraus_;
};

struct ChannelFlags {
  bool unital;                // sum_i A_i^* A_i = 1
  bool trace_preserving;      // sum_i A_i A_i^* = 1
  double unital_residual;
  double trace_residual;
};

/// Isometry V : H -> H (x) C^m with V u = sum_i (A_i u) (x) e_i. The composite
/// index is env-major: component (i*n + s) is the system coordinate s of the
/// environment block i, so block row i of v equals A_i and
/// V^* (x (x) 1_m) V = phi(x).
struct StinespringDilation {
  Eigen::Index n;
  Eigen::Index m;
  ComplexMatrix v;  // (n*m) x n
};

struct RangeProjector {
  ComplexMatrix p_tilde;  // (n*m) x (n*m), projector onto span{(E_kl (x) 1) V e_s}
  ComplexMatrix p_env;    // m x m projector with p_tilde = 1_n (x) p_env
  double factorization_residual;
  Eigen::Index rank;      // rank of p_env = dim span{A_i}
};

struct ReducedKraus {
  KrausChannel reduced;
  ComplexMatrix mixing;  // m x l, orthonormal columns; B_j = sum_i mixing(i,j) A_i
};

enum class RandomKind { MixedUnitary, Luders, Padded };

ChannelFlags validate(const KrausChannel& ch, double tol);

/// phi(x) = sum_i A_i^* x A_i.
ComplexMatrix apply(const KrausChannel& ch, const ComplexMatrix& x);

/// Dissipation D(x) = phi(x^* x) - phi(x)^* phi(x); positive semidefinite for
/// unital channels.
ComplexMatrix dissipation(const KrausChannel& ch, const ComplexMatrix& x);

/// Operator sys_op (x) env_op on the dilation space, in the same env-major
/// index convention as StinespringDilation.
ComplexMatrix dilation_kron(const ComplexMatrix& sys_op, const ComplexMatrix& env_op);

/// Builds the dilation and re-derives the channel action from it on the matrix
/// units; a mismatch beyond 1e-12 throws, since the identity holds blockwise.
StinespringDilation stinespring(const KrausChannel& ch);

/// Projector onto span{(E_kl (x) 1) V e_s} together with its factorization
/// 1_n (x) p_env. Throws when the factorization residual reaches tol: the
/// factorized form is an identity, so that signals a defect, not data.
RangeProjector range_projector(const KrausChannel& ch, double tol,
                               const RankPolicy& policy = {});

/// Rewrites the channel on a linearly independent Kraus family B_j obtained by
/// mixing the A_i through the eigenvectors of their Gram matrix
/// G_ik = Tr(A_i^* A_k). rel_tol drives the rank cut on the Gram spectrum. An
/// already independent family is returned unchanged with identity mixing.
ReducedKraus reduce_kraus(const KrausChannel& ch, double rel_tol = 1e-12);

/// New Kraus list A'_p = sum_i w(p,i) A_i for an isometric w (w^* w = 1_m);
/// represents the same map. Throws if w fails the isometry test.
KrausChannel equivalent_rep(const KrausChannel& ch, const ComplexMatrix& w);

/// Deterministic per seed.
///   mixed_unitary: A_i = sqrt(p_i) U_i with Haar unitaries U_i and weights
///                  p_i bounded away from zero.
///   luders:        A_i = E_i^(1/2) for a random POVM {E_i}.
///   padded:        a mixed_unitary family pushed through a random isometry
///                  that adds two dependent operators.
KrausChannel random_channel(RandomKind kind, Eigen::Index n, Eigen::Index k,
                            std::uint64_t seed);

using Rng = std::mt19937_64;

/// Matrix with independent standard complex gaussian entries.
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary: QR of a ginibre matrix with the R-diagonal
/// phases folded into Q.
ComplexMatrix haar_unitary(Eigen::Index n, Rng& rng);

/// rows x cols (rows >= cols) with orthonormal columns.
ComplexMatrix random_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace dfakit
