#include "dfakit/dfa.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dfakit {

namespace {

constexpr double kPositivityTol = 1e-10;

// E_kk, then (E_kl + E_lk)/sqrt(2), then i(E_kl - E_lk)/sqrt(2) for k < l:
// a hermitian basis, orthonormal for the Hilbert-Schmidt inner product.
std::vector<ComplexMatrix> hermitian_basis(Eigen::Index n) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(k, k) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(k, l) = inv_sqrt2;
      e(l, k) = inv_sqrt2;
      basis.push_back(std::move(e));
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k + 1; l < n; ++l) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(k, l) = Complex(0.0, inv_sqrt2);
      e(l, k) = Complex(0.0, -inv_sqrt2);
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

}  // namespace

GeneratorSet generator_products(const KrausChannel& ch) {
  std::vector<ComplexMatrix> products;
  products.reserve(ch.kraus().size() * ch.kraus().size());
  for (const auto& a : ch.kraus()) {
    for (const auto& b : ch.kraus()) {
      products.push_back(a * b.adjoint());
    }
  }
  return GeneratorSet(std::move(products));
}

MatrixSubspace decoherence_free_algebra(const KrausChannel& ch,
                                        const RankPolicy& policy) {
  return commutant(generator_products(ch), policy);
}

MatrixSubspace dfa_oracle(const KrausChannel& ch, const RankPolicy& policy) {
  const Eigen::Index n = ch.dim();
  const Eigen::Index n2 = n * n;
  const auto basis = hermitian_basis(n);

  std::vector<ComplexMatrix> phi(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    phi[a] = dfakit::apply(ch, basis[a]);
  }

  Eigen::MatrixXd q(n2, n2);
  for (Eigen::Index a = 0; a < n2; ++a) {
    const auto& ha = basis[static_cast<std::size_t>(a)];
    for (Eigen::Index b = a; b < n2; ++b) {
      const auto& hb = basis[static_cast<std::size_t>(b)];
      const ComplexMatrix anti = (ha * hb + hb * ha) / 2.0;
      const double lhs = dfakit::apply(ch, anti).trace().real();
      const double rhs = ((phi[static_cast<std::size_t>(a)] * phi[static_cast<std::size_t>(b)] +
                           phi[static_cast<std::size_t>(b)] * phi[static_cast<std::size_t>(a)]) /
                          2.0)
                             .trace()
                             .real();
      q(a, b) = lhs - rhs;
      q(b, a) = q(a, b);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double lambda_max = std::max(ev.maxCoeff(), 0.0);
  if (ev.minCoeff() < -1e-9 * std::max(1.0, lambda_max)) {
    throw std::runtime_error("dissipation form has a negative eigenvalue");
  }

  // The basis is Hilbert-Schmidt normalized, so the form carries unit natural
  // scale; flooring the reference keeps an all-noise Q (a channel with no
  // dissipation at all) reading as identically zero.
  const double tau =
      policy.rel_tol * std::max(lambda_max, 1.0) * static_cast<double>(n2);

  std::vector<ComplexMatrix> kernel;
  for (Eigen::Index a = 0; a < n2; ++a) {
    if (ev(a) >= tau) continue;
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (Eigen::Index c = 0; c < n2; ++c) {
      x += es.eigenvectors()(c, a) * basis[static_cast<std::size_t>(c)];
    }
    kernel.push_back(std::move(x));
  }
  // real-orthonormal coordinates of hermitian basis elements stay orthonormal
  // as complex matrices, and the complex span of the hermitian kernel is the
  // holomorphic picture of the same subspace
  return MatrixSubspace::from_orthonormal(n, std::move(kernel));
}

MatrixSubspace fixed_point_algebra(const KrausChannel& ch,
                                   const RankPolicy& policy) {
  const Eigen::Index n = ch.dim();
  const Eigen::Index n2 = n * n;
  ComplexMatrix map = -ComplexMatrix::Identity(n2, n2);
  for (const auto& a : ch.kraus()) {
    map += Eigen::kroneckerProduct(a.transpose(), a.adjoint()).eval();
  }
  // the map fixes the identity, which pins its natural scale at one; an
  // all-noise difference means every matrix is fixed
  const auto null_vectors = nullspace(map, policy, 1.0);
  std::vector<ComplexMatrix> basis;
  basis.reserve(null_vectors.size());
  for (const auto& v : null_vectors) {
    basis.push_back(unvec(v, n, n));
  }
  return MatrixSubspace::from_orthonormal(n, std::move(basis));
}

double choi_multiplicativity_check(const KrausChannel& ch,
                                   const MatrixSubspace& nphi, int trials,
                                   Rng& rng) {
  const Eigen::Index n = ch.dim();
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const ComplexMatrix b = ginibre(n, n, rng);
    const ComplexMatrix phi_b = dfakit::apply(ch, b);
    for (const auto& a : nphi.basis()) {
      const ComplexMatrix phi_a = dfakit::apply(ch, a);
      worst = std::max(worst, (dfakit::apply(ch, (b * a).eval()) - phi_b * phi_a).norm());
      worst = std::max(worst, (dfakit::apply(ch, (a * b).eval()) - phi_a * phi_b).norm());
    }
  }
  return worst;
}

AlgebraReport inclusion_report(const KrausChannel& ch, const RankPolicy& policy,
                               double tol) {
  const ChannelFlags flags = validate(ch, tol);
  if (!flags.unital || !flags.trace_preserving) {
    throw std::invalid_argument(
        "inclusion report requires a unital trace-preserving channel");
  }

  const MatrixSubspace a_comm = commutant(GeneratorSet(ch.kraus()), policy);
  const MatrixSubspace fixed = fixed_point_algebra(ch, policy);
  const MatrixSubspace dfa = decoherence_free_algebra(ch, policy);
  // the commutant of the generated algebra, reached through the closure, must
  // agree with the commutant of the raw products
  const MatrixSubspace b_alg =
      algebra_closure(generator_products(ch), policy.rel_tol);
  const MatrixSubspace b_comm = commutant(GeneratorSet(b_alg.basis()), policy);
  const MatrixSubspace oracle = dfa_oracle(ch, policy);

  const SubspaceComparison a_in_fixed = compare_subspaces(a_comm, fixed, tol);
  const SubspaceComparison fixed_in_dfa = compare_subspaces(fixed, dfa, tol);
  const SubspaceComparison dfa_vs_bcomm = compare_subspaces(dfa, b_comm, tol);
  const SubspaceComparison dfa_vs_oracle = compare_subspaces(dfa, oracle, tol);

  AlgebraReport report{};
  report.dim_a_commutant = a_comm.dim();
  report.dim_fixed = fixed.dim();
  report.dim_dfa = dfa.dim();
  report.dim_b_commutant = b_comm.dim();
  report.chain_ok =
      a_in_fixed.s1_in_s2 && fixed_in_dfa.s1_in_s2 && dfa_vs_bcomm.equal;
  report.oracle_distance = dfa_vs_oracle.distance;
  report.unital_residual = flags.unital_residual;
  report.trace_residual = flags.trace_residual;
  report.a_comm_in_fixed_residual = a_in_fixed.s1_in_s2_residual;
  report.fixed_in_dfa_residual = fixed_in_dfa.s1_in_s2_residual;
  report.dfa_vs_b_commutant_distance = dfa_vs_bcomm.distance;

  report.luders_applicable = true;
  for (const auto& a : ch.kraus()) {
    if (!is_positive_operator(a, kPositivityTol)) {
      report.luders_applicable = false;
      break;
    }
  }
  if (report.luders_applicable) {
    report.luders_ok =
        a_in_fixed.equal && fixed_in_dfa.equal && dfa_vs_bcomm.equal;
  }
  return report;
}

}  // namespace dfakit
