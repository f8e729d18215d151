#include "dfakit/checks.hpp"

#include "dfakit/algebra.hpp"
#include "dfakit/dfa.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dfakit::checks {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct Accumulator {
  PropertyResult result;

  Accumulator(std::string name, double tol) {
    result.name = std::move(name);
    result.tol = tol;
  }

  void observe(double residual, const std::string& label) {
    ++result.cases;
    if (result.cases == 1 || residual > result.max_residual) {
      result.max_residual = residual;
      result.worst_case = label;
    }
  }
};

double kadison_residual(const KrausChannel& ch, const ComplexMatrix& x) {
  const ComplexMatrix d = dissipation(ch, x);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(((d + d.adjoint()) / 2.0).eval(),
                                                  Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  const double lambda_max = es.eigenvalues().maxCoeff();
  return std::max(0.0, -lambda_min) / std::max(1.0, lambda_max);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64(seed ^ splitmix64(salt));
}

std::string_view kind_name(RandomKind kind) {
  switch (kind) {
    case RandomKind::MixedUnitary: return "mixed_unitary";
    case RandomKind::Luders: return "luders";
    case RandomKind::Padded: return "padded";
  }
  throw std::invalid_argument("unknown channel kind");
}

RandomKind parse_kind(std::string_view name) {
  if (name == "mixed_unitary") return RandomKind::MixedUnitary;
  if (name == "luders") return RandomKind::Luders;
  if (name == "padded") return RandomKind::Padded;
  throw std::invalid_argument("unknown channel kind: " + std::string(name));
}

std::vector<PropertyResult> run_property_checks(const EnsembleSpec& spec,
                                                double subspace_tol,
                                                const RankPolicy& policy) {
  Accumulator validity("generator_validity", 1e-10);
  Accumulator kadison("kadison_positivity", 1e-9);
  Accumulator prop_oracle("dfa_matches_oracle", subspace_tol);
  Accumulator rep_indep("representation_independence", subspace_tol);
  Accumulator fixed_in_dfa("fixed_points_in_dfa", subspace_tol);
  Accumulator chain_a("kraus_commutant_in_fixed", subspace_tol);
  Accumulator chain_b("dfa_equals_product_algebra_commutant", subspace_tol);
  Accumulator luders("luders_equality", subspace_tol);
  Accumulator stine_iso("stinespring_isometry", 1e-12);
  Accumulator stine_rec("stinespring_reconstruction", 1e-12);
  Accumulator range_fact("range_projector_factorization", 1e-10);
  Accumulator range_rank("range_projector_rank", 0.5);
  Accumulator reduce_action("reduction_action_equality", 1e-12);
  Accumulator reduce_dfa("reduction_dfa_invariance", subspace_tol);
  Accumulator padded_drop("padded_rank_drop", 0.5);
  Accumulator choi("choi_multiplicativity", 1e-9);

  for (std::size_t kind_idx = 0; kind_idx < spec.kinds.size(); ++kind_idx) {
    const RandomKind kind = spec.kinds[kind_idx];
    for (const Eigen::Index n : spec.dims) {
      for (int idx = 0; idx < spec.channels_per_cell; ++idx) {
        const Eigen::Index k =
            spec.kraus_counts[static_cast<std::size_t>(idx) % spec.kraus_counts.size()];
        const std::uint64_t salt =
            (static_cast<std::uint64_t>(kind_idx) << 48) ^
            (static_cast<std::uint64_t>(n) << 32) ^
            (static_cast<std::uint64_t>(k) << 16) ^ static_cast<std::uint64_t>(idx);
        const std::uint64_t channel_seed = mix_seed(spec.seed, salt);
        const KrausChannel ch = random_channel(kind, n, k, channel_seed);

        std::ostringstream label_stream;
        label_stream << "kind=" << kind_name(kind) << " n=" << n << " k=" << k
                     << " i=" << idx << " seed=" << channel_seed;
        const std::string label = label_stream.str();

        const ChannelFlags flags = validate(ch, 1.0);
        validity.observe(std::max(flags.unital_residual, flags.trace_residual), label);

        Rng rng(mix_seed(channel_seed, 0x70726f6265ULL));

        for (int t = 0; t < std::max(1, spec.trials / 4); ++t) {
          kadison.observe(kadison_residual(ch, ginibre(n, n, rng)), label);
        }

        const MatrixSubspace dfa = decoherence_free_algebra(ch, policy);
        const MatrixSubspace oracle = dfa_oracle(ch, policy);
        prop_oracle.observe(compare_subspaces(dfa, oracle, subspace_tol).distance, label);

        const Eigen::Index m = ch.num_kraus();
        const ComplexMatrix w = random_isometry(m + 1, m, rng);
        const MatrixSubspace dfa_alt =
            decoherence_free_algebra(equivalent_rep(ch, w), policy);
        rep_indep.observe(compare_subspaces(dfa, dfa_alt, subspace_tol).distance, label);

        const MatrixSubspace fixed = fixed_point_algebra(ch, policy);
        fixed_in_dfa.observe(compare_subspaces(fixed, dfa, subspace_tol).s1_in_s2_residual, label);

        const MatrixSubspace a_comm = commutant(GeneratorSet(ch.kraus()), policy);
        chain_a.observe(compare_subspaces(a_comm, fixed, subspace_tol).s1_in_s2_residual,
                        label);

        const MatrixSubspace b_alg =
            algebra_closure(generator_products(ch), policy.rel_tol);
        const MatrixSubspace b_comm = commutant(GeneratorSet(b_alg.basis()), policy);
        chain_b.observe(compare_subspaces(dfa, b_comm, subspace_tol).distance, label);

        if (kind == RandomKind::Luders) {
          const double worst = std::max(
              {compare_subspaces(a_comm, fixed, subspace_tol).distance,
               compare_subspaces(fixed, dfa, subspace_tol).distance,
               compare_subspaces(dfa, b_comm, subspace_tol).distance});
          luders.observe(worst, label);
        }

        const StinespringDilation dil = stinespring(ch);
        stine_iso.observe(
            (dil.v.adjoint() * dil.v - ComplexMatrix::Identity(n, n)).norm(), label);
        ComplexMatrix recon = ComplexMatrix::Zero(n * m, n * m);
        for (Eigen::Index i = 0; i < m; ++i) {
          for (Eigen::Index j = 0; j < m; ++j) {
            ComplexMatrix env = ComplexMatrix::Zero(m, m);
            env(i, j) = 1.0;
            recon += dilation_kron(ch.kraus()[static_cast<std::size_t>(i)] *
                                       ch.kraus()[static_cast<std::size_t>(j)].adjoint(),
                                   env);
          }
        }
        stine_rec.observe((dil.v * dil.v.adjoint() - recon).norm(), label);

        const RangeProjector range = range_projector(ch, 1.0, policy);
        range_fact.observe(range.factorization_residual, label);
        const Eigen::Index span_dim = orthonormalize(ch.kraus(), policy.rel_tol).dim();
        range_rank.observe(std::abs(static_cast<double>(range.rank - span_dim)), label);

        const ReducedKraus red = reduce_kraus(ch, policy.rel_tol);
        double action_worst = 0.0;
        for (Eigen::Index kk = 0; kk < n; ++kk) {
          for (Eigen::Index ll = 0; ll < n; ++ll) {
            ComplexMatrix unit = ComplexMatrix::Zero(n, n);
            unit(kk, ll) = 1.0;
            action_worst = std::max(
                action_worst, (dfakit::apply(ch, unit) - dfakit::apply(red.reduced, unit)).norm());
          }
        }
        reduce_action.observe(action_worst, label);
        const MatrixSubspace dfa_red = decoherence_free_algebra(red.reduced, policy);
        reduce_dfa.observe(compare_subspaces(dfa, dfa_red, subspace_tol).distance, label);
        if (kind == RandomKind::Padded) {
          padded_drop.observe(red.reduced.num_kraus() < m ? 0.0 : 1.0, label);
        }

        choi.observe(choi_multiplicativity_check(ch, dfa, std::max(1, spec.trials), rng),
                     label);
      }
    }
  }

  return {validity.result,     kadison.result,    prop_oracle.result,
          rep_indep.result,    fixed_in_dfa.result,      chain_a.result,
          chain_b.result,      luders.result,     stine_iso.result,
          stine_rec.result,    range_fact.result, range_rank.result,
          reduce_action.result, reduce_dfa.result, padded_drop.result,
          choi.result};
}

}  // namespace dfakit::checks
