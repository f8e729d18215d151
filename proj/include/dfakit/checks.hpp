#pragma once

#include "dfakit/channel.hpp"
#include "dfakit/matrix.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dfakit::checks {

/// Ensemble grid: for every kind and dimension, channels_per_cell channels
/// are drawn with the operator count cycling through kraus_counts. Seeds are
/// derived from seed per (kind, dim, index), so one ensemble is reproducible
/// channel by channel.
struct EnsembleSpec {
  std::vector<RandomKind> kinds{RandomKind::MixedUnitary, RandomKind::Luders,
                                RandomKind::Padded};
  std::vector<Eigen::Index> dims{2, 3, 4};
  std::vector<Eigen::Index> kraus_counts{1, 2, 3, 4};
  int channels_per_cell = 25;
  std::uint64_t seed = 0;
  int trials = 20;  // random probes per channel
};

struct PropertyResult {
  std::string name;
  double tol;
  double max_residual = 0.0;
  std::size_t cases = 0;
  std::string worst_case;

  bool pass() const { return max_residual < tol; }
};

/// Runs every identity the library promises over the ensemble and aggregates
/// the worst residual per property. subspace_tol drives the projector
/// comparisons; the sharper identities carry fixed tolerances.
std::vector<PropertyResult> run_property_checks(const EnsembleSpec& spec,
                                                double subspace_tol,
                                                const RankPolicy& policy);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

std::string_view kind_name(RandomKind kind);
RandomKind parse_kind(std::string_view name);

}  // namespace dfakit::checks
