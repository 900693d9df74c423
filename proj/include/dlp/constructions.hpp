#pragma once

// Integer sets with few differences: the modified Behrend set and the
// random alteration construction whose k-subsets are all c-good.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlp/exactlin.hpp"

namespace dlp {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BehrendParams {
  int d = 2;
  int m = 1;
  int kappa = 2;

  [[nodiscard]] std::int64_t base() const { return 16LL * kappa * m; }
};

/// One alteration step: `element` was removed because `subset` formed a c-bad configuration.
struct Deletion {
  std::int64_t element = 0;
  std::vector<std::int64_t> subset;
  friend bool operator==(const Deletion&, const Deletion&) = default;
};

struct Provenance {
  std::string construction;
  /// Parameter name/value pairs in a fixed order.
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;
  /// Seed actually used for the accepted attempt, and its 0-based index.
  std::optional<std::uint64_t> attempt_seed;
  std::size_t attempt = 0;
  std::vector<std::int64_t> ground_set;
  std::vector<std::int64_t> sampled;
  std::vector<Deletion> deletions;
  /// Largest survivors dropped to reach exactly n elements.
  std::vector<std::int64_t> trimmed;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct SetArtifact {
  std::vector<std::int64_t> elements;  // strictly increasing
  Provenance provenance;
  friend bool operator==(const SetArtifact&, const SetArtifact&) = default;
};

/// Sizes of the norm classes {v ∈ [m]^d : |v|² = r}, indexed by r ∈ [0, d·m²].
std::vector<std::uint64_t> sphere_slice_counts(int d, int m);

/// φ(𝕊) for the largest sphere slice 𝕊 of [m]^d (smallest r on ties), with
/// φ(v) = Σ v_{i+1}·base^i. Throws ConstructionError for d < 2, m < 1, κ < 1,
/// m^d > max_vectors, or elements beyond int64.
SetArtifact behrend_set(const BehrendParams& params, std::uint64_t max_vectors = 100'000'000);

/// d = ⌊√ln n⌋, m = ⌊e^{√ln n}/(16κ)⌋. Throws ConstructionError naming the
/// collapsed parameter when d < 2 or m = 0.
BehrendParams behrend_auto_params(std::int64_t n, int kappa);
SetArtifact behrend_auto(std::int64_t n, int kappa);

/// {1 + Σ v_i (κ+1)^i : v ∈ {0,1}^d} for the largest d whose maximum stays ≤ limit.
/// Base κ+1 admits no carries in any relation αs1 + βs2 + γs3 with |α|,|β|,|γ| ≤ κ
/// summing to 0, and cube vertices lie on a sphere, so no such relation holds.
std::vector<std::int64_t> digit_cube_set(std::int64_t limit, int kappa);

/// ⌊n^c⌋ computed exactly when c has a small denominator.
std::int64_t floor_power(std::int64_t n, const Rational& c);

struct RandomLocalParams {
  std::int64_t n = 0;
  std::size_t k = 4;
  Rational c{2};
  int kappa = 2;
  std::uint64_t seed = 0;
  std::size_t max_retries = 16;
  /// Upper bound on C(|B|, k) for one alteration pass.
  std::uint64_t max_subsets = 100'000'000;
};

/// n-element subset of a Behrend-type ground set inside [⌊n^c⌋] whose every
/// k-subset forms a c-good configuration. Deterministic in the parameters.
SetArtifact random_local_set(const RandomLocalParams& params);

/// Reapplies a provenance's deletions and trimming to its sampled set.
std::vector<std::int64_t> replay_alteration(const Provenance& provenance);

/// splitmix64 step, used to derive retry seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt);

}  // namespace dlp
