#pragma once

// Exhaustive small-ground scans of the certified-pair bounds, explicit
// realizations of the equality cases, and a seeded property suite for the
// structure of minimal implications.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlp/configuration.hpp"
#include "dlp/verifier.hpp"

namespace dlp {

/// (k² − 2k)/4 for even k, (k − 1)(k − 3)/4 + 3 for odd k.
std::size_t certified_bound(std::size_t k);

/// Classification of every scanned subset at one value of c.
struct ClassSummary {
  Rational c;
  std::uint64_t good = 0;
  std::uint64_t bad = 0;
  /// Largest certified count among c-good subsets, attained first (lexicographically) by `witness`.
  std::size_t max_certified = 0;
  std::vector<std::int64_t> witness;
  /// Witness re-checked from its points: c-good and certifying max_certified pairs.
  bool witness_verified = false;
  /// Certified count -> number of c-good subsets.
  std::map<std::size_t, std::uint64_t> histogram;
  /// c-good subsets certifying exactly the bound, and those among them without a star on 2⌊k/2⌋ points.
  std::uint64_t attained = 0;
  std::uint64_t attained_by_non_stars = 0;

  friend bool operator==(const ClassSummary&, const ClassSummary&) = default;
};

struct ScanReport {
  std::int64_t ground = 0;
  std::size_t k = 0;
  std::uint64_t subsets = 0;
  std::size_t bound = 0;
  ClassSummary primary;
  std::optional<ClassSummary> comparison;
  /// Subsets classified differently at the two values of c.
  std::uint64_t divergences = 0;
  /// Subsets where certified_count ≠ C(k,2) − #distinct differences.
  std::uint64_t cross_check_failures = 0;
  /// Distinct difference patterns met (each classified once).
  std::uint64_t distinct_patterns = 0;

  [[nodiscard]] bool bound_respected() const;
  /// Cross-checks clean and every witness re-verified.
  [[nodiscard]] bool consistent() const;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

/// Classifies every k-subset of {1, ..., N}. Throws BudgetExceeded when
/// C(N, k) > budget and std::invalid_argument unless 2 ≤ k ≤ N.
ScanReport scan_ground(std::int64_t N, std::size_t k, const Rational& c,
                       const std::optional<Rational>& compare_c = std::nullopt,
                       std::uint64_t budget = default_subset_budget(), unsigned threads = 1);

struct StarCheck {
  std::size_t p = 0;
  std::vector<std::int64_t> points;
  std::size_t certified = 0;
  std::size_t expected = 0;
  /// from_points(points) equals star_configuration(2p, p).
  bool matches_star = false;
  bool good = false;

  [[nodiscard]] bool passed() const { return certified == expected && matches_star && good; }
};

/// Realizes the size-2p star as S ∓ 4^j (j = 1..p, S = 4^(p+1)) for each p
/// in [p_min, p_max]. Throws std::invalid_argument outside 2 ≤ p ≤ 8.
std::vector<StarCheck> star_bound_check(std::size_t p_min, std::size_t p_max);

struct OddEqualityCase {
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  std::vector<std::int64_t> points;
  std::size_t rank = 0;
  std::size_t certified = 0;
  std::size_t expected = 0;
  /// (k,1), (k,3), (k,6) in 1-based indexing are all certified.
  bool required_pairs = false;
  bool good = false;

  [[nodiscard]] bool passed() const { return certified == expected && required_pairs && good; }
};

/// The configuration of a size-(k−1) star on x1..x_{k−1} plus x_k − x1 = x3 − x5.
KConfiguration odd_equality_configuration(std::size_t k);

/// Searches seeded random star offsets for points realizing exactly
/// odd_equality_configuration(k). Throws std::invalid_argument unless k is odd
/// and 7 ≤ k ≤ 13, std::runtime_error if no realization is found.
OddEqualityCase odd_equality_case(std::size_t k, std::uint64_t seed = 0, std::size_t max_attempts = 10'000);

struct PropertyTally {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failed = 0;
};

struct LemmaSuiteReport {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  /// Families whose span was not 2-good (figures) or instances with no 2-good sample.
  std::size_t skipped = 0;
  std::vector<PropertyTally> properties;
  std::vector<std::string> counterexamples;

  [[nodiscard]] bool passed() const { return counterexamples.empty(); }
  [[nodiscard]] const PropertyTally& tally(const std::string& name) const;
};

/// Runs the structure, six-variable, 2-full intersection, box-subbox,
/// hub-size and 3-implication checks on the figure families and on
/// `instance_count` seeded point samples.
LemmaSuiteReport lemma_property_suite(std::uint64_t seed, std::size_t instance_count);

}  // namespace dlp
