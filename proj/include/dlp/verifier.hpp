#pragma once

// Difference sets and brute-force (k, ℓ)-local-property verification.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlp {

/// An exhaustive scan would visit more subsets than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 100'000'000;

/// Budget from DLP_SUBSET_BUDGET when set to a positive integer, else the default.
std::uint64_t default_subset_budget();

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Sorted positive differences |a − b| over distinct a, b. Throws std::invalid_argument when |A| < 2.
std::vector<std::int64_t> difference_set(std::span<const std::int64_t> a);

struct LocalPropertyVerdict {
  bool holds = true;
  std::size_t min_differences = 0;
  /// Lexicographically first k-subset attaining the minimum.
  std::vector<std::int64_t> witness;
};

/// Exact minimum of |A′ − A′| over k-subsets A′, found by branch and bound;
/// holds iff the minimum is ≥ ℓ. Throws BudgetExceeded when C(|A|, k) > budget.
LocalPropertyVerdict check_local_property(std::span<const std::int64_t> a, std::size_t k, std::size_t l,
                                          std::uint64_t budget = default_subset_budget(), unsigned threads = 1);

struct CrossCheckReport {
  std::size_t distinct_differences = 0;
  std::size_t certified = 0;
  std::size_t pairs = 0;
  [[nodiscard]] bool consistent() const { return distinct_differences + certified == pairs; }
};

/// Distinct differences counted directly against C(k,2) − certified pairs of the configuration.
CrossCheckReport cross_check(std::span<const std::int64_t> points);

/// α·s1 + β·s2 + γ·s3 = 0 with distinct s's and nonzero |α|, |β|, |γ| ≤ κ summing to 0.
struct SmallRelation {
  std::int64_t s1 = 0, s2 = 0, s3 = 0;
  int alpha = 0, beta = 0, gamma = 0;
  [[nodiscard]] std::string to_string() const;
};

std::optional<SmallRelation> find_small_relation(std::span<const std::int64_t> a, int kappa);

}  // namespace dlp
