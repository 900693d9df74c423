#pragma once

// Minimal implications among explicit lists of difference equalities.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dlp/configuration.hpp"
#include "dlp/goodness.hpp"

namespace dlp {

/// Independent premises whose combination with all-nonzero coefficients is a
/// difference equality outside the premises.
struct MinimalImplication {
  std::vector<DifferenceEquality> premises;
  /// Positions of the premises in the list they were drawn from.
  std::vector<std::size_t> premise_indices;
  /// Difference-equality content with positive leading coefficient.
  ExactVector product;
  std::vector<Rational> coefficients;

  [[nodiscard]] std::size_t t() const { return premises.size(); }
};

inline constexpr std::size_t kMaxImplicationPremises = 16;

/// Every difference equality minimally implied by exactly `premises`, in
/// increasing support size, then lexicographic support, then fixed shape order.
/// Empty when the premises are dependent.
std::vector<MinimalImplication> produced_equalities(std::span<const DifferenceEquality> premises);

/// One entry per subset of T (by size, then lexicographically) of size ≤ max_t
/// that minimally implies some difference equality; the entry carries the first
/// produced equality. Throws std::invalid_argument for |T| > 16 or max_t > |T|.
std::vector<MinimalImplication> minimal_implications(std::span<const DifferenceEquality> T, std::size_t max_t);

struct StructureReport {
  /// Premises (and so premises ∪ product) form a 2-good configuration.
  bool precondition = false;
  GoodnessReport goodness;

  bool variable_counts = false;
  /// Variables appearing among the premises, with appearances among premises + product.
  std::vector<std::pair<std::size_t, std::size_t>> appearances;
  /// 2t + 1 variables with one appearing four times.
  bool full = false;

  bool unit_coefficients = false;

  bool unique_product = false;
  std::optional<ExactVector> second_product;

  [[nodiscard]] bool clauses_hold() const { return variable_counts && unit_coefficients && unique_product; }
  [[nodiscard]] bool passed() const { return precondition && clauses_hold(); }
  /// One line per failed item; empty when everything passed.
  [[nodiscard]] std::string failures() const;
};

/// Variable-count, ±1-coefficient and unique-product clauses, plus the 2-good precondition.
StructureReport check_structure(const MinimalImplication& m);

/// |union of supports| = 2|T| + 1. Throws std::invalid_argument on dependent input.
bool is_2_full(std::span<const DifferenceEquality> T);

enum class Alignment { sum_aligned, difference_aligned, neither };

std::string to_string(Alignment a);

/// Relation of two equalities through x_i. The shared non-i variable is
/// difference-aligned when it carries the sign opposite to x_i in both contents
/// and sum-aligned when it carries the same sign in both. Throws
/// std::invalid_argument unless x_i has coefficient ±1 in both.
Alignment classify_alignment(const DifferenceEquality& a, const DifferenceEquality& b, std::size_t i);

/// Indices j with (i, j) certified at x_i by the span of T: for every implied
/// difference equality whose x_i coefficient is ±1, normalized to +1, the
/// variables on the other side of the equation from x_i.
std::vector<std::size_t> partners_certified_at(std::span<const DifferenceEquality> T, std::size_t i);

}  // namespace dlp
