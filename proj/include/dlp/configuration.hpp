#pragma once

// Difference equalities and the k-configuration formed by k numbers.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlp/exactlin.hpp"

namespace dlp {

class InvalidPoints : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// x_{i1} − x_{i2} = x_{i3} − x_{i4} (0-based indices, not necessarily distinct).
struct DifferenceEquality {
  std::array<std::size_t, 4> indices{};
  /// e_{i1} − e_{i2} − e_{i3} + e_{i4}; never zero.
  ExactVector content;

  /// Throws std::invalid_argument for a trivial equation or an index ≥ k.
  static DifferenceEquality make(std::size_t k, std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4);
  /// The difference equality whose content is exactly `content` (orientation kept), if any.
  static std::optional<DifferenceEquality> from_content(const ExactVector& content);

  [[nodiscard]] std::size_t dim() const { return content.dim(); }
  [[nodiscard]] VariableSet variables() const { return content.support(); }
  /// "x1 - x2 = x3 - x4"
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const DifferenceEquality& a, const DifferenceEquality& b) {
    return a.content == b.content;
  }
};

/// True iff v is the content of some (nontrivial) difference equality.
bool is_difference_content(const ExactVector& v);

/// Ordered pair (i, j), 0-based, with i > j.
struct CertifiedPair {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const CertifiedPair&, const CertifiedPair&) = default;
  friend auto operator<=>(const CertifiedPair&, const CertifiedPair&) = default;
};

/// A subspace of zero-sum contents on k variables, stored only as its canonical basis.
class KConfiguration {
 public:
  /// The empty (rank-0) configuration on k variables.
  explicit KConfiguration(std::size_t k);

  /// Span of all difference equalities satisfied by the tuple. Points must be
  /// pairwise distinct and 2 ≤ k ≤ 64.
  static KConfiguration from_points(std::span<const Rational> points);
  static KConfiguration from_points(std::span<const std::int64_t> points);
  static KConfiguration from_equalities(std::size_t k, std::span<const DifferenceEquality> equalities);
  /// Every content must be zero-sum with dimension k.
  static KConfiguration from_contents(std::size_t k, std::span<const ExactVector> contents);

  [[nodiscard]] std::size_t k() const { return basis_.ambient_dim(); }
  [[nodiscard]] std::size_t rank() const { return basis_.rank(); }
  [[nodiscard]] const ExactBasis& basis() const { return basis_; }

  /// True iff the configuration implies the equation with content `eq`.
  [[nodiscard]] bool implies(const ExactVector& eq) const;
  /// implies(e_a + e_b − e_c − e_d), evaluated without building the vector.
  [[nodiscard]] bool implies_sum_equality(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const;
  /// implies(e_i − e_j) for i ≠ j.
  [[nodiscard]] bool implies_equal(std::size_t i, std::size_t j) const;

  [[nodiscard]] bool certifies(CertifiedPair pair) const;
  /// Certified pairs in scan order (2,1), (3,1), (3,2), (4,1), ...
  [[nodiscard]] std::vector<CertifiedPair> certified_pairs() const;
  [[nodiscard]] std::size_t certified_count() const;

  /// Renames variable i to sigma[i]. Throws std::invalid_argument unless sigma is a bijection on [k].
  [[nodiscard]] KConfiguration permute(std::span<const std::size_t> sigma) const;

  friend bool operator==(const KConfiguration& a, const KConfiguration& b) { return a.basis_ == b.basis_; }

 private:
  explicit KConfiguration(ExactBasis basis);
  // Σ coefficient·solution over a sparse vector; zero for every solution iff implied.
  [[nodiscard]] bool implies_sparse(std::span<const std::pair<std::size_t, int>> terms) const;

  ExactBasis basis_;
  std::vector<ExactVector> solutions_;
};

/// Rearranges points so that result[sigma[i]] = points[i].
template <typename T>
std::vector<T> permute_points(std::span<const T> points, std::span<const std::size_t> sigma) {
  std::vector<T> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.at(sigma[i]) = points[i];
  return out;
}

/// Number of distinct values |a_i − a_j| over i ≠ j.
std::size_t distinct_difference_count(std::span<const std::int64_t> points);

/// Equal-difference pattern of a tuple: for each pair i < j (row-major), the
/// orientation of a_i − a_j and a label shared exactly by pairs with the same
/// |a_i − a_j|. Tuples with equal patterns form the same configuration.
using PatternKey = std::u16string;
PatternKey difference_pattern(std::span<const std::int64_t> points);

/// C(n, 2)
constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace dlp
