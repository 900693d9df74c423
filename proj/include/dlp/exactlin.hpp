#pragma once

// Exact linear algebra over the rationals on integer-coefficient row vectors.
//
// Every subspace is carried by a canonical basis: reduced row echelon form
// with each row rescaled to a primitive integer vector whose pivot entry is
// positive. Two generating sets span the same subspace iff their canonical
// bases are identical, so equality of subspaces is plain sequence equality.

#include <gmpxx.h>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Largest ambient dimension supported by the bitmask-based variable sets.
inline constexpr std::size_t kMaxVariables = 64;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A set of variable indices (0-based) in an ambient space of at most 64 variables.
class VariableSet {
 public:
  constexpr VariableSet() = default;
  constexpr explicit VariableSet(std::uint64_t bits) : bits_(bits) {}

  static VariableSet of(std::initializer_list<std::size_t> indices);
  /// {0, 1, ..., k-1}
  static VariableSet first(std::size_t k);

  [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
  [[nodiscard]] constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1U; }
  [[nodiscard]] constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
  [[nodiscard]] constexpr bool is_subset_of(VariableSet other) const { return (bits_ & ~other.bits_) == 0; }
  void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  [[nodiscard]] std::vector<std::size_t> indices() const;
  /// "{x1,x3,x5}" with 1-based variable names.
  [[nodiscard]] std::string to_string() const;

  friend constexpr VariableSet operator|(VariableSet a, VariableSet b) { return VariableSet{a.bits_ | b.bits_}; }
  friend constexpr VariableSet operator&(VariableSet a, VariableSet b) { return VariableSet{a.bits_ & b.bits_}; }
  friend constexpr bool operator==(VariableSet a, VariableSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Integer row vector, one coefficient per variable x_1..x_k.
class ExactVector {
 public:
  ExactVector() = default;
  explicit ExactVector(std::size_t dim) : coeffs_(dim) {}
  explicit ExactVector(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {}
  ExactVector(std::initializer_list<long> coeffs);

  static ExactVector unit(std::size_t dim, std::size_t i);

  [[nodiscard]] std::size_t dim() const { return coeffs_.size(); }
  [[nodiscard]] const Integer& operator[](std::size_t i) const { return coeffs_[i]; }
  Integer& operator[](std::size_t i) { return coeffs_[i]; }
  [[nodiscard]] std::span<const Integer> coefficients() const { return coeffs_; }

  [[nodiscard]] bool is_zero() const;
  /// True iff the coefficients sum to zero (every implied equation has this shape).
  [[nodiscard]] bool is_zero_sum() const;
  [[nodiscard]] VariableSet support() const;
  /// Index of the first nonzero coefficient, or dim() for the zero vector.
  [[nodiscard]] std::size_t leading_index() const;

  /// Divides out the gcd of all entries and makes the leading entry positive.
  [[nodiscard]] ExactVector primitive() const;

  /// "x1 - 2x3 + x5" with 1-based variable names; "0" for the zero vector.
  [[nodiscard]] std::string to_string() const;

  ExactVector& operator+=(const ExactVector& other);
  ExactVector& operator-=(const ExactVector& other);
  ExactVector& operator*=(const Integer& scalar);
  friend ExactVector operator+(ExactVector a, const ExactVector& b) { return a += b; }
  friend ExactVector operator-(ExactVector a, const ExactVector& b) { return a -= b; }
  friend ExactVector operator*(const Integer& s, ExactVector v) { return v *= s; }
  friend ExactVector operator-(ExactVector v) { return v *= Integer{-1}; }

  friend bool operator==(const ExactVector& a, const ExactVector& b) { return a.coeffs_ == b.coeffs_; }
  /// Lexicographic order on coefficient sequences (dimension first).
  friend bool operator<(const ExactVector& a, const ExactVector& b);

 private:
  std::vector<Integer> coeffs_;
};

/// Canonical basis of a rational subspace of Q^k.
class ExactBasis {
 public:
  explicit ExactBasis(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_dim_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] std::span<const ExactVector> rows() const { return rows_; }
  /// Pivot column of each row, strictly increasing.
  [[nodiscard]] std::span<const std::size_t> pivots() const { return pivots_; }
  /// Union of the supports of all rows.
  [[nodiscard]] VariableSet support() const;

  friend bool operator==(const ExactBasis& a, const ExactBasis& b) {
    return a.ambient_dim_ == b.ambient_dim_ && a.rows_ == b.rows_;
  }

 private:
  friend class EchelonBuilder;
  std::size_t ambient_dim_;
  std::vector<ExactVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Incremental fraction-free reduction into canonical form.
///
/// Rows are kept fully reduced (each pivot column is zero outside its own row)
/// and primitive with a positive pivot, so the state is canonical after every
/// insertion.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t ambient_dim) : basis_(ambient_dim) {}
  explicit EchelonBuilder(ExactBasis basis) : basis_(std::move(basis)) {}

  /// Adds a vector to the span; returns true iff the rank grew.
  bool insert(const ExactVector& v);
  [[nodiscard]] bool contains(const ExactVector& v) const;
  [[nodiscard]] std::size_t rank() const { return basis_.rank(); }
  [[nodiscard]] const ExactBasis& basis() const& { return basis_; }
  [[nodiscard]] ExactBasis basis() && { return std::move(basis_); }

 private:
  // Reduces v in place against the current rows; v becomes zero iff it was in the span.
  void reduce_in_place(std::vector<Integer>& v) const;
  ExactBasis basis_;
};

/// Canonical basis of the span of `vectors` in Q^ambient_dim.
ExactBasis reduce(std::span<const ExactVector> vectors, std::size_t ambient_dim);
/// Canonical basis of the span; `vectors` must be nonempty so the dimension is known.
ExactBasis reduce(std::span<const ExactVector> vectors);

/// True iff v lies in the rational span of the basis.
bool member(const ExactBasis& basis, const ExactVector& v);

struct Section {
  std::size_t dim = 0;
  ExactBasis basis;
};

/// The subspace {v in span : support(v) ⊆ vars} with its dimension.
Section section_dim(const ExactBasis& basis, VariableSet vars);

/// Dimension of the section only (no canonical basis is built).
std::size_t section_rank(const ExactBasis& basis, VariableSet vars);

/// Basis of the solution space {x : row · x = 0 for every row}, as primitive
/// integer vectors, one per non-pivot column. A vector lies in the span iff it
/// is orthogonal to all of them.
std::vector<ExactVector> solution_space(const ExactBasis& basis);

/// Coefficients c with target = Σ c_i generators_i, or nullopt when target is
/// outside the span. Throws std::invalid_argument when the generators are
/// linearly dependent (the combination would not be unique).
std::optional<std::vector<Rational>> solve_combination(std::span<const ExactVector> generators,
                                                       const ExactVector& target);

}  // namespace dlp
