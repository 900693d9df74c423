#include "dlp/configuration.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace dlp {

// ---------------------------------------------------------------------------
// DifferenceEquality

DifferenceEquality DifferenceEquality::make(std::size_t k, std::size_t i1, std::size_t i2, std::size_t i3,
                                            std::size_t i4) {
  if (i1 >= k || i2 >= k || i3 >= k || i4 >= k) {
    throw std::invalid_argument("DifferenceEquality: index out of range");
  }
  ExactVector c(k);
  c[i1] += 1;
  c[i2] -= 1;
  c[i3] -= 1;
  c[i4] += 1;
  if (c.is_zero()) throw std::invalid_argument("DifferenceEquality: trivial equation");
  return DifferenceEquality{{i1, i2, i3, i4}, std::move(c)};
}

std::optional<DifferenceEquality> DifferenceEquality::from_content(const ExactVector& content) {
  const std::size_t k = content.dim();
  if (k > kMaxVariables || !content.is_zero_sum()) return std::nullopt;
  std::vector<std::size_t> plus1;
  std::vector<std::size_t> minus1;
  std::vector<std::size_t> plus2;
  std::vector<std::size_t> minus2;
  for (std::size_t i = 0; i < k; ++i) {
    const Integer& c = content[i];
    if (c == 0) continue;
    if (c == 1) {
      plus1.push_back(i);
    } else if (c == -1) {
      minus1.push_back(i);
    } else if (c == 2) {
      plus2.push_back(i);
    } else if (c == -2) {
      minus2.push_back(i);
    } else {
      return std::nullopt;
    }
  }
  const auto shape = std::array{plus1.size(), minus1.size(), plus2.size(), minus2.size()};
  using S = std::array<std::size_t, 4>;
  if (shape == S{2, 2, 0, 0}) {
    // x_p − x_n = x_n' − x_p'
    return make(k, plus1[0], minus1[0], minus1[1], plus1[1]);
  }
  if (shape == S{0, 2, 1, 0}) {
    // x_a − x_b = x_c − x_a
    return make(k, plus2[0], minus1[0], minus1[1], plus2[0]);
  }
  if (shape == S{2, 0, 0, 1}) {
    // x_b − x_a = x_a − x_c
    return make(k, plus1[0], minus2[0], minus2[0], plus1[1]);
  }
  if (shape == S{1, 1, 0, 0}) {
    // x_p − x_n = x_p − x_p
    return make(k, plus1[0], minus1[0], plus1[0], plus1[0]);
  }
  if (shape == S{0, 0, 1, 1}) {
    // x_p − x_n = x_n − x_p
    return make(k, plus2[0], minus2[0], minus2[0], plus2[0]);
  }
  return std::nullopt;
}

std::string DifferenceEquality::to_string() const {
  std::ostringstream out;
  out << "x" << indices[0] + 1 << " - x" << indices[1] + 1 << " = x" << indices[2] + 1 << " - x" << indices[3] + 1;
  return out.str();
}

bool is_difference_content(const ExactVector& v) { return DifferenceEquality::from_content(v).has_value(); }

// ---------------------------------------------------------------------------
// KConfiguration

namespace {

void check_k(std::size_t k) {
  if (k < 2 || k > kMaxVariables) {
    throw InvalidPoints("k-configuration needs 2 <= k <= 64 points (got " + std::to_string(k) + ")");
  }
}

// One content per consecutive pair inside each group of equal positive differences.
template <typename T, typename Diff>
std::vector<ExactVector> equal_difference_contents(std::span<const T> points, Diff diff) {
  const std::size_t k = points.size();
  using D = decltype(diff(points[0], points[0]));
  struct Entry {
    D value;
    std::size_t hi;
    std::size_t lo;
  };
  std::vector<Entry> pairs;
  pairs.reserve(pair_count(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (points[i] > points[j]) pairs.push_back({diff(points[i], points[j]), i, j});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
  std::vector<ExactVector> contents;
  for (std::size_t s = 1; s < pairs.size(); ++s) {
    if (pairs[s].value != pairs[s - 1].value) continue;
    const auto& a = pairs[s - 1];
    const auto& b = pairs[s];
    contents.push_back(DifferenceEquality::make(k, a.hi, a.lo, b.hi, b.lo).content);
  }
  return contents;
}

template <typename T>
void check_distinct(std::span<const T> points) {
  std::vector<T> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidPoints("repeated points");
  }
}

}  // namespace

KConfiguration::KConfiguration(std::size_t k) : KConfiguration(ExactBasis(k)) {}

KConfiguration::KConfiguration(ExactBasis basis) : basis_(std::move(basis)), solutions_(solution_space(basis_)) {}

KConfiguration KConfiguration::from_points(std::span<const Rational> points) {
  check_k(points.size());
  // Values built from (num, den) without canonicalize() compare incorrectly.
  std::vector<Rational> canonical(points.begin(), points.end());
  for (auto& p : canonical) p.canonicalize();
  const std::span<const Rational> view(canonical);
  check_distinct(view);
  const auto contents =
      equal_difference_contents(view, [](const Rational& a, const Rational& b) { return Rational(a - b); });
  return KConfiguration(reduce(contents, points.size()));
}

KConfiguration KConfiguration::from_points(std::span<const std::int64_t> points) {
  check_k(points.size());
  check_distinct(points);
  const auto [lo, hi] = std::minmax_element(points.begin(), points.end());
  if (*lo < std::numeric_limits<std::int64_t>::min() / 2 || *hi > std::numeric_limits<std::int64_t>::max() / 2) {
    std::vector<Rational> wide;
    wide.reserve(points.size());
    for (auto p : points) wide.emplace_back(static_cast<long>(p));
    return from_points(std::span<const Rational>(wide));
  }
  const auto contents = equal_difference_contents(points, [](std::int64_t a, std::int64_t b) { return a - b; });
  return KConfiguration(reduce(contents, points.size()));
}

KConfiguration KConfiguration::from_equalities(std::size_t k, std::span<const DifferenceEquality> equalities) {
  std::vector<ExactVector> contents;
  contents.reserve(equalities.size());
  for (const auto& e : equalities) contents.push_back(e.content);
  return from_contents(k, contents);
}

KConfiguration KConfiguration::from_contents(std::size_t k, std::span<const ExactVector> contents) {
  if (k > kMaxVariables) throw DimensionMismatch("k-configuration: more than 64 variables");
  for (const auto& c : contents) {
    if (c.dim() != k) throw DimensionMismatch("k-configuration: content dimension mismatch");
    if (!c.is_zero_sum()) throw std::invalid_argument("k-configuration: content " + c.to_string() + " is not zero-sum");
  }
  return KConfiguration(reduce(contents, k));
}

bool KConfiguration::implies(const ExactVector& eq) const { return member(basis_, eq); }

bool KConfiguration::implies_sparse(std::span<const std::pair<std::size_t, int>> terms) const {
  Integer acc;
  for (const auto& z : solutions_) {
    acc = 0;
    for (const auto& [idx, coef] : terms) {
      if (coef == 1) {
        acc += z[idx];
      } else if (coef == -1) {
        acc -= z[idx];
      } else {
        acc += coef * z[idx];
      }
    }
    if (sgn(acc) != 0) return false;
  }
  return true;
}

bool KConfiguration::implies_sum_equality(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
  const std::pair<std::size_t, int> terms[] = {{a, 1}, {b, 1}, {c, -1}, {d, -1}};
  return implies_sparse(terms);
}

bool KConfiguration::implies_equal(std::size_t i, std::size_t j) const {
  const std::pair<std::size_t, int> terms[] = {{i, 1}, {j, -1}};
  return implies_sparse(terms);
}

bool KConfiguration::certifies(CertifiedPair pair) const {
  const auto [i, j] = pair;
  if (i >= k() || j >= i) throw std::invalid_argument("certifies: pair must satisfy k > i > j");
  // x_i − x_j = x_{i'} − x_{j'}  ⟺  content e_i + e_{j'} − e_j − e_{i'}.
  for (std::size_t ip = 0; ip < i; ++ip) {
    for (std::size_t jp = 0; jp < i; ++jp) {
      if (ip == jp) continue;
      if (implies_sum_equality(i, jp, j, ip)) return true;
    }
  }
  for (std::size_t ip = 0; ip < j; ++ip) {
    // j' = i: x_i − x_j = x_{i'} − x_i
    const std::pair<std::size_t, int> terms[] = {{i, 2}, {j, -1}, {ip, -1}};
    if (implies_sparse(terms)) return true;
  }
  return false;
}

std::vector<CertifiedPair> KConfiguration::certified_pairs() const {
  std::vector<CertifiedPair> out;
  if (rank() == 0) return out;
  for (std::size_t i = 1; i < k(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (certifies({i, j})) out.push_back({i, j});
    }
  }
  return out;
}

std::size_t KConfiguration::certified_count() const { return certified_pairs().size(); }

KConfiguration KConfiguration::permute(std::span<const std::size_t> sigma) const {
  const std::size_t n = k();
  if (sigma.size() != n) throw std::invalid_argument("permute: permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (auto s : sigma) {
    if (s >= n || seen[s]) throw std::invalid_argument("permute: not a bijection");
    seen[s] = true;
  }
  std::vector<ExactVector> renamed;
  renamed.reserve(rank());
  for (const auto& row : basis_.rows()) {
    ExactVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[sigma[i]] = row[i];
    renamed.push_back(std::move(w));
  }
  return KConfiguration(reduce(renamed, n));
}

std::size_t distinct_difference_count(std::span<const std::int64_t> points) {
  std::vector<std::int64_t> diffs;
  diffs.reserve(pair_count(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) diffs.push_back(points[i] > points[j] ? points[i] - points[j] : points[j] - points[i]);
  }
  std::sort(diffs.begin(), diffs.end());
  return static_cast<std::size_t>(std::unique(diffs.begin(), diffs.end()) - diffs.begin());
}

PatternKey difference_pattern(std::span<const std::int64_t> points) {
  const std::size_t k = points.size();
  std::vector<std::int64_t> seen;
  PatternKey key;
  key.reserve(pair_count(k));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::int64_t d = points[i] > points[j] ? points[i] - points[j] : points[j] - points[i];
      std::size_t label = std::find(seen.begin(), seen.end(), d) - seen.begin();
      if (label == seen.size()) seen.push_back(d);
      key.push_back(static_cast<char16_t>(2 * label + (points[i] > points[j] ? 1 : 0)));
    }
  }
  return key;
}

}  // namespace dlp
