#include "dlp/exactlin.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dlp {

namespace {

void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (expected " << expected << ", got " << actual << ")";
    throw DimensionMismatch(msg.str());
  }
}

std::size_t first_nonzero(const std::vector<Integer>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) return i;
  }
  return v.size();
}

// Divide by the content gcd; flip the sign so the first nonzero entry is positive.
void normalize(std::vector<Integer>& v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (g == 0) return;
  const std::size_t lead = first_nonzero(v);
  if (sgn(v[lead]) < 0) g = -g;
  if (g == 1) return;
  for (auto& x : v) {
    if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

// row := (p/g)·row − (row[col]/g)·pivot_row with g = gcd(p, row[col]), p = pivot_row[col].
void eliminate(std::vector<Integer>& row, const std::vector<Integer>& pivot_row, std::size_t col) {
  if (sgn(row[col]) == 0) return;
  Integer g;
  mpz_gcd(g.get_mpz_t(), pivot_row[col].get_mpz_t(), row[col].get_mpz_t());
  Integer a;  // multiplier of row
  Integer b;  // multiplier of pivot_row
  mpz_divexact(a.get_mpz_t(), pivot_row[col].get_mpz_t(), g.get_mpz_t());
  mpz_divexact(b.get_mpz_t(), row[col].get_mpz_t(), g.get_mpz_t());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (a != 1) row[j] *= a;
    if (sgn(pivot_row[j]) != 0) mpz_submul(row[j].get_mpz_t(), b.get_mpz_t(), pivot_row[j].get_mpz_t());
  }
  row[col] = 0;
}

std::vector<Integer> to_coeffs(const ExactVector& v) {
  return {v.coefficients().begin(), v.coefficients().end()};
}

}  // namespace

// ---------------------------------------------------------------------------
// VariableSet

VariableSet VariableSet::of(std::initializer_list<std::size_t> indices) {
  VariableSet s;
  for (auto i : indices) s.insert(i);
  return s;
}

VariableSet VariableSet::first(std::size_t k) {
  if (k > kMaxVariables) throw std::invalid_argument("VariableSet: more than 64 variables");
  return VariableSet{k == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1)};
}

std::vector<std::size_t> VariableSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (auto b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

std::string VariableSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (auto i : indices()) {
    if (!first) out += ",";
    out += "x" + std::to_string(i + 1);
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// ExactVector

ExactVector::ExactVector(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
}

ExactVector ExactVector::unit(std::size_t dim, std::size_t i) {
  ExactVector v(dim);
  v.coeffs_.at(i) = 1;
  return v;
}

bool ExactVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool ExactVector::is_zero_sum() const {
  Integer s = 0;
  for (const auto& x : coeffs_) s += x;
  return sgn(s) == 0;
}

VariableSet ExactVector::support() const {
  if (coeffs_.size() > kMaxVariables) throw DimensionMismatch("support: dimension exceeds 64");
  VariableSet s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) s.insert(i);
  }
  return s;
}

std::size_t ExactVector::leading_index() const { return first_nonzero(coeffs_); }

ExactVector ExactVector::primitive() const {
  auto c = coeffs_;
  normalize(c);
  return ExactVector{std::move(c)};
}

std::string ExactVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Integer& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    Integer mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (mag != 1) out += mag.get_str();
    out += "x" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

ExactVector& ExactVector::operator+=(const ExactVector& other) {
  require_dim(dim(), other.dim(), "ExactVector +");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ExactVector& ExactVector::operator-=(const ExactVector& other) {
  require_dim(dim(), other.dim(), "ExactVector -");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

ExactVector& ExactVector::operator*=(const Integer& scalar) {
  for (auto& x : coeffs_) x *= scalar;
  return *this;
}

bool operator<(const ExactVector& a, const ExactVector& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const int c = cmp(a.coeffs_[i], b.coeffs_[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// ExactBasis / EchelonBuilder

VariableSet ExactBasis::support() const {
  VariableSet s;
  for (const auto& r : rows_) s = s | r.support();
  return s;
}

void EchelonBuilder::reduce_in_place(std::vector<Integer>& v) const {
  const auto& rows = basis_.rows_;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t p = basis_.pivots_[r];
    if (sgn(v[p]) == 0) continue;
    // ExactVector keeps its storage private; reach it through coefficients().
    const auto row = rows[r].coefficients();
    Integer g;
    mpz_gcd(g.get_mpz_t(), row[p].get_mpz_t(), v[p].get_mpz_t());
    Integer a;
    Integer b;
    mpz_divexact(a.get_mpz_t(), row[p].get_mpz_t(), g.get_mpz_t());
    mpz_divexact(b.get_mpz_t(), v[p].get_mpz_t(), g.get_mpz_t());
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (a != 1) v[j] *= a;
      if (sgn(row[j]) != 0) mpz_submul(v[j].get_mpz_t(), b.get_mpz_t(), row[j].get_mpz_t());
    }
    v[p] = 0;
  }
}

bool EchelonBuilder::contains(const ExactVector& v) const {
  require_dim(basis_.ambient_dim(), v.dim(), "member");
  if (basis_.rank() == 0) return v.is_zero();
  auto w = to_coeffs(v);
  reduce_in_place(w);
  return std::all_of(w.begin(), w.end(), [](const Integer& x) { return sgn(x) == 0; });
}

bool EchelonBuilder::insert(const ExactVector& v) {
  require_dim(basis_.ambient_dim(), v.dim(), "reduce");
  auto w = to_coeffs(v);
  reduce_in_place(w);
  const std::size_t p = first_nonzero(w);
  if (p == w.size()) return false;
  normalize(w);

  auto& rows = basis_.rows_;
  auto& pivots = basis_.pivots_;
  for (auto& row : rows) {
    auto coeffs = to_coeffs(row);
    if (sgn(coeffs[p]) == 0) continue;
    eliminate(coeffs, w, p);
    normalize(coeffs);
    row = ExactVector{std::move(coeffs)};
  }
  const auto pos = std::lower_bound(pivots.begin(), pivots.end(), p) - pivots.begin();
  pivots.insert(pivots.begin() + pos, p);
  rows.insert(rows.begin() + pos, ExactVector{std::move(w)});
  return true;
}

ExactBasis reduce(std::span<const ExactVector> vectors, std::size_t ambient_dim) {
  EchelonBuilder builder(ambient_dim);
  for (const auto& v : vectors) builder.insert(v);
  return std::move(builder).basis();
}

ExactBasis reduce(std::span<const ExactVector> vectors) {
  if (vectors.empty()) throw std::invalid_argument("reduce: empty input has no ambient dimension");
  return reduce(vectors, vectors.front().dim());
}

bool member(const ExactBasis& basis, const ExactVector& v) {
  // The basis is already canonical; reuse it without re-inserting rows.
  return EchelonBuilder(basis).contains(v);
}

namespace {

// Column order placing the variables outside `vars` first.
std::vector<std::size_t> outside_first_order(std::size_t k, VariableSet vars) {
  std::vector<std::size_t> order;
  order.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (!vars.contains(j)) order.push_back(j);
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (vars.contains(j)) order.push_back(j);
  }
  return order;
}

void check_vars(const ExactBasis& basis, VariableSet vars) {
  const std::size_t k = basis.ambient_dim();
  if (k < kMaxVariables && !vars.is_subset_of(VariableSet::first(k))) {
    throw DimensionMismatch("section_dim: variable set exceeds ambient dimension");
  }
}

}  // namespace

Section section_dim(const ExactBasis& basis, VariableSet vars) {
  check_vars(basis, vars);
  const std::size_t k = basis.ambient_dim();
  const auto order = outside_first_order(k, vars);
  const std::size_t outside = k - vars.size();

  EchelonBuilder permuted(k);
  for (const auto& row : basis.rows()) {
    ExactVector p(k);
    for (std::size_t j = 0; j < k; ++j) p[j] = row[order[j]];
    permuted.insert(p);
  }
  // Rows pivoting inside the trailing block vanish on every outside column.
  std::vector<ExactVector> inside;
  const auto& pb = permuted.basis();
  for (std::size_t r = 0; r < pb.rank(); ++r) {
    if (pb.pivots()[r] < outside) continue;
    ExactVector back(k);
    for (std::size_t j = 0; j < k; ++j) back[order[j]] = pb.rows()[r][j];
    inside.push_back(std::move(back));
  }
  Section s;
  s.dim = inside.size();
  s.basis = reduce(inside, k);
  return s;
}

std::size_t section_rank(const ExactBasis& basis, VariableSet vars) {
  check_vars(basis, vars);
  const std::size_t k = basis.ambient_dim();
  // dim(section) = rank − rank(projection onto the outside columns).
  EchelonBuilder projected(k);
  for (const auto& row : basis.rows()) {
    ExactVector p = row;
    for (auto j : vars.indices()) p[j] = 0;
    projected.insert(p);
  }
  return basis.rank() - projected.rank();
}

std::vector<ExactVector> solution_space(const ExactBasis& basis) {
  const std::size_t k = basis.ambient_dim();
  std::vector<bool> is_pivot(k, false);
  for (auto p : basis.pivots()) is_pivot[p] = true;
  std::vector<ExactVector> out;
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    Integer scale = 1;
    for (std::size_t r = 0; r < basis.rank(); ++r) {
      if (sgn(basis.rows()[r][f]) != 0) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), basis.rows()[r][basis.pivots()[r]].get_mpz_t());
      }
    }
    ExactVector z(k);
    z[f] = scale;
    for (std::size_t r = 0; r < basis.rank(); ++r) {
      const auto& row = basis.rows()[r];
      if (sgn(row[f]) == 0) continue;
      const std::size_t p = basis.pivots()[r];
      z[p] = -row[f] * (scale / row[p]);
    }
    out.push_back(z.primitive());
  }
  return out;
}

std::optional<std::vector<Rational>> solve_combination(std::span<const ExactVector> generators,
                                                       const ExactVector& target) {
  const std::size_t t = generators.size();
  const std::size_t k = target.dim();
  for (const auto& g : generators) require_dim(k, g.dim(), "solve_combination");

  // Augmented k × (t+1) system: columns are the generators, last column the target.
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(t + 1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < t; ++j) m[i][j] = generators[j][i];
    m[i][t] = target[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col_row(t, k);
  for (std::size_t col = 0; col < t; ++col) {
    std::size_t sel = row;
    while (sel < k && sgn(m[sel][col]) == 0) ++sel;
    if (sel == k) throw std::invalid_argument("solve_combination: generators are linearly dependent");
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j <= t; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      if (i == row || sgn(m[i][col]) == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j <= t; ++j) m[i][j] -= f * m[row][j];
    }
    pivot_col_row[col] = row;
    ++row;
  }
  for (std::size_t i = row; i < k; ++i) {
    if (sgn(m[i][t]) != 0) return std::nullopt;
  }
  std::vector<Rational> coeffs(t);
  for (std::size_t col = 0; col < t; ++col) coeffs[col] = m[pivot_col_row[col]][t];
  return coeffs;
}

}  // namespace dlp
