#include "dlp/implications.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dlp {

namespace {

// Difference contents supported exactly on `vars` (sorted), leading coefficient positive.
std::vector<ExactVector> contents_on(std::size_t k, const std::vector<std::size_t>& vars) {
  using Shape = std::vector<int>;
  static const std::vector<Shape> two = {{1, -1}, {2, -2}};
  static const std::vector<Shape> three = {{2, -1, -1}, {1, 1, -2}, {1, -2, 1}};
  static const std::vector<Shape> four = {{1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  const std::vector<Shape>* shapes = nullptr;
  switch (vars.size()) {
    case 2: shapes = &two; break;
    case 3: shapes = &three; break;
    case 4: shapes = &four; break;
    default: return {};
  }
  std::vector<ExactVector> out;
  for (const auto& shape : *shapes) {
    ExactVector v(k);
    for (std::size_t q = 0; q < vars.size(); ++q) v[vars[q]] = shape[q];
    out.push_back(std::move(v));
  }
  return out;
}

// Calls visit(content) for difference contents with support inside `pool` that
// contain all of `required`, by support size, then lexicographic support.
template <typename Visit>
void for_each_candidate(std::size_t k, const std::vector<std::size_t>& pool, VariableSet required, Visit visit) {
  const std::size_t need = required.size();
  std::vector<std::size_t> optional;
  for (auto v : pool)
    if (!required.contains(v)) optional.push_back(v);
  for (std::size_t size = std::max<std::size_t>(2, need); size <= 4; ++size) {
    const std::size_t extra = size - need;
    if (extra > optional.size()) break;
    std::vector<std::size_t> pick(extra);
    for (std::size_t q = 0; q < extra; ++q) pick[q] = q;
    while (true) {
      VariableSet support = required;
      for (auto q : pick) support.insert(optional[q]);
      for (auto& content : contents_on(k, support.indices())) visit(content);
      // Next combination.
      std::size_t q = extra;
      while (q > 0 && pick[q - 1] == optional.size() - extra + q - 1) --q;
      if (q == 0) break;
      ++pick[q - 1];
      for (std::size_t r = q; r < extra; ++r) pick[r] = pick[r - 1] + 1;
    }
  }
}

std::vector<ExactVector> contents_of(std::span<const DifferenceEquality> eqs) {
  std::vector<ExactVector> out;
  out.reserve(eqs.size());
  for (const auto& e : eqs) out.push_back(e.content);
  return out;
}

std::size_t common_dim(std::span<const DifferenceEquality> eqs) {
  if (eqs.empty()) throw std::invalid_argument("no difference equalities given");
  const std::size_t k = eqs.front().dim();
  for (const auto& e : eqs)
    if (e.dim() != k) throw DimensionMismatch("difference equalities over different variable counts");
  return k;
}

}  // namespace

std::vector<MinimalImplication> produced_equalities(std::span<const DifferenceEquality> premises) {
  const std::size_t k = common_dim(premises);
  const auto contents = contents_of(premises);
  EchelonBuilder builder(k);
  for (const auto& c : contents)
    if (!builder.insert(c)) return {};

  // A variable in exactly one premise cannot cancel, so it is in the product's support.
  std::vector<std::size_t> count(k, 0);
  VariableSet all;
  for (const auto& c : contents) {
    for (auto v : c.support().indices()) ++count[v];
    all = all | c.support();
  }
  VariableSet once;
  for (auto v : all.indices())
    if (count[v] == 1) once.insert(v);
  if (once.size() > 4) return {};

  const KConfiguration span = KConfiguration::from_contents(k, contents);
  std::vector<MinimalImplication> out;
  for_each_candidate(k, all.indices(), once, [&](const ExactVector& candidate) {
    if (!span.implies(candidate)) return;
    for (const auto& c : contents)
      if (c == candidate || c == -candidate) return;
    auto coefficients = solve_combination(contents, candidate);
    if (!coefficients) return;
    if (std::any_of(coefficients->begin(), coefficients->end(), [](const Rational& q) { return sgn(q) == 0; })) return;
    MinimalImplication m;
    m.premises.assign(premises.begin(), premises.end());
    for (std::size_t q = 0; q < premises.size(); ++q) m.premise_indices.push_back(q);
    m.product = candidate;
    m.coefficients = std::move(*coefficients);
    out.push_back(std::move(m));
  });
  return out;
}

std::vector<MinimalImplication> minimal_implications(std::span<const DifferenceEquality> T, std::size_t max_t) {
  if (T.size() > kMaxImplicationPremises) throw std::invalid_argument("minimal_implications: more than 16 equalities");
  if (max_t > T.size()) throw std::invalid_argument("minimal_implications: max_t exceeds the number of equalities");
  if (T.empty()) return {};
  common_dim(T);
  std::vector<MinimalImplication> out;
  for (std::size_t t = 1; t <= max_t; ++t) {
    std::vector<std::size_t> pick(t);
    for (std::size_t q = 0; q < t; ++q) pick[q] = q;
    while (true) {
      std::vector<DifferenceEquality> subset;
      for (auto q : pick) subset.push_back(T[q]);
      auto produced = produced_equalities(subset);
      if (!produced.empty()) {
        produced.front().premise_indices = pick;
        out.push_back(std::move(produced.front()));
      }
      std::size_t q = t;
      while (q > 0 && pick[q - 1] == T.size() - t + q - 1) --q;
      if (q == 0) break;
      ++pick[q - 1];
      for (std::size_t r = q; r < t; ++r) pick[r] = pick[r - 1] + 1;
    }
  }
  return out;
}

std::string StructureReport::failures() const {
  std::ostringstream out;
  if (!precondition) out << "precondition: premises are not 2-good (" << describe(goodness.witness) << ")\n";
  if (!variable_counts) {
    out << "variable counts:";
    for (auto [v, n] : appearances) out << " x" << v + 1 << "^" << n;
    out << "\n";
  }
  if (!unit_coefficients) out << "coefficients are not all +1 or -1\n";
  if (!unique_product) out << "second product: " << (second_product ? second_product->to_string() : "?") << "\n";
  return out.str();
}

StructureReport check_structure(const MinimalImplication& m) {
  StructureReport r;
  const std::size_t k = m.product.dim();
  const std::size_t t = m.t();
  const auto contents = contents_of(m.premises);
  r.goodness = is_c_good(KConfiguration::from_contents(k, contents), Rational(2));
  r.precondition = r.goodness.c_good();

  std::vector<std::size_t> count(k, 0);
  VariableSet all;
  for (const auto& c : contents) {
    for (auto v : c.support().indices()) ++count[v];
    all = all | c.support();
  }
  for (auto v : m.product.support().indices()) ++count[v];
  std::size_t twice = 0;
  std::size_t four = 0;
  for (auto v : all.indices()) {
    r.appearances.push_back({v, count[v]});
    twice += count[v] == 2 ? 1 : 0;
    four += count[v] == 4 ? 1 : 0;
  }
  const std::size_t vars = all.size();
  const bool all_in_premises = m.product.support().is_subset_of(all);
  const bool even_case = vars == 2 * t + 2 && twice == vars;
  r.full = vars == 2 * t + 1 && four == 1 && twice == vars - 1;
  r.variable_counts = all_in_premises && (even_case || r.full);

  r.unit_coefficients = std::all_of(m.coefficients.begin(), m.coefficients.end(),
                                    [](const Rational& q) { return q == 1 || q == -1; });

  const auto produced = produced_equalities(m.premises);
  r.unique_product = true;
  for (const auto& p : produced) {
    if (p.product != m.product && p.product != -m.product) {
      r.unique_product = false;
      r.second_product = p.product;
      break;
    }
  }
  return r;
}

bool is_2_full(std::span<const DifferenceEquality> T) {
  const std::size_t k = common_dim(T);
  const auto contents = contents_of(T);
  if (reduce(contents, k).rank() != T.size()) throw std::invalid_argument("is_2_full: dependent difference equalities");
  VariableSet all;
  for (const auto& c : contents) all = all | c.support();
  return all.size() == 2 * T.size() + 1;
}

std::string to_string(Alignment a) {
  switch (a) {
    case Alignment::sum_aligned: return "sum_aligned";
    case Alignment::difference_aligned: return "difference_aligned";
    case Alignment::neither: return "neither";
  }
  return "neither";
}

Alignment classify_alignment(const DifferenceEquality& a, const DifferenceEquality& b, std::size_t i) {
  if (a.dim() != b.dim()) throw DimensionMismatch("classify_alignment: dimension mismatch");
  if (i >= a.dim()) throw std::invalid_argument("classify_alignment: variable index out of range");
  const auto& ca = a.content;
  const auto& cb = b.content;
  if (abs(ca[i]) != 1 || abs(cb[i]) != 1) {
    throw std::invalid_argument("classify_alignment: x" + std::to_string(i + 1) + " must appear with coefficient 1 or -1 in both");
  }
  VariableSet shared = a.variables() & b.variables();
  shared.erase(i);
  if (shared.size() != 1) return Alignment::neither;
  const std::size_t v = shared.indices().front();
  const int sa = sgn(ca[v]) * sgn(ca[i]);
  const int sb = sgn(cb[v]) * sgn(cb[i]);
  if (sa < 0 && sb < 0) return Alignment::difference_aligned;
  if (sa > 0 && sb > 0) return Alignment::sum_aligned;
  return Alignment::neither;
}

std::vector<std::size_t> partners_certified_at(std::span<const DifferenceEquality> T, std::size_t i) {
  const std::size_t k = common_dim(T);
  const auto contents = contents_of(T);
  const KConfiguration span = KConfiguration::from_contents(k, contents);
  VariableSet partners;
  for_each_candidate(k, span.basis().support().indices(), VariableSet::of({i}), [&](const ExactVector& candidate) {
    if (abs(candidate[i]) != 1 || !span.implies(candidate)) return;
    const int s = sgn(candidate[i]);
    for (auto v : candidate.support().indices())
      if (v != i && sgn(candidate[v]) == -s) partners.insert(v);
  });
  return partners.indices();
}

}  // namespace dlp
