#include "dlp/harness.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "dlp/constructions.hpp"
#include "dlp/goodness.hpp"
#include "dlp/implications.hpp"

namespace dlp {

std::size_t certified_bound(std::size_t k) {
  if (k % 2 == 0) return (k * k - 2 * k) / 4;
  return (k - 1) * (k - 3) / 4 + 3;
}

bool ScanReport::bound_respected() const {
  if (primary.max_certified > bound) return false;
  return !comparison || comparison->max_certified <= bound;
}

bool ScanReport::consistent() const {
  if (cross_check_failures != 0 || !primary.witness_verified) return false;
  return !comparison || comparison->witness_verified;
}

namespace {

struct Verdict {
  bool good = true;
  bool good_compare = true;
  std::size_t certified = 0;
  bool star = false;
  bool cross_ok = true;
};

struct Partial {
  std::uint64_t subsets = 0;
  ClassSummary primary;
  ClassSummary comparison;
  std::uint64_t divergences = 0;
  std::uint64_t cross_check_failures = 0;
  std::unordered_map<PatternKey, Verdict> memo;
};

void record(ClassSummary& s, bool good, const Verdict& v, std::size_t bound, std::span<const std::int64_t> subset) {
  if (!good) {
    ++s.bad;
    return;
  }
  ++s.good;
  ++s.histogram[v.certified];
  if (v.certified == bound) {
    ++s.attained;
    if (!v.star) ++s.attained_by_non_stars;
  }
  // Subsets arrive in lexicographic order, so only a strictly larger count replaces the witness.
  if (s.witness.empty() || v.certified > s.max_certified) {
    s.max_certified = v.certified;
    s.witness.assign(subset.begin(), subset.end());
  }
}

void merge(ClassSummary& into, const ClassSummary& from) {
  into.good += from.good;
  into.bad += from.bad;
  for (const auto& [count, n] : from.histogram) into.histogram[count] += n;
  into.attained += from.attained;
  into.attained_by_non_stars += from.attained_by_non_stars;
  if (from.witness.empty()) return;
  if (into.witness.empty() || from.max_certified > into.max_certified ||
      (from.max_certified == into.max_certified && from.witness < into.witness)) {
    into.max_certified = from.max_certified;
    into.witness = from.witness;
  }
}

Verdict classify(std::span<const std::int64_t> subset, std::size_t distinct, const Rational& c,
                 const std::optional<Rational>& compare_c, std::size_t bound) {
  const std::size_t k = subset.size();
  Verdict v;
  if (distinct == pair_count(k)) {
    v.star = k < 4;
    return v;
  }
  const auto config = KConfiguration::from_points(subset);
  v.certified = config.certified_count();
  v.cross_ok = v.certified == pair_count(k) - distinct;
  v.good = is_c_good(config, c).c_good();
  v.good_compare = compare_c ? is_c_good(config, *compare_c).c_good() : v.good;
  if (v.certified == bound) v.star = k < 4 || largest_star(config).size >= 2 * (k / 2);
  return v;
}

void scan_leading(std::int64_t N, std::size_t k, std::int64_t first, const Rational& c,
                  const std::optional<Rational>& compare_c, std::size_t bound, Partial& out) {
  std::vector<std::int64_t> subset(k);
  subset[0] = first;
  for (std::size_t i = 1; i < k; ++i) subset[i] = first + static_cast<std::int64_t>(i);
  while (true) {
    ++out.subsets;
    const PatternKey key = difference_pattern(subset);
    auto it = out.memo.find(key);
    if (it == out.memo.end()) {
      std::size_t distinct = 0;
      for (auto ch : key) distinct = std::max<std::size_t>(distinct, ch / 2 + 1);
      it = out.memo.emplace(key, classify(subset, distinct, c, compare_c, bound)).first;
    }
    const Verdict& v = it->second;
    record(out.primary, v.good, v, bound, subset);
    if (compare_c) record(out.comparison, v.good_compare, v, bound, subset);
    if (v.good != v.good_compare) ++out.divergences;
    if (!v.cross_ok) ++out.cross_check_failures;

    // Next combination with subset[0] held fixed.
    std::size_t pos = k - 1;
    while (pos >= 1 && subset[pos] == N - static_cast<std::int64_t>(k - 1 - pos)) --pos;
    if (pos == 0) break;
    ++subset[pos];
    for (std::size_t q = pos + 1; q < k; ++q) subset[q] = subset[q - 1] + 1;
  }
}

bool reverify(ClassSummary& s, const Rational& c) {
  if (s.witness.empty()) return s.good == 0;
  const auto config = KConfiguration::from_points(std::span<const std::int64_t>(s.witness));
  return is_c_good(config, c).c_good() && config.certified_count() == s.max_certified;
}

}  // namespace

ScanReport scan_ground(std::int64_t N, std::size_t k, const Rational& c, const std::optional<Rational>& compare_c,
                       std::uint64_t budget, unsigned threads) {
  if (k < 2 || N < static_cast<std::int64_t>(k))
    throw std::invalid_argument("scan: need 2 <= k <= N, got N=" + std::to_string(N) + " k=" + std::to_string(k));
  require_c_in_range(c);
  if (compare_c) require_c_in_range(*compare_c);
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(N), k);
  if (total > budget)
    throw BudgetExceeded("scan: C(" + std::to_string(N) + "," + std::to_string(k) + ") = " +
                         (total == UINT64_MAX ? std::string("overflow") : std::to_string(total)) +
                         " subsets exceeds budget " + std::to_string(budget));

  ScanReport report;
  report.ground = N;
  report.k = k;
  report.subsets = total;
  report.bound = certified_bound(k);
  const std::int64_t last_first = N - static_cast<std::int64_t>(k) + 1;
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(last_first)));

  std::vector<Partial> parts(threads);
  auto work = [&](unsigned w) {
    for (std::int64_t first = 1 + w; first <= last_first; first += threads)
      scan_leading(N, k, first, c, compare_c, report.bound, parts[w]);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  report.primary.c = c;
  ClassSummary comparison;
  if (compare_c) comparison.c = *compare_c;
  std::uint64_t scanned = 0;
  std::unordered_map<PatternKey, bool> patterns;
  for (const auto& p : parts) {
    scanned += p.subsets;
    merge(report.primary, p.primary);
    if (compare_c) merge(comparison, p.comparison);
    report.divergences += p.divergences;
    report.cross_check_failures += p.cross_check_failures;
    for (const auto& [key, v] : p.memo) patterns.emplace(key, true);
  }
  if (scanned != total) throw std::logic_error("scan: enumerated " + std::to_string(scanned) + " subsets, expected " +
                                               std::to_string(total));
  report.distinct_patterns = patterns.size();
  report.primary.witness_verified = reverify(report.primary, c);
  if (compare_c) {
    comparison.witness_verified = reverify(comparison, *compare_c);
    report.comparison = std::move(comparison);
  }
  return report;
}

std::vector<StarCheck> star_bound_check(std::size_t p_min, std::size_t p_max) {
  if (p_min < 2 || p_max > 8 || p_min > p_max)
    throw std::invalid_argument("star check: need 2 <= p_min <= p_max <= 8");
  std::vector<StarCheck> out;
  for (std::size_t p = p_min; p <= p_max; ++p) {
    StarCheck s;
    s.p = p;
    const std::int64_t center = std::int64_t{1} << (2 * (p + 1));
    for (std::size_t j = 1; j <= p; ++j) {
      const std::int64_t offset = std::int64_t{1} << (2 * j);
      s.points.push_back(center - offset);
      s.points.push_back(center + offset);
    }
    const auto config = KConfiguration::from_points(std::span<const std::int64_t>(s.points));
    s.certified = config.certified_count();
    s.expected = p * p - p;
    s.matches_star = config == star_configuration(2 * p, p);
    s.good = is_c_good(config, Rational(2)).c_good();
    out.push_back(std::move(s));
  }
  return out;
}

KConfiguration odd_equality_configuration(std::size_t k) {
  if (k < 7 || k % 2 == 0) throw std::invalid_argument("odd equality case: k must be odd and at least 7");
  const auto star = star_configuration(k, (k - 1) / 2);
  std::vector<ExactVector> contents(star.basis().rows().begin(), star.basis().rows().end());
  ExactVector extra(k);
  extra[k - 1] = 1;
  extra[0] = -1;
  extra[2] = -1;
  extra[4] = 1;
  contents.push_back(std::move(extra));
  return KConfiguration::from_contents(k, contents);
}

OddEqualityCase odd_equality_case(std::size_t k, std::uint64_t seed, std::size_t max_attempts) {
  if (k < 7 || k > 13 || k % 2 == 0) throw std::invalid_argument("odd equality case: k must be odd with 7 <= k <= 13");
  const auto target = odd_equality_configuration(k);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> offset(1, 1'000'000);
  const std::int64_t center = 10'000'000;

  OddEqualityCase out;
  out.k = k;
  out.seed = seed;
  out.expected = certified_bound(k);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::vector<std::int64_t> pts;
    for (std::size_t j = 0; j < (k - 1) / 2; ++j) {
      const auto o = offset(rng);
      pts.push_back(center + o);
      pts.push_back(center - o);
    }
    pts.push_back(pts[0] + pts[2] - pts[4]);
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    const auto config = KConfiguration::from_points(std::span<const std::int64_t>(pts));
    if (!(config == target)) continue;

    out.attempts = attempt;
    out.points = std::move(pts);
    out.rank = config.rank();
    out.certified = config.certified_count();
    const auto pairs = config.certified_pairs();
    out.required_pairs = std::ranges::all_of(std::array<std::size_t, 3>{0, 2, 5}, [&](std::size_t j) {
      return std::ranges::find(pairs, CertifiedPair{k - 1, j}) != pairs.end();
    });
    out.good = is_c_good(config, Rational(2)).c_good();
    return out;
  }
  throw std::runtime_error("odd equality case: no realization for k=" + std::to_string(k) + " within " +
                           std::to_string(max_attempts) + " attempts");
}

// ---------------------------------------------------------------------------
// Lemma property suite

const PropertyTally& LemmaSuiteReport::tally(const std::string& name) const {
  for (const auto& t : properties)
    if (t.name == name) return t;
  throw std::out_of_range("no property named " + name);
}

namespace {

constexpr std::size_t kMaxFamily = 8;
constexpr std::size_t kMaxPairPool = 24;

struct Family {
  std::string label;
  std::size_t k = 0;
  std::vector<DifferenceEquality> T;
  /// Equalities whose pairs feed the six-variable check.
  std::vector<DifferenceEquality> pool;
  std::optional<std::size_t> hub;
};

class Suite {
 public:
  explicit Suite(LemmaSuiteReport& report) : report_(report) {
    for (const char* name : {"structure", "six-variables", "2-full-intersection", "box-subbox", "hub-size",
                             "3-implication-pairs"})
      report_.properties.push_back({name, 0, 0});
  }

  void run(const Family& f) {
    if (f.T.empty()) return;
    const auto config = KConfiguration::from_equalities(f.k, f.T);
    if (config.rank() != f.T.size() || !is_c_good(config, Rational(2)).c_good()) {
      ++report_.skipped;
      return;
    }
    six_variables(f);
    const auto implications = minimal_implications(f.T, f.T.size());
    const bool hub_good = f.hub && is_c_good(config, near_two_c()).c_good();
    for (const auto& m : implications) {
      structure(f, m);
      box_subbox(f, m);
      if (hub_good) hub(f, m);
    }
    intersections(f);
  }

 private:
  PropertyTally& tally(std::size_t i) { return report_.properties[i]; }

  void check(std::size_t property, bool ok, const Family& f, const std::string& detail) {
    ++tally(property).checked;
    if (ok) return;
    ++tally(property).failed;
    std::ostringstream out;
    out << tally(property).name << " [" << f.label << "]: " << detail << "; family:";
    for (const auto& e : f.T) out << " {" << e.to_string() << "}";
    report_.counterexamples.push_back(out.str());
  }

  static std::string premises_of(const MinimalImplication& m) {
    std::string s;
    for (const auto& e : m.premises) s += (s.empty() ? "" : ", ") + e.to_string();
    return s;
  }

  void six_variables(const Family& f) {
    const std::size_t n = std::min(f.pool.size(), kMaxPairPool);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto& x = f.pool[a];
        const auto& y = f.pool[b];
        if (x.content == y.content || x.content == -y.content) continue;
        const std::array<DifferenceEquality, 2> pair = {x, y};
        const auto config = KConfiguration::from_equalities(f.k, pair);
        if (!is_valid(config).valid || !is_collinearity_free(config).collinearity_free) continue;
        const std::size_t vars = (x.variables() | y.variables()).size();
        check(1, vars >= 6, f, x.to_string() + " and " + y.to_string() + " span " + std::to_string(vars) + " variables");
      }
    }
  }

  void structure(const Family& f, const MinimalImplication& m) {
    const auto r = check_structure(m);
    check(0, r.passed(), f, "premises " + premises_of(m) + ": " + r.failures());
  }

  void box_subbox(const Family& f, const MinimalImplication& m) {
    const std::size_t t = m.t();
    if (t < 2 || !is_2_full(m.premises)) return;
    for (const auto& coef : m.coefficients)
      if (coef != 1 && coef != -1) return;
    for (std::uint32_t mask = 1; mask + 1 < (1U << t); ++mask) {
      std::vector<DifferenceEquality> sub;
      ExactVector partial(f.k);
      for (std::size_t j = 0; j < t; ++j) {
        if (!(mask >> j & 1U)) continue;
        sub.push_back(m.premises[j]);
        partial += m.coefficients[j].get_num() * m.premises[j].content;
      }
      if (!is_2_full(sub)) continue;
      check(3, is_difference_content(partial), f,
            "premises " + premises_of(m) + ", sub-box mask " + std::to_string(mask) + " sums to " + partial.to_string());
    }
  }

  void hub(const Family& f, const MinimalImplication& m) {
    check(4, m.t() <= 4, f, "minimal implication of size " + std::to_string(m.t()) + ": " + premises_of(m));
    if (m.t() != 3) return;
    const auto partners = partners_certified_at(m.premises, *f.hub);
    check(5, partners.size() <= 5, f,
          "3-implication " + premises_of(m) + " certifies " + std::to_string(partners.size()) + " pairs at x" +
              std::to_string(*f.hub + 1));
  }

  void intersections(const Family& f) {
    const std::size_t n = f.T.size();
    std::vector<bool> full(std::size_t{1} << n, false);
    std::vector<std::uint32_t> full_masks;
    for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
      std::vector<DifferenceEquality> sub;
      for (std::size_t j = 0; j < n; ++j)
        if (mask >> j & 1U) sub.push_back(f.T[j]);
      full[mask] = is_2_full(sub);
      if (full[mask]) full_masks.push_back(mask);
    }
    for (std::size_t a = 0; a < full_masks.size(); ++a) {
      for (std::size_t b = a + 1; b < full_masks.size(); ++b) {
        const auto x = full_masks[a];
        const auto y = full_masks[b];
        const auto both = x & y;
        if (both == 0 || both == x || both == y) continue;
        check(2, full[both], f,
              "2-full masks " + std::to_string(x) + " and " + std::to_string(y) + " meet in a non-2-full set");
      }
    }
  }

  LemmaSuiteReport& report_;
};

DifferenceEquality eq(std::size_t k, std::initializer_list<std::pair<std::size_t, int>> terms) {
  ExactVector v(k);
  for (auto [var, coef] : terms) v[var - 1] = coef;
  return *DifferenceEquality::from_content(v);
}

std::vector<Family> figure_families() {
  std::vector<Family> out;
  auto add = [&](std::string label, std::size_t k, std::vector<DifferenceEquality> T, std::optional<std::size_t> hub) {
    Family f{std::move(label), k, T, T, hub};
    out.push_back(std::move(f));
  };
  add("four-premise implication", 9,
      {eq(9, {{1, 1}, {2, -1}, {3, -1}, {4, 1}}), eq(9, {{1, 1}, {2, 1}, {5, -1}, {6, -1}}),
       eq(9, {{1, 1}, {4, 1}, {7, -1}, {8, -1}}), eq(9, {{1, 1}, {5, -1}, {7, 1}, {9, -1}})},
      std::nullopt);
  add("difference-aligned 2-implication", 6,
      {eq(6, {{6, 1}, {1, -1}, {2, -1}, {3, 1}}), eq(6, {{6, 1}, {1, -1}, {4, -1}, {5, 1}})}, 5);
  add("sum-aligned 2-implication", 6,
      {eq(6, {{6, 1}, {1, 1}, {2, -1}, {3, -1}}), eq(6, {{6, 1}, {1, 1}, {4, -1}, {5, -1}})}, 5);
  add("3-implication", 7,
      {eq(7, {{7, 1}, {1, -1}, {2, -1}, {3, 1}}), eq(7, {{7, 1}, {1, 1}, {4, -1}, {5, -1}}),
       eq(7, {{7, 1}, {3, 1}, {4, -1}, {6, -1}})},
      6);
  add("overlapping 2-full sets", 13,
      {eq(13, {{1, 1}, {2, -1}, {3, -1}, {4, 1}}), eq(13, {{1, 1}, {2, 1}, {5, -1}, {6, -1}}),
       eq(13, {{1, 1}, {4, 1}, {5, -1}, {7, -1}}), eq(13, {{1, 1}, {7, 1}, {8, -1}, {9, -1}}),
       eq(13, {{1, 1}, {7, 1}, {10, -1}, {11, -1}}), eq(13, {{10, 1}, {11, 1}, {12, -1}, {13, -1}})},
      std::nullopt);
  add("2-full sub-box", 9,
      {eq(9, {{1, 1}, {2, -1}, {3, -1}, {4, 1}}), eq(9, {{1, 1}, {2, 1}, {5, -1}, {6, -1}}),
       eq(9, {{1, 1}, {4, 1}, {5, -1}, {7, -1}}), eq(9, {{1, 1}, {7, 1}, {8, -1}, {9, -1}})},
      std::nullopt);
  return out;
}

// Every difference equality among the points, oriented with a positive leading coefficient.
std::vector<DifferenceEquality> harvest(std::span<const std::int64_t> pts) {
  const std::size_t k = pts.size();
  std::map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> by_difference;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = 0; q < k; ++q)
      if (pts[p] > pts[q]) by_difference[pts[p] - pts[q]].emplace_back(p, q);
  std::vector<DifferenceEquality> out;
  std::vector<ExactVector> seen;
  for (const auto& [d, pairs] : by_difference) {
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        ExactVector v(k);
        v[pairs[a].first] += 1;
        v[pairs[a].second] -= 1;
        v[pairs[b].first] -= 1;
        v[pairs[b].second] += 1;
        if (v.is_zero()) continue;
        if (v[v.leading_index()] < 0) v = -v;
        if (std::ranges::find(seen, v) != seen.end()) continue;
        if (auto e = DifferenceEquality::from_content(v)) {
          seen.push_back(v);
          out.push_back(std::move(*e));
        }
      }
    }
  }
  return out;
}

// Grows an independent family from the shuffled pool, each time adding the
// equality that brings in the fewest new variables.
std::vector<DifferenceEquality> compact_family(const std::vector<DifferenceEquality>& pool, std::size_t k) {
  EchelonBuilder span(k);
  std::vector<DifferenceEquality> out;
  std::vector<bool> used(pool.size(), false);
  VariableSet covered;
  while (out.size() < kMaxFamily) {
    std::optional<std::size_t> best;
    std::size_t best_new = 5;
    for (std::size_t e = 0; e < pool.size(); ++e) {
      if (used[e]) continue;
      const std::size_t fresh = (pool[e].variables() | covered).size() - covered.size();
      if (fresh >= best_new || span.contains(pool[e].content)) continue;
      best = e;
      best_new = fresh;
    }
    if (!best) break;
    used[*best] = true;
    span.insert(pool[*best].content);
    covered = covered | pool[*best].variables();
    out.push_back(pool[*best]);
  }
  return out;
}

// k distinct points of {digits}^dims written in base 7, so every difference
// equality among them holds coordinate by coordinate.
std::vector<std::int64_t> lattice_sample(std::mt19937_64& rng, std::span<const int> digits, std::size_t dims,
                                         std::size_t k) {
  std::size_t cells = 1;
  for (std::size_t i = 0; i < dims; ++i) cells *= digits.size();
  std::vector<std::int64_t> all;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    std::int64_t value = 0;
    std::int64_t weight = 1;
    for (std::size_t i = 0, c = cell; i < dims; ++i, c /= digits.size()) {
      value += digits[c % digits.size()] * weight;
      weight *= 7;
    }
    all.push_back(value);
  }
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(k, all.size()));
  return all;
}

std::vector<std::int64_t> sample_points(std::mt19937_64& rng, std::size_t kind) {
  static constexpr std::array<int, 2> kCube = {0, 1};
  static constexpr std::array<int, 3> kSparse = {0, 1, 3};
  switch (kind) {
    case 0:
      return lattice_sample(rng, kCube, 4, 7 + rng() % 3);
    case 1:
      return lattice_sample(rng, kCube, 5, 9 + rng() % 3);
    case 2:
      return lattice_sample(rng, kSparse, 2 + rng() % 2, 6 + rng() % 5);
    default: {
      const std::size_t k = 5 + rng() % 4;
      std::vector<std::int64_t> ground(40);
      std::iota(ground.begin(), ground.end(), 1);
      std::shuffle(ground.begin(), ground.end(), rng);
      ground.resize(k);
      return ground;
    }
  }
}

// A random 2-full family: a first equality, then equalities each bringing two
// new variables except one bringing a single new variable. It is realized by
// a generic point of its solution space. Returns the points and the family.
std::pair<std::vector<std::int64_t>, std::vector<DifferenceEquality>> planted_sample(std::mt19937_64& rng) {
  const std::size_t k = 9 + 2 * (rng() % 3);
  const std::size_t t = (k - 1) / 2;
  const std::size_t single = 1 + rng() % (t - 1);
  std::vector<ExactVector> contents;
  std::size_t used = 0;
  for (std::size_t step = 0; step < t; ++step) {
    std::vector<std::size_t> vars;
    if (step == 0) {
      vars = {0, 1, 2, 3};
      used = 4;
    } else {
      const std::size_t fresh = step == single ? 1 : 2;
      std::vector<std::size_t> old(used);
      std::iota(old.begin(), old.end(), 0);
      std::shuffle(old.begin(), old.end(), rng);
      vars.assign(old.begin(), old.begin() + static_cast<long>(4 - fresh));
      for (std::size_t j = 0; j < fresh; ++j) vars.push_back(used++);
    }
    std::shuffle(vars.begin(), vars.end(), rng);
    ExactVector v(k);
    v[vars[0]] = 1;
    v[vars[1]] = 1;
    v[vars[2]] = -1;
    v[vars[3]] = -1;
    if (v[v.leading_index()] < 0) v = -v;
    contents.push_back(std::move(v));
  }
  const auto free = solution_space(reduce(contents, k));
  std::uniform_int_distribution<long> coef(-1'000'000, 1'000'000);
  ExactVector point(k);
  for (const auto& f : free) point += Integer(coef(rng)) * f;
  std::vector<std::int64_t> pts;
  for (std::size_t i = 0; i < k; ++i) pts.push_back(point[i].get_si());
  std::vector<DifferenceEquality> family;
  for (const auto& c : contents) family.push_back(*DifferenceEquality::from_content(c));
  return {pts, family};
}

std::string points_label(const char* kind, std::size_t index, std::span<const std::int64_t> pts) {
  std::string s = std::string(kind) + " instance " + std::to_string(index) + " points";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? "," : " ") + std::to_string(pts[i]);
  return s;
}

}  // namespace

LemmaSuiteReport lemma_property_suite(std::uint64_t seed, std::size_t instance_count) {
  LemmaSuiteReport report;
  report.seed = seed;
  report.instances = instance_count;
  Suite suite(report);
  for (const auto& f : figure_families()) suite.run(f);

  static constexpr std::array<const char*, 5> kKinds = {"4-cube", "5-cube", "sparse-lattice", "ground-40", "planted"};
  constexpr int kMaxDraws = 64;
  for (std::size_t index = 0; index < instance_count; ++index) {
    std::mt19937_64 rng(derive_seed(seed, index));
    const std::size_t kind = index % kKinds.size();
    std::vector<std::int64_t> pts;
    std::vector<DifferenceEquality> planted;
    for (int draw = 0; draw < kMaxDraws && pts.empty(); ++draw) {
      std::vector<std::int64_t> candidate;
      if (kind == 4) {
        std::tie(candidate, planted) = planted_sample(rng);
        auto sorted = candidate;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      } else {
        candidate = sample_points(rng, kind);
      }
      if (is_c_good(KConfiguration::from_points(std::span<const std::int64_t>(candidate)), Rational(2)).c_good())
        pts = std::move(candidate);
    }
    if (pts.empty()) {
      ++report.skipped;
      continue;
    }
    const std::size_t k = pts.size();
    auto pool = harvest(pts);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::string label = points_label(kKinds[kind], index, pts);
    suite.run(Family{label, k, kind == 4 ? planted : compact_family(pool, k), pool, std::nullopt});

    const std::size_t i = rng() % k;
    std::vector<DifferenceEquality> at_hub;
    for (const auto& e : pool)
      if (e.content[i] == 1 || e.content[i] == -1) at_hub.push_back(e);
    suite.run(Family{label + " hub x" + std::to_string(i + 1), k, compact_family(at_hub, k), {}, i});
  }
  return report;
}

}  // namespace dlp
