// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dlp/constructions.hpp"
#include "dlp/goodness.hpp"
#include "dlp/harness.hpp"
#include "dlp/implications.hpp"
#include "dlp/io.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace dlp;
using namespace testing_helpers;

namespace {

// Collects failure messages; a criterion passes when none were recorded.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++count_;
  }
  [[nodiscard]] bool ok() const { return count_ == 0; }
  [[nodiscard]] std::string summary() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    if (count_ > failures_.size()) s += "; +" + std::to_string(count_ - failures_.size()) + " more";
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::size_t count_ = 0;
};

std::string join(const std::vector<std::int64_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls f on every k-subset of {1..n} in lexicographic order.
void for_each_subset(std::int64_t n, std::size_t k, const std::function<void(const std::vector<std::int64_t>&)>& f) {
  std::vector<std::int64_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = static_cast<std::int64_t>(i) + 1;
  while (true) {
    f(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - static_cast<std::int64_t>(k - i)) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

// Certified count equals C(k,2) minus distinct differences, and the pairs agree with the scan oracle.
void oracle_equivalence(Check& check, const std::vector<std::int64_t>& pts) {
  const auto config = KConfiguration::from_points(std::span<const std::int64_t>(pts));
  const auto expected = pair_count(pts.size()) - oracle::distinct_differences(pts);
  check.expect(config.certified_count() == expected, "count mismatch at " + join(pts));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto p : config.certified_pairs()) pairs.emplace_back(p.i, p.j);
  check.expect(pairs == oracle::repeated_pairs(pts), "pair list mismatch at " + join(pts));
}

Check criterion_oracle_equivalence() {
  Check check;
  for (std::size_t k : {4U, 5U}) for_each_subset(20, k, [&](const auto& s) { oracle_equivalence(check, s); });
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 10'000; ++trial) {
    // Narrow ranges force many coincident differences; wide ones exercise the generic case.
    const std::int64_t hi = trial % 3 == 0 ? 12 : trial % 3 == 1 ? 30 : 1000;
    auto pts = oracle::distinct_sample(rng, 6, 1, hi);
    std::shuffle(pts.begin(), pts.end(), rng);
    oracle_equivalence(check, pts);
  }
  return check;
}

Check criterion_stars() {
  Check check;
  const auto checks = star_bound_check(2, 6);
  check.expect(checks.size() == 5, "expected five star sizes");
  for (const auto& s : checks) {
    const auto want = s.p * s.p - s.p;
    const auto tag = "p=" + std::to_string(s.p);
    check.expect(s.passed(), tag + " harness check failed");
    check.expect(s.certified == want, tag + " certified " + std::to_string(s.certified));
    const auto direct = KConfiguration::from_points(std::span<const std::int64_t>(s.points)).certified_count();
    check.expect(direct == want, tag + " from_points certified " + std::to_string(direct));
    check.expect(pair_count(2 * s.p) - oracle::distinct_differences(s.points) == want, tag + " difference count");
    check.expect(star_configuration(2 * s.p, s.p).certified_count() == want, tag + " canonical star");
  }
  return check;
}

Check criterion_even_scan() {
  Check check;
  const std::vector<std::pair<std::int64_t, std::size_t>> cases = {{50, 4}, {20, 6}};
  for (auto [N, k] : cases) {
    const auto tag = "N=" + std::to_string(N) + " k=" + std::to_string(k);
    const auto report = scan_ground(N, k, Rational(2), near_two_c());
    check.expect(report.subsets == binom(N, k), tag + " subset count");
    check.expect(report.bound == (k * k - 2 * k) / 4, tag + " bound");
    check.expect(report.consistent(), tag + " cross-check or class divergence");
    check.expect(report.bound_respected(), tag + " bound violated");
    check.expect(report.comparison.has_value(), tag + " missing comparison class");
    for (const auto* cls : {&report.primary, report.comparison ? &*report.comparison : nullptr}) {
      if (cls == nullptr) continue;
      const auto ctag = tag + " c=" + cls->c.get_str();
      check.expect(cls->max_certified <= report.bound, ctag + " max " + std::to_string(cls->max_certified));
      check.expect(cls->attained > 0, ctag + " bound not attained");
      check.expect(cls->attained_by_non_stars == 0, ctag + " attained by a non-star");
      check.expect(cls->witness_verified, ctag + " witness not re-verified");
      const auto& w = cls->witness;
      check.expect(pair_count(k) - oracle::distinct_differences(w) == cls->max_certified, ctag + " witness count");
      const auto wc = KConfiguration::from_points(std::span<const std::int64_t>(w));
      check.expect(largest_star(wc).size == k, ctag + " witness is not a size-k star");
    }
  }
  return check;
}

Check criterion_odd_case() {
  Check check;
  for (std::size_t k : {7U, 9U}) {
    const auto tag = "k=" + std::to_string(k);
    const auto c = odd_equality_case(k);
    const auto want = (k - 1) * (k - 3) / 4 + 3;
    check.expect(c.passed(), tag + " harness check failed");
    check.expect(c.certified == want, tag + " certified " + std::to_string(c.certified));
    const auto config = KConfiguration::from_points(std::span<const std::int64_t>(c.points));
    check.expect(config == odd_equality_configuration(k), tag + " realization differs from target");
    check.expect(pair_count(k) - oracle::distinct_differences(c.points) == want, tag + " difference count");
    const auto repeated = oracle::repeated_pairs(c.points);
    for (std::size_t j : {1U, 3U, 6U}) {
      const std::pair<std::size_t, std::size_t> p{k - 1, j - 1};
      check.expect(std::ranges::find(repeated, p) != repeated.end(),
                   tag + " pair (" + std::to_string(k) + "," + std::to_string(j) + ") not repeated");
    }
  }
  return check;
}

DifferenceEquality deq(std::size_t k, std::initializer_list<std::pair<std::size_t, long>> ts) {
  return DifferenceEquality::from_content(terms(k, ts)).value();
}

Check criterion_goldens() {
  Check check;
  const auto a = config_of(4, {eq1(4, 1, 2, 3, 4), terms(4, {{1, 1}, {2, 1}, {3, -1}, {4, -1}})});
  const auto b = config_of(5, {eq1(5, 1, 2, 3, 4), terms(5, {{1, 1}, {2, 1}, {3, -1}, {5, -1}})});
  const auto cube =
      config_of(8, {eq1(8, 1, 2, 3, 4), eq1(8, 3, 4, 5, 6), eq1(8, 5, 6, 7, 8), eq1(8, 1, 3, 5, 7)});

  const auto ra = is_c_good(a, 2);
  check.expect(!ra.valid, "(a) should be invalid");
  check.expect(describe(ra.witness) == "x1 = x3", "(a) witness '" + describe(ra.witness) + "'");
  const auto rb = is_c_good(b, 2);
  check.expect(rb.valid && !rb.collinearity_free, "(b) should be collinearity-inducing");
  check.expect(describe(rb.witness) == "2x2 - x4 - x5 = 0", "(b) witness '" + describe(rb.witness) + "'");
  const auto rc = is_c_good(cube, 2);
  check.expect(rc.valid && rc.collinearity_free && !rc.c_light, "(c) should be 2-heavy");
  check.expect(describe(rc.witness) == "8 variables {x1,x2,x3,x4,x5,x6,x7,x8}, t=4",
               "(c) witness '" + describe(rc.witness) + "'");
  for (std::size_t p = 2; p <= 6; ++p)
    check.expect(is_c_good(star_configuration(2 * p, p), 2).c_good(), "star p=" + std::to_string(p) + " not 2-good");

  const std::vector<DifferenceEquality> four = {
      deq(9, {{1, 1}, {2, -1}, {3, -1}, {4, 1}}), deq(9, {{1, 1}, {2, 1}, {5, -1}, {6, -1}}),
      deq(9, {{1, 1}, {4, 1}, {7, -1}, {8, -1}}), deq(9, {{1, 1}, {5, -1}, {7, 1}, {9, -1}})};
  const auto produced = produced_equalities(four);
  check.expect(produced.size() == 1, "figure should produce exactly one equality");
  if (!produced.empty()) {
    const auto& m = produced.front();
    check.expect(m.product.to_string() == "x3 + x6 - x8 - x9", "product '" + m.product.to_string() + "'");
    const std::vector<Rational> want = {-1, -1, 1, 1};
    check.expect(m.coefficients == want, "coefficients differ from (-1,-1,1,1)");
  }
  return check;
}

Check criterion_behrend() {
  Check check;
  const int d = 3, m = 20, kappa = 2;
  const auto set = behrend_set({d, m, kappa});
  const auto& s = set.elements;
  const std::int64_t base = 16LL * kappa * m;

  // Largest norm class of [m]^d by direct enumeration.
  std::map<int, std::uint64_t> by_norm;
  for (int x = 1; x <= m; ++x)
    for (int y = 1; y <= m; ++y)
      for (int z = 1; z <= m; ++z) ++by_norm[x * x + y * y + z * z];
  std::uint64_t largest = 0;
  for (const auto& [r, n] : by_norm) largest = std::max(largest, n);
  check.expect(s.size() == largest, "size " + std::to_string(s.size()) + " vs slice " + std::to_string(largest));

  // Every element decodes to digits in [1, m] with a common norm.
  std::set<int> norms;
  for (auto x : s) {
    int norm = 0;
    std::int64_t rest = x;
    for (int i = 0; i < d; ++i) {
      const auto digit = rest % base;
      check.expect(digit >= 1 && digit <= m, "digit out of range in " + std::to_string(x));
      norm += static_cast<int>(digit * digit);
      rest /= base;
    }
    check.expect(rest == 0, "element beyond base^d: " + std::to_string(x));
    norms.insert(norm);
  }
  check.expect(norms.size() == 1, "elements lie on several spheres");
  check.expect(std::set<std::int64_t>(s.begin(), s.end()).size() == s.size(), "repeated elements");

  std::vector<std::array<int, 3>> coefs;
  for (int al = -kappa; al <= kappa; ++al)
    for (int be = -kappa; be <= kappa; ++be) {
      const int ga = -al - be;
      if (std::abs(ga) <= kappa && (al != 0 || be != 0)) coefs.push_back({al, be, ga});
    }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      for (std::size_t l = 0; l < s.size(); ++l) {
        if (i == j || j == l || i == l) continue;
        for (const auto& c : coefs)
          if (c[0] * s[i] + c[1] * s[j] + c[2] * s[l] == 0)
            check.expect(false, "relation " + std::to_string(c[0]) + "*" + std::to_string(s[i]) + " + " +
                                    std::to_string(c[1]) + "*" + std::to_string(s[j]) + " + " +
                                    std::to_string(c[2]) + "*" + std::to_string(s[l]));
      }
  return check;
}

// Goodness recomputed from the dense span of all difference contents.
bool oracle_c_good(const std::vector<std::int64_t>& pts, const Rational& c) {
  std::vector<oracle::Q> q(pts.begin(), pts.end());
  const auto span = oracle::all_difference_contents(q);
  const std::size_t k = pts.size();
  const std::size_t r = oracle::rank(span);
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    auto m = span;
    std::size_t size = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(mask >> i & 1U)) continue;
      ++size;
      std::vector<oracle::Q> unit(k, 0);
      unit[i] = 1;
      m.push_back(unit);
    }
    const std::size_t t = r + size - oracle::rank(m);
    if (t == 0) continue;
    if (size <= 3) return false;  // an implied equation on two or three variables
    if (Rational(static_cast<long>(size)) < c * static_cast<long>(t) + 1) return false;
  }
  return true;
}

Check criterion_random_local() {
  Check check;
  RandomLocalParams params;
  params.n = 30;
  params.k = 4;
  params.c = Rational(19, 10);
  params.seed = 7;
  const auto first = random_local_set(params);
  const auto second = random_local_set(params);
  const auto& a = first.elements;
  check.expect(a.size() == 30, "|A| = " + std::to_string(a.size()));
  check.expect(io::format_set(first.elements) == io::format_set(second.elements), "set output differs on rerun");
  check.expect(io::dump(io::to_json(first.provenance)) == io::dump(io::to_json(second.provenance)),
               "provenance differs on rerun");

  // Smallest integer M with M^10 ≥ 30^19, i.e. ⌈30^1.9⌉.
  Integer target;
  mpz_ui_pow_ui(target.get_mpz_t(), 30, 19);
  Integer root;
  mpz_root(root.get_mpz_t(), target.get_mpz_t(), 10);
  Integer power;
  mpz_pow_ui(power.get_mpz_t(), root.get_mpz_t(), 10);
  if (power < target) root += 1;
  std::set<std::int64_t> diffs;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) diffs.insert(std::abs(a[i] - a[j]));
  check.expect(Integer(static_cast<long>(diffs.size())) <= root,
               "|A-A| = " + std::to_string(diffs.size()) + " exceeds " + root.get_str());

  std::size_t subsets = 0;
  for_each_subset(static_cast<std::int64_t>(a.size()), 4, [&](const auto& idx) {
    std::vector<std::int64_t> pts;
    for (auto i : idx) pts.push_back(a[static_cast<std::size_t>(i - 1)]);
    ++subsets;
    const auto config = KConfiguration::from_points(std::span<const std::int64_t>(pts));
    check.expect(is_c_good(config, params.c).c_good(), "library rejects " + join(pts));
    check.expect(oracle_c_good(pts, params.c), "oracle rejects " + join(pts));
  });
  check.expect(subsets == 27'405, "checked " + std::to_string(subsets) + " subsets");
  return check;
}

Check criterion_lemma_suite() {
  Check check;
  const auto report = lemma_property_suite(1, 1000);
  check.expect(report.instances == 1000, "ran " + std::to_string(report.instances) + " instances");
  for (const auto& c : report.counterexamples) check.expect(false, c);
  for (const auto& t : report.properties) {
    check.expect(t.checked > 0, t.name + " never checked");
    check.expect(t.failed == 0, t.name + " failed " + std::to_string(t.failed) + " times");
  }
  check.expect(report.properties.size() == 6, "expected six properties");
  return check;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Check()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", 60, criterion_oracle_equivalence},
      {2, "star formula", 1, criterion_stars},
      {3, "even-k bound scan", 600, criterion_even_scan},
      {4, "odd-k equality case", 60, criterion_odd_case},
      {5, "example goldens", 60, criterion_goldens},
      {6, "behrend avoidance", 300, criterion_behrend},
      {7, "random construction", 300, criterion_random_local},
      {8, "lemma property suite", 300, criterion_lemma_suite},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = c.run();
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= c.limit_seconds) check.expect(false, "exceeded time limit");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / limit %.0fs", seconds, c.limit_seconds);
    std::cout << "criterion " << c.id << " " << c.name << ": " << (check.ok() ? "PASS" : "FAIL") << " (" << timing
              << ")";
    if (!check.ok()) std::cout << " " << check.summary();
    std::cout << std::endl;
    if (!check.ok()) ++failed;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
