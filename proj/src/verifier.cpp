#include "dlp/verifier.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <thread>
#include <unordered_set>

#include "dlp/configuration.hpp"

namespace dlp {

namespace {

// Branch-and-bound search restricted to subsets whose first element is in [first_lo, first_hi).
class MinDifferenceSearch {
 public:
  MinDifferenceSearch(const std::vector<std::vector<std::uint32_t>>& ids, std::size_t labels, std::size_t k)
      : ids_(ids), counts_(labels, 0), k_(k), chosen_(k) {}

  void run(std::size_t first_lo, std::size_t first_hi) {
    for (std::size_t f = first_lo; f < first_hi; ++f) {
      chosen_[0] = f;
      extend(1, 0);
    }
  }

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> best_subset;

 private:
  void extend(std::size_t depth, std::size_t distinct) {
    if (distinct >= best) return;
    if (depth == k_) {
      best = distinct;
      best_subset = chosen_;
      return;
    }
    const std::size_t n = ids_.size();
    for (std::size_t next = chosen_[depth - 1] + 1; next + (k_ - depth) <= n; ++next) {
      std::size_t added = 0;
      for (std::size_t q = 0; q < depth; ++q) added += counts_[ids_[chosen_[q]][next]]++ == 0 ? 1 : 0;
      chosen_[depth] = next;
      extend(depth + 1, distinct + added);
      for (std::size_t q = 0; q < depth; ++q) --counts_[ids_[chosen_[q]][next]];
    }
  }

  const std::vector<std::vector<std::uint32_t>>& ids_;
  std::vector<std::uint32_t> counts_;
  std::size_t k_;
  std::vector<std::size_t> chosen_;
};

}  // namespace

std::uint64_t default_subset_budget() {
  if (const char* env = std::getenv("DLP_SUBSET_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultSubsetBudget;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::int64_t> difference_set(std::span<const std::int64_t> a) {
  if (a.size() < 2) throw std::invalid_argument("difference set needs at least two elements");
  std::vector<std::int64_t> out;
  out.reserve(pair_count(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a[i] != a[j]) out.push_back(a[i] > a[j] ? a[i] - a[j] : a[j] - a[i]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LocalPropertyVerdict check_local_property(std::span<const std::int64_t> a, std::size_t k, std::size_t l,
                                          std::uint64_t budget, unsigned threads) {
  std::vector<std::int64_t> pts(a.begin(), a.end());
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) throw std::invalid_argument("set has repeated elements");
  if (k < 2 || k > pts.size()) throw std::invalid_argument("k must lie in [2, |A|]");
  const std::uint64_t total = binomial(pts.size(), k);
  if (total > budget) {
    throw BudgetExceeded("exhaustive scan infeasible: C(" + std::to_string(pts.size()) + ", " + std::to_string(k) +
                         ") = " + std::to_string(total) + " subsets exceeds the budget of " + std::to_string(budget));
  }

  // Difference labels: ids[i][j] indexes |a_i − a_j| among all distinct differences.
  const auto diffs = difference_set(pts);
  const std::size_t n = pts.size();
  std::vector<std::vector<std::uint32_t>> ids(n, std::vector<std::uint32_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        const std::int64_t d = pts[i] > pts[j] ? pts[i] - pts[j] : pts[j] - pts[i];
        ids[i][j] = static_cast<std::uint32_t>(std::lower_bound(diffs.begin(), diffs.end(), d) - diffs.begin());
      }

  const std::size_t firsts = n - k + 1;
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(firsts)));
  std::vector<MinDifferenceSearch> searches;
  searches.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) searches.emplace_back(ids, diffs.size(), k);
  if (threads == 1) {
    searches[0].run(0, firsts);
  } else {
    // Interleaved blocks of leading indices; early indices carry the most subsets.
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t f = t; f < firsts; f += threads) searches[t].run(f, f + 1);
      });
    }
    for (auto& th : pool) th.join();
  }

  LocalPropertyVerdict v;
  const MinDifferenceSearch* winner = nullptr;
  for (const auto& s : searches) {
    if (s.best_subset.empty()) continue;
    if (!winner || s.best < winner->best || (s.best == winner->best && s.best_subset < winner->best_subset)) winner = &s;
  }
  v.min_differences = winner->best;
  for (auto i : winner->best_subset) v.witness.push_back(pts[i]);
  v.holds = v.min_differences >= l;
  return v;
}

CrossCheckReport cross_check(std::span<const std::int64_t> points) {
  CrossCheckReport r;
  r.pairs = pair_count(points.size());
  r.distinct_differences = difference_set(points).size();
  r.certified = KConfiguration::from_points(points).certified_count();
  return r;
}

std::string SmallRelation::to_string() const {
  return std::to_string(alpha) + "*" + std::to_string(s1) + " + " + std::to_string(beta) + "*" + std::to_string(s2) +
         " + " + std::to_string(gamma) + "*" + std::to_string(s3) + " = 0";
}

std::optional<SmallRelation> find_small_relation(std::span<const std::int64_t> a, int kappa) {
  const std::unordered_set<std::int64_t> members(a.begin(), a.end());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i] == a[j]) continue;
      for (int alpha = -kappa; alpha <= kappa; ++alpha) {
        for (int beta = -kappa; beta <= kappa; ++beta) {
          const int gamma = -alpha - beta;
          if (alpha == 0 || beta == 0 || gamma == 0 || gamma > kappa || gamma < -kappa) continue;
          // γ·s3 = −(α·s1 + β·s2)
          const __int128 rhs = -(static_cast<__int128>(alpha) * a[i] + static_cast<__int128>(beta) * a[j]);
          if (rhs % gamma != 0) continue;
          const __int128 s3 = rhs / gamma;
          if (s3 < std::numeric_limits<std::int64_t>::min() || s3 > std::numeric_limits<std::int64_t>::max()) continue;
          const auto s = static_cast<std::int64_t>(s3);
          if (s == a[i] || s == a[j] || !members.count(s)) continue;
          return SmallRelation{a[i], a[j], s, alpha, beta, gamma};
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace dlp
