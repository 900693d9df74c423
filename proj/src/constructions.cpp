#include "dlp/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_map>

#include "dlp/configuration.hpp"
#include "dlp/goodness.hpp"

namespace dlp {

namespace {

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

// a·b, or nullopt on int64 overflow.
std::optional<std::int64_t> checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<std::int64_t> checked_pow(std::int64_t base, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    auto next = checked_mul(out, base);
    if (!next) return std::nullopt;
    out = *next;
  }
  return out;
}

// Vectors of [m]^d with squared norm r, in lexicographic order of (v_1, ..., v_d).
void collect_slice(int d, int m, std::uint64_t r, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  const int placed = static_cast<int>(prefix.size());
  std::uint64_t used = 0;
  for (int v : prefix) used += static_cast<std::uint64_t>(v) * v;
  if (placed == d) {
    if (used == r) out.push_back(prefix);
    return;
  }
  const auto left = static_cast<std::uint64_t>(d - placed - 1);
  for (int v = 1; v <= m; ++v) {
    const std::uint64_t here = used + static_cast<std::uint64_t>(v) * v;
    if (here + left > r) break;
    if (here + left * static_cast<std::uint64_t>(m) * m < r) continue;
    prefix.push_back(v);
    collect_slice(d, m, r, prefix, out);
    prefix.pop_back();
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

// Best modified Behrend set inside [1, limit]; empty if none fits.
std::pair<std::vector<std::int64_t>, std::string> best_behrend_within(std::int64_t limit, int kappa) {
  std::vector<std::int64_t> best;
  std::string label;
  for (int d = 2; d < 63; ++d) {
    const auto smallest = checked_pow(16LL * kappa, d);
    if (!smallest || *smallest > limit) break;
    int m = 1;
    while (true) {
      const auto next = checked_pow(16LL * kappa * (m + 1), d);
      const auto vectors = checked_pow(m + 1, d);
      if (!next || *next > limit || !vectors || *vectors > 10'000'000) break;
      ++m;
    }
    auto set = behrend_set({d, m, kappa});
    if (set.elements.size() > best.size()) {
      best = std::move(set.elements);
      label = "behrend d=" + std::to_string(d) + " m=" + std::to_string(m);
    }
  }
  return {best, label};
}

// Alteration over k-subsets of `pool`, in lexicographic order. Returns survivors.
std::vector<std::int64_t> alter(const std::vector<std::int64_t>& pool, std::size_t k, const Rational& c,
                                std::vector<Deletion>& log) {
  const std::size_t n = pool.size();
  std::vector<bool> deleted(n, false);
  if (n < k) return pool;
  std::unordered_map<PatternKey, bool> verdicts;
  std::vector<std::size_t> idx(k);
  for (std::size_t q = 0; q < k; ++q) idx[q] = q;
  std::vector<std::int64_t> pts(k);
  std::vector<std::int64_t> diffs;
  while (true) {
    // First deleted position in the current combination, if any.
    std::size_t bad_pos = k;
    for (std::size_t q = 0; q < k; ++q) {
      if (deleted[idx[q]]) {
        bad_pos = q;
        break;
      }
    }
    if (bad_pos == k) {
      for (std::size_t q = 0; q < k; ++q) pts[q] = pool[idx[q]];
      diffs.clear();
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b) diffs.push_back(pts[b] - pts[a]);
      std::sort(diffs.begin(), diffs.end());
      bool good = true;
      if (std::adjacent_find(diffs.begin(), diffs.end()) != diffs.end()) {
        const PatternKey key = difference_pattern(pts);
        auto it = verdicts.find(key);
        if (it == verdicts.end()) {
          it = verdicts.emplace(key, is_c_good(KConfiguration::from_points(std::span<const std::int64_t>(pts)), c).c_good()).first;
        }
        good = it->second;
      }
      if (!good) {
        deleted[idx[k - 1]] = true;
        log.push_back({pts.back(), pts});
        bad_pos = k - 1;
      }
    }
    // Advance: when position bad_pos holds a deleted element, every combination
    // sharing the prefix up to bad_pos is skipped by bumping that position.
    std::size_t q = bad_pos == k ? k : bad_pos + 1;
    while (q > 0 && idx[q - 1] == n - k + q - 1) --q;
    if (q == 0) break;
    ++idx[q - 1];
    for (std::size_t r = q; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!deleted[i]) out.push_back(pool[i]);
  return out;
}

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::vector<std::uint64_t> sphere_slice_counts(int d, int m) {
  const std::size_t top = static_cast<std::size_t>(d) * m * m;
  std::vector<std::uint64_t> counts(top + 1, 0);
  counts[0] = 1;
  for (int coord = 0; coord < d; ++coord) {
    std::vector<std::uint64_t> next(top + 1, 0);
    for (std::size_t r = 0; r <= top; ++r) {
      if (counts[r] == 0) continue;
      for (int v = 1; v <= m; ++v) {
        const std::size_t s = r + static_cast<std::size_t>(v) * v;
        if (s <= top) next[s] += counts[r];
      }
    }
    counts = std::move(next);
  }
  return counts;
}

SetArtifact behrend_set(const BehrendParams& p, std::uint64_t max_vectors) {
  if (p.d < 2) throw ConstructionError("behrend: d must be at least 2 (got " + std::to_string(p.d) + ")");
  if (p.m < 1) throw ConstructionError("behrend: m must be at least 1 (got " + std::to_string(p.m) + ")");
  if (p.kappa < 1) throw ConstructionError("behrend: kappa must be at least 1 (got " + std::to_string(p.kappa) + ")");
  const auto vectors = checked_pow(p.m, p.d);
  if (!vectors || static_cast<std::uint64_t>(*vectors) > max_vectors) {
    throw ConstructionError("behrend: m^d exceeds the enumeration limit of " + std::to_string(max_vectors));
  }
  const auto top = checked_pow(p.base(), p.d);
  if (!top) throw ConstructionError("behrend: base^d does not fit in 64 bits");

  const auto counts = sphere_slice_counts(p.d, p.m);
  std::uint64_t r = 0;
  for (std::uint64_t s = 1; s < counts.size(); ++s)
    if (counts[s] > counts[r]) r = s;

  std::vector<std::vector<int>> slice;
  std::vector<int> prefix;
  collect_slice(p.d, p.m, r, prefix, slice);

  SetArtifact out;
  for (const auto& v : slice) {
    std::int64_t x = 0;
    std::int64_t scale = 1;
    for (int i = 0; i < p.d; ++i) {
      x += v[i] * scale;
      if (i + 1 < p.d) scale *= p.base();
    }
    out.elements.push_back(x);
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.provenance.construction = "behrend";
  out.provenance.parameters = {{"d", std::to_string(p.d)},
                               {"m", std::to_string(p.m)},
                               {"kappa", std::to_string(p.kappa)},
                               {"base", std::to_string(p.base())},
                               {"r", std::to_string(r)},
                               {"slice_size", std::to_string(counts[r])}};
  return out;
}

BehrendParams behrend_auto_params(std::int64_t n, int kappa) {
  if (n < 1) throw ConstructionError("behrend: n must be positive (got " + std::to_string(n) + ")");
  if (kappa < 1) throw ConstructionError("behrend: kappa must be at least 1");
  const long double root = std::sqrt(std::log(static_cast<long double>(n)));
  const auto d = static_cast<int>(std::floor(root));
  const long double m_real = std::exp(root) / (16.0L * kappa);
  const auto m = static_cast<std::int64_t>(std::floor(m_real));
  if (d < 2) {
    throw ConstructionError("behrend: parameter d = floor(sqrt(ln n)) = " + std::to_string(d) + " collapsed below 2 for n = " +
                            std::to_string(n));
  }
  if (m < 1) {
    throw ConstructionError("behrend: parameter m = floor(e^sqrt(ln n) / (16 kappa)) = 0 for n = " + std::to_string(n) +
                            ", kappa = " + std::to_string(kappa));
  }
  return {d, static_cast<int>(m), kappa};
}

SetArtifact behrend_auto(std::int64_t n, int kappa) {
  const BehrendParams p = behrend_auto_params(n, kappa);
  SetArtifact out = behrend_set(p);
  if (!out.elements.empty() && out.elements.back() > n) {
    throw ConstructionError("behrend: element " + std::to_string(out.elements.back()) + " exceeds n = " + std::to_string(n));
  }
  out.provenance.parameters.insert(out.provenance.parameters.begin(), {"n", std::to_string(n)});
  return out;
}

std::vector<std::int64_t> digit_cube_set(std::int64_t limit, int kappa) {
  if (kappa < 1) throw ConstructionError("digit cube: kappa must be at least 1");
  const std::int64_t base = kappa + 1;
  // Largest d with 1 + Σ_{i<d} base^i ≤ limit.
  std::vector<std::int64_t> powers;
  std::int64_t top = 1;
  std::int64_t power = 1;
  while (powers.size() < 62) {
    std::int64_t next_top = 0;
    if (__builtin_add_overflow(top, power, &next_top) || next_top > limit) break;
    top = next_top;
    powers.push_back(power);
    const auto next_power = checked_mul(power, base);
    if (!next_power) break;
    power = *next_power;
  }
  if (powers.size() > 24) powers.resize(24);
  std::vector<std::int64_t> out;
  const std::uint64_t count = 1ULL << powers.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    std::int64_t x = 1;
    for (std::size_t i = 0; i < powers.size(); ++i)
      if (bits >> i & 1) x += powers[i];
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  if (limit < 1) out.clear();
  return out;
}

std::int64_t floor_power(std::int64_t n, const Rational& c) {
  if (n < 1) throw ConstructionError("n must be positive");
  Rational q = c;
  q.canonicalize();
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  mpz_class result;
  if (num > 0 && den <= 64 && num <= 64 * den) {
    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), mpz_class(static_cast<long>(n)).get_mpz_t(), num.get_ui());
    mpz_root(result.get_mpz_t(), power.get_mpz_t(), den.get_ui());
  } else {
    const long double v = std::pow(static_cast<long double>(n), static_cast<long double>(q.get_d()));
    if (!(v < 9.2e18L)) throw ConstructionError("n^c does not fit in 64 bits");
    result = mpz_class(std::to_string(static_cast<std::int64_t>(std::floor(v))));
  }
  if (!result.fits_slong_p()) throw ConstructionError("n^c does not fit in 64 bits");
  return result.get_si();
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t attempt) {
  std::uint64_t z = seed + (attempt + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SetArtifact random_local_set(const RandomLocalParams& p) {
  if (p.n < 1) throw ConstructionError("random-local: n must be positive");
  if (p.k < 4 || p.k > kMaxVariables) throw ConstructionError("random-local: k must lie in [4, 64]");
  if (p.kappa < 1) throw ConstructionError("random-local: kappa must be at least 1");
  try {
    require_c_in_range(p.c);
  } catch (const std::invalid_argument& e) {
    throw ConstructionError(std::string("random-local: ") + e.what());
  }
  const std::int64_t limit = floor_power(p.n, p.c);

  auto [ground, ground_label] = best_behrend_within(limit, p.kappa);
  auto cube = digit_cube_set(limit, p.kappa);
  if (cube.size() > ground.size()) {
    ground_label = "digit-cube base " + std::to_string(p.kappa + 1) + " d=" +
                   std::to_string(cube.empty() ? 0 : std::countr_zero(cube.size()));
    ground = std::move(cube);
  }
  if (static_cast<std::int64_t>(ground.size()) < p.n) {
    throw ConstructionError("random-local: ground set inside [" + std::to_string(limit) + "] has only " +
                            std::to_string(ground.size()) + " elements, fewer than n = " + std::to_string(p.n));
  }
  // ρ = min(1, 2n/|S|); include x iff (draw >> 11)·|S| < 2n·2⁵³.
  const auto size = static_cast<unsigned __int128>(ground.size());
  const unsigned __int128 threshold = static_cast<unsigned __int128>(2 * p.n) << 53;

  for (std::size_t attempt = 0; attempt <= p.max_retries; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? p.seed : derive_seed(p.seed, attempt);
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> sampled;
    for (auto x : ground) {
      const std::uint64_t draw = rng() >> 11;
      if (static_cast<unsigned __int128>(draw) * size < threshold) sampled.push_back(x);
    }
    if (binomial_capped(sampled.size(), p.k, p.max_subsets) > p.max_subsets) {
      throw ConstructionError("random-local: C(|B|, k) exceeds the subset budget of " + std::to_string(p.max_subsets));
    }
    std::vector<Deletion> log;
    auto survivors = alter(sampled, p.k, p.c, log);
    if (static_cast<std::int64_t>(survivors.size()) < p.n) continue;

    SetArtifact out;
    out.provenance.trimmed.assign(survivors.begin() + p.n, survivors.end());
    survivors.resize(static_cast<std::size_t>(p.n));
    out.elements = std::move(survivors);
    auto& prov = out.provenance;
    prov.construction = "random-local";
    prov.parameters = {{"n", std::to_string(p.n)},
                       {"k", std::to_string(p.k)},
                       {"c", to_string(p.c)},
                       {"kappa", std::to_string(p.kappa)},
                       {"max_retries", std::to_string(p.max_retries)},
                       {"limit", std::to_string(limit)},
                       {"ground", ground_label},
                       {"ground_size", std::to_string(ground.size())}};
    prov.seed = p.seed;
    prov.attempt_seed = seed;
    prov.attempt = attempt;
    prov.ground_set = ground;
    prov.sampled = std::move(sampled);
    prov.deletions = std::move(log);
    return out;
  }
  throw ConstructionError("random-local: fewer than n = " + std::to_string(p.n) + " elements survived in " +
                          std::to_string(p.max_retries + 1) + " attempts");
}

std::vector<std::int64_t> replay_alteration(const Provenance& provenance) {
  std::vector<std::int64_t> out;
  for (auto x : provenance.sampled) {
    const bool gone =
        std::any_of(provenance.deletions.begin(), provenance.deletions.end(), [x](const Deletion& d) { return d.element == x; }) ||
        std::find(provenance.trimmed.begin(), provenance.trimmed.end(), x) != provenance.trimmed.end();
    if (!gone) out.push_back(x);
  }
  return out;
}

}  // namespace dlp
