#include "dlp/goodness.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

namespace dlp {

namespace {

// Calls visit(S) for each s-subset of `pool` in lexicographic order until it returns true.
template <typename Visit>
bool for_each_subset(const std::vector<std::size_t>& pool, std::size_t s, Visit&& visit) {
  const std::size_t n = pool.size();
  if (s > n) return false;
  std::vector<std::size_t> idx(s);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    VariableSet vars;
    for (auto i : idx) vars.insert(pool[i]);
    if (visit(vars)) return true;
    // next combination
    std::size_t pos = s;
    while (pos > 0 && idx[pos - 1] == n - s + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t q = pos; q < s; ++q) idx[q] = idx[q - 1] + 1;
  }
}

// Largest s with s < c·t + 1.
std::size_t max_heavy_size(const Rational& c, std::size_t t) {
  Rational bound = c * static_cast<unsigned long>(t) + 1;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  if (Rational(fl) == bound) fl -= 1;
  return fl.get_ui();
}

}  // namespace

Rational near_two_c() {
  Rational c(Integer(1), Integer(1) << 29);
  c = 2 - c;
  c.canonicalize();
  return c;
}

void require_c_in_range(const Rational& c) {
  if (!(c > 1 && c <= 2)) throw std::invalid_argument("c must lie in (1, 2], got " + c.get_str());
}

ValidityVerdict is_valid(const KConfiguration& config) {
  if (config.rank() == 0) return {};
  for (std::size_t i = 0; i < config.k(); ++i) {
    for (std::size_t j = i + 1; j < config.k(); ++j) {
      if (config.implies_equal(i, j)) return {false, EqualityWitness{i, j}};
    }
  }
  return {};
}

CollinearityVerdict is_collinearity_free(const KConfiguration& config) {
  if (config.rank() == 0) return {};
  const auto pool = config.basis().support().indices();
  CollinearityVerdict out;
  for_each_subset(pool, 3, [&](VariableSet vars) {
    if (section_rank(config.basis(), vars) == 0) return false;
    const Section sec = section_dim(config.basis(), vars);
    for (const auto& row : sec.basis.rows()) {
      if (row.support().size() == 3) {
        out = {false, CollinearityWitness{row}};
        return true;
      }
    }
    if (sec.dim >= 2) {
      // The whole zero-sum plane on three variables: x_a + x_b − 2x_c.
      const auto idx = vars.indices();
      ExactVector v(config.k());
      v[idx[0]] = 1;
      v[idx[1]] = 1;
      v[idx[2]] = -2;
      out = {false, CollinearityWitness{v}};
      return true;
    }
    return false;
  });
  return out;
}

LightnessVerdict is_c_light(const KConfiguration& config, const Rational& c) {
  require_c_in_range(c);
  const std::size_t r = config.rank();
  if (r == 0) return {};
  std::vector<std::size_t> s_max(r + 1, 0);
  for (std::size_t t = 1; t <= r; ++t) s_max[t] = max_heavy_size(c, t);

  const auto pool = config.basis().support().indices();
  LightnessVerdict out;
  for (std::size_t s = 2; s <= pool.size(); ++s) {
    // Smallest t that would make an s-subset heavy.
    std::size_t t_min = 1;
    while (t_min <= r && s_max[t_min] < s) ++t_min;
    if (t_min > r) break;
    if (t_min > s - 1) continue;
    const bool found = for_each_subset(pool, s, [&](VariableSet vars) {
      const std::size_t t = section_rank(config.basis(), vars);
      if (t < t_min) return false;
      Section sec = section_dim(config.basis(), vars);
      out = {false, HeavinessWitness{vars, sec.dim, std::move(sec.basis)}};
      return true;
    });
    if (found) break;
  }
  return out;
}

GoodnessReport is_c_good(const KConfiguration& config, const Rational& c) {
  require_c_in_range(c);
  GoodnessReport report;
  report.c = c;
  if (auto v = is_valid(config); !v.valid) {
    report.valid = false;
    report.witness = *v.witness;
    return report;
  }
  if (auto v = is_collinearity_free(config); !v.collinearity_free) {
    report.collinearity_free = false;
    report.witness = *v.witness;
    return report;
  }
  if (auto v = is_c_light(config, c); !v.light) {
    report.c_light = false;
    report.witness = std::move(*v.witness);
  }
  return report;
}

bool witness_holds(const KConfiguration& config, const GoodnessWitness& witness, const Rational& c) {
  const ExactBasis& b = config.basis();
  const std::size_t k = config.k();
  if (const auto* eq = std::get_if<EqualityWitness>(&witness)) {
    if (eq->i >= k || eq->j >= k || eq->i == eq->j) return false;
    ExactVector v(k);
    v[eq->i] = 1;
    v[eq->j] = -1;
    return member(b, v);
  }
  if (const auto* col = std::get_if<CollinearityWitness>(&witness)) {
    return col->equation.dim() == k && col->equation.support().size() == 3 && member(b, col->equation);
  }
  if (const auto* heavy = std::get_if<HeavinessWitness>(&witness)) {
    // dim(span ∩ coordinate space) = rank + |S| − rank(span + coordinate space)
    EchelonBuilder sum(b);
    for (auto i : heavy->variables.indices()) sum.insert(ExactVector::unit(k, i));
    const std::size_t t = b.rank() + heavy->variables.size() - sum.rank();
    if (t != heavy->t || t == 0 || heavy->section.rank() != t) return false;
    for (const auto& row : heavy->section.rows()) {
      if (!row.support().is_subset_of(heavy->variables) || !member(b, row)) return false;
    }
    return Rational(static_cast<unsigned long>(heavy->variables.size())) < c * static_cast<unsigned long>(t) + 1;
  }
  return true;
}

std::string describe(const GoodnessWitness& witness) {
  std::ostringstream out;
  if (const auto* eq = std::get_if<EqualityWitness>(&witness)) {
    out << "x" << eq->i + 1 << " = x" << eq->j + 1;
  } else if (const auto* col = std::get_if<CollinearityWitness>(&witness)) {
    out << col->equation.to_string() << " = 0";
  } else if (const auto* heavy = std::get_if<HeavinessWitness>(&witness)) {
    out << heavy->variables.size() << " variables " << heavy->variables.to_string() << ", t=" << heavy->t;
  } else {
    out << "none";
  }
  return out.str();
}

StarResult largest_star(const KConfiguration& config) {
  const std::size_t k = config.k();
  using Pair = std::pair<std::size_t, std::size_t>;
  // Sum-equality classes of unordered pairs, in order of first appearance.
  std::vector<std::vector<Pair>> classes;
  if (config.rank() > 0) {
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = a + 1; b < k; ++b) {
        bool placed = false;
        for (auto& cls : classes) {
          const auto [c, d] = cls.front();
          if (config.implies_sum_equality(a, b, c, d)) {
            cls.push_back({a, b});
            placed = true;
            break;
          }
        }
        if (!placed) classes.push_back({{a, b}});
      }
    }
  }

  StarResult best;
  for (const auto& cls : classes) {
    if (cls.size() < 2) continue;
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    Graph g(k);
    for (const auto& [a, b] : cls) boost::add_edge(a, b, g);
    std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(k);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    StarWitness w;
    for (std::size_t v = 0; v < k; ++v) {
      if (mate[v] != boost::graph_traits<Graph>::null_vertex() && v < mate[v]) w.pairs.push_back({v, mate[v]});
    }
    if (w.pairs.size() >= 2 && 2 * w.pairs.size() > best.size) {
      best.size = 2 * w.pairs.size();
      best.witness = std::move(w);
    }
  }
  return best;
}

KConfiguration star_configuration(std::size_t k, std::size_t p) {
  if (2 * p > k) throw std::invalid_argument("star_configuration: 2p exceeds k");
  std::vector<ExactVector> contents;
  for (std::size_t j = 1; j < p; ++j) {
    ExactVector v(k);
    v[0] = 1;
    v[1] = 1;
    v[2 * j] = -1;
    v[2 * j + 1] = -1;
    contents.push_back(std::move(v));
  }
  return KConfiguration::from_contents(k, contents);
}

}  // namespace dlp
