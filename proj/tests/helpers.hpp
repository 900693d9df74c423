#pragma once

#include <ostream>
#include <vector>

#include "dlp/configuration.hpp"
#include "dlp/exactlin.hpp"
#include "oracles.hpp"

namespace testing_helpers {

inline std::vector<mpq_class> to_q(const dlp::ExactVector& v) {
  std::vector<mpq_class> out;
  for (const auto& x : v.coefficients()) out.emplace_back(x);
  return out;
}

inline oracle::Matrix to_matrix(std::span<const dlp::ExactVector> vs) {
  oracle::Matrix m;
  for (const auto& v : vs) m.push_back(to_q(v));
  return m;
}

inline std::vector<std::vector<long>> rows_of(const dlp::ExactBasis& b) {
  std::vector<std::vector<long>> out;
  for (const auto& r : b.rows()) {
    std::vector<long> row;
    for (const auto& x : r.coefficients()) row.push_back(x.get_si());
    out.push_back(row);
  }
  return out;
}

/// Content of x_{i1} − x_{i2} = x_{i3} − x_{i4} with 1-based indices.
inline dlp::ExactVector eq1(std::size_t k, std::size_t i1, std::size_t i2, std::size_t i3, std::size_t i4) {
  return dlp::DifferenceEquality::make(k, i1 - 1, i2 - 1, i3 - 1, i4 - 1).content;
}

/// Content given as signed 1-based terms, e.g. {{1,+1},{3,-2},{5,+1}}.
inline dlp::ExactVector terms(std::size_t k, std::initializer_list<std::pair<std::size_t, long>> ts) {
  dlp::ExactVector v(k);
  for (auto [i, c] : ts) v[i - 1] += c;
  return v;
}

inline dlp::KConfiguration config_of(std::size_t k, std::initializer_list<dlp::ExactVector> contents) {
  std::vector<dlp::ExactVector> cs(contents);
  return dlp::KConfiguration::from_contents(k, cs);
}

inline dlp::KConfiguration points_config(std::vector<std::int64_t> pts) {
  return dlp::KConfiguration::from_points(std::span<const std::int64_t>(pts));
}

/// 1-based certified pair.
inline dlp::CertifiedPair pair1(std::size_t i, std::size_t j) { return {i - 1, j - 1}; }

}  // namespace testing_helpers

namespace dlp {
inline void PrintTo(const KConfiguration& c, std::ostream* os) {
  *os << "{";
  for (const auto& r : c.basis().rows()) *os << r.to_string() << "; ";
  *os << "k=" << c.k() << "}";
}
inline void PrintTo(const ExactVector& v, std::ostream* os) { *os << v.to_string(); }
inline void PrintTo(const CertifiedPair& p, std::ostream* os) { *os << "(" << p.i + 1 << "," << p.j + 1 << ")"; }
}  // namespace dlp
