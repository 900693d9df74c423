#pragma once

// Validity, collinearity-freeness, c-lightness and stars of k-configurations.

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dlp/configuration.hpp"

namespace dlp {

/// The configuration implies x_i = x_j (0-based, i < j).
struct EqualityWitness {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const EqualityWitness&, const EqualityWitness&) = default;
};

/// A nonzero implied equation supported on exactly three variables.
struct CollinearityWitness {
  ExactVector equation;
};

/// t = section dimension on `variables`, with |variables| < c·t + 1.
struct HeavinessWitness {
  VariableSet variables;
  std::size_t t = 0;
  ExactBasis section;
};

using GoodnessWitness = std::variant<std::monostate, EqualityWitness, CollinearityWitness, HeavinessWitness>;

struct ValidityVerdict {
  bool valid = true;
  std::optional<EqualityWitness> witness;
};

struct CollinearityVerdict {
  bool collinearity_free = true;
  std::optional<CollinearityWitness> witness;
};

struct LightnessVerdict {
  bool light = true;
  std::optional<HeavinessWitness> witness;
};

struct GoodnessReport {
  bool valid = true;
  bool collinearity_free = true;
  bool c_light = true;
  Rational c;
  GoodnessWitness witness;

  [[nodiscard]] bool c_good() const { return valid && collinearity_free && c_light; }
};

/// 2 − 2⁻²⁹, the exponent constant used for the headline construction.
Rational near_two_c();

/// Throws std::invalid_argument unless 1 < c ≤ 2.
void require_c_in_range(const Rational& c);

ValidityVerdict is_valid(const KConfiguration& config);
CollinearityVerdict is_collinearity_free(const KConfiguration& config);
LightnessVerdict is_c_light(const KConfiguration& config, const Rational& c);
/// Short-circuits valid → collinearity-free → c-light; later flags stay at
/// their default (true) once an earlier check fails.
GoodnessReport is_c_good(const KConfiguration& config, const Rational& c);

/// Re-checks a witness against the configuration by independent rank computations.
bool witness_holds(const KConfiguration& config, const GoodnessWitness& witness, const Rational& c);

/// Human-readable witness: "x1 = x3", "2x2 - x4 - x5 = 0", "{x1,...,x8} t=4".
std::string describe(const GoodnessWitness& witness);

/// p disjoint unordered pairs with pairwise equal implied sums.
struct StarWitness {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct StarResult {
  std::size_t size = 0;  // 2p, or 0 when no two pairs are sum-equal
  StarWitness witness;
};

/// Largest star implied by a valid configuration.
StarResult largest_star(const KConfiguration& config);

/// Canonical star {x_1 + x_2 = x_3 + x_4 = ... = x_{2p-1} + x_{2p}} on k ≥ 2p variables.
KConfiguration star_configuration(std::size_t k, std::size_t p);

}  // namespace dlp
