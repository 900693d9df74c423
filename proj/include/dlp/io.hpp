#pragma once

// File formats and report serialization: set files, JSON reports and run
// manifests.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlp/constructions.hpp"
#include "dlp/harness.hpp"
#include "dlp/verifier.hpp"

namespace dlp::io {

using Json = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
 public:
  /// line = 0 when the input has no line structure.
  ParseError(const std::string& what, std::size_t line = 0);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

std::string_view version();

struct SetFile {
  std::vector<std::int64_t> elements;  // strictly increasing
  std::vector<std::string> warnings;
};

/// One decimal integer per line; '#' starts a comment; blank lines are
/// ignored. With `strict`, the integers must be strictly increasing; otherwise
/// out-of-order input is sorted and repeats dropped, each with a warning.
SetFile parse_set(std::string_view text, bool strict);
SetFile read_set(const std::filesystem::path& path, bool strict);
/// "a1\na2\n..."
std::string format_set(std::span<const std::int64_t> elements);

/// "a1,a2,..." with optional surrounding whitespace.
std::vector<std::int64_t> parse_points(std::string_view text);

/// A decimal ("1.9"), a fraction ("19/10"), or "paper" for 2 − 2⁻²⁹.
Rational parse_c(std::string_view text);
/// Exact "p" or "p/q" form.
std::string format_rational(const Rational& r);

Json to_json(const ClassSummary& s);
Json to_json(const ScanReport& r);
ClassSummary class_summary_from_json(const Json& j);
ScanReport scan_report_from_json(const Json& j);

Json to_json(const LocalPropertyVerdict& v, std::size_t k, std::size_t l);
Json to_json(const Provenance& p);
Json to_json(const std::vector<StarCheck>& checks);
Json to_json(const OddEqualityCase& r);
Json to_json(const LemmaSuiteReport& r);

/// Basis, certified pairs (1-based), distinct differences, goodness at c with
/// witness, and largest star for the given points.
Json analyze_points(std::span<const std::int64_t> points, const Rational& c);

std::string sha256_hex(std::string_view bytes);

struct FileDigest {
  std::string path;
  std::string sha256;
  friend bool operator==(const FileDigest&, const FileDigest&) = default;
};

struct RunManifest {
  /// Subcommand path, e.g. "build behrend".
  std::string command;
  /// Every effective option value, in a fixed order.
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::uint64_t> seed;
  std::string version;
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  /// Command-specific data (construction provenance); null when absent.
  Json details;

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
FileDigest digest_file(const std::filesystem::path& path);

}  // namespace dlp::io
