#include "dlp/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "dlp/goodness.hpp"

#ifndef DLP_VERSION
#define DLP_VERSION "0.0.0"
#endif

namespace dlp::io {

ParseError::ParseError(const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view version() { return DLP_VERSION; }

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<std::int64_t> parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::ranges::all_of(s, [](char ch) { return ch >= '0' && ch <= '9'; });
}

Json pairs_json(std::span<const std::pair<std::size_t, std::size_t>> pairs) {
  Json out = Json::array();
  for (auto [i, j] : pairs) out.push_back({i + 1, j + 1});
  return out;
}

}  // namespace

SetFile parse_set(std::string_view text, bool strict) {
  SetFile out;
  std::set<std::int64_t> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto value = parse_integer(line);
    if (!value) throw ParseError("not an integer: '" + std::string(line) + "'", line_no);
    const bool repeated = !seen.insert(*value).second;
    if (repeated || (!out.elements.empty() && *value < out.elements.back())) {
      const std::string what = repeated ? "repeated element " : "element out of order ";
      if (strict) throw ParseError(what + std::to_string(*value), line_no);
      out.warnings.push_back("line " + std::to_string(line_no) + ": " + what + std::to_string(*value));
    }
    out.elements.push_back(*value);
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.elements.erase(std::unique(out.elements.begin(), out.elements.end()), out.elements.end());
  return out;
}

SetFile read_set(const std::filesystem::path& path, bool strict) { return parse_set(read_file(path), strict); }

std::string format_set(std::span<const std::int64_t> elements) {
  std::string out;
  for (auto x : elements) out += std::to_string(x) + "\n";
  return out;
}

std::vector<std::int64_t> parse_points(std::string_view text) {
  std::vector<std::int64_t> out;
  text = trim(text);
  if (text.empty()) throw ParseError("empty point list");
  std::size_t field = 0;
  while (true) {
    ++field;
    const auto comma = text.find(',');
    const auto token = trim(text.substr(0, comma));
    const auto value = parse_integer(token);
    if (!value) throw ParseError("point " + std::to_string(field) + " is not an integer: '" + std::string(token) + "'");
    out.push_back(*value);
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

Rational parse_c(std::string_view text) {
  text = trim(text);
  if (text == "paper") return near_two_c();
  Rational r;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("bad fraction for c: '" + std::string(text) + "'");
    r = Rational(Integer(std::string(num)), Integer(std::string(den)));
    if (r.get_den() == 0) throw ParseError("zero denominator in c");
  } else {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (!all_digits(whole) || (dot != std::string_view::npos && !all_digits(frac)))
      throw ParseError("c must be a decimal, a fraction or 'paper', got '" + std::string(text) + "'");
    Integer den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = Rational(Integer(std::string(whole) + std::string(frac)), den);
  }
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) { return r.get_str(); }

namespace {

Rational rational_from_json(const Json& j) {
  Rational r(j.get<std::string>());
  r.canonicalize();
  return r;
}

}  // namespace

Json to_json(const ClassSummary& s) {
  Json histogram = Json::object();
  for (const auto& [count, n] : s.histogram) histogram[std::to_string(count)] = n;
  return Json{{"c", format_rational(s.c)},
              {"good", s.good},
              {"bad", s.bad},
              {"max_certified", s.max_certified},
              {"witness", s.witness},
              {"witness_verified", s.witness_verified},
              {"histogram", histogram},
              {"attained", s.attained},
              {"attained_by_non_stars", s.attained_by_non_stars}};
}

Json to_json(const ScanReport& r) {
  return Json{{"ground", r.ground},
              {"k", r.k},
              {"subsets", r.subsets},
              {"bound", r.bound},
              {"bound_respected", r.bound_respected()},
              {"consistent", r.consistent()},
              {"primary", to_json(r.primary)},
              {"comparison", r.comparison ? to_json(*r.comparison) : Json(nullptr)},
              {"divergences", r.divergences},
              {"cross_check_failures", r.cross_check_failures},
              {"distinct_patterns", r.distinct_patterns}};
}

ClassSummary class_summary_from_json(const Json& j) {
  ClassSummary s;
  s.c = rational_from_json(j.at("c"));
  s.good = j.at("good").get<std::uint64_t>();
  s.bad = j.at("bad").get<std::uint64_t>();
  s.max_certified = j.at("max_certified").get<std::size_t>();
  s.witness = j.at("witness").get<std::vector<std::int64_t>>();
  s.witness_verified = j.at("witness_verified").get<bool>();
  for (const auto& [key, n] : j.at("histogram").items()) s.histogram[std::stoull(key)] = n.get<std::uint64_t>();
  s.attained = j.at("attained").get<std::uint64_t>();
  s.attained_by_non_stars = j.at("attained_by_non_stars").get<std::uint64_t>();
  return s;
}

ScanReport scan_report_from_json(const Json& j) {
  ScanReport r;
  r.ground = j.at("ground").get<std::int64_t>();
  r.k = j.at("k").get<std::size_t>();
  r.subsets = j.at("subsets").get<std::uint64_t>();
  r.bound = j.at("bound").get<std::size_t>();
  r.primary = class_summary_from_json(j.at("primary"));
  if (!j.at("comparison").is_null()) r.comparison = class_summary_from_json(j.at("comparison"));
  r.divergences = j.at("divergences").get<std::uint64_t>();
  r.cross_check_failures = j.at("cross_check_failures").get<std::uint64_t>();
  r.distinct_patterns = j.at("distinct_patterns").get<std::uint64_t>();
  return r;
}

Json to_json(const LocalPropertyVerdict& v, std::size_t k, std::size_t l) {
  return Json{{"k", k}, {"l", l}, {"holds", v.holds}, {"min_differences", v.min_differences}, {"witness", v.witness}};
}

Json to_json(const Provenance& p) {
  Json params = Json::object();
  for (const auto& [key, value] : p.parameters) params[key] = value;
  Json deletions = Json::array();
  for (const auto& d : p.deletions) deletions.push_back({{"element", d.element}, {"subset", d.subset}});
  return Json{{"construction", p.construction},
              {"parameters", params},
              {"seed", p.seed ? Json(*p.seed) : Json(nullptr)},
              {"attempt_seed", p.attempt_seed ? Json(*p.attempt_seed) : Json(nullptr)},
              {"attempt", p.attempt},
              {"ground_set_size", p.ground_set.size()},
              {"sampled", p.sampled},
              {"deletions", deletions},
              {"trimmed", p.trimmed}};
}

Json to_json(const std::vector<StarCheck>& checks) {
  Json out = Json::array();
  for (const auto& s : checks)
    out.push_back({{"p", s.p},
                   {"points", s.points},
                   {"certified", s.certified},
                   {"expected", s.expected},
                   {"matches_star", s.matches_star},
                   {"good", s.good},
                   {"passed", s.passed()}});
  return out;
}

Json to_json(const OddEqualityCase& r) {
  return Json{{"k", r.k},
              {"seed", r.seed},
              {"attempts", r.attempts},
              {"points", r.points},
              {"rank", r.rank},
              {"certified", r.certified},
              {"expected", r.expected},
              {"required_pairs", r.required_pairs},
              {"good", r.good},
              {"passed", r.passed()}};
}

Json to_json(const LemmaSuiteReport& r) {
  Json props = Json::array();
  for (const auto& t : r.properties) props.push_back({{"name", t.name}, {"checked", t.checked}, {"failed", t.failed}});
  return Json{{"seed", r.seed},
              {"instances", r.instances},
              {"skipped", r.skipped},
              {"passed", r.passed()},
              {"properties", props},
              {"counterexamples", r.counterexamples}};
}

Json analyze_points(std::span<const std::int64_t> points, const Rational& c) {
  const auto config = KConfiguration::from_points(points);
  Json basis = Json::array();
  for (const auto& row : config.basis().rows()) basis.push_back(row.to_string());
  std::vector<std::pair<std::size_t, std::size_t>> certified;
  for (const auto& p : config.certified_pairs()) certified.emplace_back(p.i, p.j);
  const std::size_t distinct = distinct_difference_count(points);

  const auto good = is_c_good(config, c);
  std::string verdict = "c-good";
  if (!good.valid) {
    verdict = "invalid";
  } else if (!good.collinearity_free) {
    verdict = "collinearity-inducing";
  } else if (!good.c_light) {
    verdict = "c-heavy";
  }
  const auto star = largest_star(config);

  return Json{{"points", std::vector<std::int64_t>(points.begin(), points.end())},
              {"k", points.size()},
              {"rank", config.rank()},
              {"basis", basis},
              {"certified_count", certified.size()},
              {"certified_pairs", pairs_json(certified)},
              {"distinct_differences", distinct},
              {"cross_check_consistent", certified.size() + distinct == pair_count(points.size())},
              {"goodness",
               {{"c", format_rational(c)},
                {"valid", good.valid},
                {"collinearity_free", good.collinearity_free},
                {"c_light", good.c_light},
                {"c_good", good.c_good()},
                {"verdict", verdict},
                {"witness", describe(good.witness)}}},
              {"largest_star", {{"size", star.size}, {"pairs", pairs_json(star.witness.pairs)}}}};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return out.str();
}

Json to_json(const RunManifest& m) {
  Json params = Json::object();
  for (const auto& [key, value] : m.params) params[key] = value;
  auto digests = [](const std::vector<FileDigest>& files) {
    Json out = Json::array();
    for (const auto& f : files) out.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return out;
  };
  return Json{{"command", m.command},
              {"params", params},
              {"seed", m.seed ? Json(*m.seed) : Json(nullptr)},
              {"version", m.version},
              {"inputs", digests(m.inputs)},
              {"outputs", digests(m.outputs)},
              {"details", m.details}};
}

RunManifest manifest_from_json(const Json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  for (const auto& [key, value] : j.at("params").items()) m.params.emplace_back(key, value.get<std::string>());
  if (!j.at("seed").is_null()) m.seed = j.at("seed").get<std::uint64_t>();
  m.version = j.at("version").get<std::string>();
  auto digests = [](const Json& arr) {
    std::vector<FileDigest> out;
    for (const auto& f : arr) out.push_back({f.at("path").get<std::string>(), f.at("sha256").get<std::string>()});
    return out;
  };
  m.inputs = digests(j.at("inputs"));
  m.outputs = digests(j.at("outputs"));
  m.details = j.value("details", Json(nullptr));
  return m;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

FileDigest digest_file(const std::filesystem::path& path) { return {path.string(), sha256_hex(read_file(path))}; }

}  // namespace dlp::io
