#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "dlp/constructions.hpp"
#include "dlp/harness.hpp"
#include "dlp/io.hpp"
#include "dlp/verifier.hpp"

namespace dlp::cli {

namespace {

namespace fs = std::filesystem;

constexpr std::size_t kMaxAnalyzePoints = 24;
// Options recorded in manifests as "true"/"false" and replayed as bare flags.
const std::vector<std::string> kFlags = {"strict"};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// What a command produced, plus everything its manifest records.
struct Invocation {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> inputs;
  io::Json details;
  std::string out_path;
  std::string manifest_path;
};

void emit(const Invocation& inv, const std::string& content, std::ostream& out) {
  if (inv.out_path.empty()) {
    out << content;
    return;
  }
  io::write_file(inv.out_path, content);
  io::RunManifest m;
  m.command = inv.command;
  m.params = inv.params;
  m.seed = inv.seed;
  m.version = std::string(io::version());
  for (const auto& in : inv.inputs) m.inputs.push_back(io::digest_file(in));
  m.outputs.push_back(io::digest_file(inv.out_path));
  m.details = inv.details;
  const std::string manifest = inv.manifest_path.empty() ? inv.out_path + ".manifest.json" : inv.manifest_path;
  io::write_file(manifest, io::dump(io::to_json(m)));
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

void add_output_options(CLI::App* sub, std::string& out_path, std::string& manifest_path) {
  sub->add_option("--out", out_path, "Write the output here (and a manifest next to it) instead of stdout");
  sub->add_option("--manifest", manifest_path, "Manifest path (default: <out>.manifest.json)");
}

std::vector<std::int64_t> load_points(const std::string& points, const std::string& file, bool strict, std::ostream& err,
                                      std::vector<std::string>& inputs) {
  if (!points.empty() && !file.empty()) throw UsageError("give either --points or a set file, not both");
  if (!points.empty()) return io::parse_points(points);
  if (file.empty()) throw UsageError("no points: give --points or a set file");
  if (!fs::exists(file)) throw UsageError("no such file: " + file);
  auto set = io::read_set(file, strict);
  for (const auto& w : set.warnings) err << "warning: " << file << ": " << w << "\n";
  inputs.push_back(file);
  return std::move(set.elements);
}

int replay(const std::string& manifest_path, std::ostream& out, std::ostream& err) {
  const auto m = io::manifest_from_json(io::Json::parse(io::read_file(manifest_path)));
  if (m.version != io::version())
    err << "warning: manifest written by version " << m.version << ", replaying with " << io::version() << "\n";
  for (const auto& in : m.inputs) {
    if (io::digest_file(in.path).sha256 != in.sha256) {
      err << "error: input " << in.path << " no longer matches its recorded digest\n";
      return kInvariant;
    }
  }
  if (m.outputs.size() != 1) throw UsageError("manifest must record exactly one output");

  const fs::path tmp = fs::temp_directory_path() / ("dlp-replay-" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  const fs::path tmp_out = tmp / "output";
  std::vector<std::string> args;
  std::istringstream words(m.command);
  for (std::string w; words >> w;) args.push_back(w);
  for (const auto& [key, value] : m.params) {
    if (std::ranges::find(kFlags, key) != kFlags.end()) {
      if (value == "true") args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(key == "out" ? tmp_out.string() : value);
  }
  args.push_back("--manifest");
  args.push_back((tmp / "manifest.json").string());

  std::ostringstream ignored;
  const int code = run(args, ignored, err);
  int result = kOk;
  if (code >= kUsage) {
    result = code;
  } else if (!fs::exists(tmp_out) || io::digest_file(tmp_out).sha256 != m.outputs.front().sha256) {
    err << "replay: output differs from " << m.outputs.front().path << "\n";
    result = kInvariant;
  } else {
    out << "replay: identical output (sha256 " << m.outputs.front().sha256 << ")\n";
  }
  fs::remove_all(tmp);
  return result;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Difference-equality configurations: analysis, constructions, local-property checks and bound scans",
               "dlp"};
  app.set_version_flag("--version", std::string(io::version()));
  app.require_subcommand(1);
  std::function<int()> action;

  std::string out_path, manifest_path;
  std::uint64_t budget = default_subset_budget();
  unsigned threads = 1;

  // build ---------------------------------------------------------------
  auto* build = app.add_subcommand("build", "Construct a set and write it one element per line");
  build->require_subcommand(1);

  auto* behrend = build->add_subcommand("behrend", "Modified Behrend set, explicit (--d --m) or automatic (--n)");
  int d = 0, m = 0, kappa = 2;
  std::int64_t n_auto = 0;
  std::uint64_t behrend_seed = 0;
  behrend->add_option("--d", d, "Dimension");
  behrend->add_option("--m", m, "Coordinate range [m]");
  behrend->add_option("--n", n_auto, "Pick d and m automatically for elements up to n");
  behrend->add_option("--kappa", kappa, "Coefficient bound")->capture_default_str();
  behrend->add_option("--seed", behrend_seed, "Recorded in the manifest (the construction is deterministic)");
  add_output_options(behrend, out_path, manifest_path);
  behrend->callback([&] {
    action = [&]() -> int {
      const bool automatic = behrend->count("--n") > 0;
      if (automatic && (behrend->count("--d") || behrend->count("--m")))
        throw UsageError("give either --n or --d/--m, not both");
      if (!automatic && !(behrend->count("--d") && behrend->count("--m")))
        throw UsageError("give --d and --m, or --n");
      const auto artifact = automatic ? behrend_auto(n_auto, kappa) : behrend_set({d, m, kappa});
      Invocation inv{"build behrend", {}, behrend->count("--seed") ? std::optional(behrend_seed) : std::nullopt,
                     {}, io::to_json(artifact.provenance), out_path, manifest_path};
      if (automatic) {
        inv.params = {{"n", std::to_string(n_auto)}, {"kappa", std::to_string(kappa)}};
      } else {
        inv.params = {{"d", std::to_string(d)}, {"m", std::to_string(m)}, {"kappa", std::to_string(kappa)}};
      }
      if (inv.seed) inv.params.emplace_back("seed", std::to_string(*inv.seed));
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::format_set(artifact.elements), out);
      return kOk;
    };
  });

  auto* random_local = build->add_subcommand("random-local", "Random subset with every k-subset c-good");
  RandomLocalParams rl;
  std::string rl_c = "2";
  random_local->add_option("--n", rl.n, "Number of elements")->required();
  random_local->add_option("--k", rl.k, "Subset size")->capture_default_str();
  random_local->add_option("--c", rl_c, "Goodness constant: decimal, p/q or 'paper'")->capture_default_str();
  random_local->add_option("--kappa", rl.kappa, "Coefficient bound for the ground set")->capture_default_str();
  random_local->add_option("--seed", rl.seed, "Random seed")->capture_default_str();
  random_local->add_option("--max-retries", rl.max_retries, "Extra sampling attempts")->capture_default_str();
  add_output_options(random_local, out_path, manifest_path);
  random_local->callback([&] {
    action = [&]() -> int {
      rl.c = io::parse_c(rl_c);
      rl.max_subsets = budget;
      const auto artifact = random_local_set(rl);
      Invocation inv{"build random-local",
                     {{"n", std::to_string(rl.n)},
                      {"k", std::to_string(rl.k)},
                      {"c", rl_c},
                      {"kappa", std::to_string(rl.kappa)},
                      {"seed", std::to_string(rl.seed)},
                      {"max-retries", std::to_string(rl.max_retries)}},
                     rl.seed,
                     {},
                     io::to_json(artifact.provenance),
                     out_path,
                     manifest_path};
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::format_set(artifact.elements), out);
      return kOk;
    };
  });

  // analyze ---------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "Report the configuration formed by a point tuple");
  std::string points_arg, file_arg, c_arg = "2";
  bool strict = false;
  analyze->add_option("--points", points_arg, "Comma-separated points, e.g. \"1,2,5,6,9\"");
  analyze->add_option("--file,file", file_arg, "Set file (alternative to --points)");
  analyze->add_option("--c", c_arg, "Goodness constant: decimal, p/q or 'paper'")->capture_default_str();
  analyze->add_flag("--strict", strict, "Require a strictly increasing set file");
  add_output_options(analyze, out_path, manifest_path);
  analyze->callback([&] {
    action = [&]() -> int {
      std::vector<std::string> inputs;
      const auto points = load_points(points_arg, file_arg, strict, err, inputs);
      if (points.size() > kMaxAnalyzePoints)
        throw UsageError("analyze supports at most " + std::to_string(kMaxAnalyzePoints) + " points, got " +
                         std::to_string(points.size()));
      const auto c = io::parse_c(c_arg);
      const auto report = io::analyze_points(points, c);
      Invocation inv{"analyze", {}, std::nullopt, inputs, nullptr, out_path, manifest_path};
      if (!points_arg.empty()) inv.params.emplace_back("points", points_arg);
      inv.params.emplace_back("c", c_arg);
      if (!file_arg.empty()) {
        inv.params.emplace_back("file", file_arg);
        inv.params.emplace_back("strict", bool_str(strict));
      }
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::dump(report), out);
      return report.at("cross_check_consistent").get<bool>() ? kOk : kInvariant;
    };
  });

  // verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check that every k-subset has at least l distinct differences");
  std::size_t vk = 0, vl = 0;
  verify->add_option("--file,file", file_arg, "Set file")->required();
  verify->add_option("--k", vk, "Subset size")->required();
  verify->add_option("--l", vl, "Required distinct differences")->required();
  verify->add_flag("--strict", strict, "Require a strictly increasing set file");
  verify->add_option("--threads", threads, "Worker cap")->capture_default_str();
  verify->add_option("--budget", budget, "Maximum number of k-subsets");
  add_output_options(verify, out_path, manifest_path);
  verify->callback([&] {
    action = [&]() -> int {
      std::vector<std::string> inputs;
      const auto set = load_points("", file_arg, strict, err, inputs);
      const auto verdict = check_local_property(set, vk, vl, budget, threads);
      Invocation inv{"verify",
                     {{"file", file_arg},
                      {"k", std::to_string(vk)},
                      {"l", std::to_string(vl)},
                      {"strict", bool_str(strict)},
                      {"budget", std::to_string(budget)}},
                     std::nullopt,
                     inputs,
                     nullptr,
                     out_path,
                     manifest_path};
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::dump(io::to_json(verdict, vk, vl)), out);
      return verdict.holds ? kOk : kPropertyFails;
    };
  });

  // scan ------------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "Classify every k-subset of {1..N} and check the certified-pair bound");
  std::int64_t scan_n = 0;
  std::size_t scan_k = 0;
  std::string compare_arg = "paper";
  scan->add_option("--N", scan_n, "Ground set {1..N}")->required();
  scan->add_option("--k", scan_k, "Subset size")->required();
  scan->add_option("--c", c_arg, "Goodness constant: decimal, p/q or 'paper'")->capture_default_str();
  scan->add_option("--compare-c", compare_arg, "Second constant to classify with, or 'none'")->capture_default_str();
  scan->add_option("--threads", threads, "Worker cap")->capture_default_str();
  scan->add_option("--budget", budget, "Maximum number of k-subsets");
  add_output_options(scan, out_path, manifest_path);
  scan->callback([&] {
    action = [&]() -> int {
      const auto c = io::parse_c(c_arg);
      std::optional<Rational> compare;
      if (compare_arg != "none") compare = io::parse_c(compare_arg);
      const auto report = scan_ground(scan_n, scan_k, c, compare, budget, threads);
      Invocation inv{"scan",
                     {{"N", std::to_string(scan_n)},
                      {"k", std::to_string(scan_k)},
                      {"c", c_arg},
                      {"compare-c", compare_arg},
                      {"budget", std::to_string(budget)}},
                     std::nullopt,
                     {},
                     nullptr,
                     out_path,
                     manifest_path};
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::dump(io::to_json(report)), out);
      if (!report.consistent()) return kInvariant;
      return report.bound_respected() ? kOk : kPropertyFails;
    };
  });

  // harness reports -------------------------------------------------------
  auto* stars = app.add_subcommand("stars", "Certified counts of realized stars of sizes 2p");
  std::size_t p_min = 2, p_max = 6;
  stars->add_option("--p-min", p_min, "Smallest p")->capture_default_str();
  stars->add_option("--p-max", p_max, "Largest p")->capture_default_str();
  add_output_options(stars, out_path, manifest_path);
  stars->callback([&] {
    action = [&]() -> int {
      const auto checks = star_bound_check(p_min, p_max);
      Invocation inv{"stars", {{"p-min", std::to_string(p_min)}, {"p-max", std::to_string(p_max)}}, std::nullopt, {},
                     nullptr, out_path, manifest_path};
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::dump(io::to_json(checks)), out);
      return std::ranges::all_of(checks, [](const StarCheck& s) { return s.passed(); }) ? kOk : kPropertyFails;
    };
  });

  auto* odd = app.add_subcommand("odd-case", "Realize the odd-k equality configuration and count its certified pairs");
  std::size_t odd_k = 7;
  std::uint64_t odd_seed = 0;
  odd->add_option("--k", odd_k, "Odd k in [7, 13]")->capture_default_str();
  odd->add_option("--seed", odd_seed, "Random seed")->capture_default_str();
  add_output_options(odd, out_path, manifest_path);
  odd->callback([&] {
    action = [&]() -> int {
      const auto r = odd_equality_case(odd_k, odd_seed);
      Invocation inv{"odd-case", {{"k", std::to_string(odd_k)}, {"seed", std::to_string(odd_seed)}}, odd_seed, {},
                     nullptr, out_path, manifest_path};
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::dump(io::to_json(r)), out);
      return r.passed() ? kOk : kPropertyFails;
    };
  });

  auto* suite = app.add_subcommand("suite", "Seeded property suite for minimal implications and 2-full families");
  std::uint64_t suite_seed = 0;
  std::size_t suite_count = 1000;
  suite->add_option("--seed", suite_seed, "Random seed")->capture_default_str();
  suite->add_option("--count", suite_count, "Number of sampled instances")->capture_default_str();
  add_output_options(suite, out_path, manifest_path);
  suite->callback([&] {
    action = [&]() -> int {
      const auto r = lemma_property_suite(suite_seed, suite_count);
      Invocation inv{"suite", {{"seed", std::to_string(suite_seed)}, {"count", std::to_string(suite_count)}},
                     suite_seed, {}, nullptr, out_path, manifest_path};
      if (!out_path.empty()) inv.params.emplace_back("out", out_path);
      emit(inv, io::dump(io::to_json(r)), out);
      return r.passed() ? kOk : kPropertyFails;
    };
  });

  // replay ----------------------------------------------------------------
  auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  std::string replay_path;
  replay_cmd->add_option("manifest", replay_path, "Manifest file")->required();
  replay_cmd->callback([&] { action = [&]() -> int { return replay(replay_path, out, err); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const ConstructionError& e) {
    err << "error: " << e.what() << "\n";
    return kPropertyFails;
  } catch (const io::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace dlp::cli
