#ifndef WEYLCALC_CLI_HPP
#define WEYLCALC_CLI_HPP

// The weylcalc command line. run_cli is the whole program minus main(), so
// tests drive it with string vectors and capture both streams.
//
// Exit codes: 0 success, 1 verification failure or IO error, 2 usage error,
// 3 resource cap exceeded.

#include "CLI11.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "weylcalc/cache.hpp"
#include "weylcalc/calculus.hpp"
#include "weylcalc/errors.hpp"
#include "weylcalc/report.hpp"
#include "weylcalc/verify.hpp"
#include "weylcalc/weyl.hpp"

namespace weylcalc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

inline constexpr const char* kCacheEnv = "WEYLCALC_CACHE_DIR";

struct RunConfig {
  std::optional<std::string> type;
  std::optional<int> rank;
  std::string algebra = "quad";
  std::size_t max_deg = 6;
  std::uint64_t monomial_cap = Limits{}.monomial_cap;
  std::string cache_dir;
  std::string format = "text";
  std::size_t jobs = 1;

  Limits limits() const { return Limits{monomial_cap}; }
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void add_common(CLI::App* sub, RunConfig& cfg, bool with_algebra, bool with_degree) {
  sub->add_option("--type", cfg.type, "root system type: A, B, D or G2");
  sub->add_option("--rank", cfg.rank, "rank of the root system")->check(CLI::PositiveNumber);
  if (with_algebra) {
    sub->add_option("--algebra", cfg.algebra, "quad, quar, woronowicz, anticomm, anticomm-quad or anticomm-quar")
        ->capture_default_str();
  }
  if (with_degree) sub->add_option("--max-deg", cfg.max_deg, "highest degree computed")->capture_default_str();
  sub->add_option("--monomial-cap", cfg.monomial_cap, "largest coordinate count one elimination may use")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--cache-dir", cfg.cache_dir, std::string("degree cache directory (default $") + kCacheEnv + ")");
  sub->add_option("--format", cfg.format, "text, json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));
  sub->add_option("--jobs", cfg.jobs, "worker threads for verification")->capture_default_str()->check(
      CLI::PositiveNumber);
}

inline std::filesystem::path cache_dir_of(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv(kCacheEnv); env && *env) return env;
  return {};
}

inline RootType type_or(const RunConfig& cfg, RootType fallback) {
  if (!cfg.type) return fallback;
  try {
    return parse_root_type(*cfg.type);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline int rank_for(RootType t, const RunConfig& cfg, int fallback) {
  if (t == RootType::G2) return 2;
  return cfg.rank.value_or(fallback);
}

inline void check_cap(const RunConfig& cfg, const RootSystem& rs) {
  if (cfg.monomial_cap < rs.generator_count()) {
    throw UsageError("--monomial-cap must be at least the number of generators (" +
                     std::to_string(rs.generator_count()) + ")");
  }
}

inline json system_json(const RootSystem& rs) { return json{{"type", to_string(rs.type())}, {"rank", rs.rank()}}; }

inline Report cmd_hilbert(Workspace& ws, const RunConfig& cfg) {
  if (!cfg.type) throw UsageError("hilbert needs --type");
  RootType t = type_or(cfg, RootType::A);
  auto rs = ws.root_system(t, rank_for(t, cfg, 2));
  check_cap(cfg, *rs);
  auto h = ws.algebra(t, rs->rank(), cfg.algebra);
  Report r;
  r.command = "hilbert";
  r.params = system_json(*rs);
  r.params["algebra"] = cfg.algebra;
  r.params["max_deg"] = cfg.max_deg;
  for (std::size_t d = 0; d <= cfg.max_deg; ++d) {
    r.degrees.push_back(d);
    r.dims.push_back(h->dimension(d));
  }
  return r;
}

inline Report cmd_cohomology(Workspace& ws, const RunConfig& cfg) {
  if (!cfg.type) throw UsageError("cohomology needs --type");
  RootType t = type_or(cfg, RootType::A);
  auto rs = ws.root_system(t, rank_for(t, cfg, 2));
  check_cap(cfg, *rs);
  auto res = h1(*ws.algebra(t, rs->rank(), "quad"));
  Report r;
  r.command = "cohomology";
  r.params = system_json(*rs);
  r.degrees = {1};
  r.dims = {res.dimension};
  json basis = json::array();
  for (const auto& b : res.basis) basis.push_back(b.to_string(rs->labels()));
  r.details = json{{"dimension", res.dimension}, {"basis", basis}};
  return r;
}

inline Report cmd_verify(Workspace& ws, const RunConfig& cfg, const std::string& suite,
                         const std::string& identity, const std::string& params_text) {
  std::vector<Check> checks;
  Report r;
  r.command = "verify";
  if (!identity.empty()) {
    json p;
    try {
      p = params_text.empty() ? json::object() : json::parse(params_text);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("--params is not valid JSON: ") + e.what());
    }
    if (!p.is_object()) throw UsageError("--params must be a JSON object");
    if (cfg.type) p["type"] = *cfg.type;
    if (cfg.rank) p["rank"] = *cfg.rank;
    if (!p.contains("type")) throw UsageError("an identity needs --type");
    checks.push_back(make_check(ws, identity, p));
    r.params = json{{"identity", identity}};
  } else {
    if (suite.empty()) throw UsageError("verify needs a suite name or --identity");
    r.params = json{{"suite", suite}};
    if (suite == "all") {
      if (cfg.type || cfg.rank) throw UsageError("suite 'all' runs on its own root systems");
      checks = all_checks(ws);
    } else {
      std::vector<SuiteTarget> targets;
      try {
        targets = default_targets(suite);
      } catch (const UnknownIdentity& e) {
        throw UsageError(e.what());
      }
      if (cfg.type || cfg.rank) {
        RootType t = type_or(cfg, targets.front().type);
        int rank = rank_for(t, cfg, targets.front().rank);
        targets = {{t, rank}};
        r.params["type"] = to_string(t);
        r.params["rank"] = rank;
      }
      for (const auto& tg : targets) {
        check_cap(cfg, *ws.root_system(tg.type, tg.rank));
        for (auto& c : suite_checks(ws, suite, tg.type, tg.rank)) checks.push_back(std::move(c));
      }
    }
  }
  for (const auto& v : run_checks(checks, cfg.jobs)) r.identities.push_back(v.record());
  return r;
}

inline Report cmd_conjecture(Workspace& ws, const RunConfig& cfg, const std::string& which) {
  RootType fallback = which == "2.2" ? RootType::B : RootType::A;
  RootType t = type_or(cfg, fallback);
  auto rs = ws.root_system(t, rank_for(t, cfg, 2));
  check_cap(cfg, *rs);
  ConjectureResult res;
  try {
    res = check_conjecture(ws, which, t, rs->rank(), cfg.max_deg);
  } catch (const UnknownIdentity& e) {
    throw UsageError(e.what());
  }
  Report r;
  r.command = "conjecture";
  r.params = json{{"which", which}, {"system", res.system}, {"max_deg", cfg.max_deg}};
  for (const auto& row : res.rows) r.degrees.push_back(row.degree);
  for (const auto& row : res.rows) r.dims.push_back(row.left);
  r.details = conjecture_details(res);
  return r;
}

inline Report cmd_cache(const RunConfig& cfg, const std::string& action) {
  auto dir = cache_dir_of(cfg);
  if (dir.empty()) throw UsageError(std::string("cache needs --cache-dir or $") + kCacheEnv);
  Report r;
  r.command = "cache";
  r.params = json{{"action", action}, {"dir", dir.string()}};
  if (action == "clear") {
    r.details = json{{"removed", cache::clear(dir)}};
    return r;
  }
  auto entries = cache::list(dir);
  std::uintmax_t bytes = 0;
  for (const auto& e : entries) bytes += e.bytes;
  if (action == "list") {
    json list = json::array();
    for (const auto& e : entries) {
      const auto& k = e.header.key;
      list.push_back({{"file", e.file.filename().string()},
                      {"type", k.type},
                      {"rank", k.rank},
                      {"kind", k.kind},
                      {"degree", k.degree},
                      {"rows", e.header.rows},
                      {"bytes", e.bytes}});
    }
    r.details = json{{"entries", list}};
  } else {
    r.details = json{{"entries", entries.size()}, {"bytes", bytes}};
  }
  return r;
}

}  // namespace detail

/// Runs one weylcalc invocation; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exterior algebras on finite Weyl groups: Hilbert series, cohomology and identity checks", "weylcalc"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* hilbert = app.add_subcommand("hilbert", "dimensions of the graded pieces of an algebra");
  detail::add_common(hilbert, cfg, true, true);

  std::string suite, identity, params_text;
  auto* verify = app.add_subcommand("verify", "run an identity suite or a single identity");
  verify->add_option("suite", suite, "suite name, or 'all'");
  verify->add_option("--identity", identity, "single identity name instead of a suite");
  verify->add_option("--params", params_text, "JSON parameters for --identity");
  detail::add_common(verify, cfg, false, false);

  auto* cohomology = app.add_subcommand("cohomology", "first cohomology of the quadratic algebra");
  detail::add_common(cohomology, cfg, false, false);

  std::string which;
  auto* conjecture = app.add_subcommand("conjecture", "degreewise comparison for conjecture 2.1, 2.2 or 5.1");
  conjecture->add_option("which", which, "2.1, 2.2 or 5.1")->required()->check(CLI::IsMember({"2.1", "2.2", "5.1"}));
  detail::add_common(conjecture, cfg, false, true);

  std::string action;
  auto* cache_cmd = app.add_subcommand("cache", "inspect or clear the degree cache");
  cache_cmd->add_option("action", action, "list, clear or stats")
      ->required()
      ->check(CLI::IsMember({"list", "clear", "stats"}));
  cache_cmd->add_option("--cache-dir", cfg.cache_dir, std::string("cache directory (default $") + kCacheEnv + ")");
  cache_cmd->add_option("--format", cfg.format, "text, json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const OutputFormat fmt = parse_format(cfg.format);
    Workspace ws(cfg.limits(), detail::cache_dir_of(cfg));
    Report report;
    if (*hilbert) {
      report = detail::cmd_hilbert(ws, cfg);
    } else if (*verify) {
      report = detail::cmd_verify(ws, cfg, suite, identity, params_text);
    } else if (*cohomology) {
      report = detail::cmd_cohomology(ws, cfg);
    } else if (*conjecture) {
      report = detail::cmd_conjecture(ws, cfg, which);
    } else {
      report = detail::cmd_cache(cfg, action);
    }
    out << render(report, fmt);
    if (report.command == "verify" && !report.all_pass()) return kExitFailure;
    return kExitOk;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const cache::CacheError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    // UsageError, UnsupportedRootSystem, UnknownIdentity, bad ranks
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace weylcalc

#endif  // WEYLCALC_CLI_HPP
