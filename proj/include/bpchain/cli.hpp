#pragma once

#include "bpchain/cache.hpp"
#include "bpchain/probes.hpp"
#include "bpchain/render.hpp"
#include "bpchain/vandermonde.hpp"

#include "CLI11.hpp"

#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace bpchain {

enum ExitCode : int { exit_ok = 0, exit_fail = 1, exit_usage = 2 };

struct RunConfig {
  std::string command;
  std::string target;  // verify sub-command
  unsigned long p = 3;
  std::size_t n = 1;
  std::size_t k = 1;
  std::size_t l = 1;
  int max_degree = 16;
  int window = -1;
  std::string format = "table";
  std::string cache_dir;
  bool no_cache = false;
  bool audit = false;
  bool bigraded = false;
  bool singular_model = false;
  bool conjecture_probe = false;
  bool negative_control = false;
  std::string pivot_rule = "lex_first";
  std::optional<std::uint64_t> shuffle_seed;
  unsigned workers = 0;
};

struct UsageError : Error {
  using Error::Error;
};

struct AuditMismatch : Error {
  using Error::Error;
};

inline PivotRule parse_pivot_rule(const std::string& s) {
  if (s == "lex_first") return PivotRule::lex_first;
  if (s == "lex_last") return PivotRule::lex_last;
  if (s == "column_major") return PivotRule::column_major;
  throw UsageError("unknown pivot rule " + s);
}

/// Holds the cache for one invocation. Tables come from the cache when the
/// key matches exactly; audit mode recomputes every hit and demands equal bytes.
class Session {
 public:
  Session(const RunConfig& cfg, std::ostream& err) : cfg_(cfg), err_(err) {
    if (cfg.no_cache) return;
    std::optional<std::filesystem::path> dir;
    if (!cfg.cache_dir.empty()) dir = cfg.cache_dir;
    else dir = DiskCache::default_directory();
    if (dir) cache_.emplace(*dir);
  }

  ~Session() {
    if (cache_)
      for (const auto& w : cache_->warnings()) err_ << "warning: " << w << '\n';
  }

  ComputeOptions compute() const {
    ComputeOptions o;
    o.rule = parse_pivot_rule(cfg_.pivot_rule);
    o.shuffle_seed = cfg_.shuffle_seed;
    o.workers = cfg_.workers;
    return o;
  }

  PSeriesTable pseries(Prime p, int bound, bool singular) {
    if (singular) return singular_table(p, bound);
    CacheKey key{PSeriesTable::kSchema, "pseries",
                 {{"p", std::to_string(p.value())}, {"degree_bound", std::to_string(bound)}, {"scheme", "hazewinkel"}}};
    return load<PSeriesTable>(
        key, [&] { return compute_p_series(p, bound); }, [](const PSeriesTable& t) { return t.to_json().dump(); },
        [](const std::string& s) { return PSeriesTable::from_json(nlohmann::json::parse(s)); });
  }

  HomologyTable homology(Prime p, std::size_t n, int bound, bool singular) {
    const ComputeOptions o = compute();
    CacheKey key{1, "homology",
                 {{"p", std::to_string(p.value())},
                  {"n", std::to_string(n)},
                  {"degree_bound", std::to_string(bound)},
                  {"scheme", singular ? "singular" : "hazewinkel"},
                  {"pivot_rule", cfg_.pivot_rule},
                  {"shuffle_seed", o.shuffle_seed ? std::to_string(*o.shuffle_seed) : "none"}}};
    return load<HomologyTable>(
        key,
        [&] {
          const PSeriesTable ps = pseries(p, bound, singular);
          return homology_table(assemble_complex(ps, n, bound), o);
        },
        [](const HomologyTable& t) { return t.to_json().dump(); },
        [](const std::string& s) { return HomologyTable::from_json(nlohmann::json::parse(s)); });
  }

 private:
  template <class T>
  T load(const CacheKey& key, const std::function<T()>& make, const std::function<std::string(const T&)>& write,
         const std::function<T(const std::string&)>& read) {
    if (!cache_) return make();
    if (auto hit = cache_->get(key)) {
      try {
        T value = read(*hit);
        if (write(value) != *hit) throw Error("payload is not in canonical form");
        if (cfg_.audit) {
          const std::string again = write(make());
          if (again != *hit) throw AuditMismatch("cache audit: recomputed " + key.kind + " differs from the cached bytes");
          err_ << "audit: " << key.kind << " " << key.digest() << " matches\n";
        }
        return value;
      } catch (const AuditMismatch&) {
        throw;
      } catch (const std::exception& ex) {
        cache_->warn_external("discarding corrupt cache entry " + cache_->path_for(key).string() + ": " + ex.what());
        cache_->discard(key);
      }
    }
    T value = make();
    cache_->put(key, write(value));
    return value;
  }

  const RunConfig& cfg_;
  std::ostream& err_;
  std::optional<DiskCache> cache_;
};

namespace detail {

inline int report_exit(const VerificationReport& r, std::ostream& err) {
  const Verdict v = r.overall();
  if (v == Verdict::fail) return exit_fail;
  if (v == Verdict::vacuous || v == Verdict::inconclusive)
    err << "warning: report " << r.name << " is " << to_string(v) << '\n';
  return exit_ok;
}

inline Prime checked_prime(const RunConfig& c) {
  if (!is_prime(c.p)) throw UsageError("--p must be a prime, got " + std::to_string(c.p));
  const Prime p(c.p);
  if (p.value() == 2 && !c.conjecture_probe)
    throw UsageError("conjectural at p=2: rerun with --conjecture-probe to compute it as an experiment");
  return p;
}

inline void require_degree(const RunConfig& c) {
  if (c.max_degree < 1) throw UsageError("--max-degree must be at least 1");
}

}  // namespace detail

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Format fmt = parse_format(cfg.format);
  Session session(cfg, err);
  const ComputeOptions opts = session.compute();

  if (cfg.command == "p2-example") {
    const auto r = p2_counterexample().to_report();
    out << render(r, fmt);
    return detail::report_exit(r, err);
  }
  if (cfg.command == "vandermonde" || cfg.command == "stretch") {
    if (!is_prime(cfg.p)) throw UsageError("--p must be a prime, got " + std::to_string(cfg.p));
    if (cfg.p == 2) throw UsageError(cfg.command + " needs an odd prime");
    const Prime p(cfg.p);
    const auto r = cfg.command == "vandermonde"
                       ? vandermonde_surjectivity(p, cfg.k, cfg.window, cfg.negative_control, cfg.workers).to_report()
                       : stretch_check(p, cfg.k, cfg.n).to_report();
    out << render(r, fmt);
    return detail::report_exit(r, err);
  }

  const Prime p = detail::checked_prime(cfg);
  detail::require_degree(cfg);
  if (p.value() == 2 && fmt == Format::table)
    out << "# CONJECTURE PROBE (p=2): experimental computation, not a verification\n";

  if (cfg.command == "pseries") {
    const PSeriesTable t = session.pseries(p, cfg.max_degree, cfg.singular_model);
    const PSeriesReport checks = check_p_series_properties(t);
    out << render(t, checks, fmt);
    if (cfg.singular_model) return exit_ok;  // the singular table is not a p-series
    return checks.pass() ? exit_ok : exit_fail;
  }
  if (cfg.command == "homology") {
    const HomologyTable t = session.homology(p, cfg.n, cfg.max_degree, cfg.singular_model);
    out << render(t, fmt, cfg.bigraded);
    return exit_ok;
  }
  if (cfg.command == "verify") {
    const PSeriesTable ps = session.pseries(p, cfg.max_degree, cfg.singular_model);
    VerificationReport r;
    if (cfg.target == "main") {
      MainOptions mo;
      mo.compute = opts;
      mo.inclusive_l_range = cfg.negative_control;
      r = verify_theorem_main(ps, cfg.n, cfg.max_degree, mo);
    } else if (cfg.target == "level") {
      r = verify_level(ps, cfg.n, cfg.max_degree, opts);
    } else if (cfg.target == "tor") {
      r = verify_tor(ps, cfg.k, cfg.max_degree, opts);
    } else if (cfg.target == "kernel") {
      r = verify_kernel_lemma(ps, cfg.k, cfg.max_degree, opts);
    } else if (cfg.target == "squeeze") {
      r = squeeze_evidence(ps, cfg.k, cfg.l, cfg.max_degree, opts);
    } else if (cfg.target == "annihilator") {
      r = annihilator_probe(ps, cfg.n, cfg.max_degree, opts);
    } else {
      throw UsageError("unknown verify target " + cfg.target);
    }
    if (cfg.singular_model) r.notes.push_back("computed with the singular model table");
    out << render(r, fmt);
    return detail::report_exit(r, err);
  }
  throw UsageError("unknown command " + cfg.command);
}

/// Parses argv into a RunConfig and dispatches. Usage errors exit with 2.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Degreewise BP homology of elementary abelian p-groups", "bpchain"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (default $BPCHAIN_CACHE_DIR or ~/.cache/bpchain)");
  app.add_flag("--no-cache", cfg.no_cache, "compute without reading or writing the cache");
  app.add_flag("--audit", cfg.audit, "recompute cache hits and require identical bytes");
  app.add_option("--workers", cfg.workers, "worker threads (0 = hardware concurrency)");
  app.add_option("--pivot-rule", cfg.pivot_rule, "Smith pivot tie-break")
      ->check(CLI::IsMember({"lex_first", "lex_last", "column_major"}));
  app.add_option("--shuffle-seed", cfg.shuffle_seed, "permute bases and relations with this seed");
  app.add_flag("--conjecture-probe", cfg.conjecture_probe, "allow p=2 as an experiment");

  auto with_prime = [&](CLI::App* c) { c->add_option("--p", cfg.p, "prime")->required(); };
  auto with_degree = [&](CLI::App* c) { c->add_option("--max-degree,-D", cfg.max_degree, "degree bound D")->required(); };

  auto* ps = app.add_subcommand("pseries", "p-series coefficients and their properties");
  with_prime(ps);
  with_degree(ps);
  ps->add_flag("--singular-model", cfg.singular_model, "use the table a_0 = p, a_i = 0");

  auto* hom = app.add_subcommand("homology", "degreewise homology of the n-fold chain model");
  with_prime(hom);
  with_degree(hom);
  hom->add_option("--n", cfg.n, "number of tensor factors")->required()->check(CLI::PositiveNumber);
  hom->add_flag("--bigraded", cfg.bigraded, "one row per (degree, odd_count)");
  hom->add_flag("--singular-model", cfg.singular_model, "use the table a_0 = p, a_i = 0");

  auto* ver = app.add_subcommand("verify", "compare independent pipelines");
  ver->require_subcommand(1);
  ver->fallthrough();
  for (const char* name : {"main", "level", "tor", "kernel", "squeeze", "annihilator"}) {
    auto* t = ver->add_subcommand(name);
    with_prime(t);
    with_degree(t);
    t->fallthrough();
    t->add_flag("--singular-model", cfg.singular_model, "use the table a_0 = p, a_i = 0");
    const std::string s = name;
    if (s == "main" || s == "level" || s == "annihilator")
      t->add_option("--n", cfg.n, "number of tensor factors")->required()->check(CLI::PositiveNumber);
    else
      t->add_option("--k", cfg.k, "tensor power of N")->required()->check(CLI::PositiveNumber);
    if (s == "squeeze") t->add_option("--l", cfg.l, "index of v_l")->required()->check(CLI::PositiveNumber);
    if (s == "main") t->add_flag("--negative-control", cfg.negative_control, "widen the L_k range to m <= p^k");
  }

  auto* van = app.add_subcommand("vandermonde", "rank check of the dualized surjectivity statement");
  with_prime(van);
  van->add_option("--k", cfg.k, "rank")->required()->check(CLI::PositiveNumber);
  van->add_option("--window", cfg.window, "top degree (default 2p^k, or 2p^k+2 with --negative-control)");
  van->add_flag("--negative-control", cfg.negative_control, "also allow nu = p^k");

  auto* st = app.add_subcommand("stretch", "vanishing of n-fold products of degree-one classes");
  with_prime(st);
  st->add_option("--k", cfg.k, "rank")->required()->check(CLI::PositiveNumber);
  st->add_option("--n", cfg.n, "number of factors")->required()->check(CLI::PositiveNumber);

  app.add_subcommand("p2-example", "the mod-2 pullback computation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  for (auto* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    for (auto* t : sub->get_subcommands()) cfg.target = t->get_name();
  }

  try {
    return dispatch(cfg, out, err);
  } catch (const AuditMismatch& e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

}  // namespace bpchain
