#pragma once

// Command-line front end. Needs CLI11 on the include path.

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "wsu.hpp"

namespace wsu {

struct RunConfig {
  std::size_t order_cap = kDefaultLatticeCap;
  std::size_t corpus_max_order = 100;
  std::size_t parallelism = 1;
  std::string report_path;
  std::string format = "text";
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

namespace detail {

inline std::optional<std::size_t> env_size(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v) return std::nullopt;
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v, v + std::strlen(v), out);
  if (ec != std::errc{} || *ptr || out == 0) throw GroupError(ErrorCode::InvalidParameter, std::string(name) + " must be a positive integer");
  return out;
}

/// Restores both caps when the command finishes.
class CapScope {
 public:
  CapScope() : order_(order_cap().load()), lattice_(lattice_cap().load()) {}
  ~CapScope() {
    order_cap() = order_;
    lattice_cap() = lattice_;
  }
  CapScope(const CapScope&) = delete;
  CapScope& operator=(const CapScope&) = delete;

 private:
  std::size_t order_, lattice_;
};

inline void emit(const RunConfig& cfg, const std::string& report, std::ostream& out) {
  if (cfg.report_path.empty()) {
    out << report;
    return;
  }
  write_file(cfg.report_path, report);
  out << "report written to " << cfg.report_path << '\n';
}

inline std::string residual_summary(const ResidualResult& r) {
  std::ostringstream os;
  os << "formation=" << to_string(r.formation) << " residual_order=" << r.residual.order() << " members=" << format_members(r.residual.members)
     << '\n';
  for (const auto& w : r.witness_normals) os << "minimal_normal_witness order=" << w.order() << " members=" << format_members(w.members) << '\n';
  return os.str();
}

inline std::string examples_report(const std::vector<PaperExample>& exs, const std::string& format) {
  std::ostringstream os;
  for (const auto& ex : exs) {
    if (format == "structured") {
      for (const auto& c : ex.checks)
        os << "record=example group=" << to_string(ex.id) << " check=\"" << c.name << "\" status=" << (c.passed ? "pass" : "fail")
           << (c.detail.empty() ? "" : " detail=\"" + c.detail + "\"") << '\n';
      os << "record=bundle group=" << to_string(ex.id) << " construction=" << ex.construction << " status=" << (ex.passed() ? "pass" : "fail")
         << '\n';
    } else {
      os << to_string(ex.id) << " (order " << ex.group.order() << ", " << ex.construction << "): " << (ex.passed() ? "PASS" : "FAIL") << '\n';
      for (const auto& c : ex.checks)
        os << "  [" << (c.passed ? "ok" : "FAIL") << "] " << c.name << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
      if (ex.a_chain) os << "  A chain: " << ex.a_chain->render() << '\n';
      if (ex.b_chain) os << "  B chain: " << ex.b_chain->render() << '\n';
    }
  }
  return os.str();
}

}  // namespace detail

/// Runs one CLI invocation. Returns 0 when everything checked out, 1 on
/// violations or errors, 2 on usage errors.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-group classification, residuals and P-subnormality checks"};
  app.name("wsu");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string fault_name;
  app.add_option("--inject-fault", fault_name, "classifier fault for mutation testing")->group("");
  auto* cap_opt = app.add_option("--order-cap", cfg.order_cap, "largest order whose subgroup lattice may be built")->check(CLI::PositiveNumber);

  std::string expr, formation, subgroup, cayley_path, what, manifest_path, only_suite;
  auto* analyze = app.add_subcommand("analyze", "classify a group");
  analyze->add_option("group", expr, "group expression")->required();
  analyze->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "structured"}));

  auto* resid = app.add_subcommand("residual", "compute a formation residual");
  resid->add_option("group", expr, "group expression")->required();
  resid->add_option("--formation", formation, "formation tag")->required();

  auto* psn = app.add_subcommand("psn", "decide P-subnormality of a subgroup");
  psn->add_option("group", expr, "group expression")->required();
  psn->add_option("--subgroup", subgroup, "sylow:p, gens:a,b, derived, center, fitting, frattini, whole, trivial")->required();

  auto* verify = app.add_subcommand("verify", "run the example bundles or the verification suites");
  verify->add_option("what", what, "examples | theorems")->required()->check(CLI::IsMember({"examples", "theorems"}));
  auto* max_opt = verify->add_option("--max-order", cfg.corpus_max_order, "largest corpus order")->check(CLI::PositiveNumber);
  verify->add_option("--parallelism", cfg.parallelism, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--report", cfg.report_path, "write the report here instead of stdout");
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "structured"}));
  verify->add_option("--manifest", manifest_path, "write the corpus manifest here");
  verify->add_option("--suite", only_suite, "run a single suite");

  auto* exp = app.add_subcommand("export", "write a group's Cayley table");
  exp->add_option("group", expr, "group expression")->required();
  exp->add_option("--cayley", cayley_path, "output path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  }

  std::optional<testing::Fault> fault;
  if (!fault_name.empty()) {
    fault = testing::parse_fault(fault_name);
    if (!fault) {
      err << "usage error: unknown fault \"" << fault_name << "\"\n";
      return exit_code::usage;
    }
  }

  // Environment variables replace the built-in caps; an explicit flag wins.
  detail::CapScope caps;
  try {
    if (auto v = detail::env_size("WSU_ORDER_CAP")) order_cap() = *v;
    if (auto v = detail::env_size("WSU_LATTICE_CAP"); v && cap_opt->count() == 0) cfg.order_cap = *v;
  } catch (const GroupError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_code::usage;
  }
  lattice_cap() = cfg.order_cap;
  if (max_opt->count() == 0) cfg.corpus_max_order = std::min(cfg.corpus_max_order, cfg.order_cap);
  if (cfg.corpus_max_order > cfg.order_cap) {
    err << "usage error: --max-order " << cfg.corpus_max_order << " exceeds the order cap " << cfg.order_cap << '\n';
    return exit_code::usage;
  }

  try {
    // Groups named on the command line are built fault-free.
    if (*analyze) {
      const auto g = parse_group_expr(expr);
      std::optional<testing::ScopedFault> sf;
      if (fault) sf.emplace(*fault);
      const auto report = classify(g);
      out << "group " << expr << " order " << g.order() << '\n';
      out << (cfg.format == "structured" ? report.render_structured(expr) : report.render_text());
      return exit_code::ok;
    }
    if (*resid) {
      const auto f = parse_formation(formation);
      if (!f) {
        err << "usage error: unknown formation \"" << formation << "\"\n";
        return exit_code::usage;
      }
      const auto g = parse_group_expr(expr);
      std::optional<testing::ScopedFault> sf;
      if (fault) sf.emplace(*fault);
      out << detail::residual_summary(residual(g, *f));
      return exit_code::ok;
    }
    if (*psn) {
      const auto g = parse_group_expr(expr);
      const auto h = parse_subgroup_spec(g, subgroup);
      std::optional<testing::ScopedFault> sf;
      if (fault) sf.emplace(*fault);
      const auto w = p_subnormal_witness(g, h);
      out << "subgroup order=" << h.order() << " members=" << format_members(h.members) << '\n';
      out << "p_subnormal=" << (w ? "true" : "false") << '\n';
      if (w) out << "witness " << w->render() << '\n';
      return exit_code::ok;
    }
    if (*exp) {
      const auto g = parse_group_expr(expr);
      write_file(cayley_path, to_cayley_text(g));
      out << "wrote order " << g.order() << " table to " << cayley_path << '\n';
      return exit_code::ok;
    }
    if (what == "examples") {
      std::optional<testing::ScopedFault> sf;
      if (fault) sf.emplace(*fault);
      std::vector<PaperExample> exs;
      bool ok = true;
      for (auto id : kAllPaperGroups) {
        try {
          exs.push_back(paper_example(id));
          ok = ok && exs.back().passed();
        } catch (const GroupError& e) {
          err << to_string(id) << ": " << e.what() << '\n';
          ok = false;
        }
      }
      detail::emit(cfg, detail::examples_report(exs, cfg.format), out);
      for (const auto& ex : exs)
        if (auto f = ex.first_failure()) {
          err << "first failure: " << to_string(ex.id) << ": " << f->name << (f->detail.empty() ? "" : " (" + f->detail + ")") << '\n';
          break;
        }
      return ok ? exit_code::ok : exit_code::failure;
    }
    std::vector<Suite> which(kAllSuites.begin(), kAllSuites.end());
    if (!only_suite.empty()) {
      const auto s = parse_suite(only_suite);
      if (!s) {
        err << "usage error: unknown suite \"" << only_suite << "\"\n";
        return exit_code::usage;
      }
      which = {*s};
    }
    const auto corpus = corpus_generate(cfg.corpus_max_order);
    if (!manifest_path.empty()) {
      std::string manifest;
      for (const auto& e : corpus) manifest += e.manifest_line() + "\n";
      write_file(manifest_path, manifest);
    }
    std::optional<testing::ScopedFault> sf;
    if (fault) sf.emplace(*fault);
    const auto report = verify_corpus(corpus, which, cfg.parallelism);
    detail::emit(cfg, cfg.format == "structured" ? report.structured() : report.text(), out);
    if (report.ok()) return exit_code::ok;
    if (auto p = report.first_problem()) err << "first counterexample: " << *p << '\n';
    return exit_code::failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
}

}  // namespace wsu
