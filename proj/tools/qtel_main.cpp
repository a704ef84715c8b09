// qtel: command-line front end for the q-telescoping engine.
//
// Subcommands:
//   gosper   decide summability of a single term (or shift quotient)
//   pair     synthesize and certify a telescoping pair for a catalog identity
//   verify   numeric check of an identity or replay of a stored certificate
//   catalog  list / show / export the identity catalog
//
// Exit codes: 0 decision made (including a sound NOT_SUMMABLE), 1 input or
// check failure, 2 dispersion undetermined, 3 convergence violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qtel/certificate.hpp"
#include "qtel/parser.hpp"

using namespace qtel;

namespace {

Catalog load_catalog() {
  Catalog cat = Catalog::with_builtins();
  if (const char* extra = std::getenv("QTEL_CATALOG"))
    load_catalog_files(cat, extra);
  return cat;
}

Support parse_support(const std::string& s) {
  if (s == "bilateral") return Support::Bilateral;
  if (s == "unilateral") return Support::Unilateral;
  fail(ErrorKind::SyntaxError,
       "--support must be 'bilateral' or 'unilateral'");
}

/// --iterate accepts either a registered iteration name or an inline
/// substitution "sym->pexpr,...".
IterationRelation make_relation(const IdentityRecord& record,
                                const std::string& iterate) {
  if (iterate.find("->") == std::string::npos)
    return build_iteration(record, iterate);
  return build_iteration(record, parse_substitution(iterate));
}

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) fail(ErrorKind::NotFound, "cannot write '" + out_path + "'");
  out << text;
  std::cerr << "wrote " << out_path << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::NotFound, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_gosper(const std::string& term_src, const std::string& ratio_src,
               const std::string& support_name) {
  Support support = parse_support(support_name);
  ParseOptions declaring{true};
  RatX r;
  if (!term_src.empty()) {
    QTerm t = parse_term(term_src, support, declaring);
    r = t.ratio();
  } else {
    r = parse_ratx(ratio_src, declaring);
  }
  GosperOutcome outcome = q_gosper(r);
  if (outcome.summable()) {
    std::cout << "R(x) = " << outcome.certificate->R.to_string() << "\n";
  } else {
    std::cout << "NOT_SUMMABLE\n";
    if (!outcome.diagnostic.empty())
      std::cerr << outcome.diagnostic << "\n";
  }
  return 0;
}

int cmd_pair(const std::string& identity, const std::string& iterate,
             const std::string& emit, const std::string& out_path) {
  if (emit != "json" && emit != "latex")
    fail(ErrorKind::SyntaxError, "--emit must be 'json' or 'latex'");
  Catalog cat = load_catalog();
  const IdentityRecord& record = cat.lookup(identity);
  IterationRelation rel = make_relation(record, iterate);
  GosperPair pair;
  try {
    pair = synthesize_gosper_pair(rel);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSummable) throw;
    std::cout << "NOT_SUMMABLE\n";
    std::cerr << e.what() << "\n";
    return 0;  // a sound negative is a decision; no certificate is written
  }
  std::optional<AbelPair> abel;
  std::string abel_note;
  try {
    abel = derive_abel_pair(pair);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFactorable && e.kind() != ErrorKind::ZeroH)
      throw;
    abel_note = e.what();
  }
  NumericContext ctx = NumericContext::at_sample(record);
  Certificate cert =
      make_certificate(record, rel, pair, abel, abel_note, ctx);
  write_or_print(emit == "json" ? certificate_to_json(cert)
                                : certificate_to_latex(cert),
                 out_path);
  return 0;
}

int verify_record(const IdentityRecord& record, const std::string& q_override,
                  const std::vector<std::string>& sets, long K) {
  NumericContext ctx = NumericContext::at_sample(record, K);
  if (!q_override.empty()) ctx.qval = rat_from_string(q_override);
  for (const std::string& group : sets) {
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        fail(ErrorKind::SyntaxError, "--set expects sym=value, got '" +
                                         item + "'");
      std::string name = item.substr(0, eq);
      auto id = SymbolTable::instance().find(name);
      if (!id)
        fail(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "'");
      ctx.assignment[*id] = rat_from_string(item.substr(eq + 1));
    }
  }
  Residual res = verify_identity(record, ctx);
  bool ok = res.within(ctx.tolerance);
  std::cout << "identity " << record.name << ": lhs=" << res.lhs
            << " rhs=" << res.rhs << " rel_gap=" << res.rel_gap()
            << (ok ? " PASS" : " FAIL") << "\n";
  // Exact per-index residuals of every stored pair against its relation.
  for (const PairOracle& o : record.oracles) {
    IterationRelation rel = build_iteration(record, o.iteration);
    bool zero = verify_pair_numeric(rel, GosperPair{o.g, o.h}, ctx);
    std::cout << "pair " << record.name << "/" << o.iteration
              << ": exact residuals " << (zero ? "zero PASS" : "nonzero FAIL")
              << "\n";
    ok = ok && zero;
  }
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& target, const std::string& q_override,
               const std::vector<std::string>& sets, long K) {
  if (target.size() > 5 &&
      target.compare(target.size() - 5, 5, ".json") == 0) {
    Certificate cert = certificate_from_json(read_file(target));
    Certificate replayed = replay_certificate(cert);
    std::cout << "certificate " << replayed.identity << "/"
              << replayed.iteration << ": symbolic ok, exact residuals zero"
              << ", limit_gap=" << replayed.limit_gap
              << ", identity_rel_gap=" << replayed.identity_rel_gap
              << " PASS\n";
    return 0;  // replay_certificate throws on any mismatch
  }
  Catalog cat = load_catalog();
  return verify_record(cat.lookup(target), q_override, sets, K);
}

int cmd_catalog(const std::string& action, const std::string& name,
                const std::string& out_path) {
  Catalog cat = load_catalog();
  if (action == "list") {
    for (const auto& n : cat.names()) std::cout << n << "\n";
    return 0;
  }
  if (name.empty())
    fail(ErrorKind::SyntaxError, "catalog " + action + " needs a name");
  const IdentityRecord& record = cat.lookup(name);
  if (action == "show") {
    std::cout << record.name << " ("
              << (record.support == Support::Bilateral ? "bilateral"
                                                       : "unilateral")
              << ")\n";
    std::cout << "  summand: " << record.summand.to_string() << "\n";
    std::cout << "  closed form: " << record.closed_form.to_string() << "\n";
    for (const auto& c : record.convergence)
      std::cout << "  converges for |" << c.to_string() << "| < 1\n";
    for (const auto& it : record.iterations) {
      std::cout << "  iteration " << it.name << ":";
      for (const auto& [id, val] : it.substitution)
        std::cout << " " << sym_name(id) << "->" << val.to_string();
      if (it.use_symmetrized) std::cout << " (symmetrized)";
      std::cout << "\n";
      if (!it.notes.empty()) std::cout << "    " << it.notes << "\n";
    }
    for (const auto& o : record.oracles)
      std::cout << "  stored pair: " << o.iteration
                << (o.A ? " (with Abel pair)" : "") << "\n";
    return 0;
  }
  if (action == "export") {
    write_or_print(catalog_record_to_json(record), out_path);
    return 0;
  }
  fail(ErrorKind::SyntaxError,
       "catalog action must be list, show, or export");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qtel: telescoping pairs for q-series identities"};
  app.require_subcommand(1);

  auto* gosper = app.add_subcommand(
      "gosper", "decide q-hypergeometric summability of a term");
  std::string term_src, ratio_src, support_name = "bilateral";
  gosper->add_option("--term", term_src, "term in the surface syntax");
  gosper->add_option("--ratio", ratio_src,
                     "shift quotient t(k+1)/t(k) as a rational in x");
  gosper->add_option("--support", support_name, "bilateral or unilateral");

  auto* pair = app.add_subcommand(
      "pair", "synthesize and certify a telescoping pair");
  std::string identity, iterate, emit = "json", out_path;
  pair->add_option("identity", identity, "catalog identity name")
      ->required();
  pair->add_option("--iterate", iterate,
                   "iteration name or substitution sym->pexpr,...")
      ->required();
  pair->add_option("--emit", emit, "json or latex");
  pair->add_option("--out", out_path, "output file (default stdout)");

  auto* verify = app.add_subcommand(
      "verify", "numeric check of an identity or a stored certificate");
  std::string target, q_override;
  std::vector<std::string> sets;
  long K = 60;
  verify->add_option("target", target, "identity name or certificate .json")
      ->required();
  verify->add_option("--q", q_override, "value of q, e.g. 1/2");
  verify->add_option("--set", sets, "parameter values sym=val[,sym=val...]");
  verify->add_option("--K", K, "summation truncation");

  auto* catalog = app.add_subcommand("catalog", "inspect the catalog");
  std::string action, cat_name, cat_out;
  catalog->add_option("action", action, "list, show, or export")->required();
  catalog->add_option("name", cat_name, "identity name");
  catalog->add_option("--out", cat_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gosper->parsed()) {
      if (term_src.empty() == ratio_src.empty())
        fail(ErrorKind::SyntaxError,
             "exactly one of --term and --ratio is required");
      return cmd_gosper(term_src, ratio_src, support_name);
    }
    if (pair->parsed()) return cmd_pair(identity, iterate, emit, out_path);
    if (verify->parsed()) return cmd_verify(target, q_override, sets, K);
    if (catalog->parsed()) return cmd_catalog(action, cat_name, cat_out);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::DispersionUndetermined: return 2;
      case ErrorKind::ConvergenceViolation: return 3;
      default: return 1;
    }
  }
  return 1;
}
