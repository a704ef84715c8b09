#include "qtel/certificate.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qtel/parser.hpp"

namespace qtel {

namespace {

using nlohmann::json;

std::string support_name(Support s) {
  return s == Support::Bilateral ? "bilateral" : "unilateral";
}

Support support_of(const std::string& s) {
  if (s == "bilateral") return Support::Bilateral;
  if (s == "unilateral") return Support::Unilateral;
  fail(ErrorKind::SyntaxError, "unknown support '" + s + "'");
}

const ParseOptions kDeclaring{true};

std::vector<std::string> pair_caveats(const std::string& identity,
                                      Support support) {
  std::vector<std::string> caveats;
  if (support == Support::Bilateral) {
    caveats.push_back(
        "bilateral telescoping sums the identity only under the two-sided "
        "tail condition lim_{k->-inf} h_k = lim_{k->+inf} h_k; it is checked "
        "numerically at the sample point, not symbolically");
  } else {
    caveats.push_back(
        "unilateral telescoping sums the identity only when h_k -> h_0 as "
        "k -> +inf; it is checked numerically at the sample point, not "
        "symbolically");
  }
  caveats.push_back(
      "numeric residuals certify the pinned sample point at the recorded "
      "truncation, not the full parameter region");
  if (identity == "6psi6")
    caveats.push_back(
        "the closed form's derivation iterates the relation to m -> inf; "
        "that limit argument is outside the finite checks recorded here");
  return caveats;
}

void check_pair_symbolically(const QTerm& F, const QTerm& G, const QTerm& g,
                             const QTerm& h) {
  if (!g.combine_similar(h).equals(F))
    fail(ErrorKind::Internal, "certificate check failed: g - h != F");
  if (!g.combine_similar(h.shift()).equals(G))
    fail(ErrorKind::Internal, "certificate check failed: g - h(k+1) != G");
}

void check_abel_symbolically(const QTerm& g, const QTerm& h, const QTerm& A,
                             const QTerm& B) {
  if (!A.mul_term(B).equals(g))
    fail(ErrorKind::Internal, "certificate check failed: A*B != g");
  if (!A.mul_term(B.shift_back()).equals(h))
    fail(ErrorKind::Internal, "certificate check failed: A*B(k-1) != h");
}

json to_json_value(const Certificate& c) {
  json j;
  j["schema"] = c.schema;
  j["identity"] = c.identity;
  j["iteration"] = c.iteration;
  j["support"] = support_name(c.support);
  j["substitution"] = c.substitution;
  j["multiplier"] = c.multiplier;
  j["terms"] = {{"F", c.F}, {"G", c.G}, {"g", c.g}, {"h", c.h}};
  if (c.A && c.B) {
    j["abel"] = {{"A", *c.A}, {"B", *c.B}};
  } else {
    j["abel"] = nullptr;
    j["abel_note"] = c.abel_note;
  }
  j["checks"] = {{"symbolic_ok", c.symbolic_ok},
                 {"residuals_zero", c.residuals_zero},
                 {"identity_rel_gap", c.identity_rel_gap},
                 {"limit_gap", c.limit_gap}};
  json pt(json::value_t::object);
  for (const auto& [k, v] : c.sample_point) pt[k] = v;
  j["sample"] = {{"q", c.sample_q}, {"point", pt}, {"K", c.K}, {"N", c.N}};
  j["caveats"] = c.caveats;
  return j;
}

Certificate from_json_value(const json& j) {
  Certificate c;
  c.schema = j.at("schema").get<std::string>();
  if (c.schema != "qtelescope.cert.v1")
    fail(ErrorKind::SyntaxError, "unsupported schema '" + c.schema + "'");
  c.identity = j.at("identity").get<std::string>();
  c.iteration = j.at("iteration").get<std::string>();
  c.support = support_of(j.at("support").get<std::string>());
  for (const auto& [k, v] : j.at("substitution").items())
    c.substitution[k] = v.get<std::string>();
  c.multiplier = j.at("multiplier").get<std::string>();
  const json& t = j.at("terms");
  c.F = t.at("F").get<std::string>();
  c.G = t.at("G").get<std::string>();
  c.g = t.at("g").get<std::string>();
  c.h = t.at("h").get<std::string>();
  if (!j.at("abel").is_null()) {
    c.A = j.at("abel").at("A").get<std::string>();
    c.B = j.at("abel").at("B").get<std::string>();
  } else if (j.contains("abel_note")) {
    c.abel_note = j.at("abel_note").get<std::string>();
  }
  const json& ch = j.at("checks");
  c.symbolic_ok = ch.at("symbolic_ok").get<bool>();
  c.residuals_zero = ch.at("residuals_zero").get<bool>();
  c.identity_rel_gap = ch.at("identity_rel_gap").get<double>();
  c.limit_gap = ch.at("limit_gap").get<double>();
  const json& s = j.at("sample");
  c.sample_q = s.at("q").get<std::string>();
  for (const auto& [k, v] : s.at("point").items())
    c.sample_point[k] = v.get<std::string>();
  c.K = s.at("K").get<long>();
  c.N = s.at("N").get<long>();
  for (const auto& v : j.at("caveats"))
    c.caveats.push_back(v.get<std::string>());
  return c;
}

NumericContext context_of(const Certificate& c) {
  NumericContext ctx;
  ctx.qval = rat_from_string(c.sample_q);
  for (const auto& [name, val] : c.sample_point)
    ctx.assignment[sym(name)] = rat_from_string(val);
  ctx.K = c.K;
  ctx.N = c.N;
  return ctx;
}

}  // namespace

Certificate make_certificate(const IdentityRecord& record,
                             const IterationRelation& rel,
                             const GosperPair& pair,
                             const std::optional<AbelPair>& abel,
                             const std::string& abel_note,
                             const NumericContext& ctx) {
  check_pair_symbolically(rel.F, rel.G, pair.g, pair.h);
  if (abel) check_abel_symbolically(pair.g, pair.h, abel->A, abel->B);

  Certificate c;
  c.identity = record.name;
  c.iteration = rel.name;
  c.support = rel.support;
  for (const auto& [id, val] : rel.substitution)
    c.substitution[sym_name(id)] = val.to_string();
  c.multiplier = rel.multiplier.to_string();
  c.F = rel.F.to_string();
  c.G = rel.G.to_string();
  c.g = pair.g.to_string();
  c.h = pair.h.to_string();
  if (abel) {
    c.A = abel->A.to_string();
    c.B = abel->B.to_string();
  } else {
    c.abel_note = abel_note.empty() ? "no Abel factorization" : abel_note;
  }
  c.symbolic_ok = true;

  if (!verify_pair_numeric(rel, pair, ctx))
    fail(ErrorKind::Internal,
         "certificate check failed: nonzero exact pair residual");
  c.residuals_zero = true;
  c.identity_rel_gap = verify_identity(record, ctx).rel_gap();
  NumericContext tail = ctx;
  tail.K = 40;
  c.limit_gap = check_limit_condition(pair, tail).gap;

  c.sample_q = rat_to_string(ctx.qval);
  for (const auto& [id, val] : ctx.assignment)
    c.sample_point[sym_name(id)] = rat_to_string(val);
  c.K = ctx.K;
  c.N = ctx.N;
  c.caveats = pair_caveats(c.identity, c.support);
  return c;
}

std::string certificate_to_json(const Certificate& cert) {
  return to_json_value(cert).dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorKind::SyntaxError, "certificate is not valid JSON");
  try {
    return from_json_value(j);
  } catch (const json::exception& e) {
    fail(ErrorKind::SyntaxError,
         std::string("malformed certificate: ") + e.what());
  }
}

Certificate replay_certificate(const Certificate& cert) {
  QTerm F = parse_term(cert.F, cert.support, kDeclaring);
  QTerm G = parse_term(cert.G, cert.support, kDeclaring);
  QTerm g = parse_term(cert.g, cert.support, kDeclaring);
  QTerm h = parse_term(cert.h, cert.support, kDeclaring);
  check_pair_symbolically(F, G, g, h);
  std::optional<AbelPair> abel;
  if (cert.A && cert.B) {
    abel = AbelPair{parse_term(*cert.A, cert.support, kDeclaring),
                    parse_term(*cert.B, cert.support, kDeclaring)};
    check_abel_symbolically(g, h, abel->A, abel->B);
  }

  Certificate out = cert;
  out.symbolic_ok = true;
  NumericContext ctx = context_of(cert);
  IterationRelation rel;
  rel.name = cert.iteration;
  rel.F = F;
  rel.G = G;
  rel.support = cert.support;
  if (!verify_pair_numeric(rel, GosperPair{g, h}, ctx))
    fail(ErrorKind::Internal, "replay failed: nonzero exact pair residual");
  out.residuals_zero = true;
  NumericContext tail = ctx;
  tail.K = 40;
  out.limit_gap = check_limit_condition(GosperPair{g, h}, tail).gap;
  // The closed-form gap needs the catalog record; refresh it when the
  // identity is registered, keep the stored report otherwise.
  try {
    const IdentityRecord& rec = Catalog::builtins().lookup(cert.identity);
    out.identity_rel_gap = verify_identity(rec, ctx).rel_gap();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotFound) throw;
  }
  return out;
}

std::string term_to_latex(const QTerm& t) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool lead = true;
  auto sep = [&]() {
    if (!lead) os << "\\,";
    lead = false;
  };
  if (!t.coeff().is_one()) {
    sep();
    os << t.coeff().to_string();
  }
  if (!t.geom().is_one()) {
    sep();
    os << "\\left(" << t.geom().to_string() << "\\right)^{k}";
  }
  if (t.qquad() != 0) {
    sep();
    os << "q^{" << t.qquad() << "\\binom{k}{2}}";
  }
  if (!t.pre().is_one()) {
    sep();
    os << "\\left." << t.pre().to_string() << "\\right|_{x=q^k}";
  }
  for (const auto& f : t.factors()) {
    sep();
    os << "(" << f.arg.to_string() << ";q)_{k}";
    if (f.exp != 1) os << "^{" << f.exp << "}";
  }
  if (lead) os << "1";
  return os.str();
}

std::string certificate_to_latex(const Certificate& cert) {
  auto term = [&](const std::string& src) {
    return term_to_latex(parse_term(src, cert.support, kDeclaring));
  };
  std::ostringstream os;
  os << "% " << cert.identity << ", iteration " << cert.iteration << "\n";
  os << "\\begin{align*}\n";
  os << "  g_k &= " << term(cert.g) << " \\\\\n";
  os << "  h_k &= " << term(cert.h);
  if (cert.A && cert.B) {
    os << " \\\\\n";
    os << "  A_k &= " << term(*cert.A) << " \\\\\n";
    os << "  B_k &= " << term(*cert.B) << "\n";
  } else {
    os << "\n";
  }
  os << "\\end{align*}\n";
  return os.str();
}

std::string catalog_record_to_json(const IdentityRecord& record) {
  json j;
  j["name"] = record.name;
  j["support"] = support_name(record.support);
  j["summand"] = record.summand.to_string();
  json cf = json::array();
  for (const auto& e : record.closed_form.entries())
    cf.push_back({{"arg", e.arg.to_string()},
                  {"modulus", e.modulus},
                  {"exp", e.exp}});
  j["closed_form"] = cf;
  json conv = json::array();
  for (const auto& c : record.convergence) conv.push_back(c.to_string());
  j["convergence"] = conv;
  json its = json::array();
  for (const auto& it : record.iterations) {
    json ji;
    ji["name"] = it.name;
    json sub(json::value_t::object);
    for (const auto& [id, val] : it.substitution)
      sub[sym_name(id)] = val.to_string();
    ji["substitution"] = sub;
    if (it.expected_multiplier)
      ji["expected_multiplier"] = it.expected_multiplier->to_string();
    ji["use_symmetrized"] = it.use_symmetrized;
    if (!it.notes.empty()) ji["notes"] = it.notes;
    its.push_back(ji);
  }
  j["iterations"] = its;
  json ors = json::array();
  for (const auto& o : record.oracles) {
    json jo;
    jo["iteration"] = o.iteration;
    jo["g"] = o.g.to_string();
    jo["h"] = o.h.to_string();
    if (o.A) jo["A"] = o.A->to_string();
    if (o.B) jo["B"] = o.B->to_string();
    ors.push_back(jo);
  }
  j["oracles"] = ors;
  json pt(json::value_t::object);
  for (const auto& [id, val] : record.sample_assignment)
    pt[sym_name(id)] = rat_to_string(val);
  j["sample"] = {{"q", rat_to_string(record.sample_q)}, {"point", pt}};
  return j.dump(2) + "\n";
}

namespace {

IdentityRecord record_from_json_value(const json& j) {
  IdentityRecord rec;
  try {
    rec.name = j.at("name").get<std::string>();
    rec.support = support_of(j.at("support").get<std::string>());
    rec.summand =
        parse_term(j.at("summand").get<std::string>(), rec.support,
                   kDeclaring);
    std::vector<InfProductEntry> entries;
    for (const auto& e : j.at("closed_form"))
      entries.push_back({parse_param(e.at("arg").get<std::string>(),
                                     kDeclaring),
                         e.at("modulus").get<int>(), e.at("exp").get<int>()});
    rec.closed_form = InfProduct(std::move(entries));
    if (j.contains("convergence"))
      for (const auto& c : j.at("convergence"))
        rec.convergence.push_back(
            parse_param(c.get<std::string>(), kDeclaring));
    for (const auto& ji : j.at("iterations")) {
      IterationSpec it;
      it.name = ji.at("name").get<std::string>();
      for (const auto& [k, v] : ji.at("substitution").items())
        it.substitution[sym(k)] =
            parse_param(v.get<std::string>(), kDeclaring);
      if (ji.contains("expected_multiplier"))
        it.expected_multiplier = parse_param(
            ji.at("expected_multiplier").get<std::string>(), kDeclaring);
      if (ji.contains("use_symmetrized"))
        it.use_symmetrized = ji.at("use_symmetrized").get<bool>();
      if (ji.contains("notes")) it.notes = ji.at("notes").get<std::string>();
      rec.iterations.push_back(std::move(it));
    }
    if (j.contains("oracles")) {
      for (const auto& jo : j.at("oracles")) {
        PairOracle o;
        o.iteration = jo.at("iteration").get<std::string>();
        o.g = parse_term(jo.at("g").get<std::string>(), rec.support,
                         kDeclaring);
        o.h = parse_term(jo.at("h").get<std::string>(), rec.support,
                         kDeclaring);
        if (jo.contains("A"))
          o.A = parse_term(jo.at("A").get<std::string>(), rec.support,
                           kDeclaring);
        if (jo.contains("B"))
          o.B = parse_term(jo.at("B").get<std::string>(), rec.support,
                           kDeclaring);
        rec.oracles.push_back(std::move(o));
      }
    }
    const json& s = j.at("sample");
    rec.sample_q = rat_from_string(s.at("q").get<std::string>());
    for (const auto& [k, v] : s.at("point").items())
      rec.sample_assignment[sym(k)] = rat_from_string(v.get<std::string>());
  } catch (const json::exception& e) {
    fail(ErrorKind::SyntaxError,
         std::string("malformed catalog record: ") + e.what());
  }
  return rec;
}

}  // namespace

IdentityRecord catalog_record_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    fail(ErrorKind::SyntaxError, "catalog record is not valid JSON");
  return record_from_json_value(j);
}

void load_catalog_files(Catalog& catalog, const std::string& paths) {
  size_t start = 0;
  while (start <= paths.size()) {
    size_t end = paths.find(':', start);
    if (end == std::string::npos) end = paths.size();
    std::string path = paths.substr(start, end - start);
    start = end + 1;
    if (path.empty()) continue;
    std::ifstream in(path);
    if (!in)
      fail(ErrorKind::NotFound, "cannot open catalog file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    json j = json::parse(buf.str(), nullptr, false);
    if (j.is_discarded())
      fail(ErrorKind::SyntaxError,
           "catalog file '" + path + "' is not valid JSON");
    if (j.is_array())
      for (const auto& r : j)
        catalog.register_record(record_from_json_value(r));
    else
      catalog.register_record(record_from_json_value(j));
  }
}

}  // namespace qtel
