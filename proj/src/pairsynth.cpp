#include "qtel/pairsynth.hpp"

#include <cmath>

namespace qtel {

namespace {

IterationRelation assemble(const IdentityRecord& record, QTerm F,
                           const std::map<SymId, ParamElem>& subst,
                           const ParamElem& mult, const std::string& name) {
  IterationRelation rel;
  rel.name = name;
  rel.support = record.support;
  rel.substitution = subst;
  rel.multiplier = mult;
  rel.F = std::move(F);
  rel.G = rel.F.substitute_params(subst).scale(mult);
  if (!rel.F.is_zero() && !rel.G.is_zero() &&
      !rel.F.similar_ratio(rel.G))
    fail(ErrorKind::NotSimilar,
         "iteration '" + name + "': substituted summand is not similar");
  return rel;
}

}  // namespace

IterationRelation build_iteration(const IdentityRecord& record,
                                  const std::string& iteration_name) {
  const IterationSpec& it = record.iteration(iteration_name);
  ParamElem mult = iteration_multiplier(record, it.substitution);
  return assemble(record, record.effective_summand(it), it.substitution, mult,
                  it.name);
}

IterationRelation build_iteration(const IdentityRecord& record,
                                  const std::map<SymId, ParamElem>& subst,
                                  bool use_symmetrized,
                                  std::optional<ParamElem> multiplier,
                                  const std::string& name) {
  ParamElem mult =
      multiplier ? *multiplier : iteration_multiplier(record, subst);
  QTerm F = use_symmetrized ? record.summand.symmetrize() : record.summand;
  return assemble(record, std::move(F), subst, mult, name);
}

GosperPair synthesize_gosper_pair(const IterationRelation& rel,
                                  const std::atomic<bool>* cancel) {
  if (rel.F.is_zero() && rel.G.is_zero())
    return {QTerm::zero(rel.support), QTerm::zero(rel.support)};
  QTerm t = rel.F.combine_similar(rel.G);  // F - G
  if (t.is_zero()) {
    // F = G: the relation telescopes trivially with a constant h.
    return {rel.F, QTerm::zero(rel.support)};
  }
  GosperOutcome out = q_gosper(t.ratio_factored(), cancel);
  if (!out.summable())
    fail(ErrorKind::NotSummable,
         "iteration '" + rel.name + "': " + out.diagnostic);
  QTerm h = t.mul_rational(out.certificate->R);
  QTerm g = h.combine_similar(rel.F.scale(ParamElem(-1)));  // h + F
  bool ok = g.combine_similar(h).equals(rel.F) &&
            g.combine_similar(h.shift()).equals(rel.G);
  if (!ok)
    fail(ErrorKind::Internal,
         "assembled pair fails its defining identities (iteration '" +
             rel.name + "')");
  return {std::move(g), std::move(h)};
}

GosperPair synthesize_from_record(const IdentityRecord& record,
                                  const std::string& iteration_name,
                                  const std::atomic<bool>* cancel) {
  IterationRelation rel = build_iteration(record, iteration_name);
  try {
    return synthesize_gosper_pair(rel, cancel);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotSummable) throw;
    std::string msg = e.what();
    std::string others;
    for (const auto& it : record.iterations) {
      if (it.name == iteration_name) continue;
      if (!others.empty()) others += ", ";
      others += it.name;
    }
    if (!others.empty())
      msg += "; registered alternatives for '" + record.name + "': " + others;
    fail(ErrorKind::NotSummable, msg);
  }
}

AbelPair derive_abel_pair(const GosperPair& pair) {
  if (pair.h.is_zero())
    fail(ErrorKind::ZeroH, "h vanishes identically; B is undefined");
  if (pair.g.is_zero())
    fail(ErrorKind::NotFactorable, "g vanishes identically");
  auto rho = pair.g.similar_ratio(pair.h);  // g_k / h_k = rho(q^k)
  if (!rho)
    fail(ErrorKind::NotFactorable, "g/h is not rational in q^k");
  // B_k / B_{k-1} = g_k / h_k, so the shift quotient of B is rho(q x).
  RatX rB = rho->subst_scale(ParamElem::q_power(1));
  QTerm B = reconstruct_from_ratio(rB, ParamElem(1), pair.g.support());
  QTerm A = pair.g.div_term(B);
  if (!A.mul_term(B).equals(pair.g) ||
      !A.mul_term(B.shift_back()).equals(pair.h))
    fail(ErrorKind::Internal, "Abel factorization failed its re-check");
  return {std::move(A), std::move(B)};
}

LimitReport check_limit_condition(const GosperPair& pair,
                                  const NumericContext& ctx) {
  LimitReport rep;
  rep.support = pair.g.support();
  if (pair.h.is_zero()) {
    rep.decaying_upper = rep.decaying_lower = true;
    return rep;
  }
  std::vector<Rat> asg = ctx.full_assignment();
  long K = ctx.K;
  auto at = [&](long k) { return rat_to_double(pair.h.eval(k, asg)); };
  auto decaying = [&](long start, long dir) {
    double prev = std::fabs(at(start));
    for (int i = 1; i < 10; ++i) {
      double cur = std::fabs(at(start + dir * i));
      if (cur > prev) return false;
      prev = cur;
    }
    return true;
  };
  rep.h_upper = at(K);
  rep.decaying_upper = decaying(K - 9, 1);
  if (rep.support == Support::Bilateral) {
    rep.h_lower = at(-K);
    rep.decaying_lower = decaying(-K + 9, -1);
  } else {
    rep.h_lower = at(0);
    rep.decaying_lower = true;
  }
  rep.gap = std::fabs(rep.h_upper - rep.h_lower);
  return rep;
}

bool verify_pair_numeric(const IterationRelation& rel, const GosperPair& pair,
                         const NumericContext& ctx) {
  std::vector<Rat> asg = ctx.full_assignment();
  long lo = rel.support == Support::Bilateral ? -ctx.K : 0;
  for (long k = lo; k <= ctx.K; ++k) {
    Rat g = pair.g.eval(k, asg);
    Rat h = pair.h.eval(k, asg);
    Rat h1 = pair.h.eval(k + 1, asg);
    if (rel.F.eval(k, asg) != g - h) return false;
    if (rel.G.eval(k, asg) != g - h1) return false;
  }
  return true;
}

}  // namespace qtel
