#ifndef QTEL_PAIRSYNTH_HPP
#define QTEL_PAIRSYNTH_HPP

#include <atomic>

#include "qtel/catalog.hpp"
#include "qtel/numeval.hpp"
#include "qtel/qgosper.hpp"

namespace qtel {

/// Iteration relation sum_k F_k = sum_k G_k, where G is the summand after a
/// parameter substitution, scaled by the quotient of the closed forms.
struct IterationRelation {
  std::string name;  // registered iteration name, or "custom"
  QTerm F;
  QTerm G;
  std::map<SymId, ParamElem> substitution;
  ParamElem multiplier{1};
  Support support = Support::Bilateral;
};

/// Terms with g_k - h_k = F_k and g_k - h_{k+1} = G_k, exactly.
struct GosperPair {
  QTerm g;
  QTerm h;
};

/// Terms with g_k = A_k * B_k and h_k = A_k * B_{k-1}, normalized to B_0 = 1.
struct AbelPair {
  QTerm A;
  QTerm B;
};

/// Build the named registered iteration of the record. The multiplier is
/// recomputed from the closed form; the summand is symmetrized when the
/// iteration requests it. Throws NotFound for an unknown name, NotSimilar
/// when F and G fail to combine, MultiplierNotFinite from the closed-form
/// quotient.
IterationRelation build_iteration(const IdentityRecord& record,
                                  const std::string& iteration_name);

/// Build a user-supplied iteration. When no multiplier is given it is
/// computed from the record's closed form.
IterationRelation build_iteration(
    const IdentityRecord& record, const std::map<SymId, ParamElem>& subst,
    bool use_symmetrized = false,
    std::optional<ParamElem> multiplier = std::nullopt,
    const std::string& name = "custom");

/// Run the q-Gosper algorithm on t = F - G and assemble h_k = R(q^k) * t_k,
/// g_k = h_k + F_k. Both defining identities are re-checked symbolically
/// before returning. Throws NotSummable (naming the iteration) when no
/// certificate exists, DispersionUndetermined when summability cannot be
/// decided.
GosperPair synthesize_gosper_pair(const IterationRelation& rel,
                                  const std::atomic<bool>* cancel = nullptr);

/// build_iteration + synthesize_gosper_pair; on NotSummable the diagnostic
/// additionally lists the record's other registered iterations.
GosperPair synthesize_from_record(const IdentityRecord& record,
                                  const std::string& iteration_name,
                                  const std::atomic<bool>* cancel = nullptr);

/// Factor the Gosper pair as g_k = A_k B_k, h_k = A_k B_{k-1} with B_0 = 1:
/// B is reconstructed from the shift quotient B_{k+1}/B_k = (g/h)(q^{k+1})
/// and A = g / B. Throws ZeroH when h vanishes identically, NotFactorable
/// when g/h is not rational in q^k or B does not reconstruct.
AbelPair derive_abel_pair(const GosperPair& pair);

/// Numeric report on the tail condition that makes the pair sum the
/// identity: lim_{k->+inf} h_k = lim_{k->-inf} h_k for bilateral support,
/// lim_{k->+inf} h_k = h_0 for unilateral.
struct LimitReport {
  Support support = Support::Bilateral;
  double h_upper = 0;  // h at k = +K
  double h_lower = 0;  // h at k = -K (bilateral) or h at k = 0 (unilateral)
  double gap = 0;      // |h_upper - h_lower|
  /// |h| non-increasing over the last ten indices of each tail. For
  /// unilateral pairs decaying_lower is vacuously true.
  bool decaying_upper = false;
  bool decaying_lower = false;
};

/// Evaluate the pair's h at the tail indices k = +-ctx.K. Throws EvalPole if
/// a sampled index hits a pole of h.
LimitReport check_limit_condition(const GosperPair& pair,
                                  const NumericContext& ctx);

/// Exact per-index check of the pair against the relation: for every k in
/// the context's range, F_k - (g_k - h_k) and G_k - (g_k - h_{k+1}) must be
/// exactly zero as rationals.
bool verify_pair_numeric(const IterationRelation& rel, const GosperPair& pair,
                         const NumericContext& ctx);

}  // namespace qtel

#endif
