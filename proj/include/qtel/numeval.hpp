#ifndef QTEL_NUMEVAL_HPP
#define QTEL_NUMEVAL_HPP

#include "qtel/catalog.hpp"

namespace qtel {

/// Point and truncation parameters for numerical checks. All series and
/// product arithmetic is exact rational; doubles only appear in reports.
struct NumericContext {
  Rat qval;
  std::map<SymId, Rat> assignment;
  long K = 60;             // summation range: |k| <= K (k >= 0 if unilateral)
  long N = 64;             // number of infinite-product factors
  double tolerance = 1e-9;

  /// Assignment vector indexed by SymId, q at index 0; unassigned symbols
  /// default to zero.
  std::vector<Rat> full_assignment() const;

  static NumericContext at_sample(const IdentityRecord& record, long K = 60,
                                  long N = 64, double tolerance = 1e-9);
};

struct Residual {
  double lhs = 0;
  double rhs = 0;
  double abs_gap() const;
  double rel_gap() const;
  bool within(double tol) const { return rel_gap() < tol; }
};

/// Exact truncated sum of the term over the context's index range. A pole of
/// the term at some index propagates as EvalPole.
Rat sum_truncated(const QTerm& t, const NumericContext& ctx);

/// Product of the first N factors of each entry, exactly; *tail_bound (if
/// given) receives a first-order bound on the dropped log-tail,
/// sum over entries of |exp| * |arg| * |q|^(m N) / (1 - |q|^m).
Rat infprod_eval(const InfProduct& p, const NumericContext& ctx,
                 double* tail_bound = nullptr);

/// Truncated-sum versus closed-form residual at the given point. Throws
/// ConvergenceViolation when |q| is outside (0,1) or a convergence
/// constraint |expr| < 1 of the record fails at the point.
Residual verify_identity(const IdentityRecord& record,
                         const NumericContext& ctx);

}  // namespace qtel

#endif
