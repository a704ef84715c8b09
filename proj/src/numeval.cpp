#include "qtel/numeval.hpp"

#include <cmath>

namespace qtel {

std::vector<Rat> NumericContext::full_assignment() const {
  std::vector<Rat> out(SymbolTable::instance().size(), Rat(0));
  out[static_cast<size_t>(sym_q())] = qval;
  for (const auto& [s, v] : assignment) {
    if (s < 0 || static_cast<size_t>(s) >= out.size())
      fail(ErrorKind::UnknownSymbol, "assignment for unknown symbol id");
    out[static_cast<size_t>(s)] = v;
  }
  return out;
}

NumericContext NumericContext::at_sample(const IdentityRecord& record, long K,
                                         long N, double tolerance) {
  NumericContext ctx;
  ctx.qval = record.sample_q;
  ctx.assignment = record.sample_assignment;
  ctx.K = K;
  ctx.N = N;
  ctx.tolerance = tolerance;
  return ctx;
}

double Residual::abs_gap() const { return std::fabs(lhs - rhs); }

double Residual::rel_gap() const {
  double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  if (scale == 0) return 0;
  return abs_gap() / scale;
}

namespace {

// t_{k+1} from t_k via the shift quotient, falling back to direct
// evaluation when the current value is zero or the quotient has a pole at
// this index (an isolated zero of a prefactor, say).
Rat step(const QTerm& t, const RatX& r, const std::vector<Rat>& asg,
         const Rat& qv, long k, const Rat& cur, bool up) {
  if (cur != 0) {
    try {
      Rat xval = rat_pow(qv, up ? k : k - 1);
      Rat rv = r.eval(asg, xval);
      if (up) return cur * rv;
      if (rv != 0) return cur / rv;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::EvalPole) throw;
    }
  }
  return t.eval(up ? k + 1 : k - 1, asg);
}

}  // namespace

Rat sum_truncated(const QTerm& t, const NumericContext& ctx) {
  if (t.is_zero()) return Rat(0);
  if (ctx.K < 0) fail(ErrorKind::Internal, "negative truncation bound");
  std::vector<Rat> asg = ctx.full_assignment();
  RatX r = t.ratio();
  Rat t0 = t.eval(0, asg);
  Rat total = t0;
  Rat cur = t0;
  for (long k = 0; k < ctx.K; ++k) {
    cur = step(t, r, asg, ctx.qval, k, cur, true);
    total += cur;
  }
  if (t.support() == Support::Bilateral) {
    cur = t0;
    for (long k = 0; k > -ctx.K; --k) {
      cur = step(t, r, asg, ctx.qval, k, cur, false);
      total += cur;
    }
  }
  return total;
}

Rat infprod_eval(const InfProduct& p, const NumericContext& ctx,
                 double* tail_bound) {
  std::vector<Rat> asg = ctx.full_assignment();
  double qabs = std::fabs(rat_to_double(ctx.qval));
  Rat value(1);
  double bound = 0;
  for (const auto& e : p.entries()) {
    Rat u = e.arg.eval(asg);
    Rat qm = rat_pow(ctx.qval, e.modulus);
    Rat entry(1);
    Rat pw(1);
    for (long i = 0; i < ctx.N; ++i) {
      entry *= Rat(1) - u * pw;
      pw *= qm;
    }
    if (entry == 0 && e.exp < 0)
      fail(ErrorKind::EvalPole, "vanishing infinite-product factor");
    value *= entry == 0 ? entry : rat_pow(entry, e.exp);
    double qmN = std::pow(qabs, static_cast<double>(e.modulus) *
                                    static_cast<double>(ctx.N));
    double qmabs = std::pow(qabs, static_cast<double>(e.modulus));
    if (qmabs < 1)
      bound += std::abs(e.exp) * std::fabs(rat_to_double(u)) * qmN /
               (1 - qmabs);
  }
  if (tail_bound) *tail_bound = bound;
  return value;
}

Residual verify_identity(const IdentityRecord& record,
                         const NumericContext& ctx) {
  double qd = rat_to_double(ctx.qval);
  if (!(std::fabs(qd) > 0) || std::fabs(qd) >= 1)
    fail(ErrorKind::ConvergenceViolation, "|q| must lie in (0,1)");
  std::vector<Rat> asg = ctx.full_assignment();
  for (const auto& c : record.convergence) {
    Rat v = c.eval(asg);
    if (!(rat_abs(v) < Rat(1)))
      fail(ErrorKind::ConvergenceViolation,
           "constraint |" + c.to_string() + "| < 1 fails at the point");
  }
  Residual res;
  res.lhs = rat_to_double(sum_truncated(record.summand, ctx));
  res.rhs = rat_to_double(infprod_eval(record.closed_form, ctx));
  return res;
}

}  // namespace qtel
