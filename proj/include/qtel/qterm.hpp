#ifndef QTEL_QTERM_HPP
#define QTEL_QTERM_HPP

#include <optional>
#include <vector>

#include "qtel/polyx.hpp"

namespace qtel {

/// One q-shifted factorial (arg; q)_k raised to a signed multiplicity.
struct QFactorial {
  ParamElem arg;
  int exp = 1;
};

enum class Support { Bilateral, Unilateral };

/// Canonical basic hypergeometric term
///   t_k = coeff * geom^k * q^(qquad*k(k-1)/2) * pre(q^k) * prod (arg;q)_k^exp.
class QTerm {
 public:
  QTerm() : zero_(true) {}
  QTerm(ParamElem coeff, ParamElem geom, int qquad, RatX pre,
        std::vector<QFactorial> factors, Support support = Support::Bilateral);

  static QTerm zero(Support support = Support::Bilateral) {
    QTerm t;
    t.support_ = support;
    return t;
  }
  static QTerm one(Support support = Support::Bilateral);

  bool is_zero() const { return zero_; }
  Support support() const { return support_; }
  const ParamElem& coeff() const { return coeff_; }
  const ParamElem& geom() const { return geom_; }
  int qquad() const { return qquad_; }
  const RatX& pre() const { return pre_; }
  const std::vector<QFactorial>& factors() const { return factors_; }

  /// Shift quotient r(x) with t_{k+1} = r(q^k) * t_k.
  RatX ratio() const;
  /// Shift quotient as a list of factors with every numerator part coprime to
  /// every denominator part.
  FactoredRatX ratio_factored() const;

  /// Exact value at integer k; assignment indexed by SymId.
  Rat eval(long k, const std::vector<Rat>& assignment) const;
  /// Value at k = 0 as a field element (coeff * pre(1)).
  ParamElem value_at_zero() const;

  QTerm substitute_params(const std::map<SymId, ParamElem>& map) const;
  QTerm scale(const ParamElem& c) const;
  QTerm mul_rational(const RatX& r) const;
  /// Pointwise product f_k * g_k.
  QTerm mul_term(const QTerm& o) const;
  /// Pointwise quotient f_k / g_k (factor exponents subtract; no folding).
  QTerm div_term(const QTerm& o) const;
  /// t_{k+1} as a term.
  QTerm shift() const;
  /// t_{k-1} as a term.
  QTerm shift_back() const;

  /// rho(x) with this_k = rho(q^k) * o_k, when the quotient is rational in x.
  std::optional<RatX> similar_ratio(const QTerm& o) const;
  /// f_k - o_k as a single term; throws NotSimilar.
  QTerm combine_similar(const QTerm& o) const;
  bool equals(const QTerm& o) const;

  /// t_{-k} in canonical form (bilateral only).
  QTerm reflect() const;
  /// (t_k + t_{-k}) / 2; throws NotSymmetrizable.
  QTerm symmetrize() const;

  std::string to_string() const;

 private:
  void canonicalize();

  bool zero_ = false;
  Support support_ = Support::Bilateral;
  ParamElem coeff_{1};
  ParamElem geom_{1};
  int qquad_ = 0;
  RatX pre_{1};
  std::vector<QFactorial> factors_;
};

/// Rebuild a term from its shift quotient and its value at k = 0.
/// Requires r to factor into a constant, a power of x, and linear factors
/// (1 - u*x) with monomial-shaped u; throws NotFactorable otherwise.
QTerm reconstruct_from_ratio(const RatX& r, const ParamElem& v0,
                             Support support = Support::Bilateral);

/// Structural factorization of a PolyX into constant * x^xpow *
/// prod (1 - u x)^mult with monomial-shaped u, plus an unfactored remainder
/// (with constant coefficient 1) when some factor resists extraction.
struct LinearFactorization {
  ParamElem constant{1};
  int xpow = 0;
  std::vector<std::pair<ParamElem, int>> roots;  // (u, multiplicity)
  PolyX leftover{1};
  bool fully_factored() const { return leftover.is_one(); }
};

LinearFactorization factor_linear(const PolyX& p);

/// Exact q-Pochhammer value (u;q)_k at a rational point, any integer k.
Rat qpochhammer(const Rat& u, const Rat& q, long k);

}  // namespace qtel

#endif
