#ifndef QTEL_MPOLY_HPP
#define QTEL_MPOLY_HPP

#include <map>
#include <string>
#include <vector>

#include "qtel/rational.hpp"
#include "qtel/symbols.hpp"

namespace qtel {

/// Exponent vector indexed by SymId, trailing zeros trimmed.
using ExpVec = std::vector<int>;

struct ExpLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
      int ea = i < a.size() ? a[i] : 0;
      int eb = i < b.size() ? b[i] : 0;
      if (ea != eb) return ea < eb;
    }
    return false;
  }
};

/// Multivariate polynomial over Q in the globally interned symbols.
/// Exponents are nonnegative; no zero coefficient is ever stored.
class MPoly {
 public:
  using TermMap = std::map<ExpVec, Rat, ExpLess>;

  MPoly() = default;
  explicit MPoly(const Rat& c) {
    if (c != 0) terms_[ExpVec{}] = c;
  }
  explicit MPoly(long c) : MPoly(Rat(c)) {}

  static MPoly var(SymId s, int exp = 1);
  static MPoly monomial(const Rat& c, const ExpVec& e);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.empty() &&
           terms_.begin()->second == 1;
  }
  /// Single term (possibly with a rational coefficient)?
  bool is_monomial() const { return terms_.size() == 1; }

  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  Rat constant_value() const;  // requires is_constant()

  /// Leading term under the global order (lex, q first).
  const std::pair<const ExpVec, Rat>& leading() const;

  MPoly operator-() const;
  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly mul_rat(const Rat& c) const;
  MPoly pow(unsigned e) const;

  int degree(SymId v) const;
  std::vector<SymId> variables() const;

  /// Coefficient of v^e, a polynomial in the remaining symbols.
  MPoly coeff_of(SymId v, int e) const;

  /// Rational content: positive gcd of coefficients, signed by the leading
  /// coefficient. Zero polynomial has content 0.
  Rat signed_content() const;

  /// Exact value at a full rational assignment (indexed by SymId).
  Rat eval(const std::vector<Rat>& assignment) const;

  std::string to_string() const;

 private:
  void add_term(const ExpVec& e, const Rat& c);

  TermMap terms_;
};

/// Exact division; throws Internal if b does not divide a.
MPoly mpoly_divexact(const MPoly& a, const MPoly& b);

/// Canonical gcd: primitive with positive leading coefficient.
/// Primitive-PRS Euclidean recursion, one variable at a time.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

}  // namespace qtel

#endif
