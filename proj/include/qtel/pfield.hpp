#ifndef QTEL_PFIELD_HPP
#define QTEL_PFIELD_HPP

#include <map>
#include <optional>
#include <string>

#include "qtel/mpoly.hpp"

namespace qtel {

/// Element of the coefficient field F = Q(q, a, b, ...), stored as a reduced
/// fraction of MPoly. The denominator is integer-primitive with a positive
/// leading coefficient, so equal field elements have equal representations.
class ParamElem {
 public:
  ParamElem() : num_(), den_(1) {}
  explicit ParamElem(const Rat& c) : num_(c), den_(1) {}
  explicit ParamElem(long c) : num_(c), den_(1) {}
  explicit ParamElem(const MPoly& p) : num_(p), den_(1) {}
  ParamElem(MPoly num, MPoly den, bool reduce = true);

  static ParamElem variable(SymId s) { return ParamElem(MPoly::var(s)); }
  static ParamElem q_power(int e);

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const {
    return num_.constant_value() / den_.constant_value();
  }

  ParamElem operator-() const;
  ParamElem operator+(const ParamElem& o) const;
  ParamElem operator-(const ParamElem& o) const;
  ParamElem operator*(const ParamElem& o) const;
  ParamElem operator/(const ParamElem& o) const;
  ParamElem& operator+=(const ParamElem& o) { return *this = *this + o; }
  ParamElem& operator-=(const ParamElem& o) { return *this = *this - o; }
  ParamElem& operator*=(const ParamElem& o) { return *this = *this * o; }
  ParamElem& operator/=(const ParamElem& o) { return *this = *this / o; }
  bool operator==(const ParamElem& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const ParamElem& o) const { return !(*this == o); }

  ParamElem inverse() const;
  ParamElem pow(int e) const;

  /// Exact evaluation; throws EvalPole if the denominator vanishes.
  Rat eval(const std::vector<Rat>& assignment) const;

  /// Simultaneous substitution of symbols by field elements.
  ParamElem subst(const std::map<SymId, ParamElem>& map) const;

  /// If *this is c * q^e0 * prod sym^e (a signed rational times a Laurent
  /// monomial), return (c, exponent vector with possibly negative entries).
  std::optional<std::pair<Rat, ExpVec>> as_monomial() const;

  /// If *this equals q^j exactly (coefficient 1), return j.
  std::optional<int> as_q_power() const;

  std::string to_string() const;

 private:
  void normalize();

  MPoly num_, den_;
};

ParamElem mpoly_subst(const MPoly& p, const std::map<SymId, ParamElem>& map);

}  // namespace qtel

#endif
