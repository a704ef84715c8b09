#ifndef QTEL_POLYX_HPP
#define QTEL_POLYX_HPP

#include <vector>

#include "qtel/pfield.hpp"

namespace qtel {

/// Polynomial in the distinguished variable x (semantically x = q^k) with
/// coefficients in the parameter field F.
class PolyX {
 public:
  PolyX() = default;
  explicit PolyX(ParamElem c) {
    if (!c.is_zero()) coeffs_.push_back(std::move(c));
  }
  explicit PolyX(long c) : PolyX(ParamElem(c)) {}
  explicit PolyX(std::vector<ParamElem> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static PolyX x_power(int e, ParamElem c = ParamElem(1));
  /// 1 - u*x
  static PolyX one_minus_ux(const ParamElem& u);

  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Smallest exponent with nonzero coefficient (0 for the zero polynomial).
  int valuation() const;

  const ParamElem& coeff(int i) const;
  const ParamElem& lc() const;  // leading coefficient
  const std::vector<ParamElem>& coeffs() const { return coeffs_; }

  PolyX operator-() const;
  PolyX operator+(const PolyX& o) const;
  PolyX operator-(const PolyX& o) const;
  PolyX operator*(const PolyX& o) const;
  PolyX& operator+=(const PolyX& o) { return *this = *this + o; }
  PolyX& operator-=(const PolyX& o) { return *this = *this - o; }
  PolyX& operator*=(const PolyX& o) { return *this = *this * o; }
  bool operator==(const PolyX& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const PolyX& o) const { return !(*this == o); }

  PolyX mul_scalar(const ParamElem& c) const;
  PolyX mul_xpow(int e) const;  // e >= 0
  PolyX monic() const;

  /// f(scale * x)
  PolyX subst_scale(const ParamElem& scale) const;
  /// x^deg * f(1/(q*x)), used for the k -> -k reflection.
  PolyX reversed_qrecip() const;

  ParamElem eval_param(const ParamElem& xval) const;
  Rat eval(const std::vector<Rat>& assignment, const Rat& xval) const;
  PolyX subst_params(const std::map<SymId, ParamElem>& map) const;

  /// Quotient and remainder over the fraction field.
  std::pair<PolyX, PolyX> divrem(const PolyX& d) const;

  std::string to_string() const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<ParamElem> coeffs_;  // coeffs_[i] is the coefficient of x^i
};

/// Canonical gcd: denominator-free, content-free coefficients with a
/// positive-leading leading coefficient.
PolyX polyx_gcd(const PolyX& f, const PolyX& g);

/// Canonical content: f = content * primitive part, where the primitive part
/// has denominator-free, content-free coefficients and a positive-leading
/// leading coefficient. f must be nonzero.
ParamElem polyx_content(const PolyX& f);

/// Resultant with the convention Res(f,g) = lc(g)^deg(f) * prod f(roots of g).
ParamElem polyx_resultant(const PolyX& f, const PolyX& g);

/// Rational function in x over F; gcd(num, den) = 1 and den in canonical
/// primitive form (see polyx_content), so equal values have equal parts.
class RatX {
 public:
  RatX() : num_(), den_(1) {}
  explicit RatX(ParamElem c) : num_(std::move(c)), den_(1) {}
  explicit RatX(long c) : num_(c), den_(1) {}
  explicit RatX(PolyX num) : num_(std::move(num)), den_(1) {}
  RatX(PolyX num, PolyX den, bool reduce = true);

  static RatX x() { return RatX(PolyX::x_power(1)); }
  /// x^e for any integer e (negative exponents go to the denominator).
  static RatX x_power(int e);

  const PolyX& num() const { return num_; }
  const PolyX& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  ParamElem constant_value() const;

  RatX operator-() const;
  RatX operator+(const RatX& o) const;
  RatX operator-(const RatX& o) const;
  RatX operator*(const RatX& o) const;
  RatX operator/(const RatX& o) const;
  RatX& operator+=(const RatX& o) { return *this = *this + o; }
  RatX& operator-=(const RatX& o) { return *this = *this - o; }
  RatX& operator*=(const RatX& o) { return *this = *this * o; }
  RatX& operator/=(const RatX& o) { return *this = *this / o; }
  bool operator==(const RatX& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatX& o) const { return !(*this == o); }

  RatX inverse() const;
  RatX pow(int e) const;

  /// f(scale * x); scale must be nonzero.
  RatX subst_scale(const ParamElem& scale) const;
  /// f(1/(q*x)), rationalized.
  RatX subst_qrecip() const;
  RatX subst_params(const std::map<SymId, ParamElem>& map) const;

  ParamElem eval_param(const ParamElem& xval) const;
  Rat eval(const std::vector<Rat>& assignment, const Rat& xval) const;

  std::string to_string() const;

 private:
  void reduce();

  PolyX num_, den_;
};

/// A rational function kept as lists of polynomial factors. Algorithms that
/// would otherwise pay for gcds of large multiplied-out polynomials can work
/// factor by factor instead.
struct FactoredRatX {
  std::vector<PolyX> num_parts;
  std::vector<PolyX> den_parts;

  /// Multiply the parts out. Does not reduce: the caller must guarantee that
  /// no numerator part shares a factor with a denominator part.
  RatX to_ratx() const;
};

}  // namespace qtel

#endif
