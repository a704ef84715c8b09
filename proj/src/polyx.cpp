#include "qtel/polyx.hpp"

#include <sstream>

namespace qtel {

PolyX PolyX::x_power(int e, ParamElem c) {
  if (e < 0) fail(ErrorKind::Internal, "negative exponent in PolyX::x_power");
  if (c.is_zero()) return PolyX();
  std::vector<ParamElem> cs(static_cast<size_t>(e) + 1);
  cs.back() = std::move(c);
  return PolyX(std::move(cs));
}

PolyX PolyX::one_minus_ux(const ParamElem& u) {
  return PolyX(std::vector<ParamElem>{ParamElem(1), -u});
}

int PolyX::valuation() const {
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (!coeffs_[i].is_zero()) return static_cast<int>(i);
  return 0;
}

const ParamElem& PolyX::coeff(int i) const {
  static const ParamElem zero;
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
  return coeffs_[static_cast<size_t>(i)];
}

const ParamElem& PolyX::lc() const {
  if (coeffs_.empty()) fail(ErrorKind::Internal, "lc of zero polynomial");
  return coeffs_.back();
}

PolyX PolyX::operator-() const {
  PolyX r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

PolyX PolyX::operator+(const PolyX& o) const {
  std::vector<ParamElem> cs(std::max(coeffs_.size(), o.coeffs_.size()));
  for (size_t i = 0; i < cs.size(); ++i) {
    if (i < coeffs_.size()) cs[i] += coeffs_[i];
    if (i < o.coeffs_.size()) cs[i] += o.coeffs_[i];
  }
  return PolyX(std::move(cs));
}

PolyX PolyX::operator-(const PolyX& o) const { return *this + (-o); }

PolyX PolyX::operator*(const PolyX& o) const {
  if (is_zero() || o.is_zero()) return PolyX();
  std::vector<ParamElem> cs(coeffs_.size() + o.coeffs_.size() - 1);
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (size_t j = 0; j < o.coeffs_.size(); ++j) {
      if (o.coeffs_[j].is_zero()) continue;
      cs[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return PolyX(std::move(cs));
}

PolyX PolyX::mul_scalar(const ParamElem& c) const {
  if (c.is_zero()) return PolyX();
  PolyX r = *this;
  for (auto& v : r.coeffs_)
    if (!v.is_zero()) v *= c;
  return r;
}

PolyX PolyX::mul_xpow(int e) const {
  if (e < 0) fail(ErrorKind::Internal, "negative shift in mul_xpow");
  if (is_zero() || e == 0) return *this;
  std::vector<ParamElem> cs(coeffs_.size() + static_cast<size_t>(e));
  for (size_t i = 0; i < coeffs_.size(); ++i) cs[i + e] = coeffs_[i];
  return PolyX(std::move(cs));
}

PolyX PolyX::monic() const {
  if (is_zero()) return *this;
  if (lc().is_one()) return *this;
  return mul_scalar(lc().inverse());
}

PolyX PolyX::subst_scale(const ParamElem& scale) const {
  if (scale.is_zero()) fail(ErrorKind::Internal, "zero scale in subst_scale");
  PolyX r = *this;
  ParamElem p(1);
  for (size_t i = 1; i < r.coeffs_.size(); ++i) {
    p *= scale;
    if (!r.coeffs_[i].is_zero()) r.coeffs_[i] *= p;
  }
  return r;
}

PolyX PolyX::reversed_qrecip() const {
  // x^deg * f(1/(qx)): coefficient of x^(deg-i) is c_i * q^(-i).
  if (is_zero()) return PolyX();
  int d = degree();
  std::vector<ParamElem> cs(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i)
    cs[static_cast<size_t>(d - i)] = coeff(i) * ParamElem::q_power(-i);
  return PolyX(std::move(cs));
}

ParamElem PolyX::eval_param(const ParamElem& xval) const {
  ParamElem out;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    out = out * xval + *it;
  return out;
}

Rat PolyX::eval(const std::vector<Rat>& assignment, const Rat& xval) const {
  Rat out(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    out = out * xval + it->eval(assignment);
  return out;
}

PolyX PolyX::subst_params(const std::map<SymId, ParamElem>& map) const {
  PolyX r = *this;
  for (auto& c : r.coeffs_)
    if (!c.is_zero()) c = c.subst(map);
  r.trim();
  return r;
}

std::pair<PolyX, PolyX> PolyX::divrem(const PolyX& d) const {
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "PolyX division by zero");
  PolyX rem = *this;
  std::vector<ParamElem> q;
  int dd = d.degree();
  if (rem.degree() >= dd)
    q.resize(static_cast<size_t>(rem.degree() - dd) + 1);
  ParamElem inv_lc = d.lc().inverse();
  while (!rem.is_zero() && rem.degree() >= dd) {
    int shift = rem.degree() - dd;
    ParamElem c = rem.lc() * inv_lc;
    q[static_cast<size_t>(shift)] = c;
    rem -= d.mul_scalar(c).mul_xpow(shift);
  }
  return {PolyX(std::move(q)), rem};
}

namespace {

// The series variable as an interned symbol, for handing PolyX work to the
// multivariate gcd. "x" is reserved in the surface language, so parameter
// coefficients can never contain it.
SymId x_sym() {
  static const SymId s = sym("x");
  return s;
}

MPoly mpoly_lcm(const MPoly& a, const MPoly& b) {
  MPoly g = mpoly_gcd(a, b);
  return g.is_one() ? a * b : mpoly_divexact(a, g) * b;
}

// Clear coefficient denominators: f times a polynomial, as an element of
// Q[params, x].
MPoly cleared(const PolyX& f) {
  MPoly d(1);
  for (int i = 0; i <= f.degree(); ++i)
    if (!f.coeff(i).is_zero()) d = mpoly_lcm(d, f.coeff(i).den());
  MPoly out;
  for (int i = 0; i <= f.degree(); ++i) {
    const ParamElem& c = f.coeff(i);
    if (c.is_zero()) continue;
    out += c.num() * mpoly_divexact(d, c.den()) * MPoly::var(x_sym(), i);
  }
  return out;
}

PolyX uncleared(const MPoly& p) {
  std::vector<ParamElem> cs(static_cast<size_t>(p.degree(x_sym())) + 1);
  for (int i = 0; i < static_cast<int>(cs.size()); ++i)
    cs[static_cast<size_t>(i)] = ParamElem(p.coeff_of(x_sym(), i));
  return PolyX(std::move(cs));
}

}  // namespace

ParamElem polyx_content(const PolyX& f) {
  if (f.is_zero()) fail(ErrorKind::Internal, "content of zero polynomial");
  MPoly d(1);
  for (int i = 0; i <= f.degree(); ++i)
    if (!f.coeff(i).is_zero()) d = mpoly_lcm(d, f.coeff(i).den());
  MPoly g;
  Rat rc(0);
  Rat lead_sign(1);
  for (int i = 0; i <= f.degree(); ++i) {
    const ParamElem& c = f.coeff(i);
    if (c.is_zero()) continue;
    MPoly ci = c.num() * mpoly_divexact(d, c.den());
    Rat sc = ci.signed_content();
    lead_sign = sc < 0 ? Rat(-1) : Rat(1);  // ends at the leading coefficient
    rc = rc == 0 ? rat_abs(sc) : rat_gcd(rc, sc);
    if (g.is_one()) continue;
    g = g.is_zero() ? ci.mul_rat(Rat(1) / sc) : mpoly_gcd(g, ci);
  }
  return ParamElem(g.mul_rat(rc * lead_sign), d);
}

namespace {

// Scale num and den by the same unit so den takes its canonical primitive
// form (value unchanged).
void normalize_pair(PolyX& num, PolyX& den) {
  ParamElem s = polyx_content(den);
  if (s.is_one()) return;
  ParamElem inv = s.inverse();
  num = num.mul_scalar(inv);
  den = den.mul_scalar(inv);
}

}  // namespace

PolyX polyx_gcd(const PolyX& f, const PolyX& g) {
  if (f.is_zero() && g.is_zero())
    fail(ErrorKind::Internal, "gcd of two zero polynomials");
  if (f.is_zero()) return g.mul_scalar(polyx_content(g).inverse());
  if (g.is_zero()) return f.mul_scalar(polyx_content(f).inverse());
  // Work over Q[params, x]: the multivariate gcd controls coefficient growth
  // far better than a fraction-field Euclid; its result is already in the
  // canonical primitive form.
  return uncleared(mpoly_gcd(cleared(f), cleared(g)));
}

ParamElem polyx_resultant(const PolyX& f, const PolyX& g) {
  if (f.is_zero() || g.is_zero())
    fail(ErrorKind::Internal, "resultant of zero polynomial");
  // Res(f, g) = lc(g)^(deg f - deg r) * (-1)^(deg g * deg r') ... computed by
  // the Euclidean recurrence on the product formula.
  PolyX a = f, b = g;
  ParamElem acc(1);
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      acc *= b.lc().pow(da);
      return acc;
    }
    PolyX r = a.divrem(b).second;
    if (r.is_zero()) return ParamElem();
    // Res(a,b) = lc(b)^(da - dr) * Res(r, b) and Res(r,b) = (-1)^(dr*db) Res(b,r).
    int dr = r.degree();
    acc *= b.lc().pow(da - dr);
    if ((dr * db) % 2 != 0) acc = -acc;
    a = std::move(b);
    b = std::move(r);
  }
}

RatX::RatX(PolyX num, PolyX den, bool do_reduce)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "RatX zero denominator");
  if (do_reduce)
    reduce();
  else
    normalize_pair(num_, den_);
}

void RatX::reduce() {
  if (num_.is_zero()) {
    den_ = PolyX(1);
    return;
  }
  if (!den_.is_constant() && !num_.is_constant()) {
    PolyX g = polyx_gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divrem(g).first;
      den_ = den_.divrem(g).first;
    }
  }
  normalize_pair(num_, den_);
}

ParamElem RatX::constant_value() const {
  if (!is_constant()) fail(ErrorKind::Internal, "RatX not constant");
  if (num_.is_zero()) return ParamElem();
  return num_.coeff(0) / den_.coeff(0);
}

RatX RatX::x_power(int e) {
  if (e >= 0) return RatX(PolyX::x_power(e));
  return RatX(PolyX(1), PolyX::x_power(-e), false);
}

RatX RatX::operator-() const {
  RatX r = *this;
  r.num_ = -r.num_;
  return r;
}

RatX RatX::operator+(const RatX& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatX(num_ + o.num_, den_);
  return RatX(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatX RatX::operator-(const RatX& o) const { return *this + (-o); }

RatX RatX::operator*(const RatX& o) const {
  if (is_zero() || o.is_zero()) return RatX();
  RatX a(num_, o.den_);
  RatX b(o.num_, den_);
  RatX r;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_ * b.den_;
  normalize_pair(r.num_, r.den_);
  return r;
}

RatX RatX::operator/(const RatX& o) const { return *this * o.inverse(); }

RatX RatX::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero RatX");
  RatX r;
  r.num_ = den_;
  r.den_ = num_;
  normalize_pair(r.num_, r.den_);
  return r;
}

RatX RatX::pow(int e) const {
  if (e == 0) return RatX(1);
  RatX base = e < 0 ? inverse() : *this;
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  RatX acc(1);
  while (n) {
    if (n & 1) acc *= base;
    if (n >>= 1) base *= base;
  }
  return acc;
}

RatX RatX::subst_scale(const ParamElem& scale) const {
  return RatX(num_.subst_scale(scale), den_.subst_scale(scale));
}

RatX RatX::subst_qrecip() const {
  // f(1/(qx)) = (x^dn * num(1/(qx))) / (x^dd * den(1/(qx))) * x^(dd-dn)
  int dn = num_.degree(), dd = den_.degree();
  PolyX n = num_.reversed_qrecip();
  PolyX d = den_.reversed_qrecip();
  if (dd >= dn)
    n = n.mul_xpow(dd - dn);
  else
    d = d.mul_xpow(dn - dd);
  return RatX(std::move(n), std::move(d));
}

RatX RatX::subst_params(const std::map<SymId, ParamElem>& map) const {
  PolyX d = den_.subst_params(map);
  if (d.is_zero())
    fail(ErrorKind::InvalidSubstitution, "substitution zeroes RatX denominator");
  return RatX(num_.subst_params(map), std::move(d));
}

ParamElem RatX::eval_param(const ParamElem& xval) const {
  ParamElem d = den_.eval_param(xval);
  if (d.is_zero()) fail(ErrorKind::EvalPole, "RatX pole at symbolic point");
  return num_.eval_param(xval) / d;
}

Rat RatX::eval(const std::vector<Rat>& assignment, const Rat& xval) const {
  Rat d = den_.eval(assignment, xval);
  if (d == 0) fail(ErrorKind::EvalPole, "RatX pole at numeric point");
  return num_.eval(assignment, xval) / d;
}

std::string PolyX::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const ParamElem& c = coeff(i);
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << c.to_string();
      continue;
    }
    if (!c.is_one()) os << c.to_string() << "*";
    os << "x";
    if (i != 1) os << "^" << i;
  }
  return os.str();
}

std::string RatX::to_string() const {
  if (den_.is_one()) {
    if (num_.is_zero() || num_.degree() <= 0) return num_.to_string();
    return "(" + num_.to_string() + ")";
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RatX FactoredRatX::to_ratx() const {
  PolyX num(1), den(1);
  for (const auto& p : num_parts) num *= p;
  for (const auto& p : den_parts) den *= p;
  return RatX(std::move(num), std::move(den), false);
}

}  // namespace qtel
