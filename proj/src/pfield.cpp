#include "qtel/pfield.hpp"

namespace qtel {

ParamElem::ParamElem(MPoly num, MPoly den, bool reduce)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator");
  if (reduce) normalize();
}

ParamElem ParamElem::q_power(int e) {
  if (e >= 0) return ParamElem(MPoly::var(sym_q(), e));
  return ParamElem(MPoly(1), MPoly::var(sym_q(), -e));
}

void ParamElem::normalize() {
  if (num_.is_zero()) {
    den_ = MPoly(1);
    return;
  }
  if (!den_.is_one()) {
    MPoly g = mpoly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = mpoly_divexact(num_, g);
      den_ = mpoly_divexact(den_, g);
    }
  }
  Rat c = den_.signed_content();
  if (c != 1) {
    den_ = den_.mul_rat(Rat(1) / c);
    num_ = num_.mul_rat(Rat(1) / c);
  }
}

ParamElem ParamElem::operator-() const {
  ParamElem r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

ParamElem ParamElem::operator+(const ParamElem& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return ParamElem(num_ + o.num_, den_);
  MPoly g = mpoly_gcd(den_, o.den_);
  if (g.is_one()) return ParamElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  MPoly da = mpoly_divexact(den_, g);
  MPoly db = mpoly_divexact(o.den_, g);
  return ParamElem(num_ * db + o.num_ * da, da * o.den_);
}

ParamElem ParamElem::operator-(const ParamElem& o) const { return *this + (-o); }

ParamElem ParamElem::operator*(const ParamElem& o) const {
  if (is_zero() || o.is_zero()) return ParamElem();
  // Cross-cancel before multiplying to keep intermediates small.
  MPoly g1 = mpoly_gcd(num_, o.den_);
  MPoly g2 = mpoly_gcd(o.num_, den_);
  MPoly n1 = g1.is_one() ? num_ : mpoly_divexact(num_, g1);
  MPoly d2 = g1.is_one() ? o.den_ : mpoly_divexact(o.den_, g1);
  MPoly n2 = g2.is_one() ? o.num_ : mpoly_divexact(o.num_, g2);
  MPoly d1 = g2.is_one() ? den_ : mpoly_divexact(den_, g2);
  ParamElem r;
  r.num_ = n1 * n2;
  r.den_ = d1 * d2;
  Rat c = r.den_.signed_content();
  if (c != 1) {
    r.den_ = r.den_.mul_rat(Rat(1) / c);
    r.num_ = r.num_.mul_rat(Rat(1) / c);
  }
  return r;
}

ParamElem ParamElem::operator/(const ParamElem& o) const {
  return *this * o.inverse();
}

ParamElem ParamElem::inverse() const {
  if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
  ParamElem r;
  r.num_ = den_;
  r.den_ = num_;
  Rat c = r.den_.signed_content();
  if (c != 1) {
    r.den_ = r.den_.mul_rat(Rat(1) / c);
    r.num_ = r.num_.mul_rat(Rat(1) / c);
  }
  return r;
}

ParamElem ParamElem::pow(int e) const {
  if (e == 0) return ParamElem(1);
  ParamElem base = e < 0 ? inverse() : *this;
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  ParamElem r;
  r.num_ = base.num_.pow(n);
  r.den_ = base.den_.pow(n);
  Rat c = r.den_.signed_content();
  if (c != 1) {
    r.den_ = r.den_.mul_rat(Rat(1) / c);
    r.num_ = r.num_.mul_rat(Rat(1) / c);
  }
  return r;
}

Rat ParamElem::eval(const std::vector<Rat>& assignment) const {
  Rat d = den_.eval(assignment);
  if (d == 0) fail(ErrorKind::EvalPole, "denominator vanishes at point");
  return num_.eval(assignment) / d;
}

ParamElem mpoly_subst(const MPoly& p, const std::map<SymId, ParamElem>& map) {
  ParamElem out;
  for (const auto& [e, c] : p.terms()) {
    ParamElem term{MPoly::monomial(c, ExpVec{})};
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      SymId s = static_cast<SymId>(i);
      auto it = map.find(s);
      ParamElem base =
          it != map.end() ? it->second : ParamElem::variable(s);
      term *= base.pow(e[i]);
    }
    out += term;
  }
  return out;
}

ParamElem ParamElem::subst(const std::map<SymId, ParamElem>& map) const {
  ParamElem d = mpoly_subst(den_, map);
  if (d.is_zero())
    fail(ErrorKind::InvalidSubstitution, "substitution makes denominator zero");
  return mpoly_subst(num_, map) / d;
}

std::optional<std::pair<Rat, ExpVec>> ParamElem::as_monomial() const {
  if (is_zero()) return std::nullopt;
  if (!num_.is_monomial() || !den_.is_monomial()) return std::nullopt;
  const auto& [en, cn] = *num_.terms().begin();
  const auto& [ed, cd] = *den_.terms().begin();
  ExpVec e(std::max(en.size(), ed.size()), 0);
  for (size_t i = 0; i < en.size(); ++i) e[i] += en[i];
  for (size_t i = 0; i < ed.size(); ++i) e[i] -= ed[i];
  while (!e.empty() && e.back() == 0) e.pop_back();
  return std::make_pair(Rat(cn / cd), e);
}

std::optional<int> ParamElem::as_q_power() const {
  auto m = as_monomial();
  if (!m) return std::nullopt;
  if (m->first != 1) return std::nullopt;
  const ExpVec& e = m->second;
  for (size_t i = 1; i < e.size(); ++i)
    if (e[i] != 0) return std::nullopt;
  return e.empty() ? 0 : e[0];
}

std::string ParamElem::to_string() const {
  if (den_.is_one()) {
    if (num_.is_monomial() || num_.is_zero()) return num_.to_string();
    return "(" + num_.to_string() + ")";
  }
  std::string n = num_.is_monomial() ? num_.to_string()
                                     : "(" + num_.to_string() + ")";
  // A denominator needs parentheses unless it is a single power of one
  // symbol with coefficient 1: "/" is left-associative, so "a/b*c" would
  // read back as (a/b)*c.
  bool bare = false;
  if (den_.is_monomial()) {
    const auto& [e, c] = *den_.terms().begin();
    int nvars = 0;
    for (int exp : e)
      if (exp != 0) ++nvars;
    bare = c == 1 && nvars == 1;
  }
  std::string d =
      bare ? den_.to_string() : "(" + den_.to_string() + ")";
  return n + "/" + d;
}

}  // namespace qtel
