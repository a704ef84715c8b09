#include "qtel/qterm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace qtel {

namespace {

ParamElem q_elem() { return ParamElem::variable(sym_q()); }

std::string factor_key(const ParamElem& arg) { return arg.to_string(); }

}  // namespace

Rat qpochhammer(const Rat& u, const Rat& q, long k) {
  Rat acc(1);
  if (k >= 0) {
    Rat p(1);
    for (long i = 0; i < k; ++i) {
      acc *= (Rat(1) - u * p);
      p *= q;
    }
    return acc;
  }
  Rat p(1);
  for (long i = 1; i <= -k; ++i) {
    p /= q;
    Rat factor = Rat(1) - u * p;
    if (factor == 0)
      fail(ErrorKind::EvalPole, "q-factorial pole at negative index");
    acc *= factor;
  }
  return Rat(1) / acc;
}

QTerm::QTerm(ParamElem coeff, ParamElem geom, int qquad, RatX pre,
             std::vector<QFactorial> factors, Support support)
    : zero_(false),
      support_(support),
      coeff_(std::move(coeff)),
      geom_(std::move(geom)),
      qquad_(qquad),
      pre_(std::move(pre)),
      factors_(std::move(factors)) {
  if (geom_.is_zero()) fail(ErrorKind::DivisionByZero, "zero geometric base");
  canonicalize();
}

QTerm QTerm::one(Support support) {
  return QTerm(ParamElem(1), ParamElem(1), 0, RatX(1), {}, support);
}

void QTerm::canonicalize() {
  if (coeff_.is_zero() || pre_.is_zero()) {
    zero_ = true;
    coeff_ = ParamElem();
    geom_ = ParamElem(1);
    qquad_ = 0;
    pre_ = RatX(1);
    factors_.clear();
    return;
  }
  // Merge repeated factorial arguments; (0;q)_k^e == 1 drops out.
  std::map<std::string, QFactorial> merged;
  for (const auto& f : factors_) {
    if (f.exp == 0 || f.arg.is_zero()) continue;
    auto [it, fresh] = merged.emplace(factor_key(f.arg), f);
    if (!fresh) it->second.exp += f.exp;
  }
  factors_.clear();
  for (auto& [key, f] : merged)
    if (f.exp != 0) factors_.push_back(std::move(f));

  // Pull any net power of x out of pre: x^v at x = q^k is (q^v)^k.
  int v = pre_.num().valuation() - pre_.den().valuation();
  if (v != 0) {
    pre_ *= RatX::x_power(-v);
    geom_ *= ParamElem::q_power(v);
  }
  // Scale pre so its numerator is in canonical primitive form (denominator-
  // free, content-free coefficients); the scale moves into coeff.
  ParamElem s = polyx_content(pre_.num());
  if (!s.is_one()) {
    pre_ = RatX(pre_.num().mul_scalar(s.inverse()), pre_.den(), false);
    coeff_ *= s;
  }
}

FactoredRatX QTerm::ratio_factored() const {
  if (zero_) fail(ErrorKind::DivisionByZero, "ratio of the zero term");
  // Collect both sides as lists of factors and cancel pairwise: the small
  // pairwise gcds are far cheaper than one gcd of the multiplied-out
  // numerator and denominator.
  std::vector<PolyX> nparts{pre_.num().subst_scale(q_elem()), pre_.den()};
  std::vector<PolyX> dparts{pre_.den().subst_scale(q_elem()), pre_.num()};
  for (const auto& f : factors_) {
    PolyX lin = PolyX::one_minus_ux(f.arg);
    for (int i = 0; i < std::abs(f.exp); ++i)
      (f.exp > 0 ? nparts : dparts).push_back(lin);
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& pn : nparts)
      for (auto& pd : dparts) {
        if (pn.is_constant() || pd.is_constant()) continue;
        PolyX g = polyx_gcd(pn, pd);
        if (g.degree() == 0) continue;
        pn = pn.divrem(g).first;
        pd = pd.divrem(g).first;
        changed = true;
      }
  }
  if (!geom_.is_one()) nparts.push_back(PolyX(geom_));
  // Net all powers of x into a single factor on one side.
  int xnet = qquad_;
  auto strip_x = [&xnet](std::vector<PolyX>& parts, int sign) {
    for (auto& p : parts) {
      int v = p.valuation();
      if (v > 0) {
        p = p.divrem(PolyX::x_power(v)).first;
        xnet += sign * v;
      }
    }
  };
  strip_x(nparts, 1);
  strip_x(dparts, -1);
  if (xnet > 0)
    nparts.push_back(PolyX::x_power(xnet));
  else if (xnet < 0)
    dparts.push_back(PolyX::x_power(-xnet));
  return FactoredRatX{std::move(nparts), std::move(dparts)};
}

RatX QTerm::ratio() const { return ratio_factored().to_ratx(); }

Rat QTerm::eval(long k, const std::vector<Rat>& assignment) const {
  if (zero_) return Rat(0);
  if (support_ == Support::Unilateral && k < 0)
    fail(ErrorKind::UnsupportedNegativeK,
         "unilateral term evaluated at negative index");
  Rat qv = assignment.at(static_cast<size_t>(sym_q()));
  if (qv == 0) fail(ErrorKind::EvalPole, "q must be nonzero");
  Rat val = coeff_.eval(assignment);
  val *= rat_pow(geom_.eval(assignment), k);
  long tri = k * (k - 1) / 2;
  val *= rat_pow(qv, static_cast<long>(qquad_) * tri);
  val *= pre_.eval(assignment, rat_pow(qv, k));
  for (const auto& f : factors_) {
    // For k = -m the factorial is 1/prod_{i=1..m}(1 - u q^{-i}); work with
    // the finite product and negate the exponent so that a vanishing factor
    // is a zero of the term when it lands in a numerator position and a pole
    // only when it lands in a denominator position.
    Rat u = f.arg.eval(assignment);
    Rat base(1);
    long e = f.exp;
    if (k >= 0) {
      Rat p(1);
      for (long i = 0; i < k; ++i) {
        base *= Rat(1) - u * p;
        p *= qv;
      }
    } else {
      Rat p(1);
      for (long i = 1; i <= -k; ++i) {
        p /= qv;
        base *= Rat(1) - u * p;
      }
      e = -e;
    }
    if (base == 0) {
      if (e < 0)
        fail(ErrorKind::EvalPole, "vanishing q-factorial in denominator");
      val = Rat(0);
    } else {
      val *= rat_pow(base, e);
    }
  }
  return val;
}

ParamElem QTerm::value_at_zero() const {
  if (zero_) return ParamElem();
  return coeff_ * pre_.eval_param(ParamElem(1));
}

QTerm QTerm::substitute_params(const std::map<SymId, ParamElem>& map) const {
  if (zero_) return *this;
  ParamElem geom = geom_.subst(map);
  if (geom.is_zero())
    fail(ErrorKind::InvalidSubstitution, "geometric base becomes zero");
  std::vector<QFactorial> factors;
  factors.reserve(factors_.size());
  for (const auto& f : factors_) {
    ParamElem arg = f.arg.subst(map);
    if (arg.is_zero())
      fail(ErrorKind::InvalidSubstitution, "factorial argument becomes zero");
    factors.push_back({std::move(arg), f.exp});
  }
  RatX pre;
  try {
    pre = pre_.subst_params(map);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivisionByZero)
      fail(ErrorKind::InvalidSubstitution, "pre-factor denominator vanishes");
    throw;
  }
  return QTerm(coeff_.subst(map), std::move(geom), qquad_, std::move(pre),
               std::move(factors), support_);
}

QTerm QTerm::scale(const ParamElem& c) const {
  if (zero_ || c.is_zero()) return QTerm::zero(support_);
  QTerm t = *this;
  t.coeff_ = t.coeff_ * c;
  return t;
}

QTerm QTerm::mul_rational(const RatX& r) const {
  if (zero_ || r.is_zero()) return QTerm::zero(support_);
  return QTerm(coeff_, geom_, qquad_, pre_ * r, factors_, support_);
}

QTerm QTerm::mul_term(const QTerm& o) const {
  if (zero_ || o.zero_) return QTerm::zero(support_);
  std::vector<QFactorial> factors = factors_;
  factors.insert(factors.end(), o.factors_.begin(), o.factors_.end());
  return QTerm(coeff_ * o.coeff_, geom_ * o.geom_, qquad_ + o.qquad_,
               pre_ * o.pre_, std::move(factors), support_);
}

QTerm QTerm::div_term(const QTerm& o) const {
  if (o.zero_) fail(ErrorKind::DivisionByZero, "division by the zero term");
  if (zero_) return QTerm::zero(support_);
  std::vector<QFactorial> factors = factors_;
  for (const auto& f : o.factors_) factors.push_back({f.arg, -f.exp});
  return QTerm(coeff_ / o.coeff_, geom_ / o.geom_, qquad_ - o.qquad_,
               pre_ / o.pre_, std::move(factors), support_);
}

QTerm QTerm::shift() const {
  if (zero_) return *this;
  ParamElem coeff = coeff_ * geom_;
  ParamElem geom = geom_ * ParamElem::q_power(qquad_);
  std::vector<QFactorial> factors;
  factors.reserve(factors_.size());
  for (const auto& f : factors_) {
    // (u;q)_{k+1} = (1-u) * (u*q;q)_k
    ParamElem head = ParamElem(1) - f.arg;
    if (head.is_zero())
      fail(ErrorKind::DivisionByZero, "degenerate factorial argument 1");
    coeff *= head.pow(f.exp);
    factors.push_back({f.arg * q_elem(), f.exp});
  }
  return QTerm(std::move(coeff), std::move(geom), qquad_,
               pre_.subst_scale(q_elem()), std::move(factors), support_);
}

QTerm QTerm::shift_back() const {
  if (zero_) return *this;
  ParamElem qinv = ParamElem::q_power(-1);
  ParamElem coeff = coeff_ / geom_ * ParamElem::q_power(qquad_);
  ParamElem geom = geom_ * ParamElem::q_power(-qquad_);
  std::vector<QFactorial> factors;
  factors.reserve(factors_.size());
  RatX pre = pre_.subst_scale(qinv);
  for (const auto& f : factors_) {
    ParamElem arg = f.arg * qinv;
    ParamElem head = ParamElem(1) - arg;
    if (head.is_zero()) {
      // arg == q: (q;q)_{k-1} = (q;q)_k / (1 - q^k), so keep the factor and
      // divide the prefactor by (1 - x) instead.
      pre *= RatX(PolyX::one_minus_ux(ParamElem(1))).pow(-f.exp);
      factors.push_back(f);
      continue;
    }
    // (u;q)_{k-1} = (u/q;q)_k / (1 - u/q)
    coeff /= head.pow(f.exp);
    factors.push_back({std::move(arg), f.exp});
  }
  return QTerm(std::move(coeff), std::move(geom), qquad_, std::move(pre),
               std::move(factors), support_);
}

std::optional<RatX> QTerm::similar_ratio(const QTerm& o) const {
  if (o.zero_) return std::nullopt;
  if (zero_) return RatX(0);
  if (support_ != o.support_ || qquad_ != o.qquad_) return std::nullopt;
  auto jopt = (geom_ / o.geom_).as_q_power();
  if (!jopt) return std::nullopt;
  RatX rho = RatX(PolyX(coeff_ / o.coeff_)) * RatX::x_power(*jopt);
  rho *= pre_ / o.pre_;

  // Net factorial exponents; whatever remains must telescope in q-shift
  // classes: (u;q)_k / (u*q;q)_k = (1-u) / (1-u*x).
  std::map<std::string, QFactorial> net;
  auto add = [&net](const ParamElem& arg, int exp) {
    auto [it, fresh] = net.emplace(factor_key(arg), QFactorial{arg, exp});
    if (!fresh) it->second.exp += exp;
  };
  for (const auto& f : factors_) add(f.arg, f.exp);
  for (const auto& f : o.factors_) add(f.arg, -f.exp);
  std::vector<QFactorial> rest;
  for (auto& [key, f] : net)
    if (f.exp != 0) rest.push_back(std::move(f));

  while (!rest.empty()) {
    ParamElem base = rest.front().arg;
    std::vector<std::pair<int, int>> cls;  // (shift, exponent)
    std::vector<QFactorial> keep;
    for (auto& f : rest) {
      auto t = (f.arg / base).as_q_power();
      if (t)
        cls.emplace_back(*t, f.exp);
      else
        keep.push_back(std::move(f));
    }
    rest = std::move(keep);
    std::sort(cls.begin(), cls.end());
    int total = 0;
    for (auto& [t, e] : cls) total += e;
    if (total != 0) return std::nullopt;
    int partial = 0;
    for (size_t i = 0; i + 1 < cls.size(); ++i) {
      partial += cls[i].second;
      if (partial == 0) continue;
      for (int s = cls[i].first; s < cls[i + 1].first; ++s) {
        ParamElem v = base * ParamElem::q_power(s);
        RatX step = RatX(PolyX(ParamElem(1) - v)) /
                    RatX(PolyX::one_minus_ux(v));
        rho *= step.pow(partial);
      }
    }
  }
  return rho;
}

QTerm QTerm::combine_similar(const QTerm& o) const {
  if (zero_ && o.zero_) return QTerm::zero(support_);
  if (o.zero_) return *this;
  auto rho = similar_ratio(o);
  if (!rho)
    fail(ErrorKind::NotSimilar, "terms are not similar; cannot combine");
  RatX diff = *rho - RatX(1);
  if (diff.is_zero()) return QTerm::zero(support_);
  return o.mul_rational(diff);
}

bool QTerm::equals(const QTerm& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  auto rho = similar_ratio(o);
  return rho && rho->is_one();
}

QTerm QTerm::reflect() const {
  if (support_ != Support::Bilateral)
    fail(ErrorKind::UnsupportedNegativeK,
         "reflection requires a bilateral term");
  if (zero_) return *this;
  // t_{-k}: use (u;q)_{-k} = (-q/u)^k q^{k(k-1)/2} / (q/u;q)_k and
  // q^(a*(-k)((-k)-1)/2) = (q^a)^k q^(a*k(k-1)/2), pre(q^-k) = pre(1/x)|x=q^k.
  ParamElem q = q_elem();
  ParamElem geom = geom_.inverse() * ParamElem::q_power(qquad_);
  int qquad = qquad_;
  std::vector<QFactorial> factors;
  factors.reserve(factors_.size());
  for (const auto& f : factors_) {
    geom *= (-(q / f.arg)).pow(f.exp);
    qquad += f.exp;
    factors.push_back({q / f.arg, -f.exp});
  }
  RatX pre = pre_.subst_qrecip().subst_scale(ParamElem::q_power(-1));
  return QTerm(coeff_, std::move(geom), qquad, std::move(pre),
               std::move(factors), support_);
}

QTerm QTerm::symmetrize() const {
  if (zero_) return *this;
  QTerm refl = reflect();
  auto rho = refl.similar_ratio(*this);
  if (!rho)
    fail(ErrorKind::NotSymmetrizable,
         "reflected term is not similar to the original");
  RatX half = (RatX(1) + *rho) * RatX(ParamElem(Rat(1, 2)));
  return mul_rational(half);
}

std::string QTerm::to_string() const {
  if (zero_) return "0";
  std::ostringstream out;
  out << "const(" << coeff_.to_string() << ")";
  if (!geom_.is_one()) out << " * geom(" << geom_.to_string() << ")";
  if (qquad_ != 0) out << " * qquad(" << qquad_ << ")";
  if (!pre_.is_one()) out << " * pre(" << pre_.to_string() << ")";
  for (const auto& f : factors_) {
    out << " * poch(" << f.arg.to_string() << ")";
    if (f.exp != 1) out << "^" << f.exp;
  }
  return out.str();
}

LinearFactorization factor_linear(const PolyX& p) {
  LinearFactorization out;
  if (p.is_zero()) {
    out.constant = ParamElem();
    return out;
  }
  out.xpow = p.valuation();
  std::vector<ParamElem> shifted(p.coeffs().begin() + out.xpow,
                                 p.coeffs().end());
  PolyX work{std::move(shifted)};
  out.constant = work.coeff(0);
  work = work.mul_scalar(out.constant.inverse());

  auto record = [&out](const ParamElem& u) {
    for (auto& [root, mult] : out.roots)
      if (root == u) {
        ++mult;
        return;
      }
    out.roots.emplace_back(u, 1);
  };

  // Candidate roots u of factors (1-u*x): if p = prod(1-u_i x), each ratio
  // coeff(j)/coeff(i) is (+-1 times) a sum of products of j-i roots, so
  // monomial quotients of coefficient terms are candidate values of u^(j-i).
  while (work.degree() > 0) {
    std::set<std::string> seen;
    std::vector<ParamElem> candidates;
    auto propose = [&](const ParamElem& target, int diff) {
      auto mono = target.as_monomial();
      if (!mono) return;
      auto [c, e] = *mono;
      for (int exp : e)
        if (exp % diff != 0) return;
      Rat mag = rat_abs(c);
      auto root = rat_root(mag, static_cast<unsigned>(diff));
      if (!root) return;
      ExpVec re(e.size());
      for (size_t i = 0; i < e.size(); ++i) re[i] = e[i] / diff;
      std::vector<Rat> croots;
      if (diff % 2 == 0) {
        if (c < 0) return;
        croots = {*root, -*root};
      } else {
        croots = {c < 0 ? Rat(-*root) : *root};
      }
      for (const Rat& cr : croots) {
        ExpVec pe, ne;
        for (size_t i = 0; i < re.size(); ++i) {
          pe.push_back(std::max(re[i], 0));
          ne.push_back(std::max(-re[i], 0));
        }
        ParamElem u(MPoly::monomial(cr, pe), MPoly::monomial(Rat(1), ne));
        if (u.is_zero()) continue;
        if (seen.insert(u.to_string()).second) candidates.push_back(u);
      }
    };
    int d = work.degree();
    for (int i = 0; i <= d; ++i) {
      if (work.coeff(i).is_zero()) continue;
      for (int j = i + 1; j <= d; ++j) {
        if (work.coeff(j).is_zero()) continue;
        ParamElem w = work.coeff(j) / work.coeff(i);
        propose(w, j - i);
        propose(-w, j - i);
      }
    }
    // -coeff(1)/coeff(0) is the sum of the roots and -coeff(d-1)/coeff(d)
    // the sum of their reciprocals, so individual terms of those sums are
    // candidates even when the sums themselves are not monomials.
    auto propose_terms = [&](const ParamElem& ratio, bool invert) {
      if (ratio.is_zero()) return;
      if (!ratio.den().is_constant() && !ratio.den().is_monomial()) return;
      for (const auto& [e, c] : ratio.num().terms()) {
        ParamElem t(MPoly::monomial(c, e), ratio.den());
        if (invert) t = t.inverse();
        propose(t, 1);
        propose(-t, 1);
      }
    };
    if (d >= 2) {
      propose_terms(work.coeff(1) / work.coeff(0), false);
      propose_terms(work.coeff(d - 1) / work.coeff(d), true);
    }
    bool progressed = false;
    for (const ParamElem& u : candidates) {
      while (work.degree() > 0 && work.eval_param(u.inverse()).is_zero()) {
        auto [quot, rem] = work.divrem(PolyX::one_minus_ux(u));
        if (!rem.is_zero()) break;
        work = quot;
        record(u);
        progressed = true;
      }
    }
    if (!progressed) break;
  }
  out.leftover = work;
  return out;
}

QTerm reconstruct_from_ratio(const RatX& r, const ParamElem& v0,
                             Support support) {
  if (r.is_zero())
    fail(ErrorKind::NotReconstructible, "shift quotient is identically zero");
  if (v0.is_zero()) return QTerm::zero(support);
  LinearFactorization fn = factor_linear(r.num());
  LinearFactorization fd = factor_linear(r.den());
  if (!fn.fully_factored() || !fd.fully_factored())
    fail(ErrorKind::NotFactorable,
         "shift quotient has a factor without monomial roots");
  std::vector<QFactorial> factors;
  for (const auto& [u, m] : fn.roots) factors.push_back({u, m});
  for (const auto& [u, m] : fd.roots) factors.push_back({u, -m});
  return QTerm(v0, fn.constant / fd.constant, fn.xpow - fd.xpow, RatX(1),
               std::move(factors), support);
}

}  // namespace qtel
