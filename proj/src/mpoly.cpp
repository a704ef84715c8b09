#include "qtel/mpoly.hpp"

#include <algorithm>
#include <sstream>

namespace qtel {

namespace {

void trim(ExpVec& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  ExpVec r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

int exp_of(const ExpVec& e, SymId v) {
  return v < static_cast<SymId>(e.size()) ? e[static_cast<size_t>(v)] : 0;
}

}  // namespace

MPoly MPoly::var(SymId s, int exp) {
  if (exp < 0) fail(ErrorKind::Internal, "negative exponent in MPoly::var");
  if (exp == 0) return MPoly(1);
  ExpVec e(static_cast<size_t>(s) + 1, 0);
  e[static_cast<size_t>(s)] = exp;
  return monomial(Rat(1), e);
}

MPoly MPoly::monomial(const Rat& c, const ExpVec& e) {
  MPoly p;
  if (c != 0) {
    ExpVec t = e;
    trim(t);
    p.terms_[t] = c;
  }
  return p;
}

Rat MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  if (!is_constant()) fail(ErrorKind::Internal, "not a constant polynomial");
  return terms_.begin()->second;
}

const std::pair<const ExpVec, Rat>& MPoly::leading() const {
  if (terms_.empty()) fail(ErrorKind::Internal, "leading term of zero");
  return *terms_.rbegin();
}

void MPoly::add_term(const ExpVec& e, const Rat& c) {
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (c != 0) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

MPoly MPoly::operator-() const {
  MPoly r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly r;
  if (terms_.empty() || o.terms_.empty()) return r;
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) r.add_term(exp_add(ea, eb), ca * cb);
  return r;
}

MPoly MPoly::mul_rat(const Rat& c) const {
  MPoly r;
  if (c == 0) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
  return r;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly acc(1);
  MPoly b = *this;
  while (e) {
    if (e & 1) acc *= b;
    if (e >>= 1) b *= b;
  }
  return acc;
}

int MPoly::degree(SymId v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, exp_of(e, v));
  return d;
}

std::vector<SymId> MPoly::variables() const {
  std::vector<bool> seen;
  for (const auto& [e, c] : terms_) {
    if (e.size() > seen.size()) seen.resize(e.size(), false);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) seen[i] = true;
  }
  std::vector<SymId> out;
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<SymId>(i));
  return out;
}

MPoly MPoly::coeff_of(SymId v, int deg) const {
  MPoly r;
  for (const auto& [e, c] : terms_) {
    if (exp_of(e, v) != deg) continue;
    ExpVec rest = e;
    if (v < static_cast<SymId>(rest.size())) rest[static_cast<size_t>(v)] = 0;
    trim(rest);
    r.add_term(rest, c);
  }
  return r;
}

Rat MPoly::signed_content() const {
  if (terms_.empty()) return Rat(0);
  Rat g(0);
  for (const auto& [e, c] : terms_) g = rat_gcd(g, c);
  if (terms_.rbegin()->second < 0) g = -g;
  return g;
}

Rat MPoly::eval(const std::vector<Rat>& assignment) const {
  Rat out(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= assignment.size())
        fail(ErrorKind::Internal, "assignment misses symbol " + sym_name((SymId)i));
      t *= rat_pow(assignment[i], e[i]);
    }
    out += t;
  }
  return out;
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print leading term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rat c = it->second;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    } else if (c < 0) {
      os << "-";
      c = -c;
    }
    first = false;
    bool printed = false;
    if (c != 1 || it->first.empty()) {
      os << rat_to_string(c);
      printed = true;
    }
    for (size_t i = 0; i < it->first.size(); ++i) {
      if (it->first[i] == 0) continue;
      if (printed) os << "*";
      os << sym_name(static_cast<SymId>(i));
      if (it->first[i] != 1) os << "^" << it->first[i];
      printed = true;
    }
  }
  return os.str();
}

MPoly mpoly_divexact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "mpoly divexact by zero");
  if (a.is_zero()) return MPoly();
  if (b.is_one()) return a;
  MPoly rem = a;
  MPoly quot;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    ExpVec de(std::max(lr.first.size(), lb.first.size()), 0);
    for (size_t i = 0; i < de.size(); ++i) {
      int er = i < lr.first.size() ? lr.first[i] : 0;
      int eb = i < lb.first.size() ? lb.first[i] : 0;
      de[i] = er - eb;
      if (de[i] < 0) fail(ErrorKind::Internal, "inexact mpoly division");
    }
    MPoly t = MPoly::monomial(lr.second / lb.second, de);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

namespace {

// View of p as a univariate polynomial in v with MPoly coefficients.
std::vector<MPoly> coeffs_in(const MPoly& p, SymId v) {
  int d = p.degree(v);
  std::vector<MPoly> cs(static_cast<size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) cs[static_cast<size_t>(i)] = p.coeff_of(v, i);
  return cs;
}

MPoly from_coeffs(const std::vector<MPoly>& cs, SymId v) {
  MPoly r;
  for (size_t i = 0; i < cs.size(); ++i)
    r += cs[i] * MPoly::var(v, static_cast<int>(i));
  return r;
}

int deg_of(const std::vector<MPoly>& cs) {
  for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i)
    if (!cs[static_cast<size_t>(i)].is_zero()) return i;
  return -1;
}

// Pseudo-remainder of a by b in variable v (coefficients are MPoly):
// exactly lc(b)^(deg a - deg b + 1) * a mod b, as the subresultant
// divisibility theory requires.
std::vector<MPoly> prem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
  int da = deg_of(a);
  int db = deg_of(b);
  const MPoly& lb = b[static_cast<size_t>(db)];
  int e = da - db + 1;
  while (da >= db) {
    MPoly la = a[static_cast<size_t>(da)];
    for (int i = 0; i <= da; ++i) a[static_cast<size_t>(i)] *= lb;
    int shift = da - db;
    for (int i = 0; i <= db; ++i)
      a[static_cast<size_t>(i + shift)] -= la * b[static_cast<size_t>(i)];
    a[static_cast<size_t>(da)] = MPoly();  // force-cancel the top term
    da = deg_of(a);
    --e;
  }
  a.resize(static_cast<size_t>(std::max(da, 0)) + 1);
  if (e > 0) {
    MPoly scale = lb.pow(static_cast<unsigned>(e));
    for (auto& c : a) c *= scale;
  }
  return a;
}

MPoly content_of(const std::vector<MPoly>& cs) {
  MPoly g;
  for (const auto& c : cs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : mpoly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

MPoly canonical_unit_normal(MPoly p) {
  if (p.is_zero()) return p;
  Rat c = p.signed_content();
  if (c != 1) p = p.mul_rat(Rat(1) / c);
  return p;
}

// Degree of the univariate gcd of the specializations of f and g at pt, or
// nullopt if either leading coefficient vanishes there (degree drop would
// make the probe inconclusive).
std::optional<int> probe_gcd_degree(const std::vector<MPoly>& f,
                                    const std::vector<MPoly>& g,
                                    const std::vector<Rat>& pt) {
  auto lift = [&](const std::vector<MPoly>& cs)
      -> std::optional<std::vector<Rat>> {
    std::vector<Rat> out(cs.size());
    for (size_t i = 0; i < cs.size(); ++i)
      out[i] = cs[i].is_zero() ? Rat(0) : cs[i].eval(pt);
    if (out.back() == 0) return std::nullopt;
    return out;
  };
  auto ua = lift(f);
  auto ub = lift(g);
  if (!ua || !ub) return std::nullopt;
  auto degv = [](const std::vector<Rat>& p) {
    int d = static_cast<int>(p.size()) - 1;
    while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
    return d;
  };
  std::vector<Rat> u = std::move(*ua), w = std::move(*ub);
  int du = degv(u), dw = degv(w);
  while (dw >= 0) {
    Rat lcw = w[static_cast<size_t>(dw)];
    while (du >= dw) {
      Rat c = u[static_cast<size_t>(du)] / lcw;
      for (int i = 0; i <= dw; ++i)
        u[static_cast<size_t>(du - dw + i)] -= c * w[static_cast<size_t>(i)];
      u[static_cast<size_t>(du)] = Rat(0);
      du = degv(u);
    }
    std::swap(u, w);
    std::swap(du, dw);
  }
  return du;
}

// Non-throwing exact division: true (and the quotient) iff b divides a.
bool try_divexact(const MPoly& a, const MPoly& b, MPoly& quot) {
  quot = MPoly();
  if (b.is_zero()) return false;
  if (a.is_zero()) return true;
  MPoly rem = a;
  const auto& lb = b.leading();
  while (!rem.is_zero()) {
    const auto& lr = rem.leading();
    ExpVec de(std::max(lr.first.size(), lb.first.size()), 0);
    for (size_t i = 0; i < de.size(); ++i) {
      int er = i < lr.first.size() ? lr.first[i] : 0;
      int eb = i < lb.first.size() ? lb.first[i] : 0;
      de[i] = er - eb;
      if (de[i] < 0) return false;
    }
    MPoly t = MPoly::monomial(lr.second / lb.second, de);
    quot += t;
    rem -= t * b;
  }
  return true;
}

// --- Heuristic gcd (Char/Geddes/Gonnet) --------------------------------
// Substitute a large integer xi for one variable, take the gcd of the
// images recursively, and lift it back through balanced base-xi digits.
// Every candidate is checked by exact trial division, so a wrong lift is
// only ever rejected, never returned.

// Largest |coefficient|; requires integer coefficients (denominator 1).
mpz_class int_norm(const MPoly& p) {
  mpz_class n(0);
  for (const auto& [e, c] : p.terms()) {
    mpz_class a = abs(c.get_num());
    if (a > n) n = a;
  }
  return n;
}

bool integer_coeffs(const MPoly& p) {
  for (const auto& [e, c] : p.terms())
    if (c.get_den() != 1) return false;
  return true;
}

MPoly subst_int(const MPoly& p, SymId v, const std::vector<Rat>& xipow) {
  MPoly out;
  for (const auto& [e, c] : p.terms()) {
    int k = exp_of(e, v);
    ExpVec rest = e;
    if (k) rest[static_cast<size_t>(v)] = 0;
    out += MPoly::monomial(c * xipow[static_cast<size_t>(k)], rest);
  }
  return out;
}

// The unique polynomial in v with coefficients in (-xi/2, xi/2] whose value
// at v = xi is e; digit i is e smod xi at step i of the base-xi expansion.
std::optional<MPoly> genpoly(MPoly e, const mpz_class& xi, SymId v) {
  MPoly out;
  mpz_class half = xi / 2;
  for (int i = 0; !e.is_zero(); ++i) {
    if (i > 512) return std::nullopt;
    MPoly digit, next;
    for (const auto& [ex, c] : e.terms()) {
      mpz_class z = c.get_num();
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) digit += MPoly::monomial(Rat(r), ex);
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), mpz_class(z - r).get_mpz_t(),
                   xi.get_mpz_t());
      if (q != 0) next += MPoly::monomial(Rat(q), ex);
    }
    if (!digit.is_zero()) out += digit * MPoly::var(v, i);
    e = std::move(next);
  }
  return out;
}

// budget counts lift attempts across the whole recursion: retries at every
// level would otherwise multiply.
std::optional<MPoly> heugcd(const MPoly& a0, const MPoly& b0, int& budget) {
  std::vector<SymId> va = a0.variables(), vb = b0.variables();
  std::vector<SymId> vars;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(),
                 std::back_inserter(vars));
  if (vars.empty()) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a0.constant_value().get_num().get_mpz_t(),
            b0.constant_value().get_num().get_mpz_t());
    return MPoly(Rat(g));
  }
  // Work on the primitive parts and restore gcd of the integer contents at
  // the end (Gauss): the images at xi routinely pick up accidental shared
  // integer factors, and only a content-free gamma lifts to a divisor.
  Rat ia = a0.signed_content(), ib = b0.signed_content();
  MPoly a = canonical_unit_normal(a0), b = canonical_unit_normal(b0);
  mpz_class icg;
  mpz_gcd(icg.get_mpz_t(), ia.get_num().get_mpz_t(),
          ib.get_num().get_mpz_t());
  // Eliminate the highest-degree variable first, while xi is still small.
  SymId v = vars.front();
  int dmax = 0;
  for (SymId s : vars) {
    int d = std::max(a.degree(s), b.degree(s));
    if (d > dmax) {
      dmax = d;
      v = s;
    }
  }
  mpz_class xi = 2 * std::min(int_norm(a), int_norm(b)) + 29;
  for (int attempt = 0; attempt < 6 && budget > 0; ++attempt) {
    --budget;
    // Keep the integer images from growing past what fast bignum
    // arithmetic absorbs comfortably.
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) *
            static_cast<size_t>(dmax + 1) >
        4u << 20)
      return std::nullopt;
    std::vector<Rat> pw(static_cast<size_t>(dmax) + 1, Rat(1));
    for (int i = 1; i <= dmax; ++i)
      pw[static_cast<size_t>(i)] = pw[static_cast<size_t>(i - 1)] * Rat(xi);
    MPoly av = subst_int(a, v, pw);
    MPoly bv = subst_int(b, v, pw);
    if (!av.is_zero() && !bv.is_zero()) {
      auto gamma = heugcd(av, bv, budget);
      if (gamma) {
        auto lift = genpoly(std::move(*gamma), xi, v);
        if (lift && !lift->is_zero()) {
          MPoly cand = canonical_unit_normal(*lift);
          MPoly q;
          if (try_divexact(a, cand, q) && try_divexact(b, cand, q))
            return cand.mul_rat(Rat(icg));
        }
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

// Heuristic gcd with a proof of maximality. The lift is a common divisor by
// trial division; if its degree in every shared variable matches a
// specialization bound on the gcd's degree, the missing cofactor is constant
// in every variable it could contain, hence (both sides being primitive) a
// unit. A failed probe or a degree mismatch falls back to the remainder
// sequence, so this path never guesses.
std::optional<MPoly> certified_heugcd(const MPoly& a, const MPoly& b,
                                      const std::vector<SymId>& common) {
  std::vector<std::pair<SymId, int>> bound;
  size_t nv = 0;
  for (SymId s : a.variables()) nv = std::max(nv, static_cast<size_t>(s) + 1);
  for (SymId s : b.variables()) nv = std::max(nv, static_cast<size_t>(s) + 1);
  for (SymId s : common) {
    auto cs = coeffs_in(a, s);
    auto ds = coeffs_in(b, s);
    std::optional<int> dmin;
    for (long attempt = 0; attempt < 3; ++attempt) {
      std::vector<Rat> pt(nv);
      for (size_t i = 0; i < nv; ++i)
        pt[i] = Rat(2 * static_cast<long>(i) + 3 + 11 * attempt,
                    2 * static_cast<long>(i) + 5 + 17 * attempt);
      auto d = probe_gcd_degree(cs, ds, pt);
      if (d) dmin = dmin ? std::min(*dmin, *d) : *d;
    }
    if (!dmin) return std::nullopt;
    bound.emplace_back(s, *dmin);
  }
  MPoly ap = canonical_unit_normal(a);
  MPoly bp = canonical_unit_normal(b);
  if (!integer_coeffs(ap) || !integer_coeffs(bp)) return std::nullopt;
  int budget = 24;
  auto g = heugcd(ap, bp, budget);
  if (!g) return std::nullopt;
  MPoly out = canonical_unit_normal(*g);
  for (const auto& [s, d] : bound)
    if (out.degree(s) != d) return std::nullopt;
  return out;
}

}  // namespace

MPoly mpoly_gcd(const MPoly& a, const MPoly& b) {
  if (a.is_zero()) return canonical_unit_normal(b);
  if (b.is_zero()) return canonical_unit_normal(a);
  if (a.is_constant() || b.is_constant()) return MPoly(1);
  if (a == b) return canonical_unit_normal(a);
  if (a.is_monomial() || b.is_monomial()) {
    const MPoly& m = a.is_monomial() ? a : b;
    const MPoly& p = a.is_monomial() ? b : a;
    ExpVec e = m.terms().begin()->first;
    for (const auto& [pe, pc] : p.terms())
      for (size_t i = 0; i < e.size(); ++i)
        e[i] = std::min(e[i], i < pe.size() ? pe[i] : 0);
    return MPoly::monomial(Rat(1), e);
  }

  // Main variable: a variable common to both operands with the smallest
  // degree, so the remainder sequence terminates in few steps. A variable
  // present in only one operand cannot appear in the gcd; with no common
  // variable the gcd is a unit.
  std::vector<SymId> va = a.variables(), vb = b.variables();
  std::vector<SymId> common;
  std::set_intersection(va.begin(), va.end(), vb.begin(), vb.end(),
                        std::back_inserter(common));
  if (common.empty()) return MPoly(1);
  SymId v = common.front();
  int best = std::min(a.degree(v), b.degree(v));
  for (SymId s : common) {
    int d = std::min(a.degree(s), b.degree(s));
    if (d < best) {
      best = d;
      v = s;
    }
  }

  auto ca = coeffs_in(a, v);
  auto cb = coeffs_in(b, v);

  // Coprimality probe before any content work: specialize every other
  // variable at a fixed point. If neither leading coefficient vanishes and
  // the univariate images are coprime, the gcd has degree zero in v, so it
  // equals the gcd of the two contents (Gauss's lemma). This skips the
  // pseudo-remainder sequence in the common coprime case, whose coefficient
  // growth is otherwise severe.
  bool probably_coprime_in_v = false;
  if (deg_of(ca) > 0 && deg_of(cb) > 0) {
    size_t nv = static_cast<size_t>(std::max(va.back(), vb.back())) + 1;
    for (long attempt = 0; attempt < 3; ++attempt) {
      std::vector<Rat> pt(nv);
      for (size_t i = 0; i < nv; ++i)
        pt[i] = Rat(2 * static_cast<long>(i) + 3 + 11 * attempt,
                    2 * static_cast<long>(i) + 5 + 17 * attempt);
      auto d = probe_gcd_degree(ca, cb, pt);
      if (d) {
        probably_coprime_in_v = *d == 0;
        break;
      }
    }
  }

  // gcd of the two contents, folded over the coefficients of both operands
  // with an early exit: it almost always collapses to 1 after a couple of
  // small gcds, whereas the full per-operand contents (needed only for the
  // PRS strip below) can be expensive.
  MPoly cont_gcd;
  {
    std::vector<const MPoly*> cs;
    for (const auto& c : ca)
      if (!c.is_zero()) cs.push_back(&c);
    for (const auto& c : cb)
      if (!c.is_zero()) cs.push_back(&c);
    std::sort(cs.begin(), cs.end(), [](const MPoly* x, const MPoly* y) {
      return x->term_count() < y->term_count();
    });
    for (const MPoly* c : cs) {
      cont_gcd = cont_gcd.is_zero() ? *c : mpoly_gcd(cont_gcd, *c);
      if (cont_gcd.is_one()) break;
    }
  }
  if (probably_coprime_in_v) return canonical_unit_normal(cont_gcd);

  // Fat operands with a shared factor: the remainder sequence's coefficient
  // growth dominates everything else, and the integer-substitution lift is
  // orders of magnitude cheaper when it certifies.
  if (common.size() >= 2 && a.term_count() * b.term_count() >= 1000) {
    if (auto h = certified_heugcd(a, b, common)) return *h;
  }

  // A primitive polynomial of degree 1 in v is irreducible, so it either
  // divides the other operand (pseudo-remainder zero) or contributes
  // nothing; no remainder sequence or content strip is needed.
  if (std::min(deg_of(ca), deg_of(cb)) == 1) {
    auto& small = deg_of(ca) == 1 ? ca : cb;
    auto& big = deg_of(ca) == 1 ? cb : ca;
    std::vector<MPoly> pp = small;
    MPoly cs = pp[0].is_zero() ? pp[1] : mpoly_gcd(pp[0], pp[1]);
    if (!cs.is_one() && !cs.is_constant())
      for (auto& c : pp)
        if (!c.is_zero()) c = mpoly_divexact(c, cs);
    std::vector<MPoly> r = prem(big, pp);
    bool divides = true;
    for (const auto& c : r)
      if (!c.is_zero()) {
        divides = false;
        break;
      }
    MPoly out = divides ? cont_gcd * from_coeffs(pp, v) : cont_gcd;
    return canonical_unit_normal(out);
  }

  // Strip polynomial content, then rational content: coefficients live over
  // the rationals, so numeric growth must be normalized away as well or the
  // remainder sequence blows up.
  auto strip = [](std::vector<MPoly>& cs, const MPoly& cont) {
    if (!cont.is_one())
      for (auto& c : cs)
        if (!c.is_zero()) c = mpoly_divexact(c, cont);
    Rat rc(0);
    for (const auto& c : cs)
      if (!c.is_zero())
        rc = rc == 0 ? c.signed_content() : rat_gcd(rc, c.signed_content());
    if (rc != 0 && rc != 1) {
      Rat inv = Rat(1) / rc;
      for (auto& c : cs)
        if (!c.is_zero()) c = c.mul_rat(inv);
    }
  };
  strip(ca, content_of(ca));
  strip(cb, content_of(cb));

  // Univariate over the rationals: monic Euclid, normalizing every step.
  auto all_const = [](const std::vector<MPoly>& cs) {
    for (const auto& c : cs)
      if (!c.is_zero() && !c.is_constant()) return false;
    return true;
  };
  if (all_const(ca) && all_const(cb)) {
    auto to_rats = [](const std::vector<MPoly>& cs) {
      std::vector<Rat> out(cs.size());
      for (size_t i = 0; i < cs.size(); ++i)
        out[i] = cs[i].is_zero() ? Rat(0) : cs[i].terms().begin()->second;
      return out;
    };
    auto degv = [](const std::vector<Rat>& p) {
      int d = static_cast<int>(p.size()) - 1;
      while (d >= 0 && p[static_cast<size_t>(d)] == 0) --d;
      return d;
    };
    std::vector<Rat> u = to_rats(ca), w = to_rats(cb);
    int du = degv(u), dw = degv(w);
    while (dw >= 0) {
      Rat lcw = w[static_cast<size_t>(dw)];
      while (du >= dw) {
        Rat c = u[static_cast<size_t>(du)] / lcw;
        for (int i = 0; i <= dw; ++i)
          u[static_cast<size_t>(du - dw + i)] -= c * w[static_cast<size_t>(i)];
        u[static_cast<size_t>(du)] = Rat(0);
        du = degv(u);
      }
      std::swap(u, w);
      std::swap(du, dw);
    }
    MPoly out;
    Rat lead = u[static_cast<size_t>(du)];
    for (int i = 0; i <= du; ++i) {
      Rat c = u[static_cast<size_t>(i)] / lead;
      if (c != 0) out += MPoly::var(v, i).mul_rat(c);
    }
    return canonical_unit_normal(cont_gcd * out);
  }

  // Subresultant PRS (Collins) on the primitive parts: exact divisions by
  // the predicted factor lc(f)*h^delta keep the coefficients polynomially
  // sized without the recursive content gcds of a primitive PRS.
  std::vector<MPoly> f = ca, g = cb;
  if (deg_of(f) < deg_of(g)) std::swap(f, g);
  MPoly lcf(1), hh(1);
  bool coprime = false;
  while (true) {
    int dg = deg_of(g);
    if (dg < 0) break;  // gcd is f
    if (dg == 0) {
      coprime = true;  // nonzero remainder of degree 0
      break;
    }
    int delta = deg_of(f) - dg;
    std::vector<MPoly> r = prem(f, g);
    MPoly denom = lcf * hh.pow(static_cast<unsigned>(delta));
    for (auto& c : r)
      if (!c.is_zero()) c = mpoly_divexact(c, denom);
    f = std::move(g);
    g = std::move(r);
    lcf = f[static_cast<size_t>(deg_of(f))];
    if (delta == 1)
      hh = lcf;
    else if (delta > 1)
      hh = mpoly_divexact(lcf.pow(static_cast<unsigned>(delta)),
                          hh.pow(static_cast<unsigned>(delta - 1)));
  }
  if (coprime) g.assign(1, MPoly(1));
  std::vector<MPoly>& result = deg_of(g) < 0 ? f : g;
  MPoly c_res = content_of(result);
  strip(result, c_res);
  MPoly prim = from_coeffs(result, v);
  return canonical_unit_normal(cont_gcd * prim);
}

}  // namespace qtel
