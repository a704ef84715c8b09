#include "qtel/qgosper.hpp"

#include <algorithm>

#include "qtel/qterm.hpp"

namespace qtel {

namespace {

constexpr int kScanLimit = 64;

void check_cancel(const std::atomic<bool>* cancel) {
  if (cancel && cancel->load(std::memory_order_relaxed))
    fail(ErrorKind::Internal, "operation cancelled");
}

int max_symbol(const PolyX& p, int acc) {
  for (const auto& c : p.coeffs()) {
    for (SymId s : c.num().variables()) acc = std::max(acc, s);
    for (SymId s : c.den().variables()) acc = std::max(acc, s);
  }
  return acc;
}

/// Degree of gcd over Q after a fixed rational evaluation of all parameters;
/// a cheap prefilter for the symbolic gcd (false positives are harmless, the
/// caller confirms symbolically).
std::optional<int> numeric_gcd_degree(const PolyX& f, const PolyX& g,
                                      const std::vector<Rat>& point) {
  auto lift = [&point](const PolyX& p) -> std::optional<std::vector<Rat>> {
    std::vector<Rat> out(p.coeffs().size());
    for (size_t i = 0; i < out.size(); ++i) {
      try {
        out[i] = p.coeff(static_cast<int>(i)).eval(point);
      } catch (const Error&) {
        return std::nullopt;
      }
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  };
  auto fa = lift(f), fb = lift(g);
  if (!fa || !fb || fa->empty() || fb->empty()) return std::nullopt;
  std::vector<Rat> a = *fa, b = *fb;
  while (!b.empty()) {
    // a mod b
    while (a.size() >= b.size() && !a.empty()) {
      Rat c = a.back() / b.back();
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
      while (!a.empty() && a.back() == 0) a.pop_back();
      if (a.size() < b.size()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

/// Certified upper bound for the dispersion scan: every j >= 0 with
/// deg gcd(f(x), g(q^j x)) > 0 is a root of R(y) = Res_x(f(x), g(y x)), so
/// R(q^j) = 0. Writing R = sum_i c_i(q, params) y^i with top index L,
/// R(q^j) = sum_i c_i q^{ji}; once j(L - i) > deg_q c_i - deg_q c_L for all
/// i < L, the top term alone carries the maximal q-degree and cannot cancel
/// against distinct parameter monomials, so R(q^j) != 0. Returns the largest
/// j not excluded this way (-1: none), or nullopt when the bound degenerates.
std::optional<int> resultant_scan_bound(const PolyX& f, const PolyX& g) {
  PolyX fp = f.mul_scalar(polyx_content(f).inverse());
  PolyX gp = g.mul_scalar(polyx_content(g).inverse());
  SymId ys = sym("@shift");
  ParamElem res = polyx_resultant(fp, gp.subst_scale(ParamElem::variable(ys)));
  if (res.is_zero() || res.den().degree(ys) > 0) return std::nullopt;
  std::map<int, int> degq;  // y-exponent -> maximal q-exponent
  for (const auto& [e, c] : res.num().terms()) {
    int ey = static_cast<size_t>(ys) < e.size() ? e[static_cast<size_t>(ys)]
                                                : 0;
    int eq = e.empty() ? 0 : e[0];
    auto [it, fresh] = degq.emplace(ey, eq);
    if (!fresh) it->second = std::max(it->second, eq);
  }
  int L = degq.rbegin()->first;
  int dL = degq.rbegin()->second;
  if (L == 0) return -1;  // R is free of y, so it never vanishes at q^j
  int bound = -1;
  for (const auto& [i, dq] : degq) {
    if (i == L) continue;
    int num = dq - dL, den = L - i;
    int fl = num >= 0 ? num / den : -((-num + den - 1) / den);
    bound = std::max(bound, fl);
  }
  return bound;
}

}  // namespace

DispersionResult dispersion_shifts(const PolyX& f, const PolyX& g,
                                   DispersionEffort effort) {
  if (f.is_zero() || g.is_zero())
    fail(ErrorKind::DivisionByZero, "dispersion of the zero polynomial");
  DispersionResult out;
  if (f.is_constant() || g.is_constant()) return out;
  LinearFactorization ff = factor_linear(f);
  LinearFactorization fg = factor_linear(g);
  if (ff.xpow > 0 && fg.xpow > 0)
    for (int j = 0; j <= kScanLimit; ++j) out.shifts.insert(j);
  for (const auto& [u, mu] : ff.roots)
    for (const auto& [w, mw] : fg.roots) {
      auto j = (u / w).as_q_power();
      if (j && *j >= 0) out.shifts.insert(*j);
    }
  if (ff.fully_factored() && fg.fully_factored() &&
      !(ff.xpow > 0 && fg.xpow > 0))
    return out;
  // Some factor resisted structural analysis (or a shared power of x makes
  // every shift a candidate): fall back to a direct scan. A resultant bound,
  // when available, certifies that no shift beyond it exists; otherwise the
  // scan is capped and the result marked incomplete.
  out.complete = ff.fully_factored() && fg.fully_factored();
  int scan_hi = kScanLimit;
  if (!out.complete && effort == DispersionEffort::Certify &&
      !(ff.xpow > 0 && fg.xpow > 0)) {
    // A power of x on one side only never contributes a common factor but
    // would make the resultant vanish, so strip it first.
    PolyX fv =
        ff.xpow > 0 ? f.divrem(PolyX::x_power(ff.xpow)).first : f;
    PolyX gv =
        fg.xpow > 0 ? g.divrem(PolyX::x_power(fg.xpow)).first : g;
    if (auto bound = resultant_scan_bound(fv, gv)) {
      scan_hi = *bound;
      out.complete = true;
    }
  }
  int maxsym = max_symbol(f, max_symbol(g, 0));
  std::vector<Rat> point(static_cast<size_t>(maxsym) + 1);
  point[0] = Rat(3, 7);
  for (int i = 1; i <= maxsym; ++i) point[static_cast<size_t>(i)] =
      Rat(2 * i + 3, 2 * i + 5);
  ParamElem q = ParamElem::variable(sym_q());
  PolyX shifted = g;
  for (int j = 0; j <= scan_hi; ++j) {
    if (!out.shifts.count(j)) {
      auto deg = numeric_gcd_degree(f, shifted, point);
      if (!deg || *deg > 0) {
        if (!polyx_gcd(f, shifted).is_constant()) out.shifts.insert(j);
      }
    }
    shifted = shifted.subst_scale(q);
  }
  return out;
}

std::set<int> dispersion_set(const PolyX& f, const PolyX& g) {
  DispersionResult r = dispersion_shifts(f, g);
  if (!r.complete)
    fail(ErrorKind::DispersionUndetermined,
         "dispersion set cannot be certified complete");
  return r.shifts;
}

QGPForm qgp_decompose(const RatX& r, const std::atomic<bool>* cancel,
                      DispersionEffort effort) {
  return qgp_decompose(FactoredRatX{{r.num()}, {r.den()}}, cancel, effort);
}

QGPForm qgp_decompose(const FactoredRatX& r, const std::atomic<bool>* cancel,
                      DispersionEffort effort) {
  QGPForm form;
  std::vector<PolyX> fparts = r.num_parts;
  std::vector<PolyX> gparts = r.den_parts;
  // Powers of x are shift-invariant, so a shared one would make every j a
  // candidate; set them aside and cancel the common part (an extraction at
  // j = 0, which leaves p untouched).
  int xf = 0, xg = 0;
  auto strip_x = [](std::vector<PolyX>& parts, int& acc) {
    for (auto& p : parts) {
      if (p.is_zero())
        fail(ErrorKind::DivisionByZero, "decomposition of the zero quotient");
      int v = p.valuation();
      if (v > 0) {
        p = p.divrem(PolyX::x_power(v)).first;
        acc += v;
      }
    }
  };
  strip_x(fparts, xf);
  strip_x(gparts, xg);
  int xcommon = std::min(xf, xg);
  xf -= xcommon;
  xg -= xcommon;
  // Extract pair by pair; a pass with no extraction certifies that every
  // numerator part is j-shift coprime to every denominator part.
  for (;;) {
    check_cancel(cancel);
    bool changed = false;
    bool pass_complete = true;
    for (auto& fp : fparts)
      for (auto& gp : gparts) {
        if (fp.is_constant() || gp.is_constant()) continue;
        DispersionResult disp = dispersion_shifts(fp, gp, effort);
        pass_complete = pass_complete && disp.complete;
        for (int j : disp.shifts) {
          check_cancel(cancel);
          PolyX s = polyx_gcd(fp, gp.subst_scale(ParamElem::q_power(j)));
          if (s.is_constant()) continue;
          auto [fq, frem] = fp.divrem(s);
          auto [gq, grem] = gp.divrem(s.subst_scale(ParamElem::q_power(-j)));
          if (!frem.is_zero() || !grem.is_zero())
            fail(ErrorKind::Internal, "inexact division by an extracted gcd");
          fp = std::move(fq);
          gp = std::move(gq);
          for (int i = 1; i <= j; ++i) {
            PolyX part = s.subst_scale(ParamElem::q_power(-i));
            form.p *= part;
            form.p_parts.push_back(std::move(part));
          }
          changed = true;
        }
      }
    if (!changed) {
      form.dispersion_complete = pass_complete;
      break;
    }
  }
  for (const auto& p : fparts) form.f *= p;
  for (const auto& p : gparts) form.g *= p;
  if (xf > 0) form.f = form.f.mul_xpow(xf);
  if (xg > 0) form.g = form.g.mul_xpow(xg);
  ParamElem glc = form.g.lc();
  form.f = form.f.mul_scalar(glc.inverse());
  form.g = form.g.monic();
  form.p = form.p.monic();
  return form;
}

std::optional<LaurentPoly> solve_key_equation(const QGPForm& form) {
  const PolyX& f = form.f;
  PolyX gp = form.g.subst_scale(ParamElem::q_power(-1));  // g(x/q)
  const PolyX& p = form.p;

  int df = f.degree(), dg = gp.degree(), dp = p.degree();
  int vf = f.valuation(), vg = gp.valuation(), vp = p.valuation();

  int hi;
  if (df != dg) {
    hi = dp - std::max(df, dg);
  } else {
    hi = dp - df;
    auto delta = (gp.lc() / f.lc()).as_q_power();
    if (delta) hi = std::max(hi, *delta);
  }
  int lo;
  if (vf != vg) {
    lo = vp - std::min(vf, vg);
  } else {
    lo = vp - vf;
    auto lambda = (gp.coeff(vg) / f.coeff(vf)).as_q_power();
    if (lambda) lo = std::min(lo, *lambda);
  }
  if (lo > hi) return std::nullopt;

  int n = hi - lo + 1;
  int row_lo = std::min(std::min(vf, vg) + lo, vp);
  int row_hi = std::max(std::max(df, dg) + hi, dp);
  int m = row_hi - row_lo + 1;

  // Row for exponent e: sum_i s_i (f_{e-i} q^i - g'_{e-i}) = p_e.
  std::vector<std::vector<ParamElem>> A(
      static_cast<size_t>(m), std::vector<ParamElem>(static_cast<size_t>(n)));
  std::vector<ParamElem> rhs(static_cast<size_t>(m));
  auto coeff_at = [](const PolyX& poly, int e) -> ParamElem {
    if (e < 0 || e > poly.degree()) return ParamElem();
    return poly.coeff(e);
  };
  for (int e = row_lo; e <= row_hi; ++e) {
    size_t row = static_cast<size_t>(e - row_lo);
    rhs[row] = coeff_at(p, e);
    for (int i = lo; i <= hi; ++i) {
      ParamElem c = coeff_at(f, e - i) * ParamElem::q_power(i) -
                    coeff_at(gp, e - i);
      A[row][static_cast<size_t>(i - lo)] = std::move(c);
    }
  }

  // Gaussian elimination over F, preferring small pivots.
  auto weight = [](const ParamElem& c) {
    return c.num().terms().size() + c.den().terms().size();
  };
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (int col = 0; col < n && rank < static_cast<size_t>(m); ++col) {
    size_t best = static_cast<size_t>(m);
    for (size_t r = rank; r < static_cast<size_t>(m); ++r) {
      if (A[r][static_cast<size_t>(col)].is_zero()) continue;
      if (best == static_cast<size_t>(m) ||
          weight(A[r][static_cast<size_t>(col)]) <
              weight(A[best][static_cast<size_t>(col)]))
        best = r;
    }
    if (best == static_cast<size_t>(m)) continue;
    std::swap(A[rank], A[best]);
    std::swap(rhs[rank], rhs[best]);
    ParamElem inv = A[rank][static_cast<size_t>(col)].inverse();
    for (int c = col; c < n; ++c)
      A[rank][static_cast<size_t>(c)] *= inv;
    rhs[rank] *= inv;
    for (size_t r = 0; r < static_cast<size_t>(m); ++r) {
      if (r == rank) continue;
      ParamElem factor = A[r][static_cast<size_t>(col)];
      if (factor.is_zero()) continue;
      for (int c = col; c < n; ++c)
        A[r][static_cast<size_t>(c)] -=
            factor * A[rank][static_cast<size_t>(c)];
      rhs[r] -= factor * rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < static_cast<size_t>(m); ++r)
    if (!rhs[r].is_zero()) return std::nullopt;

  std::vector<ParamElem> s(static_cast<size_t>(n));
  for (size_t r = 0; r < rank; ++r)
    s[static_cast<size_t>(pivot_col[r])] = rhs[r];
  PolyX poly{std::move(s)};
  if (poly.is_zero()) return std::nullopt;
  int v = poly.valuation();
  std::vector<ParamElem> stripped(poly.coeffs().begin() + v,
                                  poly.coeffs().end());
  return LaurentPoly{lo + v, PolyX{std::move(stripped)}};
}

GosperOutcome q_gosper(const RatX& r, const std::atomic<bool>* cancel) {
  return q_gosper(FactoredRatX{{r.num()}, {r.den()}}, cancel);
}

GosperOutcome q_gosper(const FactoredRatX& fr, const std::atomic<bool>* cancel) {
  for (const auto& part : fr.num_parts)
    if (part.is_zero())
      fail(ErrorKind::DivisionByZero, "shift quotient must be nonzero");
  // Decompose with the cheap scan first: a certified-complete dispersion set
  // only matters for the NO decision, and certifying the bound can be costly.
  QGPForm form = qgp_decompose(fr, cancel, DispersionEffort::Fast);
  check_cancel(cancel);
  auto sol = solve_key_equation(form);
  if (!sol && !form.dispersion_complete) {
    form = qgp_decompose(fr, cancel, DispersionEffort::Certify);
    check_cancel(cancel);
    sol = solve_key_equation(form);
  }
  if (!sol) {
    if (!form.dispersion_complete)
      fail(ErrorKind::DispersionUndetermined,
           "no Laurent solution found and the dispersion set is uncertified");
    return {std::nullopt,
            "key equation f(x) s(qx) - g(x/q) s(x) = p(x) has no Laurent "
            "solution in the admissible degree window"};
  }
  check_cancel(cancel);
  // R = g(x/q) s(x) x^shift / p, reduced by cancelling pairwise against the
  // recorded factors of p so no large gcd is ever taken. p is monic while its
  // factors are not, so fold the factors' leading constant into the numerator.
  PolyX gp = form.g.subst_scale(ParamElem::q_power(-1));
  int e = sol->shift;
  int v0 = gp.valuation();
  if (v0 > 0) {
    gp = gp.divrem(PolyX::x_power(v0)).first;
    e += v0;
  }
  ParamElem plc(1);
  for (const auto& part : form.p_parts) plc *= part.lc();
  std::vector<PolyX> nparts{std::move(gp), sol->poly};
  if (!plc.is_one()) nparts.push_back(PolyX(plc));
  std::vector<PolyX> dparts = form.p_parts;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto& pn : nparts)
      for (auto& pd : dparts) {
        if (pn.is_constant() || pd.is_constant()) continue;
        PolyX s = polyx_gcd(pn, pd);
        if (s.degree() == 0) continue;
        auto [nq, nrem] = pn.divrem(s);
        auto [dq, drem] = pd.divrem(s);
        if (!nrem.is_zero() || !drem.is_zero())
          fail(ErrorKind::Internal, "inexact division by an extracted gcd");
        pn = std::move(nq);
        pd = std::move(dq);
        changed = true;
      }
  }
  PolyX u(1), v(1);
  for (const auto& pn : nparts) u *= pn;
  for (const auto& pd : dparts) v *= pd;
  if (e >= 0)
    u = u.mul_xpow(e);
  else
    v = v.mul_xpow(-e);
  check_cancel(cancel);
  // With the decomposition r = p(qx) f / (p(x) g) exact by construction
  // (every division above is remainder-checked), R(qx) r(x) - R(x) = 1
  // reduces to the key equation
  //   f(x) s(qx) - g(x/q) s(x) = p(x),  s(x) = x^e w(x).
  // Cross-multiplied by x^{-e} when e < 0 it is a polynomial identity of
  // known degree, so checking it at enough points proves it. Contents are
  // split off first: evaluation of denominator-free coefficients at integer
  // points never reduces a fraction.
  PolyX fp = form.f;
  PolyX gq = form.g.subst_scale(ParamElem::q_power(-1));
  PolyX w = sol->poly;
  PolyX pp = form.p;
  auto primitive = [](PolyX& f) {
    ParamElem c = polyx_content(f);
    f = f.mul_scalar(c.inverse());
    return c;
  };
  ParamElem cf = primitive(fp), cg = primitive(gq);
  ParamElem cw = primitive(w), cp = primitive(pp);
  int e0 = sol->shift;
  int epos = std::max(e0, 0), eneg = std::max(-e0, 0);
  ParamElem k1 = ParamElem::q_power(e0) * cf * cw;
  ParamElem k2 = cg * cw;
  ParamElem q = ParamElem::variable(sym_q());
  int D = std::max({fp.degree() + w.degree() + epos,
                    gq.degree() + w.degree() + epos, pp.degree() + eneg});
  for (int i = 0; i <= D; ++i) {
    check_cancel(cancel);
    ParamElem x0(static_cast<long>(i) + 1);
    ParamElem qx0 = q * x0;
    ParamElem xpos = x0.pow(epos);
    ParamElem lhs = (k1 * fp.eval_param(x0) * w.eval_param(qx0) -
                     k2 * gq.eval_param(x0) * w.eval_param(x0)) *
                    xpos;
    if (lhs != cp * pp.eval_param(x0) * x0.pow(eneg))
      fail(ErrorKind::Internal, "certificate failed the telescoping identity");
  }
  return {GosperCertificate{RatX(std::move(u), std::move(v), false)}, ""};
}

}  // namespace qtel
