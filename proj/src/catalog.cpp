#include "qtel/catalog.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qtel {

namespace {

std::string entry_key(const InfProductEntry& e) {
  return std::to_string(e.modulus) + "|" + e.arg.to_string();
}

}  // namespace

InfProduct::InfProduct(std::vector<InfProductEntry> entries)
    : entries_(std::move(entries)) {
  canonicalize();
}

void InfProduct::canonicalize() {
  std::map<std::string, InfProductEntry> merged;
  for (auto& e : entries_) {
    if (e.exp == 0 || e.arg.is_zero()) continue;  // (0;q^m)_inf == 1
    if (e.modulus <= 0)
      fail(ErrorKind::Internal, "infinite product modulus must be positive");
    auto [it, fresh] = merged.emplace(entry_key(e), e);
    if (!fresh) it->second.exp += e.exp;
  }
  entries_.clear();
  for (auto& [key, e] : merged)
    if (e.exp != 0) entries_.push_back(std::move(e));
}

InfProduct InfProduct::of(const std::vector<ParamElem>& args, int modulus,
                          int exp) {
  std::vector<InfProductEntry> entries;
  entries.reserve(args.size());
  for (const auto& a : args) entries.push_back({a, modulus, exp});
  return InfProduct(std::move(entries));
}

InfProduct InfProduct::operator*(const InfProduct& o) const {
  std::vector<InfProductEntry> entries = entries_;
  entries.insert(entries.end(), o.entries_.begin(), o.entries_.end());
  return InfProduct(std::move(entries));
}

InfProduct InfProduct::inverse() const {
  std::vector<InfProductEntry> entries = entries_;
  for (auto& e : entries) e.exp = -e.exp;
  return InfProduct(std::move(entries));
}

InfProduct InfProduct::subst_params(
    const std::map<SymId, ParamElem>& map) const {
  std::vector<InfProductEntry> entries = entries_;
  for (auto& e : entries) e.arg = e.arg.subst(map);
  return InfProduct(std::move(entries));
}

std::string InfProduct::to_string() const {
  if (entries_.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& e : entries_) {
    if (!first) out << " * ";
    first = false;
    out << "(" << e.arg.to_string() << "; q";
    if (e.modulus != 1) out << "^" << e.modulus;
    out << ")_inf";
    if (e.exp != 1) out << "^" << e.exp;
  }
  return out.str();
}

ParamElem infprod_ratio(const InfProduct& num, const InfProduct& den) {
  std::vector<InfProductEntry> rest = num.over(den).entries();
  ParamElem out(1);
  while (!rest.empty()) {
    const ParamElem base = rest.front().arg;
    const int m = rest.front().modulus;
    std::vector<std::pair<int, int>> cls;  // (shift in steps of q^m, exp)
    std::vector<InfProductEntry> keep;
    for (auto& e : rest) {
      std::optional<int> t;
      if (e.modulus == m) {
        auto p = (e.arg / base).as_q_power();
        if (p && *p % m == 0) t = *p / m;
      }
      if (t)
        cls.emplace_back(*t, e.exp);
      else
        keep.push_back(std::move(e));
    }
    rest = std::move(keep);
    std::sort(cls.begin(), cls.end());
    int total = 0;
    for (auto& [t, e] : cls) total += e;
    if (total != 0)
      fail(ErrorKind::MultiplierNotFinite,
           "infinite-product exponents do not cancel for argument class of " +
               base.to_string());
    int partial = 0;
    for (size_t i = 0; i + 1 < cls.size(); ++i) {
      partial += cls[i].second;
      if (partial == 0) continue;
      for (int s = cls[i].first; s < cls[i + 1].first; ++s) {
        ParamElem factor = ParamElem(1) - base * ParamElem::q_power(m * s);
        out *= factor.pow(partial);
      }
    }
  }
  return out;
}

QTerm build_summand(const SeriesSpec& spec) {
  std::vector<QFactorial> factors;
  for (const auto& u : spec.upper) factors.push_back({u, 1});
  for (const auto& l : spec.lower) factors.push_back({l, -1});
  int excess = static_cast<int>(spec.lower.size()) -
               static_cast<int>(spec.upper.size());
  Support support = Support::Bilateral;
  if (spec.kind == SeriesSpec::Kind::Phi) {
    factors.push_back({ParamElem::variable(sym_q()), -1});
    excess += 1;
    support = Support::Unilateral;
  }
  // The [(-1)^k q^C(k,2)]^excess convention: sign into geom, q^C(k,2) into
  // qquad.
  ParamElem geom = spec.argument;
  if (excess % 2 != 0) geom = -geom;
  return QTerm(ParamElem(1), geom, excess, RatX(1), std::move(factors),
               support);
}

const IterationSpec& IdentityRecord::iteration(
    const std::string& iter_name) const {
  for (const auto& it : iterations)
    if (it.name == iter_name) return it;
  fail(ErrorKind::NotFound,
       "identity '" + name + "' has no iteration '" + iter_name + "'");
}

const PairOracle* IdentityRecord::oracle(const std::string& iter_name) const {
  for (const auto& o : oracles)
    if (o.iteration == iter_name) return &o;
  return nullptr;
}

QTerm IdentityRecord::effective_summand(const IterationSpec& it) const {
  return it.use_symmetrized ? summand.symmetrize() : summand;
}

ParamElem iteration_multiplier(const IdentityRecord& record,
                               const std::map<SymId, ParamElem>& subst) {
  return infprod_ratio(record.closed_form,
                       record.closed_form.subst_params(subst));
}

void validate_record(const IdentityRecord& record) {
  if (record.name.empty())
    fail(ErrorKind::Internal, "identity record must be named");
  if (record.summand.is_zero())
    fail(ErrorKind::Internal, "identity summand must be nonzero");
  if (record.summand.support() != record.support)
    fail(ErrorKind::Internal, "summand support disagrees with the record");
  for (const auto& it : record.iterations) {
    ParamElem mult = iteration_multiplier(record, it.substitution);
    if (it.expected_multiplier && mult != *it.expected_multiplier)
      fail(ErrorKind::Internal, "iteration '" + it.name +
                                    "' multiplier disagrees with the "
                                    "recorded expectation");
  }
  for (const auto& o : record.oracles) {
    const IterationSpec& it = record.iteration(o.iteration);
    QTerm F = record.effective_summand(it);
    ParamElem mult = iteration_multiplier(record, it.substitution);
    QTerm G = F.substitute_params(it.substitution).scale(mult);
    if (!o.g.combine_similar(o.h).equals(F))
      fail(ErrorKind::Internal,
           "oracle pair for '" + o.iteration + "' violates g - h = F");
    if (!o.g.combine_similar(o.h.shift()).equals(G))
      fail(ErrorKind::Internal,
           "oracle pair for '" + o.iteration + "' violates g - h(k+1) = G");
    if (o.A.has_value() != o.B.has_value())
      fail(ErrorKind::Internal, "oracle A/B must come as a pair");
    if (o.A) {
      // A*B must reproduce g up to a k-independent constant (the pair is
      // only determined up to normalization), and A*B(k-1) must reproduce h
      // with the same constant.
      QTerm ab = o.A->mul_term(*o.B);
      auto rho = ab.similar_ratio(o.g);
      if (!rho || !rho->is_constant())
        fail(ErrorKind::Internal,
             "oracle pair for '" + o.iteration + "' violates g ~ A*B");
      ParamElem c = rho->constant_value();
      if (c.is_zero() || !ab.equals(o.g.scale(c)))
        fail(ErrorKind::Internal,
             "oracle pair for '" + o.iteration + "' violates g ~ A*B");
      if (!o.A->mul_term(o.B->shift_back()).equals(o.h.scale(c)))
        fail(ErrorKind::Internal,
             "oracle pair for '" + o.iteration + "' violates h ~ A*B(k-1)");
    }
  }
}

Catalog::Catalog(const Catalog& o) {
  std::shared_lock lock(o.mu_);
  records_ = o.records_;
}

Catalog& Catalog::operator=(const Catalog& o) {
  if (this == &o) return *this;
  std::shared_lock theirs(o.mu_);
  std::vector<IdentityRecord> copy = o.records_;
  theirs.unlock();
  std::unique_lock mine(mu_);
  records_ = std::move(copy);
  return *this;
}

const IdentityRecord& Catalog::lookup(const std::string& name) const {
  std::shared_lock lock(mu_);
  for (const auto& r : records_)
    if (r.name == name) return r;
  fail(ErrorKind::NotFound, "no catalog entry named '" + name + "'");
}

std::vector<std::string> Catalog::names() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.name);
  return out;
}

void Catalog::register_record(IdentityRecord record) {
  validate_record(record);
  std::unique_lock lock(mu_);
  for (const auto& r : records_)
    if (r.name == record.name)
      fail(ErrorKind::DuplicateName,
           "catalog entry '" + record.name + "' already exists");
  records_.push_back(std::move(record));
}

void Catalog::add_unchecked(IdentityRecord record) {
  records_.push_back(std::move(record));
}

namespace {

struct Builder {
  ParamElem q = ParamElem::variable(sym_q());
  ParamElem a = ParamElem::variable(sym("a"));
  ParamElem b = ParamElem::variable(sym("b"));
  ParamElem c = ParamElem::variable(sym("c"));
  ParamElem d = ParamElem::variable(sym("d"));
  ParamElem e = ParamElem::variable(sym("e"));
  ParamElem z = ParamElem::variable(sym("z"));
  ParamElem ra = ParamElem::variable(sym("ra"));  // ra^2 stands for a
  ParamElem one{1};
  RatX X = RatX::x();

  RatX K(const ParamElem& v) const { return RatX(PolyX(v)); }
  RatX K(long v) const { return RatX(v); }

  static QTerm term(ParamElem coeff, ParamElem geom, int qquad, RatX pre,
                    std::vector<QFactorial> factors,
                    Support support = Support::Bilateral) {
    return QTerm(std::move(coeff), std::move(geom), qquad, std::move(pre),
                 std::move(factors), support);
  }

  std::map<SymId, Rat> point(
      std::initializer_list<std::pair<const char*, Rat>> vals) const {
    std::map<SymId, Rat> out;
    for (const auto& [n, v] : vals) out[sym(n)] = v;
    return out;
  }

  IdentityRecord ramanujan_1psi1() const {
    IdentityRecord rec;
    rec.name = "1psi1";
    rec.summand = term(one, z, 0, K(1), {{a, 1}, {b, -1}});
    rec.support = Support::Bilateral;
    rec.closed_form =
        InfProduct::of({q, b / a, a * z, q / (a * z)})
            .over(InfProduct::of({b, q / a, z, b / (a * z)}));
    rec.convergence = {z, b / (a * z)};
    IterationSpec bq;
    bq.name = "b_up";
    bq.substitution = {{sym("b"), b * q}};
    bq.expected_multiplier =
        (one - b / a) / ((one - b) * (one - b / (a * z)));
    rec.iterations.push_back(bq);
    PairOracle o;
    o.iteration = "b_up";
    o.g = rec.summand.scale(a * z / (a * z - b));
    o.h = rec.summand.scale(b / (a * z - b));
    o.A = term(a * z / (a * z - b), b / a, 0, K(1), {{a, 1}, {b, -1}});
    o.B = term(one, a * z / b, 0, K(1), {});
    rec.oracles.push_back(std::move(o));
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment =
        point({{"a", Rat(2)}, {"b", Rat(1, 4)}, {"z", Rat(1, 2)}});
    return rec;
  }

  IdentityRecord wellpoised_2psi2() const {
    IdentityRecord rec;
    rec.name = "2psi2";
    rec.summand = term(one, -(a * q) / (b * c), 0, K(1),
                       {{b, 1}, {c, 1}, {a * q / b, -1}, {a * q / c, -1}});
    rec.support = Support::Bilateral;
    InfProduct num =
        InfProduct::of({a * q / (b * c)}) *
        InfProduct::of({a * q * q / (b * b), a * q * q / (c * c),
                        ParamElem::q_power(2), a * q, q / a},
                       2);
    InfProduct den = InfProduct::of(
        {a * q / b, a * q / c, q / b, q / c, -(a * q) / (b * c)});
    rec.closed_form = num.over(den);
    rec.convergence = {a * q / (b * c)};
    ParamElem m1 = (one - a * q / (b * c)) * (one - a * q * q / (b * b)) /
                   ((one + a * q / (b * c)) * (one - q / b) *
                    (one - a * q / b));
    IterationSpec bdown;
    bdown.name = "b_down";
    bdown.substitution = {{sym("b"), b / q}};
    bdown.expected_multiplier = m1;
    rec.iterations.push_back(bdown);
    IterationSpec bcdown;
    bcdown.name = "bc_down";
    bcdown.substitution = {{sym("b"), b / q}, {sym("c"), c / q}};
    bcdown.expected_multiplier =
        (one - a * q / (b * c)) * (one - a * q * q / (b * c)) *
        (one - a * q * q / (b * b)) * (one - a * q * q / (c * c)) /
        ((one + a * q / (b * c)) * (one + a * q * q / (b * c)) *
         (one - q / b) * (one - q / c) * (one - a * q / b) *
         (one - a * q / c));
    rec.iterations.push_back(bcdown);
    PairOracle o;
    o.iteration = "b_down";
    RatX denom = (K(b) * X - K(q)) * K(a * q + b * c);
    o.g = rec.summand.mul_rational((K(b * b * c) * X - K(a * q * q)) / denom);
    o.h = rec.summand.mul_rational((K(c) - K(a) * X) * K(b * q) / denom);
    o.A = term(one / (a * q + b * c), one, 0,
               (K(b * b * c) * X - K(a * q * q)) / (K(b) * X - K(q)),
               {{b, 1}, {c, 1}, {a * q / b, -1}, {b * b * c / (a * q), -1}});
    o.B = term(one, -(a * q) / (b * c), 0, K(1),
               {{b * b * c / (a * q), 1}, {a * q / c, -1}});
    rec.oracles.push_back(std::move(o));
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment =
        point({{"a", Rat(5, 3)}, {"b", Rat(3)}, {"c", Rat(7)}});
    return rec;
  }

  IdentityRecord bailey_3psi3() const {
    IdentityRecord rec;
    rec.name = "3psi3";
    rec.summand = term(one, q / (b * c * d), 0, K(1),
                       {{b, 1}, {c, 1}, {d, 1}, {q / b, -1}, {q / c, -1},
                        {q / d, -1}});
    rec.support = Support::Bilateral;
    rec.closed_form =
        InfProduct::of({q, q / (b * c), q / (b * d), q / (c * d)})
            .over(InfProduct::of({q / b, q / c, q / d, q / (b * c * d)}));
    rec.convergence = {q / (b * c * d)};
    ParamElem m1 = (one - q / (b * d)) * (one - q / (c * d)) /
                   ((one - q / d) * (one - q / (b * c * d)));
    IterationSpec naive;
    naive.name = "d_down_naive";
    naive.substitution = {{sym("d"), d / q}};
    naive.expected_multiplier = m1;
    naive.notes = "raw summand; the key equation has no solution";
    rec.iterations.push_back(naive);
    IterationSpec ddown;
    ddown.name = "d_down";
    ddown.substitution = {{sym("d"), d / q}};
    ddown.expected_multiplier = m1;
    ddown.use_symmetrized = true;
    rec.iterations.push_back(ddown);
    IterationSpec bcd;
    bcd.name = "bcd_down";
    bcd.substitution =
        {{sym("b"), b / q}, {sym("c"), c / q}, {sym("d"), d / q}};
    ParamElem q2 = ParamElem::q_power(2), q3 = ParamElem::q_power(3);
    bcd.expected_multiplier =
        (one - q / (b * c)) * (one - q2 / (b * c)) * (one - q / (b * d)) *
        (one - q2 / (b * d)) * (one - q / (c * d)) * (one - q2 / (c * d)) /
        ((one - q / b) * (one - q / c) * (one - q / d) *
         (one - q / (b * c * d)) * (one - q2 / (b * c * d)) *
         (one - q3 / (b * c * d)));
    rec.iterations.push_back(bcd);
    PairOracle o;
    o.iteration = "d_down";
    QTerm Fsym = rec.summand.symmetrize();
    RatX gnum = K(q * d * (b + c + one + b * c)) * X -
                K(b * c * d * d) * X - K(q * q) -
                K(b * c * d * d) * X * X - K(q * q) * X;
    o.g = Fsym.mul_rational(
        gnum / ((K(1) + X) * K(b * c * d - q) * (K(q) - K(d) * X)));
    o.h = Fsym.mul_rational(K(d) * (K(b) - X) * (K(c) - X) /
                            ((K(1) + X) * K(q - b * c * d) *
                             (K(1) - K(d / q) * X)));
    rec.oracles.push_back(std::move(o));
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment =
        point({{"b", Rat(3)}, {"c", Rat(5)}, {"d", Rat(7)}});
    return rec;
  }

  IdentityRecord dixon_4psi4() const {
    IdentityRecord rec;
    rec.name = "4psi4";
    ParamElem A2 = ra * ra;  // the parameter a
    rec.summand = term(one, q * ra.pow(3) / (b * c * d), 0,
                       (K(1) + K(ra) * X) / K(one + ra),
                       {{b, 1}, {c, 1}, {d, 1}, {A2 * q / b, -1},
                        {A2 * q / c, -1}, {A2 * q / d, -1}});
    rec.support = Support::Bilateral;
    InfProduct num = InfProduct::of(
        {A2 * q, q / A2, A2 * q / (b * c), A2 * q / (b * d),
         A2 * q / (c * d), q * ra / b, q * ra / c, q * ra / d, q});
    InfProduct den = InfProduct::of(
        {A2 * q / b, A2 * q / c, A2 * q / d, q / b, q / c, q / d, q * ra,
         q / ra, q * ra.pow(3) / (b * c * d)});
    rec.closed_form = num.over(den);
    rec.convergence = {q * ra.pow(3) / (b * c * d)};
    IterationSpec ddown;
    ddown.name = "d_down";
    ddown.substitution = {{sym("d"), d / q}};
    ddown.expected_multiplier =
        (one - A2 * q / (b * d)) * (one - A2 * q / (c * d)) *
        (one - q * ra / d) /
        ((one - A2 * q / d) * (one - q / d) *
         (one - q * ra.pow(3) / (b * c * d)));
    rec.iterations.push_back(ddown);
    IterationSpec bcd;
    bcd.name = "bcd_down";
    bcd.substitution =
        {{sym("b"), b / q}, {sym("c"), c / q}, {sym("d"), d / q}};
    ParamElem q2 = ParamElem::q_power(2), q3 = ParamElem::q_power(3);
    bcd.expected_multiplier =
        (one - A2 * q / (b * c)) * (one - A2 * q2 / (b * c)) *
        (one - A2 * q / (b * d)) * (one - A2 * q2 / (b * d)) *
        (one - A2 * q / (c * d)) * (one - A2 * q2 / (c * d)) *
        (one - q * ra / b) * (one - q * ra / c) * (one - q * ra / d) /
        ((one - A2 * q / b) * (one - A2 * q / c) * (one - A2 * q / d) *
         (one - q / b) * (one - q / c) * (one - q / d) *
         (one - q * ra.pow(3) / (b * c * d)) *
         (one - q2 * ra.pow(3) / (b * c * d)) *
         (one - q3 * ra.pow(3) / (b * c * d)));
    rec.iterations.push_back(bcd);
    PairOracle o;
    o.iteration = "d_down";
    RatX gnum = K(-(A2 * b * d * q) - A2 * c * d * q - b * c * d * ra * q -
                  d * ra.pow(3) * q + A2 * A2 * q * q + b * c * d * d) *
                    X +
                K(q * q * ra.pow(3)) + K(b * c * d * d * ra) * X * X;
    RatX gden = (K(d) * X - K(q)) * (K(1) + K(ra) * X) *
                K(b * c * d - ra.pow(3) * q);
    o.g = rec.summand.mul_rational(gnum / gden);
    o.h = rec.summand.mul_rational(
        K(d) * (K(A2) * X - K(c)) * (K(A2) * X - K(b)) /
        ((K(d / q) * X - K(1)) * (K(1) + K(ra) * X) *
         K(b * c * d - q * ra.pow(3))));
    rec.oracles.push_back(std::move(o));
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment = point(
        {{"ra", Rat(3, 2)}, {"b", Rat(3)}, {"c", Rat(5)}, {"d", Rat(7)}});
    return rec;
  }

  IdentityRecord bailey_6psi6() const {
    IdentityRecord rec;
    rec.name = "6psi6";
    rec.summand =
        term(one, q * a * a / (b * c * d * e), 0,
             (K(1) - K(a) * X * X) / K(one - a),
             {{b, 1}, {c, 1}, {d, 1}, {e, 1}, {a * q / b, -1},
              {a * q / c, -1}, {a * q / d, -1}, {a * q / e, -1}});
    rec.support = Support::Bilateral;
    InfProduct num = InfProduct::of(
        {q, a * q, q / a, a * q / (b * c), a * q / (b * d), a * q / (b * e),
         a * q / (c * d), a * q / (c * e), a * q / (d * e)});
    InfProduct den = InfProduct::of(
        {a * q / b, a * q / c, a * q / d, a * q / e, q / b, q / c, q / d,
         q / e, q * a * a / (b * c * d * e)});
    rec.closed_form = num.over(den);
    rec.convergence = {q * a * a / (b * c * d * e)};
    IterationSpec chu;
    chu.name = "chu";
    chu.substitution = {{sym("a"), a * q}, {sym("e"), e * q}};
    chu.expected_multiplier =
        a * (one - e) * (one - a * q) * (one - a * q / (b * c)) *
        (one - a * q / (b * d)) * (one - a * q / (c * d)) /
        (e * (one - a) * (one - a * q / b) * (one - a * q / c) *
         (one - a * q / d) * (one - a * a * q / (b * c * d * e)));
    rec.iterations.push_back(chu);
    IterationSpec edown;
    edown.name = "e_down";
    edown.substitution = {{sym("e"), e / q}};
    edown.expected_multiplier =
        (one - a * q / (b * e)) * (one - a * q / (c * e)) *
        (one - a * q / (d * e)) /
        ((one - a * q / e) * (one - q / e) *
         (one - a * a * q / (b * c * d * e)));
    rec.iterations.push_back(edown);
    IterationSpec all;
    all.name = "bcde_down";
    all.substitution = {{sym("b"), b / q},
                        {sym("c"), c / q},
                        {sym("d"), d / q},
                        {sym("e"), e / q}};
    ParamElem q2 = ParamElem::q_power(2), q3 = ParamElem::q_power(3),
              q4 = ParamElem::q_power(4);
    ParamElem bcde = b * c * d * e;
    all.expected_multiplier =
        (one - a * q / (b * c)) * (one - a * q2 / (b * c)) *
        (one - a * q / (b * d)) * (one - a * q2 / (b * d)) *
        (one - a * q / (b * e)) * (one - a * q2 / (b * e)) *
        (one - a * q / (c * d)) * (one - a * q2 / (c * d)) *
        (one - a * q / (c * e)) * (one - a * q2 / (c * e)) *
        (one - a * q / (d * e)) * (one - a * q2 / (d * e)) /
        ((one - a * q / b) * (one - a * q / c) * (one - a * q / d) *
         (one - a * q / e) * (one - q / b) * (one - q / c) * (one - q / d) *
         (one - q / e) * (one - a * a * q / bcde) *
         (one - a * a * q2 / bcde) * (one - a * a * q3 / bcde) *
         (one - a * a * q4 / bcde));
    rec.iterations.push_back(all);

    ParamElem bcd = b * c * d;
    PairOracle chuo;
    chuo.iteration = "chu";
    RatX chuden = K(bcde - a * a * q) * (K(1) - K(a) * X * X);
    chuo.g = rec.summand.mul_rational(
        K(a) * (K(bcd) * X - K(a * q)) * (K(1) - K(e) * X) / chuden);
    chuo.h = rec.summand.mul_rational((K(e) - K(a) * X) *
                                      (K(bcd) - K(a * a * q) * X) / -chuden);
    chuo.A = term(one, one, 0, K(1),
                  {{b, 1}, {c, 1}, {d, 1}, {q * q * a * a / bcd, 1},
                   {a * q / b, -1}, {a * q / c, -1}, {a * q / d, -1},
                   {bcd / (a * q), -1}});
    chuo.B = term(one, q * a * a / bcde, 0, K(1),
                  {{q * e, 1}, {bcd / a, 1}, {a * q / e, -1},
                   {q * q * a * a / bcd, -1}});
    rec.oracles.push_back(std::move(chuo));

    PairOracle eo;
    eo.iteration = "e_down";
    RatX eden = K(bcde - q * a * a) * (K(e) * X - K(q)) *
                (K(a) * X * X - K(1));
    RatX enum_ = K(a * e * q * (b * c + b * d + c * d)) * X -
                 K(a * a * e * q * (b + c + d)) * X * X -
                 K(b * c * d * e * e) * X +
                 K(a * b * c * d * e * e) * X * X * X -
                 K(a * b * c * d * e * q) * X * X - K(a * a * q * q) +
                 K(a * a * e * q) * X + K(a * a * a * q * q) * X * X;
    eo.g = rec.summand.mul_rational(enum_ / eden);
    eo.h = rec.summand.mul_rational(
        K(q * e) * (K(b) - K(a) * X) * (K(c) - K(a) * X) *
        (K(d) - K(a) * X) /
        (K(bcde - q * a * a) * (K(1) - K(a) * X * X) * (K(e) * X - K(q))));
    rec.oracles.push_back(std::move(eo));

    rec.sample_q = Rat(1, 2);
    rec.sample_assignment = point({{"a", Rat(3)},
                                   {"b", Rat(5)},
                                   {"c", Rat(7)},
                                   {"d", Rat(11)},
                                   {"e", Rat(13)}});
    return rec;
  }

  IdentityRecord q_binomial() const {
    IdentityRecord rec;
    rec.name = "qbinomial";
    rec.summand = term(one, z, 0, K(1), {{a, 1}, {q, -1}},
                       Support::Unilateral);
    rec.support = Support::Unilateral;
    rec.closed_form =
        InfProduct::of({a * z}).over(InfProduct::of({z}));
    rec.convergence = {z};
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment = point({{"a", Rat(3)}, {"z", Rat(1, 2)}});
    return rec;
  }

  IdentityRecord jacobi_triple() const {
    IdentityRecord rec;
    rec.name = "jacobi";
    rec.summand = term(one, q * z, 2, K(1), {});
    rec.support = Support::Bilateral;
    rec.closed_form = InfProduct::of(
        {ParamElem::q_power(2), -(q * z), -(q / z)}, 2);
    rec.convergence = {};
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment = point({{"z", Rat(1)}});
    return rec;
  }

  IdentityRecord q_gauss_2phi1() const {
    IdentityRecord rec;
    rec.name = "2phi1";
    rec.summand = term(one, c / (a * b), 0, K(1),
                       {{a, 1}, {b, 1}, {q, -1}, {c, -1}},
                       Support::Unilateral);
    rec.support = Support::Unilateral;
    rec.closed_form = InfProduct::of({c / a, c / b})
                          .over(InfProduct::of({c, c / (a * b)}));
    rec.convergence = {c / (a * b)};
    IterationSpec cup;
    cup.name = "c_up";
    cup.substitution = {{sym("c"), c * q}};
    cup.expected_multiplier = (one - c / a) * (one - c / b) /
                              ((one - c) * (one - c / (a * b)));
    rec.iterations.push_back(cup);
    PairOracle o;
    o.iteration = "c_up";
    o.g = rec.summand.mul_rational((K(c) - K(a * b) * X) / K(c - a * b));
    o.h = rec.summand.mul_rational(K(a * b) * (K(1) - X) / K(c - a * b));
    o.A = term(one, one, 0,
               (K(1) - K(a * b / c) * X) / K(one - a * b / c),
               {{a, 1}, {b, 1}, {c, -1}, {a * b * q / c, -1}},
               Support::Unilateral);
    o.B = term(one, c / (a * b), 0, K(1),
               {{a * b * q / c, 1}, {q, -1}}, Support::Unilateral);
    rec.oracles.push_back(std::move(o));
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment =
        point({{"a", Rat(3)}, {"b", Rat(5)}, {"c", Rat(3, 4)}});
    return rec;
  }

  IdentityRecord rogers_6phi5() const {
    IdentityRecord rec;
    rec.name = "6phi5";
    rec.summand =
        term(one, a * q / (b * c * d), 0,
             (K(1) - K(a) * X * X) / K(one - a),
             {{a, 1}, {b, 1}, {c, 1}, {d, 1}, {q, -1}, {a * q / b, -1},
              {a * q / c, -1}, {a * q / d, -1}},
             Support::Unilateral);
    rec.support = Support::Unilateral;
    rec.closed_form =
        InfProduct::of(
            {a * q, a * q / (b * c), a * q / (b * d), a * q / (c * d)})
            .over(InfProduct::of(
                {a * q / b, a * q / c, a * q / d, a * q / (b * c * d)}));
    rec.convergence = {a * q / (b * c * d)};
    IterationSpec aup;
    aup.name = "a_up";
    aup.substitution = {{sym("a"), a * q}};
    aup.expected_multiplier =
        (one - a * q) * (one - a * q / (c * d)) * (one - a * q / (b * c)) *
        (one - a * q / (b * d)) /
        ((one - a * q / b) * (one - a * q / c) * (one - a * q / d) *
         (one - a * q / (b * c * d)));
    rec.iterations.push_back(aup);
    ParamElem bcd = b * c * d;
    PairOracle o;
    o.iteration = "a_up";
    RatX den = (K(1) - K(a) * X * X) * K(one - a * q / bcd);
    o.g = rec.summand.mul_rational((K(1) - K(a) * X) *
                                   (X - K(a * q / bcd)) / den);
    o.h = rec.summand.mul_rational(
        -((K(1) - X) * (K(1) - K(a * a * q / bcd) * X)) / den);
    o.A = term(one, one, 0, (K(bcd) * X - K(a * q)) / K(bcd - a * q),
               {{b, 1}, {c, 1}, {d, 1}, {a * a * q * q / bcd, 1},
                {a * q / b, -1}, {a * q / c, -1}, {a * q / d, -1},
                {bcd / a, -1}},
               Support::Unilateral);
    o.B = term(one, a * q / bcd, 0, K(1),
               {{a * q, 1}, {bcd / a, 1}, {q, -1},
                {a * a * q * q / bcd, -1}},
               Support::Unilateral);
    rec.oracles.push_back(std::move(o));
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment = point(
        {{"a", Rat(3)}, {"b", Rat(5)}, {"c", Rat(7)}, {"d", Rat(11)}});
    return rec;
  }

  IdentityRecord h_series() const {
    IdentityRecord rec;
    rec.name = "ha";
    rec.summand = term(one, -(q * ra.pow(3)), 3,
                       (K(1) + K(ra) * X) / K(one + ra), {});
    rec.support = Support::Bilateral;
    rec.closed_form =
        InfProduct::of({q, ra * ra * q, q / (ra * ra)})
            .over(InfProduct::of({q * ra, q / ra}));
    rec.convergence = {};
    rec.sample_q = Rat(1, 2);
    rec.sample_assignment = point({{"ra", Rat(3, 2)}});
    return rec;
  }
};

void populate_builtins(Catalog& cat) {
  Builder bld;
  cat.register_record(bld.ramanujan_1psi1());
  cat.register_record(bld.wellpoised_2psi2());
  cat.register_record(bld.bailey_3psi3());
  cat.register_record(bld.dixon_4psi4());
  cat.register_record(bld.bailey_6psi6());
  cat.register_record(bld.q_binomial());
  cat.register_record(bld.jacobi_triple());
  cat.register_record(bld.q_gauss_2phi1());
  cat.register_record(bld.rogers_6phi5());
  cat.register_record(bld.h_series());
}

}  // namespace

const Catalog& Catalog::builtins() {
  static Catalog cat;
  static const bool init = [] {
    populate_builtins(cat);
    return true;
  }();
  (void)init;
  return cat;
}

Catalog Catalog::with_builtins() {
  Catalog out;
  for (const auto& n : builtins().names())
    out.add_unchecked(builtins().lookup(n));
  return out;
}

}  // namespace qtel
