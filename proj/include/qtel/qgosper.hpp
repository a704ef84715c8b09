#ifndef QTEL_QGOSPER_HPP
#define QTEL_QGOSPER_HPP

#include <atomic>
#include <optional>
#include <set>
#include <string>

#include "qtel/polyx.hpp"

namespace qtel {

/// Multiplicative decomposition r(x) = (p(q*x)/p(x)) * (f(x)/g(x)) with
/// gcd(f(x), g(q^j * x)) constant for every j >= 0.
struct QGPForm {
  PolyX p{1};
  PolyX f{1};
  PolyX g{1};
  /// The extracted factors whose product is p (up to the monic scaling),
  /// kept so later cancellations against p can stay factor-sized.
  std::vector<PolyX> p_parts;
  /// False when some factor resisted structural root analysis, so the
  /// bounded gcd scan used for the dispersion set cannot be certified
  /// exhaustive.
  bool dispersion_complete = true;
};

struct DispersionResult {
  std::set<int> shifts;
  bool complete = true;
};

/// How hard to work for a certified-complete dispersion set when a factor
/// resists structural root analysis. Fast caps the direct scan and marks the
/// result incomplete; Certify additionally derives a proven scan bound from
/// a resultant, which can be expensive.
enum class DispersionEffort { Fast, Certify };

/// All j >= 0 with deg gcd(f(x), g(q^j * x)) > 0. Structural when both
/// polynomials split into monomial-rooted linear factors, otherwise a
/// bounded direct scan (see DispersionEffort).
DispersionResult dispersion_shifts(
    const PolyX& f, const PolyX& g,
    DispersionEffort effort = DispersionEffort::Certify);

/// As above, but throws DispersionUndetermined if the result cannot be
/// certified complete.
std::set<int> dispersion_set(const PolyX& f, const PolyX& g);

QGPForm qgp_decompose(const RatX& r,
                      const std::atomic<bool>* cancel = nullptr,
                      DispersionEffort effort = DispersionEffort::Certify);
/// Factored variant: extraction runs factor by factor, so the gcds stay
/// small. Numerator parts must be coprime to denominator parts.
QGPForm qgp_decompose(const FactoredRatX& r,
                      const std::atomic<bool>* cancel = nullptr,
                      DispersionEffort effort = DispersionEffort::Certify);

/// Laurent solution s(x) = x^shift * poly(x) of
///   f(x) s(q*x) - g(x/q) s(x) = p(x).
struct LaurentPoly {
  int shift = 0;
  PolyX poly;
};

std::optional<LaurentPoly> solve_key_equation(const QGPForm& form);

struct GosperCertificate {
  RatX R;  // R(q*x) * r(x) - R(x) == 1
};

struct GosperOutcome {
  std::optional<GosperCertificate> certificate;
  std::string diagnostic;  // set when no certificate exists
  bool summable() const { return certificate.has_value(); }
};

/// Decide q-hypergeometric summability of a term with shift quotient r and,
/// when summable, return the verified certificate R. Throws
/// DispersionUndetermined if no solution was found but the dispersion set
/// could not be certified complete.
GosperOutcome q_gosper(const RatX& r,
                       const std::atomic<bool>* cancel = nullptr);
GosperOutcome q_gosper(const FactoredRatX& r,
                       const std::atomic<bool>* cancel = nullptr);

}  // namespace qtel

#endif
