#ifndef QTEL_CERTIFICATE_HPP
#define QTEL_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "qtel/pairsynth.hpp"

namespace qtel {

/// Fully checked result of a pair run, ready for serialization. Terms and
/// field elements are stored as canonical surface-syntax strings, so a
/// certificate is self-describing and re-parseable.
struct Certificate {
  std::string schema = "qtelescope.cert.v1";
  std::string identity;   // catalog name, or "inline"
  std::string iteration;  // registered iteration name, or "custom"
  Support support = Support::Bilateral;
  std::map<std::string, std::string> substitution;  // sym -> pexpr
  std::string multiplier;                           // pexpr
  std::string F, G, g, h;                           // terms
  std::optional<std::string> A, B;  // Abel pair, when it factors
  std::string abel_note;            // why A/B are absent, when they are

  bool symbolic_ok = false;  // g - h = F and g - h(k+1) = G re-checked
  // Numeric section. The doubles are reports; the underlying residual
  // checks are exact rational arithmetic.
  std::string sample_q;
  std::map<std::string, std::string> sample_point;
  long K = 60;
  long N = 64;
  bool residuals_zero = false;  // exact per-k pair residuals
  double identity_rel_gap = 0;  // truncated sum vs closed form
  double limit_gap = 0;         // tail gap from check_limit_condition
  std::vector<std::string> caveats;  // analytic assumptions
};

/// Assemble a certificate for a synthesized pair, re-running the symbolic
/// and numeric checks it records. Throws (rather than returning a partial
/// certificate) if any check fails.
Certificate make_certificate(const IdentityRecord& record,
                             const IterationRelation& rel,
                             const GosperPair& pair,
                             const std::optional<AbelPair>& abel,
                             const std::string& abel_note,
                             const NumericContext& ctx);

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

/// Re-run every self-contained check a certificate records: parse the
/// terms, verify the defining identities symbolically, the Abel
/// factorization, the exact per-k residuals, and the tail report. Throws on
/// any mismatch; returns the certificate with the check fields refreshed.
Certificate replay_certificate(const Certificate& cert);

/// Paper-style LaTeX rendering of the pair (cosmetic only).
std::string certificate_to_latex(const Certificate& cert);
std::string term_to_latex(const QTerm& t);

/// Catalog records as JSON, for `catalog export` and user catalog files.
std::string catalog_record_to_json(const IdentityRecord& record);
IdentityRecord catalog_record_from_json(const std::string& text);

/// Load every record from a colon-separated list of JSON files (each file
/// holds one record or an array of records) into the catalog. Records are
/// validated on registration.
void load_catalog_files(Catalog& catalog, const std::string& paths);

}  // namespace qtel

#endif
