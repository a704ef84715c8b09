#ifndef QTEL_CATALOG_HPP
#define QTEL_CATALOG_HPP

#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "qtel/qterm.hpp"

namespace qtel {

/// One factor (arg; q^modulus)_inf^exp of a formal product of q-infinite
/// products. Signed exponents encode ratios.
struct InfProductEntry {
  ParamElem arg;
  int modulus = 1;
  int exp = 1;
};

class InfProduct {
 public:
  InfProduct() = default;
  explicit InfProduct(std::vector<InfProductEntry> entries);

  /// Convenience: product of (arg; q^modulus)_inf over args.
  static InfProduct of(const std::vector<ParamElem>& args, int modulus = 1,
                       int exp = 1);

  const std::vector<InfProductEntry>& entries() const { return entries_; }
  bool is_one() const { return entries_.empty(); }

  InfProduct operator*(const InfProduct& o) const;
  InfProduct inverse() const;
  /// num/den as a single signed product.
  InfProduct over(const InfProduct& den) const { return *this * den.inverse(); }

  InfProduct subst_params(const std::map<SymId, ParamElem>& map) const;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<InfProductEntry> entries_;
};

/// Reduce num/den to a finite product of (1 - u q^{m i}) factors by
/// telescoping (u;q^m)_inf = (1-u)(u q^m;q^m)_inf; throws MultiplierNotFinite
/// when the exponents do not cancel within each q^m-shift class.
ParamElem infprod_ratio(const InfProduct& num, const InfProduct& den);

/// Declarative rφs / rψs shape.
struct SeriesSpec {
  enum class Kind { Phi, Psi };
  std::vector<ParamElem> upper;
  std::vector<ParamElem> lower;
  ParamElem argument{1};
  Kind kind = Kind::Psi;
};

QTerm build_summand(const SeriesSpec& spec);

struct IterationSpec {
  std::string name;
  std::map<SymId, ParamElem> substitution;
  /// Published multiplier kept as a regression expectation; the working
  /// multiplier is always recomputed from the closed form.
  std::optional<ParamElem> expected_multiplier;
  /// Run the pair synthesis on the symmetrized summand.
  bool use_symmetrized = false;
  std::string notes;
};

/// Published pair attached to an iteration, used as a regression oracle.
struct PairOracle {
  std::string iteration;
  QTerm g, h;
  std::optional<QTerm> A, B;
};

struct IdentityRecord {
  std::string name;
  QTerm summand;
  Support support = Support::Bilateral;
  InfProduct closed_form;  // signed exponents: numerator minus denominator
  std::vector<ParamElem> convergence;  // each constraint reads |expr| < 1
  std::vector<IterationSpec> iterations;
  std::vector<PairOracle> oracles;

  Rat sample_q;
  std::map<SymId, Rat> sample_assignment;

  const IterationSpec& iteration(const std::string& iter_name) const;
  const PairOracle* oracle(const std::string& iter_name) const;
  /// Summand actually fed to pair synthesis for the given iteration.
  QTerm effective_summand(const IterationSpec& it) const;
};

class Catalog {
 public:
  /// The immutable built-in catalog.
  static const Catalog& builtins();
  /// A mutable copy of the built-ins, for user registration.
  static Catalog with_builtins();

  Catalog() = default;
  Catalog(const Catalog& o);
  Catalog& operator=(const Catalog& o);

  const IdentityRecord& lookup(const std::string& name) const;
  std::vector<std::string> names() const;
  /// Validates record invariants (oracle pairs included); DuplicateName if
  /// the name is taken.
  void register_record(IdentityRecord record);

 private:
  void add_unchecked(IdentityRecord record);
  friend Catalog builtin_catalog();

  mutable std::shared_mutex mu_;
  std::vector<IdentityRecord> records_;
};

/// Multiplier of the iteration: closed(params) / closed(substituted params).
ParamElem iteration_multiplier(const IdentityRecord& record,
                               const std::map<SymId, ParamElem>& subst);

/// Structural validation used by Catalog::register_record, exposed for tests:
/// checks oracle pairs against the record's summand and iterations.
void validate_record(const IdentityRecord& record);

}  // namespace qtel

#endif
