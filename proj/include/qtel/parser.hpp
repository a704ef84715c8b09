#ifndef QTEL_PARSER_HPP
#define QTEL_PARSER_HPP

#include <map>
#include <string>

#include "qtel/qterm.hpp"

namespace qtel {

/// How unseen symbol names are treated. By default they raise UnknownSymbol,
/// so a typo cannot silently mint a new parameter.
struct ParseOptions {
  bool declare_new = false;
};

/// Rational expression over the declared parameters (the variable x is not
/// allowed). Grammar: +, -, *, / with the usual precedence, ^ with integer
/// exponents, parentheses, symbols [a-z][a-z0-9_]*, integer literals
/// (rationals are written as quotients "p/q"). The symbol q is the base.
ParamElem parse_param(const std::string& src, const ParseOptions& opts = {});

/// Rational expression over the parameters and the term variable x.
RatX parse_ratx(const std::string& src, const ParseOptions& opts = {});

/// Term in the surface grammar
///   term := atom ("*" atom)*
///   atom := "poch(" pexpr ")" ["^" sint] | "geom(" pexpr ")"
///         | "qquad(" sint ")" | "pre(" rexpr ")" | "const(" pexpr ")"
/// Errors carry line/column positions.
QTerm parse_term(const std::string& src, Support support = Support::Bilateral,
                 const ParseOptions& opts = {});

/// Comma-separated assignments "sym->pexpr". The reserved symbols q and x
/// cannot be assigned.
std::map<SymId, ParamElem> parse_substitution(const std::string& src,
                                              const ParseOptions& opts = {});

}  // namespace qtel

#endif
