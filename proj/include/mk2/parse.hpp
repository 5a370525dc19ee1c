#pragma once

#include "mk2/symbols.hpp"

namespace mk2 {

/// Ring-spec grammar: zmod:<m> | fp:<p> | q |
/// ratfunc:<p>:<v1,...>@invert(<e1,...>) | laurent(<base>,prec=<k>)
Ring parse_ring_spec(const std::string& spec);

/// Conventional arithmetic expression over the ring's variables (integers,
/// + - * / ^, parentheses; `t` names the series variable of Laurent rings).
Element parse_element(const Ring& r, const std::string& expr);

/// Symbol expressions: integer combinations of {a,b} and <a,b>.
SymbolExpr parse_symbol_expr(const Ring& r, const std::string& expr);

}  // namespace mk2
