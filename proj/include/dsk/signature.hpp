/**
 * signature.hpp — declarations with determining sequences (hidden
 * arguments), signature consistency, indexing, and the data side of
 * inductive construction.  The judgemental side of extend() lives in
 * checker.hpp, which this header forward-declares.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dsk/syntax.hpp"

namespace dsk {

enum class DeclKind { Type, Fun, Pred };

/// A declaration over a context, with a determining sequence ī (1-based,
/// strictly increasing positions into the context).  The positions in ī are
/// the explicitly written arguments; all other positions are hidden.
struct Declaration {
  DeclKind kind;
  Name symbol;
  Context ctx;
  std::vector<std::size_t> det;   // 1-based
  std::optional<Type> ret;        // FunDecl only

  /// Standard form: ī = (1, ..., |ctx|), i.e. no hidden arguments.
  bool standard_form() const {
    if (det.size() != ctx.size()) return false;
    for (std::size_t i = 0; i < det.size(); ++i)
      if (det[i] != i + 1) return false;
    return true;
  }
};

/// ī ∈ DS(Γ): strictly increasing positions covering TV(Γ).
inline void validate_determining_seq(const Context& ctx, const std::vector<std::size_t>& det) {
  std::size_t prev = 0;
  for (std::size_t i = 0; i < det.size(); ++i) {
    if (det[i] < 1 || det[i] > ctx.size())
      throw CheckError("det[" + std::to_string(i) + "]",
                       "position " + std::to_string(det[i]) + " out of range for context of length " +
                           std::to_string(ctx.size()));
    if (det[i] <= prev)
      throw CheckError("det[" + std::to_string(i) + "]",
                       "determining sequence not strictly increasing");
    prev = det[i];
  }
  NameSet covered;
  for (std::size_t p : det) covered.insert(ctx[p - 1].var);
  for (const auto& x : top_vars(ctx))
    if (!covered.count(x))
      throw CheckError("det", "top-most variable '" + x + "' not covered by the determining sequence");
}

/// A consistent, indexed signature.  `decls` doubles as the build order:
/// signatures constructed through extend() are inductive by construction,
/// and loaded signatures are revalidated by replaying `decls` in order.
struct Signature {
  VariableSystem vars;
  std::vector<Declaration> decls;
  std::map<Name, std::size_t> index; // symbol -> position in decls

  const Declaration* find(const Name& s) const {
    auto it = index.find(s);
    return it == index.end() ? nullptr : &decls[it->second];
  }
  const Declaration& at(const Name& s) const {
    const Declaration* d = find(s);
    if (!d) throw CheckError("", "undeclared symbol: " + s);
    return *d;
  }

  bool standard_form() const {
    for (const auto& d : decls)
      if (!d.standard_form()) return false;
    return true;
  }

  SymbolSystem symbols() const {
    SymbolSystem sys;
    sys.vars = vars;
    for (const auto& d : decls) {
      switch (d.kind) {
        case DeclKind::Type: sys.type_symbols.insert(d.symbol); break;
        case DeclKind::Fun: sys.fun_symbols.insert(d.symbol); break;
        case DeclKind::Pred: sys.pred_symbols.insert(d.symbol); break;
      }
    }
    return sys;
  }
};

inline Signature empty_signature(VarFlavor flavor = VarFlavor::Unrestricted) {
  Signature s;
  s.vars.flavor = flavor;
  return s;
}

// Implemented in checker.hpp (extension must check the declaration's context
// and return type against the prefix signature).
Signature extend(const Signature& sig, const Declaration& d);

} // namespace dsk
