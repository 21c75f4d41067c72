/**
 * syntax.hpp — symbol systems, variable systems with fresh-variable
 * providers, raw terms / types / contexts, and pure syntactic substitution.
 *
 * Everything in this header is immutable after construction and safe to
 * share across threads.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dsk {

using Name = std::string;
using NameSet = std::set<Name>;

/// Error thrown by validation and checking routines.  `path` locates the
/// offending subterm (e.g. "ctx[2].type.arg[0]").
class CheckError : public std::runtime_error {
 public:
  CheckError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// ---------------------------------------------------------------------------
// Variable systems
// ---------------------------------------------------------------------------

enum class VarFlavor {
  Unrestricted,      // any identifier not in use is fresh
  DeBruijnPositional // exactly one fresh variable: max index + 1
};

/// True iff `s` is the decimal rendering of a positive natural (no leading
/// zeros).  These are the variables of the de Bruijn flavor.
inline bool is_positional_name(const Name& s) {
  if (s.empty() || s[0] == '0') return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::size_t positional_value(const Name& s) {
  return static_cast<std::size_t>(std::stoull(s));
}

inline Name positional_name(std::size_t k) { return std::to_string(k); }

/// The set φ(X) of available fresh variables.  For the unrestricted flavor
/// this set is co-finite, so it is represented as a complement.
struct FreshSet {
  bool complement = false; // true: "everything except `names`"
  NameSet names;

  bool contains(const Name& x) const {
    bool in = names.count(x) != 0;
    return complement ? !in : in;
  }
};

/// A variable system: a discrete identifier universe together with a fresh
/// variable provider (φ, fr).
struct VariableSystem {
  VarFlavor flavor = VarFlavor::Unrestricted;

  bool is_var_name(const Name& x) const {
    if (x.empty()) return false;
    if (flavor == VarFlavor::DeBruijnPositional) return is_positional_name(x);
    return true; // any nonempty identifier
  }

  /// φ(X): the fresh variables available when X is in use.
  FreshSet provide(const NameSet& used) const {
    if (flavor == VarFlavor::DeBruijnPositional) {
      return FreshSet{false, NameSet{pick(used)}};
    }
    return FreshSet{true, used};
  }

  /// fr(X): the chosen fresh variable.
  ///   de Bruijn:     max{1, x1+1, ..., xn+1}
  ///   unrestricted:  shortlex-least lowercase-letter identifier not in X
  Name pick(const NameSet& used) const {
    if (flavor == VarFlavor::DeBruijnPositional) {
      std::size_t m = 1;
      for (const Name& x : used) {
        if (is_positional_name(x)) m = std::max(m, positional_value(x) + 1);
      }
      return positional_name(m);
    }
    // Enumerate a, b, ..., z, aa, ab, ... and take the first unused one.
    for (std::size_t len = 1;; ++len) {
      std::string cand(len, 'a');
      while (true) {
        if (!used.count(cand)) return cand;
        // next candidate of the same length
        std::size_t i = len;
        while (i > 0 && cand[i - 1] == 'z') cand[--i] = 'a';
        if (i == 0) break;
        ++cand[i - 1];
      }
    }
  }

  bool is_fresh_for(const Name& x, const NameSet& used) const {
    return is_var_name(x) && provide(used).contains(x);
  }
};

// ---------------------------------------------------------------------------
// Symbol systems
// ---------------------------------------------------------------------------

/// Function, type, and predicate symbols over a variable system.  The three
/// symbol classes must be pairwise disjoint and disjoint from the variables.
struct SymbolSystem {
  VariableSystem vars;
  NameSet fun_symbols;
  NameSet type_symbols;
  NameSet pred_symbols;

  bool is_fun(const Name& s) const { return fun_symbols.count(s) != 0; }
  bool is_type(const Name& s) const { return type_symbols.count(s) != 0; }
  bool is_pred(const Name& s) const { return pred_symbols.count(s) != 0; }
  bool is_symbol(const Name& s) const { return is_fun(s) || is_type(s) || is_pred(s); }
};

// ---------------------------------------------------------------------------
// Raw syntax
// ---------------------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// A preelement: a variable or a function application.  Function symbols are
/// applied to their *determining* arguments only; hidden arguments live in
/// derivations, never in the syntax.
struct Term {
  bool is_var;
  Name head;
  std::vector<TermPtr> args; // empty when is_var

  static TermPtr var(Name v) {
    return std::make_shared<Term>(Term{true, std::move(v), {}});
  }
  static TermPtr app(Name f, std::vector<TermPtr> as = {}) {
    return std::make_shared<Term>(Term{false, std::move(f), std::move(as)});
  }
};

inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->is_var != b->is_var || a->head != b->head) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_eq(a->args[i], b->args[i])) return false;
  return true;
}

inline bool term_list_eq(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!term_eq(a[i], b[i])) return false;
  return true;
}

/// A pretype: a type symbol applied to its determining arguments.
struct Type {
  Name head;
  std::vector<TermPtr> args;

  friend bool operator==(const Type& a, const Type& b) {
    return a.head == b.head && term_list_eq(a.args, b.args);
  }
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }
};

/// A precontext entry and precontexts.  The precontext invariants (fresh
/// declared variables, type variables drawn from earlier entries) are
/// enforced by validate_precontext / the checker, not by construction.
struct CtxEntry {
  Name var;
  Type type;
};
using Context = std::vector<CtxEntry>;

inline bool context_eq(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].var != b[i].var || !(a[i].type == b[i].type)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Printing (human-readable; the s-expression form lives in formats.hpp)
// ---------------------------------------------------------------------------

inline void print_term(std::ostream& os, const TermPtr& t) {
  os << t->head;
  if (!t->is_var && !t->args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < t->args.size(); ++i) {
      if (i) os << ',';
      print_term(os, t->args[i]);
    }
    os << ')';
  }
}

inline std::string show(const TermPtr& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

inline std::string show(const Type& a) {
  std::ostringstream os;
  os << a.head;
  if (!a.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ',';
      print_term(os, a.args[i]);
    }
    os << ')';
  }
  return os.str();
}

inline std::string show(const Context& ctx) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    if (i) os << ", ";
    os << ctx[i].var << ":" << show(ctx[i].type);
  }
  os << ">";
  return os.str();
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

inline void collect_vars(const TermPtr& t, NameSet& out) {
  if (t->is_var) {
    out.insert(t->head);
    return;
  }
  for (const auto& a : t->args) collect_vars(a, out);
}

inline NameSet free_vars(const TermPtr& t) {
  NameSet out;
  collect_vars(t, out);
  return out;
}

inline NameSet free_vars(const Type& a) {
  NameSet out;
  for (const auto& t : a.args) collect_vars(t, out);
  return out;
}

/// V(Γ): declared variables together with variables occurring in the types.
inline NameSet free_vars(const Context& ctx) {
  NameSet out;
  for (const auto& e : ctx) {
    out.insert(e.var);
    for (const auto& t : e.type.args) collect_vars(t, out);
  }
  return out;
}

inline NameSet declared_vars(const Context& ctx) {
  NameSet out;
  for (const auto& e : ctx) out.insert(e.var);
  return out;
}

// ---------------------------------------------------------------------------
// Simultaneous substitution
// ---------------------------------------------------------------------------

namespace detail {
struct SubstMap {
  const std::vector<Name>& over;
  const std::vector<TermPtr>& values;
  const TermPtr* find(const Name& x) const {
    for (std::size_t i = 0; i < over.size(); ++i)
      if (over[i] == x) return &values[i];
    return nullptr;
  }
};

inline TermPtr subst_term(const TermPtr& t, const SubstMap& m) {
  if (t->is_var) {
    if (const TermPtr* v = m.find(t->head)) return *v;
    return t;
  }
  std::vector<TermPtr> as;
  as.reserve(t->args.size());
  bool changed = false;
  for (const auto& a : t->args) {
    TermPtr s = subst_term(a, m);
    changed = changed || s != a;
    as.push_back(std::move(s));
  }
  if (!changed) return t;
  return Term::app(t->head, std::move(as));
}

inline void check_subst_args(const std::vector<TermPtr>& values,
                             const std::vector<Name>& over) {
  if (values.size() != over.size())
    throw CheckError("", "substitution length mismatch: " + std::to_string(values.size()) +
                             " values for " + std::to_string(over.size()) + " variables");
  NameSet seen;
  for (const auto& x : over)
    if (!seen.insert(x).second)
      throw CheckError("", "duplicate substitution target variable: " + x);
}
} // namespace detail

/// t[values/over], simultaneous.
inline TermPtr subst(const TermPtr& t, const std::vector<TermPtr>& values,
                     const std::vector<Name>& over) {
  detail::check_subst_args(values, over);
  return detail::subst_term(t, detail::SubstMap{over, values});
}

inline Type subst(const Type& a, const std::vector<TermPtr>& values,
                  const std::vector<Name>& over) {
  detail::check_subst_args(values, over);
  detail::SubstMap m{over, values};
  std::vector<TermPtr> as;
  as.reserve(a.args.size());
  for (const auto& t : a.args) as.push_back(detail::subst_term(t, m));
  return Type{a.head, std::move(as)};
}

/// Substitutes into the entry types; declared variables are binder-like and
/// are left untouched (use rename_context to change them).
inline Context subst(const Context& ctx, const std::vector<TermPtr>& values,
                     const std::vector<Name>& over) {
  detail::check_subst_args(values, over);
  detail::SubstMap m{over, values};
  Context out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) {
    std::vector<TermPtr> as;
    as.reserve(e.type.args.size());
    for (const auto& t : e.type.args) as.push_back(detail::subst_term(t, m));
    out.push_back(CtxEntry{e.var, Type{e.type.head, std::move(as)}});
  }
  return out;
}

/// Renames both declared variables and their occurrences, entrywise:
/// entry k becomes names[k], and later types see the renaming.
inline Context rename_context(const Context& ctx, const std::vector<Name>& names) {
  if (names.size() != ctx.size())
    throw CheckError("", "rename_context: name list length mismatch");
  std::vector<Name> over;
  std::vector<TermPtr> values;
  Context out;
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    Type a = over.empty() ? ctx[k].type : subst(ctx[k].type, values, over);
    out.push_back(CtxEntry{names[k], std::move(a)});
    over.push_back(ctx[k].var);
    values.push_back(Term::var(names[k]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fresh variables and top-most variables
// ---------------------------------------------------------------------------

inline Name fresh(const VariableSystem& vs, const Context& ctx) {
  return vs.pick(free_vars(ctx));
}

inline FreshSet fresh_set(const VariableSystem& vs, const Context& ctx) {
  return vs.provide(free_vars(ctx));
}

/// TV(Γ): variables not consumed by later types.
/// TV(<>) = {};  TV(<Γ, x:A>) = (TV(Γ) \ V(A)) ∪ {x}.
inline NameSet top_vars(const Context& ctx) {
  NameSet tv;
  for (const auto& e : ctx) {
    for (const auto& t : e.type.args) {
      NameSet used;
      collect_vars(t, used);
      for (const auto& x : used) tv.erase(x);
    }
    tv.insert(e.var);
  }
  return tv;
}

/// Raw precontext validation: declared variables must come from the fresh
/// set of the prefix, and each type may only mention earlier variables.
/// (Whether the types actually check is the checker's job.)
inline void validate_precontext(const VariableSystem& vs, const Context& ctx) {
  NameSet before; // V of the prefix
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    const auto& e = ctx[k];
    std::string where = "ctx[" + std::to_string(k) + "]";
    if (!vs.is_fresh_for(e.var, before))
      throw CheckError(where, "variable '" + e.var + "' is not fresh for the preceding context");
    for (const auto& x : free_vars(e.type))
      if (!before.count(x))
        throw CheckError(where + ".type", "variable '" + x + "' not declared earlier");
    before.insert(e.var);
    for (const auto& x : free_vars(e.type)) before.insert(x);
  }
}

inline std::optional<std::size_t> context_position(const Context& ctx, const Name& x) {
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ctx[i].var == x) return i;
  return std::nullopt;
}

/// OV(Γ): the declared variables as a term vector (x1, ..., xn).
inline std::vector<TermPtr> ov(const Context& ctx) {
  std::vector<TermPtr> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(Term::var(e.var));
  return out;
}

inline std::vector<Name> context_names(const Context& ctx) {
  std::vector<Name> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(e.var);
  return out;
}

} // namespace dsk
