/**
 * checker.hpp — judgement checking for rules R1–R5 (and the R5* variant),
 * decision procedures with hidden-argument reconstruction, and executable
 * structural transforms (substitution, weakening, strengthening,
 * interchange, standardization).
 *
 * All functions are pure; derivations are immutable trees carrying their
 * heights.  Errors are reported as CheckError with a path locating the
 * offending subterm and the rule attempted.
 */
#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dsk/signature.hpp"
#include "dsk/syntax.hpp"

namespace dsk {

// ---------------------------------------------------------------------------
// Judgements and derivations
// ---------------------------------------------------------------------------

struct Judgement {
  enum Kind { IsContext, IsType, HasType } kind;
  Context ctx;
  std::optional<Type> type; // IsType / HasType
  TermPtr term;             // HasType

  static Judgement is_context(Context g) {
    return Judgement{IsContext, std::move(g), std::nullopt, nullptr};
  }
  static Judgement is_type(Context g, Type a) {
    return Judgement{IsType, std::move(g), std::move(a), nullptr};
  }
  static Judgement has_type(Context g, TermPtr t, Type a) {
    return Judgement{HasType, std::move(g), std::move(a), std::move(t)};
  }
};

inline bool judgement_eq(const Judgement& a, const Judgement& b) {
  if (a.kind != b.kind || !context_eq(a.ctx, b.ctx)) return false;
  if (a.kind == Judgement::IsContext) return true;
  if (!(*a.type == *b.type)) return false;
  if (a.kind == Judgement::IsType) return true;
  return term_eq(a.term, b.term);
}

inline std::string show(const Judgement& j) {
  switch (j.kind) {
    case Judgement::IsContext: return show(j.ctx) + " context";
    case Judgement::IsType: return show(*j.type) + " type " + show(j.ctx);
    default: return show(j.term) + " : " + show(*j.type) + " " + show(j.ctx);
  }
}

enum class Rule { R1, R2, R3, R4, R5, R5star };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::R5: return "R5";
    default: return "R5*";
  }
}

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Rule rule;
  Judgement conclusion;
  std::vector<DerivPtr> premises;
  std::size_t height; // 0 for leaves, else 1 + max premise height
};

inline DerivPtr make_derivation(Rule r, Judgement c, std::vector<DerivPtr> prem) {
  std::size_t h = 0;
  for (const auto& p : prem) h = std::max(h, p->height + 1);
  return std::make_shared<Derivation>(Derivation{r, std::move(c), std::move(prem), h});
}

// ---------------------------------------------------------------------------
// Context maps
// ---------------------------------------------------------------------------

/// ā : src → tgt, i.e. a term vector over src, one term per tgt entry.
/// The checked form bundles the n+2 component judgements:
///   src context, tgt context, and a_k : A_k[a_1..a_{k-1}/x_1..x_{k-1}] (src).
struct ContextMap {
  Context src;
  Context tgt;
  std::vector<TermPtr> terms;

  friend bool operator==(const ContextMap& a, const ContextMap& b) {
    return context_eq(a.src, b.src) && context_eq(a.tgt, b.tgt) &&
           term_list_eq(a.terms, b.terms);
  }
};

struct CheckedMap {
  ContextMap map;
  std::vector<DerivPtr> judgements; // n+2 entries: src, tgt, components
  std::size_t max_component_height = 0;
};

struct CheckOptions {
  bool r5star = false;          // omit the type-wellformedness premise of R5
  std::size_t fuel = 1000000;   // hidden-argument reconstruction step budget
};

// Forward declarations (mutually recursive).
DerivPtr check_context(const Signature& sig, const Context& ctx, const CheckOptions& opts = {});
DerivPtr check_type(const Signature& sig, const Context& ctx, const Type& a,
                    const CheckOptions& opts = {});
std::pair<Type, DerivPtr> infer_type(const Signature& sig, const Context& ctx, const TermPtr& t,
                                     const CheckOptions& opts = {});
DerivPtr check_term(const Signature& sig, const Context& ctx, const TermPtr& t, const Type& a,
                    const CheckOptions& opts = {});
CheckedMap check_ctx_map(const Signature& sig, const Context& src, const Context& tgt,
                         const std::vector<TermPtr>& terms, const CheckOptions& opts = {});

// ---------------------------------------------------------------------------
// Hidden-argument reconstruction
// ---------------------------------------------------------------------------

namespace detail {

/// First-order matching of a declared argument type (a pattern over the
/// declaration's context variables, partially bound) against an inferred
/// type.  Binds previously unbound positions; conflicts are hard errors.
struct Reconstructor {
  const Signature& sig;
  const Context& ctx;              // ambient context of the usage site
  const Declaration& decl;
  const CheckOptions& opts;
  std::vector<TermPtr> bound;      // one slot per decl.ctx entry (may be null)
  std::size_t fuel;

  explicit Reconstructor(const Signature& s, const Context& c, const Declaration& d,
                         const CheckOptions& o)
      : sig(s), ctx(c), decl(d), opts(o), bound(d.ctx.size()), fuel(o.fuel) {}

  void spend() {
    if (fuel == 0)
      throw CheckError(decl.symbol,
                       "undecided: hidden-argument reconstruction fuel exhausted");
    --fuel;
  }

  std::optional<std::size_t> decl_position(const Name& x) const {
    return context_position(decl.ctx, x);
  }

  void match_term(const TermPtr& pattern, const TermPtr& actual) {
    spend();
    if (pattern->is_var) {
      auto pos = decl_position(pattern->head);
      if (!pos)
        throw CheckError(decl.symbol, "declaration mentions unknown variable '" +
                                          pattern->head + "'");
      if (bound[*pos]) {
        if (!term_eq(bound[*pos], actual))
          throw CheckError(decl.symbol, "matching conflict for hidden argument '" +
                                            pattern->head + "': " + show(bound[*pos]) +
                                            " vs " + show(actual));
      } else {
        bound[*pos] = actual;
      }
      return;
    }
    if (actual->is_var || actual->head != pattern->head ||
        actual->args.size() != pattern->args.size())
      throw CheckError(decl.symbol, "matching conflict: expected " + show(pattern) +
                                        " shape, got " + show(actual));
    for (std::size_t i = 0; i < pattern->args.size(); ++i)
      match_term(pattern->args[i], actual->args[i]);
  }

  void match_type(const Type& pattern, const Type& actual) {
    spend();
    if (pattern.head != actual.head)
      throw CheckError(decl.symbol, "matching conflict: declared type head " + pattern.head +
                                        " vs inferred " + actual.head);
    if (pattern.args.size() != actual.args.size())
      throw CheckError(decl.symbol, "matching conflict: arity of " + pattern.head);
    for (std::size_t i = 0; i < pattern.args.size(); ++i)
      match_term(pattern.args[i], actual.args[i]);
  }

  /// Solve all positions, right-to-left: whenever a position's term is
  /// known, infer its type and match it against the declared argument type
  /// to bind earlier positions.  No backtracking (unique typing guarantees
  /// at most one solution).
  std::vector<TermPtr> solve(const std::vector<TermPtr>& given) {
    if (given.size() != decl.det.size())
      throw CheckError(decl.symbol, "arity error: " + std::to_string(given.size()) +
                                        " argument(s) for determining sequence of length " +
                                        std::to_string(decl.det.size()));
    for (std::size_t j = 0; j < given.size(); ++j) bound[decl.det[j] - 1] = given[j];

    std::vector<bool> matched(decl.ctx.size(), false);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t i = decl.ctx.size(); i-- > 0;) {
        if (!bound[i] || matched[i]) continue;
        spend();
        Type inferred = infer_type(sig, ctx, bound[i], opts).first;
        match_type(decl.ctx[i].type, inferred);
        matched[i] = true;
        progress = true;
      }
    }
    for (std::size_t i = 0; i < decl.ctx.size(); ++i)
      if (!bound[i])
        throw CheckError(decl.symbol, "cannot reconstruct hidden argument '" +
                                          decl.ctx[i].var + "' (position " +
                                          std::to_string(i + 1) + ")");
    std::vector<TermPtr> out;
    out.reserve(bound.size());
    for (auto& b : bound) out.push_back(std::move(b));
    return out;
  }
};

} // namespace detail

/// Reconstructs the full argument vector (a context map into the
/// declaration's context) from the determining arguments.
inline std::vector<TermPtr> reconstruct_args(const Signature& sig, const Context& ctx,
                                             const Declaration& decl,
                                             const std::vector<TermPtr>& given,
                                             const CheckOptions& opts = {}) {
  detail::Reconstructor r(sig, ctx, decl, opts);
  return r.solve(given);
}

// ---------------------------------------------------------------------------
// The rules
// ---------------------------------------------------------------------------

inline DerivPtr check_context(const Signature& sig, const Context& ctx, const CheckOptions& opts) {
  if (ctx.empty())
    return make_derivation(Rule::R1, Judgement::is_context(ctx), {});
  Context prefix(ctx.begin(), ctx.end() - 1);
  const CtxEntry& e = ctx.back();
  DerivPtr d_prefix = check_context(sig, prefix, opts);
  DerivPtr d_type = check_type(sig, prefix, e.type, opts);
  if (sig.find(e.var))
    throw CheckError("ctx[" + std::to_string(prefix.size()) + "]",
                     "variable '" + e.var + "' clashes with a declared symbol");
  if (!sig.vars.is_fresh_for(e.var, free_vars(prefix)))
    throw CheckError("ctx[" + std::to_string(prefix.size()) + "]",
                     "variable '" + e.var + "' is not fresh for " + show(prefix));
  return make_derivation(Rule::R2, Judgement::is_context(ctx), {d_prefix, d_type});
}

inline CheckedMap check_ctx_map(const Signature& sig, const Context& src, const Context& tgt,
                                const std::vector<TermPtr>& terms, const CheckOptions& opts) {
  if (terms.size() != tgt.size())
    throw CheckError("map", "length mismatch: " + std::to_string(terms.size()) +
                                " term(s) for target context of length " +
                                std::to_string(tgt.size()));
  CheckedMap cm;
  cm.map = ContextMap{src, tgt, terms};
  cm.judgements.push_back(check_context(sig, src, opts));
  cm.judgements.push_back(check_context(sig, tgt, opts));
  std::vector<Name> over;
  std::vector<TermPtr> values;
  for (std::size_t k = 0; k < tgt.size(); ++k) {
    Type expected = over.empty() ? tgt[k].type : subst(tgt[k].type, values, over);
    try {
      cm.judgements.push_back(check_term(sig, src, terms[k], expected, opts));
    } catch (const CheckError& e) {
      throw CheckError("map[" + std::to_string(k) + "]", e.what());
    }
    over.push_back(tgt[k].var);
    values.push_back(terms[k]);
  }
  for (const auto& d : cm.judgements)
    cm.max_component_height = std::max(cm.max_component_height, d->height);
  return cm;
}

inline DerivPtr check_type(const Signature& sig, const Context& ctx, const Type& a,
                           const CheckOptions& opts) {
  const Declaration& decl = sig.at(a.head);
  if (decl.kind != DeclKind::Type)
    throw CheckError(a.head, "not a type symbol");
  std::vector<TermPtr> full = reconstruct_args(sig, ctx, decl, a.args, opts);
  CheckedMap cm = check_ctx_map(sig, ctx, decl.ctx, full, opts);
  return make_derivation(Rule::R4, Judgement::is_type(ctx, a), cm.judgements);
}

inline std::pair<Type, DerivPtr> infer_type(const Signature& sig, const Context& ctx,
                                            const TermPtr& t, const CheckOptions& opts) {
  if (t->is_var) {
    auto pos = context_position(ctx, t->head);
    if (!pos)
      throw CheckError(show(t), "variable not declared in " + show(ctx));
    DerivPtr d_ctx = check_context(sig, ctx, opts);
    Type a = ctx[*pos].type;
    return {a, make_derivation(Rule::R3, Judgement::has_type(ctx, t, a), {d_ctx})};
  }
  const Declaration& decl = sig.at(t->head);
  if (decl.kind != DeclKind::Fun)
    throw CheckError(t->head, "not a function symbol");
  std::vector<TermPtr> full = reconstruct_args(sig, ctx, decl, t->args, opts);
  CheckedMap cm = check_ctx_map(sig, ctx, decl.ctx, full, opts);
  Type ret = subst(*decl.ret, full, context_names(decl.ctx));
  std::vector<DerivPtr> prem = cm.judgements;
  Rule rule = Rule::R5star;
  if (!opts.r5star) {
    prem.push_back(check_type(sig, ctx, ret, opts));
    rule = Rule::R5;
  }
  return {ret, make_derivation(rule, Judgement::has_type(ctx, t, ret), std::move(prem))};
}

inline DerivPtr check_term(const Signature& sig, const Context& ctx, const TermPtr& t,
                           const Type& a, const CheckOptions& opts) {
  auto [inferred, d] = infer_type(sig, ctx, t, opts);
  if (!(inferred == a))
    throw CheckError(show(t), "type mismatch: inferred " + show(inferred) + ", expected " +
                                  show(a));
  return d;
}

/// Checks an arbitrary judgement (dispatch helper for tools and tests).
inline DerivPtr check_judgement(const Signature& sig, const Judgement& j,
                                const CheckOptions& opts = {}) {
  switch (j.kind) {
    case Judgement::IsContext: return check_context(sig, j.ctx, opts);
    case Judgement::IsType: return check_type(sig, j.ctx, *j.type, opts);
    default: return check_term(sig, j.ctx, j.term, *j.type, opts);
  }
}

// ---------------------------------------------------------------------------
// Signature extension (the judgemental side of the signature module)
// ---------------------------------------------------------------------------

inline Signature extend(const Signature& sig, const Declaration& d) {
  if (sig.find(d.symbol))
    throw CheckError(d.symbol, "duplicate symbol");
  if (sig.vars.is_var_name(d.symbol) && sig.vars.flavor == VarFlavor::DeBruijnPositional)
    throw CheckError(d.symbol, "symbol clashes with the positional variable carrier");
  validate_determining_seq(d.ctx, d.det);
  switch (d.kind) {
    case DeclKind::Type:
    case DeclKind::Pred:
      check_context(sig, d.ctx);
      break;
    case DeclKind::Fun: {
      if (!d.ret) throw CheckError(d.symbol, "function declaration without return type");
      for (const auto& x : free_vars(*d.ret))
        if (!context_position(d.ctx, x))
          throw CheckError(d.symbol, "return type mentions unknown variable '" + x + "'");
      check_type(sig, d.ctx, *d.ret);
      break;
    }
  }
  Signature out = sig;
  out.index[d.symbol] = out.decls.size();
  out.decls.push_back(d);
  return out;
}

/// Replays a declaration list in order (revalidation of loaded signatures).
inline Signature replay_signature(const std::vector<Declaration>& decls, VarFlavor flavor) {
  Signature sig = empty_signature(flavor);
  for (std::size_t i = 0; i < decls.size(); ++i) {
    try {
      sig = extend(sig, decls[i]);
    } catch (const CheckError& e) {
      throw CheckError("decl[" + std::to_string(i) + "]", e.what());
    }
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Context map algebra (identity, composition)
// ---------------------------------------------------------------------------

inline CheckedMap identity_map(const Signature& sig, const Context& ctx,
                               const CheckOptions& opts = {}) {
  return check_ctx_map(sig, ctx, ctx, ov(ctx), opts);
}

/// (f ∘ g) for f : Δ → Γ, g : Θ → Δ, by componentwise substitution.
inline CheckedMap compose_maps(const Signature& sig, const CheckedMap& f, const CheckedMap& g,
                               const CheckOptions& opts = {}) {
  if (!context_eq(f.map.src, g.map.tgt))
    throw CheckError("compose", "context mismatch: " + show(f.map.src) + " vs " +
                                    show(g.map.tgt));
  std::vector<Name> over = context_names(f.map.src);
  std::vector<TermPtr> terms;
  terms.reserve(f.map.terms.size());
  for (const auto& t : f.map.terms) terms.push_back(subst(t, g.map.terms, over));
  return check_ctx_map(sig, g.map.src, f.map.tgt, terms, opts);
}

// ---------------------------------------------------------------------------
// Substitution as a derivation transform
// ---------------------------------------------------------------------------

/// From a derivation of (A type (Γ)) or (a : A (Γ)) and a checked map
/// s : Θ → Γ, produces the substituted judgement's derivation, rechecked
/// from scratch.  The result height satisfies the substitution bound
/// height(d) + max component height of s.
inline DerivPtr apply_substitution(const Signature& sig, const DerivPtr& d, const CheckedMap& s,
                                   const CheckOptions& opts = {}) {
  const Judgement& j = d->conclusion;
  if (j.kind == Judgement::IsContext)
    throw CheckError("subst", "expected a type or term judgement");
  if (!context_eq(s.map.tgt, j.ctx))
    throw CheckError("subst", "map target does not match the judgement context");
  std::vector<Name> over = context_names(j.ctx);
  Type a = subst(*j.type, s.map.terms, over);
  DerivPtr out;
  if (j.kind == Judgement::IsType) {
    out = check_type(sig, s.map.src, a, opts);
  } else {
    TermPtr t = subst(j.term, s.map.terms, over);
    out = check_term(sig, s.map.src, t, a, opts);
  }
  if (out->height > d->height + s.max_component_height)
    throw std::logic_error("substitution height bound violated (kernel bug)");
  return out;
}

// ---------------------------------------------------------------------------
// Structural transforms
// ---------------------------------------------------------------------------

enum class TransformKind { Weaken, Strengthen, Interchange };

struct TransformSpec {
  std::size_t at = 0;        // 0-based context position
  Name var;                  // weaken: the new variable
  std::optional<Type> type;  // weaken: its type
};

inline DerivPtr structural_transform(TransformKind kind, const Signature& sig, const DerivPtr& d,
                                     const TransformSpec& spec, const CheckOptions& opts = {}) {
  if (sig.vars.flavor != VarFlavor::Unrestricted)
    throw CheckError("transform", "structural transforms require the unrestricted variable system");
  const Judgement& j = d->conclusion;
  Context ctx = j.ctx;
  switch (kind) {
    case TransformKind::Weaken: {
      if (spec.at > ctx.size()) throw CheckError("transform", "insertion position out of range");
      if (!spec.type) throw CheckError("transform", "weakening requires a type");
      if (free_vars(ctx).count(spec.var) || sig.find(spec.var))
        throw CheckError("transform", "weakening variable '" + spec.var + "' is not fresh");
      Context prefix(ctx.begin(), ctx.begin() + static_cast<long>(spec.at));
      check_type(sig, prefix, *spec.type, opts); // A type (Γ) side condition
      ctx.insert(ctx.begin() + static_cast<long>(spec.at), CtxEntry{spec.var, *spec.type});
      break;
    }
    case TransformKind::Strengthen: {
      if (spec.at >= ctx.size()) throw CheckError("transform", "position out of range");
      const Name& y = ctx[spec.at].var;
      NameSet later;
      for (std::size_t k = spec.at + 1; k < ctx.size(); ++k) {
        later.insert(ctx[k].var);
        for (const auto& x : free_vars(ctx[k].type)) later.insert(x);
      }
      if (j.type)
        for (const auto& x : free_vars(*j.type)) later.insert(x);
      if (j.term)
        for (const auto& x : free_vars(j.term)) later.insert(x);
      if (later.count(y))
        throw CheckError("transform", "cannot strengthen: '" + y +
                                          "' occurs in the remainder or the judgement");
      ctx.erase(ctx.begin() + static_cast<long>(spec.at));
      break;
    }
    case TransformKind::Interchange: {
      if (spec.at + 1 >= ctx.size()) throw CheckError("transform", "position out of range");
      const Name& x = ctx[spec.at].var;
      if (free_vars(ctx[spec.at + 1].type).count(x))
        throw CheckError("transform", "cannot interchange: '" + x +
                                          "' occurs in the next entry's type");
      std::swap(ctx[spec.at], ctx[spec.at + 1]);
      break;
    }
  }
  switch (j.kind) {
    case Judgement::IsContext: return check_context(sig, ctx, opts);
    case Judgement::IsType: return check_type(sig, ctx, *j.type, opts);
    default: return check_term(sig, ctx, j.term, *j.type, opts);
  }
}

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

struct Standardized {
  Judgement judgement;   // over the renamed context Γ^σ
  CheckedMap to_orig;    // σ(Γ)   : Γ^σ → Γ   (components σ(1)..σ(n))
  CheckedMap from_orig;  // σ⁻¹(Γ) : Γ → Γ^σ   (components y_1..y_n)
};

/// Renames the judgement's context to the positional sequence 1..n (or a
/// caller-supplied fresh sequence) and transports the judgement, returning
/// the two mutually inverse renaming maps.
inline Standardized standardize(const Signature& sig, const Judgement& j,
                                std::optional<std::vector<Name>> names_opt = std::nullopt,
                                const CheckOptions& opts = {}) {
  const Context& ctx = j.ctx;
  std::vector<Name> names;
  if (names_opt) {
    names = *names_opt;
    if (names.size() != ctx.size())
      throw CheckError("standardize", "fresh sequence length mismatch");
  } else {
    for (std::size_t k = 1; k <= ctx.size(); ++k) names.push_back(positional_name(k));
  }
  Context renamed = rename_context(ctx, names);
  std::vector<Name> over = context_names(ctx);
  std::vector<TermPtr> new_vars;
  for (const auto& n : names) new_vars.push_back(Term::var(n));

  Judgement out = j;
  out.ctx = renamed;
  if (j.type) out.type = subst(*j.type, new_vars, over);
  if (j.term) out.term = subst(j.term, new_vars, over);
  check_judgement(sig, out, opts);

  Standardized s{std::move(out),
                 check_ctx_map(sig, renamed, ctx, new_vars, opts),
                 check_ctx_map(sig, ctx, renamed, ov(ctx), opts)};
  return s;
}

/// Renames every declaration context to the positional sequence, switching
/// the signature to the de Bruijn flavor.  Requires standard-form
/// determining sequences to be meaning-preserving for written syntax.
inline Signature standardize_signature(const Signature& sig) {
  std::vector<Declaration> decls;
  for (const auto& d : sig.decls) {
    Declaration nd = d;
    std::vector<Name> names;
    for (std::size_t k = 1; k <= d.ctx.size(); ++k) names.push_back(positional_name(k));
    nd.ctx = rename_context(d.ctx, names);
    if (d.ret) {
      std::vector<TermPtr> new_vars;
      for (const auto& n : names) new_vars.push_back(Term::var(n));
      nd.ret = subst(*d.ret, new_vars, context_names(d.ctx));
    }
    decls.push_back(std::move(nd));
  }
  return replay_signature(decls, VarFlavor::DeBruijnPositional);
}

} // namespace dsk
