/**
 * model.hpp — model assignments into the finite-set cwf and the induced
 * interpretation morphism: contexts to iterated comprehension, types and
 * terms by structural recursion through the checker's hidden-argument
 * reconstruction, variables to projections, and context maps to tuples.
 *
 * Restricted to standard-form signatures with the positional variable
 * flavor; standardize first for anything else.
 */
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dsk/checker.hpp"
#include "dsk/cwf.hpp"
#include "dsk/finset.hpp"

namespace dsk {

/// Per-symbol semantic data: a type value over the interpretation of the
/// declaration context for each type symbol, and a section of the
/// interpreted return type for each function symbol.  Predicate symbols
/// are interpreted separately (see doctrine.hpp).
struct ModelAssignment {
  Signature sig;
  std::map<Name, fs::Ty> type_vals;
  std::map<Name, fs::Tm> fun_vals;
};

/// An interpreted context: the final object together with the per-entry
/// semantic types (entry k's type lives over the stage-k object).
struct InterpCtx {
  fs::Obj obj;
  std::vector<fs::Ty> tys;
  std::vector<fs::Obj> stages; // stages[0] = terminal, stages[n] = obj
};

class Interpreter {
 public:
  explicit Interpreter(const ModelAssignment& m) : m_(m) {
    if (m.sig.vars.flavor != VarFlavor::DeBruijnPositional || !m.sig.standard_form())
      throw CheckError("interpret",
                       "models require a standard-form signature with positional variables "
                       "(standardize first)");
  }

  const fs::Constructions& cwf() const { return c_; }

  InterpCtx context(const Context& ctx) const {
    std::string key = show(ctx);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;
    check_context(m_.sig, ctx);
    InterpCtx out;
    out.obj = c_.terminal();
    out.stages.push_back(out.obj);
    for (std::size_t k = 0; k < ctx.size(); ++k) {
      Context prefix(ctx.begin(), ctx.begin() + static_cast<long>(k));
      fs::Ty t = type(prefix, ctx[k].type);
      out.obj = c_.comprehend(t);
      out.tys.push_back(std::move(t));
      out.stages.push_back(out.obj);
    }
    cache_.emplace(std::move(key), out);
    return out;
  }

  /// σ(Δ, S(t̄)) = [[S]]{ θ̄(Δ, Γ_S, t̄) } with t̄ completed by the checker.
  fs::Ty type(const Context& ctx, const Type& a) const {
    const Declaration& decl = m_.sig.at(a.head);
    if (decl.kind != DeclKind::Type) throw CheckError(a.head, "not a type symbol");
    auto it = m_.type_vals.find(a.head);
    if (it == m_.type_vals.end()) throw CheckError(a.head, "unassigned type symbol");
    std::vector<TermPtr> full = reconstruct_args(m_.sig, ctx, decl, a.args);
    return c_.ty_subst(it->second, context_map(ctx, decl.ctx, full));
  }

  /// θ(Δ, a): variables to projections, applications to the assigned
  /// section substituted along the interpreted argument tuple.
  fs::Tm term(const Context& ctx, const TermPtr& t) const {
    if (t->is_var) {
      auto pos = context_position(ctx, t->head);
      if (!pos) throw CheckError(show(t), "variable not in context");
      InterpCtx ic = context(ctx);
      return var_proj(c_, ic.tys, *pos + 1);
    }
    const Declaration& decl = m_.sig.at(t->head);
    if (decl.kind != DeclKind::Fun) throw CheckError(t->head, "not a function symbol");
    auto it = m_.fun_vals.find(t->head);
    if (it == m_.fun_vals.end()) throw CheckError(t->head, "unassigned function symbol");
    std::vector<TermPtr> full = reconstruct_args(m_.sig, ctx, decl, t->args);
    return c_.tm_subst(it->second, context_map(ctx, decl.ctx, full));
  }

  /// F(Δ, Γ, t̄) = [θ(t_1) .. θ(t_n)] : [[Δ]] → [[Γ]].
  fs::Mor context_map(const Context& src, const Context& tgt,
                      const std::vector<TermPtr>& terms) const {
    check_ctx_map(m_.sig, src, tgt, terms);
    InterpCtx isrc = context(src);
    InterpCtx itgt = context(tgt);
    std::vector<fs::Tm> sem;
    sem.reserve(terms.size());
    for (const auto& t : terms) sem.push_back(term(src, t));
    return tuple_mor(c_, isrc.obj, itgt.tys, sem);
  }

  /// Interprets a checked judgement; the kind of the result follows the
  /// kind of the judgement (object / type value / term value).
  fs::Obj interpret_context(const Context& ctx) const { return context(ctx).obj; }
  fs::Ty interpret_type(const Judgement& j) const {
    check_judgement(m_.sig, j);
    return type(j.ctx, *j.type);
  }
  fs::Tm interpret_term(const Judgement& j) const {
    check_judgement(m_.sig, j);
    return term(j.ctx, j.term);
  }

 private:
  const ModelAssignment& m_;
  fs::Constructions c_;
  mutable std::map<std::string, InterpCtx> cache_; // interpreted contexts
};

// ---------------------------------------------------------------------------
// Incremental model construction
// ---------------------------------------------------------------------------

inline ModelAssignment empty_model() {
  ModelAssignment m;
  m.sig = empty_signature(VarFlavor::DeBruijnPositional);
  return m;
}

/// Extends the signature by a type declaration and assigns it a semantic
/// type over the interpretation of its context.
inline ModelAssignment extend_model_by_type(const ModelAssignment& m, const Declaration& d,
                                            const fs::Ty& sem) {
  if (d.kind != DeclKind::Type) throw CheckError(d.symbol, "expected a type declaration");
  ModelAssignment out = m;
  out.sig = extend(m.sig, d);
  Interpreter old(m);
  if (!(sem.base == old.interpret_context(d.ctx)))
    throw CheckError(d.symbol, "fiber mismatch: semantic type not over the interpreted context");
  fs::validate_ty(sem);
  out.type_vals.emplace(d.symbol, sem);
  return out;
}

/// Extends by a function declaration, assigning a section of the
/// interpreted return type over the interpreted context.
inline ModelAssignment extend_model_by_fun(const ModelAssignment& m, const Declaration& d,
                                           const fs::Tm& sem) {
  if (d.kind != DeclKind::Fun) throw CheckError(d.symbol, "expected a function declaration");
  ModelAssignment out = m;
  out.sig = extend(m.sig, d);
  Interpreter old(m);
  fs::Ty expect = old.type(d.ctx, *d.ret);
  if (!(sem.ty == expect))
    throw CheckError(d.symbol, "fiber mismatch: section not of the interpreted return type");
  fs::validate_tm(sem);
  out.fun_vals.emplace(d.symbol, sem);
  return out;
}

/// Predicate declarations carry no cwf data; the signature is still
/// extended so formulas over it check.
inline ModelAssignment extend_model_by_pred(const ModelAssignment& m, const Declaration& d) {
  if (d.kind != DeclKind::Pred) throw CheckError(d.symbol, "expected a predicate declaration");
  ModelAssignment out = m;
  out.sig = extend(m.sig, d);
  return out;
}

} // namespace dsk
