/**
 * cwf.hpp — the category-with-families interface realized by the free
 * syntactic cwf over a signature, plus generic derived combinators
 * (tuples, iterated projections, variable projections, q-morphisms) that
 * work over any instance exposing the same method set.
 *
 * Instance method contract (see also finset.hpp):
 *   Obj terminal(); Mor id(Obj); Mor compose(Mor,Mor); Mor bang(Obj);
 *   Ty ty_subst(Ty,Mor); Tm tm_subst(Tm,Mor);
 *   Obj comprehend(Ty); Mor proj(Ty); Tm generic_var(Ty);
 *   Mor pair_mor(Mor f, Ty a, Tm t);
 * with value equality on Obj/Mor/Ty/Tm.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "dsk/checker.hpp"

namespace dsk {

/// The free syntactic cwf F_Σ: objects are checked contexts, morphisms are
/// checked context maps, types and terms are checked syntax; all equality
/// is syntactic.  Every operation validates through the checker.
class FreeCwF {
 public:
  using Obj = Context;
  using Mor = ContextMap;

  struct Ty {
    Context ctx;
    Type type;
    friend bool operator==(const Ty& a, const Ty& b) {
      return context_eq(a.ctx, b.ctx) && a.type == b.type;
    }
  };
  struct Tm {
    Ty ty;
    TermPtr term;
    friend bool operator==(const Tm& a, const Tm& b) {
      return a.ty == b.ty && term_eq(a.term, b.term);
    }
  };

  explicit FreeCwF(Signature sig, CheckOptions opts = {})
      : sig_(std::move(sig)), opts_(opts) {}

  const Signature& sig() const { return sig_; }

  Obj terminal() const { return {}; }

  Mor bang(const Obj& g) const {
    check_context(sig_, g, opts_);
    return Mor{g, {}, {}};
  }

  Mor id(const Obj& g) const { return identity_map(sig_, g, opts_).map; }

  Mor compose(const Mor& f, const Mor& g) const {
    CheckedMap cf = check_ctx_map(sig_, f.src, f.tgt, f.terms, opts_);
    CheckedMap cg = check_ctx_map(sig_, g.src, g.tgt, g.terms, opts_);
    return compose_maps(sig_, cf, cg, opts_).map;
  }

  Ty ty_subst(const Ty& a, const Mor& f) const {
    if (!context_eq(a.ctx, f.tgt)) throw CheckError("ty_subst", "fiber mismatch");
    Type out = subst(a.type, f.terms, context_names(f.tgt));
    check_type(sig_, f.src, out, opts_);
    return Ty{f.src, out};
  }

  Tm tm_subst(const Tm& t, const Mor& f) const {
    if (!context_eq(t.ty.ctx, f.tgt)) throw CheckError("tm_subst", "fiber mismatch");
    std::vector<Name> over = context_names(f.tgt);
    Tm out{Ty{f.src, subst(t.ty.type, f.terms, over)}, subst(t.term, f.terms, over)};
    check_term(sig_, f.src, out.term, out.ty.type, opts_);
    return out;
  }

  /// The fresh variable used for comprehension: fr of the context's
  /// variables, skipping names already taken by declared symbols.
  Name fresh_var(const Obj& g) const {
    NameSet used = free_vars(g);
    for (const auto& e : g) used.insert(e.var);
    Name x = sig_.vars.pick(used);
    while (sig_.find(x)) {
      used.insert(x);
      x = sig_.vars.pick(used);
    }
    return x;
  }

  /// Γ.S = <Γ, fresh(Γ) : S>.
  Obj comprehend(const Ty& a) const {
    Obj out = a.ctx;
    out.push_back(CtxEntry{fresh_var(a.ctx), a.type});
    check_context(sig_, out, opts_);
    return out;
  }

  /// p(S) : Γ.S → Γ with components OV(Γ).
  Mor proj(const Ty& a) const { return Mor{comprehend(a), a.ctx, ov(a.ctx)}; }

  /// v_S : the freshly bound variable, of type S weakened to Γ.S.
  Tm generic_var(const Ty& a) const {
    Obj ext = comprehend(a);
    return Tm{Ty{ext, a.type}, Term::var(ext.back().var)};
  }

  /// <f, t>_S : Δ → Γ.S for f : Δ → Γ and t : S{f} over Δ.
  Mor pair_mor(const Mor& f, const Ty& a, const Tm& t) const {
    if (!context_eq(a.ctx, f.tgt)) throw CheckError("pair_mor", "type not over the map target");
    Ty expect = ty_subst(a, f);
    if (!(t.ty == expect))
      throw CheckError("pair_mor", "term fiber mismatch: " + show(t.ty.type) + " vs " +
                                       show(expect.type));
    Obj ext = comprehend(a);
    std::vector<TermPtr> terms = f.terms;
    terms.push_back(t.term);
    check_ctx_map(sig_, f.src, ext, terms, opts_);
    return Mor{f.src, ext, std::move(terms)};
  }

 private:
  Signature sig_;
  CheckOptions opts_;
};

// ---------------------------------------------------------------------------
// Generic derived combinators
// ---------------------------------------------------------------------------

/// q(f, S) = <f ∘ p(S{f}), v_{S{f}}> : Δ.S{f} → Γ.S, for f : Δ → Γ.
template <class C>
typename C::Mor q_mor(const C& c, const typename C::Mor& f, const typename C::Ty& a) {
  auto af = c.ty_subst(a, f);
  return c.pair_mor(c.compose(f, c.proj(af)), a, c.generic_var(af));
}

/// Given a comprehension tower over `base` described by `tys` (tys[k] lives
/// over the k-th stage), the iterated projection p^(i) drops the last i
/// types.
template <class C>
typename C::Mor iterated_proj(const C& c, const std::vector<typename C::Ty>& tys,
                              std::size_t i) {
  std::size_t n = tys.size();
  typename C::Obj top = n == 0 ? c.terminal() : c.comprehend(tys[n - 1]);
  typename C::Mor m = c.id(top);
  for (std::size_t k = 0; k < i; ++k) m = c.compose(c.proj(tys[n - 1 - k]), m);
  return m;
}

/// x_i = v{p^(n-i)} : the i-th variable projection (1-based) of the tower.
template <class C>
typename C::Tm var_proj(const C& c, const std::vector<typename C::Ty>& tys, std::size_t i) {
  auto v = c.generic_var(tys[i - 1]);
  for (std::size_t k = i; k < tys.size(); ++k) v = c.tm_subst(v, c.proj(tys[k]));
  return v;
}

/// [t1..tn] : Δ → tower(tys), built by iterated pairing; [] is the bang.
template <class C>
typename C::Mor tuple_mor(const C& c, const typename C::Obj& src,
                          const std::vector<typename C::Ty>& tys,
                          const std::vector<typename C::Tm>& terms) {
  if (terms.size() != tys.size()) throw CheckError("tuple", "length mismatch");
  typename C::Mor m = c.bang(src);
  for (std::size_t k = 0; k < terms.size(); ++k) m = c.pair_mor(m, tys[k], terms[k]);
  return m;
}

} // namespace dsk
