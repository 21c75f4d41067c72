// Generic cwf law checks, shared between the unit tests and the acceptance
// suite.  Each check throws std::runtime_error naming the violated law, so
// callers can either CHECK_NOTHROW or count failures.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dsk/cwf.hpp"
#include "dsk/doctrine.hpp"
#include "dsk/finset.hpp"

namespace laws {

inline void law_assert(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("law violated: " + what);
}

// Field-name adapters: syntactic maps carry src/tgt, finite-set morphisms
// carry dom/cod.
inline const dsk::Context& mor_dom(const dsk::ContextMap& m) { return m.src; }
inline const dsk::Context& mor_cod(const dsk::ContextMap& m) { return m.tgt; }
inline const dsk::fs::Obj& mor_dom(const dsk::fs::Mor& m) { return m.dom; }
inline const dsk::fs::Obj& mor_cod(const dsk::fs::Mor& m) { return m.cod; }

/// (a) category laws on a composable triple f ∘ g ∘ h.
template <class C>
void category(const C& c, const typename C::Mor& f, const typename C::Mor& g,
              const typename C::Mor& h) {
  law_assert(c.compose(c.compose(f, g), h) == c.compose(f, c.compose(g, h)),
             "associativity of composition");
}

template <class C>
void identity(const C& c, const typename C::Mor& f, const typename C::Obj& dom,
              const typename C::Obj& cod) {
  law_assert(c.compose(f, c.id(dom)) == f, "f o id = f");
  law_assert(c.compose(c.id(cod), f) == f, "id o f = f");
}

/// (b) type functoriality: A{1} = A, A{f o g} = A{f}{g}.
template <class C>
void ty_functor(const C& c, const typename C::Ty& a, const typename C::Mor& f,
                const typename C::Mor& g) {
  law_assert(c.ty_subst(a, c.id(mor_cod(f))) == a, "A{1} = A");
  law_assert(c.ty_subst(a, c.compose(f, g)) == c.ty_subst(c.ty_subst(a, f), g),
             "A{f o g} = A{f}{g}");
}

/// (c) term functoriality.
template <class C>
void tm_functor(const C& c, const typename C::Tm& t, const typename C::Mor& f,
                const typename C::Mor& g) {
  law_assert(c.tm_subst(t, c.id(mor_cod(f))) == t, "a{1} = a");
  law_assert(c.tm_subst(t, c.compose(f, g)) == c.tm_subst(c.tm_subst(t, f), g),
             "a{f o g} = a{f}{g}");
}

/// (d) terminality: any morphism into the terminal object is the bang.
template <class C>
void terminal(const C& c, const typename C::Mor& m) {
  law_assert(m == c.bang(mor_dom(m)), "uniqueness of the bang morphism");
}

/// (e)/(f) comprehension laws for A over Γ, f : Δ → Γ, t a section of A{f},
/// g : Θ → Δ, and h : X → Γ.A.
template <class C>
void comprehension(const C& c, const typename C::Ty& a, const typename C::Mor& f,
                   const typename C::Tm& t, const typename C::Mor& g) {
  auto pa = c.proj(a);
  auto va = c.generic_var(a);
  auto fp = c.pair_mor(f, a, t);
  law_assert(c.compose(pa, fp) == f, "p o <f,a> = f");
  law_assert(c.tm_subst(va, fp) == t, "v{<f,a>} = a");
  law_assert(c.compose(fp, g) == c.pair_mor(c.compose(f, g), a, c.tm_subst(t, g)),
             "<f,a> o g = <f o g, a{g}>");
  law_assert(c.pair_mor(pa, a, va) == c.id(c.comprehend(a)), "1 = <p, v>");
}

template <class C>
void pair_eta(const C& c, const typename C::Ty& a, const typename C::Mor& h) {
  auto pa = c.proj(a);
  law_assert(c.pair_mor(c.compose(pa, h), a, c.tm_subst(c.generic_var(a), h)) == h,
             "<p o h, v{h}> = h");
}

/// Functoriality of the q-morphism: 1.A = 1 and (f o g).A = (f.A) o (g.A{f}).
template <class C>
void q_functorial(const C& c, const typename C::Ty& a, const typename C::Mor& f,
                  const typename C::Mor& g) {
  law_assert(dsk::q_mor(c, c.id(mor_cod(f)), a) == c.id(c.comprehend(a)), "1.A = 1");
  auto af = c.ty_subst(a, f);
  law_assert(dsk::q_mor(c, c.compose(f, g), a) ==
                 c.compose(dsk::q_mor(c, f, a), dsk::q_mor(c, g, af)),
             "(f o g).A = f.A o g.A{f}");
}

/// Pullback property of the q-square in the finite-set cwf, verified by
/// cone enumeration over the given apex objects.
inline void q_pullback(const dsk::fs::FinSetCwF& c, const dsk::fs::Ty& a,
                       const dsk::fs::Mor& f, const std::vector<dsk::fs::Obj>& apexes) {
  using namespace dsk::fs;
  Ty af = c.ty_subst(a, f);
  Mor q = dsk::q_mor(c, f, a);
  Mor p_top = c.proj(af);   // Δ.A{f} → Δ
  Mor p_bot = c.proj(a);    // Γ.A → Γ
  law_assert(c.compose(f, p_top) == c.compose(p_bot, q), "q-square commutes");
  Obj corner = c.comprehend(af);
  for (const Obj& x : apexes) {
    for (const Mor& g : all_mors(x, mor_dom(f))) {
      for (const Mor& h : all_mors(x, c.comprehend(a))) {
        if (!(c.compose(f, g) == c.compose(p_bot, h))) continue;
        int count = 0;
        for (const Mor& u : all_mors(x, corner))
          if (c.compose(p_top, u) == g && c.compose(q, u) == h) ++count;
        law_assert(count == 1, "q-square pullback: cone has " + std::to_string(count) +
                                   " mediating morphisms");
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Ready-made law-suite drivers (used by the command line and the bindings)
// ---------------------------------------------------------------------------

/// Runs the cwf law suite on the finite-set cwf at the given base size;
/// returns the number of checks performed, throws on the first violation.
inline std::size_t run_cwf_laws(std::size_t size) {
  dsk::fs::FinSetCwF c;
  std::size_t checks = 0;

  std::vector<dsk::fs::Val> base_pool, fiber_pool;
  for (std::size_t i = 0; i < size; ++i) base_pool.push_back(dsk::fs::atom("g" + std::to_string(i)));
  fiber_pool = {dsk::fs::atom("a")};
  if (size >= 2) fiber_pool.push_back(dsk::fs::atom("b"));

  dsk::fs::Obj gamma{dsk::fs::FinSet(base_pool.begin(), base_pool.end())};
  dsk::fs::Obj delta{dsk::fs::FinSet(base_pool.begin(),
                           base_pool.begin() + static_cast<long>(std::max<std::size_t>(1, size - 1)))};
  dsk::fs::Obj unit = c.terminal();

  for (const dsk::fs::Ty& a : dsk::fs::all_types(gamma, fiber_pool)) {
    for (const dsk::fs::Mor& f : dsk::fs::all_mors(delta, gamma)) {
      for (const dsk::fs::Mor& g : dsk::fs::all_mors(unit, delta)) {
        identity(c, f, delta, gamma);
        category(c, f, g, c.id(unit));
        ty_functor(c, a, f, g);
        terminal(c, c.bang(delta));
        q_functorial(c, a, f, g);
        checks += 5;
        for (const dsk::fs::Tm& t : dsk::fs::all_terms(c.ty_subst(a, f))) {
          comprehension(c, a, f, t, g);
          tm_functor(c, t, c.id(delta), c.id(delta));
          checks += 2;
        }
      }
      q_pullback(c, a, f, {unit, delta});
      ++checks;
      for (const dsk::fs::Mor& h : dsk::fs::all_mors(delta, c.comprehend(a))) {
        pair_eta(c, a, h);
        ++checks;
      }
    }
  }
  return checks;
}

/// Heyting, adjunction, and Frobenius laws of the subset doctrine.
inline std::size_t run_doctrine_laws(std::size_t size) {
  dsk::fs::FinSetCwF c;
  std::size_t checks = 0;
  using D = dsk::SubsetDoctrine;

  std::vector<dsk::fs::Val> pool;
  for (std::size_t i = 0; i < size; ++i) pool.push_back(dsk::fs::atom("g" + std::to_string(i)));
  dsk::fs::Obj gamma{dsk::fs::FinSet(pool.begin(), pool.end())};
  std::vector<dsk::fs::FinSet> subs = dsk::fs::all_subsets(pool);

  // Heyting prealgebra axioms, exhaustively over the powerset of Γ.
  for (const auto& x : subs) {
    law_assert(D::le(D::bot(), x) && D::le(x, D::top(gamma)), "bot <= x <= top");
    ++checks;
    for (const auto& y : subs)
      for (const auto& z : subs) {
        law_assert((D::le(z, D::meet(x, y))) == (D::le(z, x) && D::le(z, y)),
                         "meet is the greatest lower bound");
        law_assert((D::le(D::join(x, y), z)) == (D::le(x, z) && D::le(y, z)),
                         "join is the least upper bound");
        law_assert((D::le(z, D::imp(gamma, x, y))) == D::le(D::meet(z, x), y),
                         "implication is the relative pseudo-complement");
        checks += 3;
      }
  }

  // Quantifier adjunctions over a two-element fiber type S on Γ.
  dsk::fs::Ty s{gamma, {}};
  std::vector<dsk::fs::Val> fib{dsk::fs::atom("a"), dsk::fs::atom("b")};
  for (const auto& g : gamma.elems) s.fiber[g] = dsk::fs::FinSet(fib.begin(), fib.end());
  dsk::fs::Obj comp = c.comprehend(s);
  std::vector<dsk::fs::Val> comp_pool(comp.elems.begin(), comp.elems.end());
  dsk::fs::Mor p = c.proj(s);
  for (const auto& q : subs)
    for (const auto& r : dsk::fs::all_subsets(comp_pool)) {
      law_assert((D::le(q, D::forall(s, r))) == D::le(D::subst(q, p), r),
                       "forall adjunction 3(a)");
      law_assert((D::le(D::exists(s, r), q)) == D::le(r, D::subst(q, p)),
                       "exists adjunction 3(b)");
      law_assert(D::le(D::meet(q, D::exists(s, r)),
                             D::exists(s, D::meet(D::subst(q, p), r))),
                       "Frobenius reciprocity");
      checks += 3;
    }
  return checks;
}

} // namespace laws
