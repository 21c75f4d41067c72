/**
 * finset.hpp — the finite-set cwf: objects are finite sets of canonical
 * tagged-tree values, morphisms/types/terms are tabulated, and every cwf
 * equation holds by structural equality of the tables.  Supports the
 * N_k / Σ / Π / + type constructions with their substitution and
 * conversion laws holding exactly.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dsk/syntax.hpp" // CheckError

namespace dsk::fs {

// ---------------------------------------------------------------------------
// Canonical values
// ---------------------------------------------------------------------------

/// A canonical semantic value: an ordered tagged tree.  Pairs use tag ".",
/// sums "inl"/"inr", tabulated functions "fun" with "=>" entries, the
/// terminal element "*", and numerals their decimal tag.
struct Val {
  std::string tag;
  std::vector<Val> kids;

  friend bool operator==(const Val& a, const Val& b) {
    return a.tag == b.tag && a.kids == b.kids;
  }
  friend bool operator!=(const Val& a, const Val& b) { return !(a == b); }
  friend bool operator<(const Val& a, const Val& b) {
    if (a.tag != b.tag) return a.tag < b.tag;
    return std::lexicographical_compare(a.kids.begin(), a.kids.end(), b.kids.begin(),
                                        b.kids.end());
  }
};

inline Val atom(std::string tag) { return Val{std::move(tag), {}}; }
inline Val pairv(Val a, Val b) { return Val{".", {std::move(a), std::move(b)}}; }
inline Val star() { return atom("*"); }

inline std::string show(const Val& v) {
  if (v.kids.empty()) return v.tag;
  std::ostringstream os;
  os << v.tag << '(';
  for (std::size_t i = 0; i < v.kids.size(); ++i) {
    if (i) os << ',';
    os << show(v.kids[i]);
  }
  os << ')';
  return os.str();
}

using FinSet = std::set<Val>;

// ---------------------------------------------------------------------------
// Objects, morphisms, types, terms
// ---------------------------------------------------------------------------

struct Obj {
  FinSet elems;
  friend bool operator==(const Obj& a, const Obj& b) { return a.elems == b.elems; }
  friend bool operator!=(const Obj& a, const Obj& b) { return !(a == b); }
  friend bool operator<(const Obj& a, const Obj& b) { return a.elems < b.elems; }
};

struct Mor {
  Obj dom, cod;
  std::map<Val, Val> table; // total on dom, values in cod
  friend bool operator==(const Mor& a, const Mor& b) {
    return a.dom == b.dom && a.cod == b.cod && a.table == b.table;
  }
  friend bool operator!=(const Mor& a, const Mor& b) { return !(a == b); }
  const Val& operator()(const Val& x) const {
    auto it = table.find(x);
    if (it == table.end()) throw CheckError("mor", "value outside the domain: " + show(x));
    return it->second;
  }
};

struct Ty {
  Obj base;
  std::map<Val, FinSet> fiber; // total on base
  friend bool operator==(const Ty& a, const Ty& b) {
    return a.base == b.base && a.fiber == b.fiber;
  }
  friend bool operator!=(const Ty& a, const Ty& b) { return !(a == b); }
  const FinSet& at(const Val& g) const {
    auto it = fiber.find(g);
    if (it == fiber.end()) throw CheckError("ty", "no fiber at " + show(g));
    return it->second;
  }
};

struct Tm {
  Ty ty;
  std::map<Val, Val> vals; // section: vals[g] ∈ ty.fiber[g]
  friend bool operator==(const Tm& a, const Tm& b) { return a.ty == b.ty && a.vals == b.vals; }
  friend bool operator!=(const Tm& a, const Tm& b) { return !(a == b); }
  const Val& operator()(const Val& g) const {
    auto it = vals.find(g);
    if (it == vals.end()) throw CheckError("tm", "no value at " + show(g));
    return it->second;
  }
};

inline void validate_mor(const Mor& f) {
  if (f.table.size() != f.dom.elems.size()) throw CheckError("mor", "table not total");
  for (const auto& [x, y] : f.table) {
    if (!f.dom.elems.count(x)) throw CheckError("mor", "table key outside domain");
    if (!f.cod.elems.count(y)) throw CheckError("mor", "value outside codomain");
  }
}

inline void validate_ty(const Ty& a) {
  if (a.fiber.size() != a.base.elems.size()) throw CheckError("ty", "fibers not total");
  for (const auto& [g, _] : a.fiber)
    if (!a.base.elems.count(g)) throw CheckError("ty", "fiber key outside base");
}

inline void validate_tm(const Tm& t) {
  if (t.vals.size() != t.ty.base.elems.size()) throw CheckError("tm", "section not total");
  for (const auto& [g, v] : t.vals)
    if (!t.ty.at(g).count(v))
      throw CheckError("tm", "fiber mismatch: " + show(v) + " not in the fiber at " + show(g));
}

// ---------------------------------------------------------------------------
// The cwf structure
// ---------------------------------------------------------------------------

class FinSetCwF {
 public:
  using Obj = fs::Obj;
  using Mor = fs::Mor;
  using Ty = fs::Ty;
  using Tm = fs::Tm;

  Obj terminal() const { return Obj{{star()}}; }

  Mor bang(const Obj& g) const {
    Mor m{g, terminal(), {}};
    for (const auto& x : g.elems) m.table[x] = star();
    return m;
  }

  Mor id(const Obj& g) const {
    Mor m{g, g, {}};
    for (const auto& x : g.elems) m.table[x] = x;
    return m;
  }

  /// f ∘ g for f : Δ → Γ, g : Θ → Δ.
  Mor compose(const Mor& f, const Mor& g) const {
    if (!(g.cod == f.dom)) throw CheckError("compose", "object mismatch");
    Mor m{g.dom, f.cod, {}};
    for (const auto& [x, y] : g.table) m.table[x] = f(y);
    return m;
  }

  Ty ty_subst(const Ty& a, const Mor& f) const {
    if (!(a.base == f.cod)) throw CheckError("ty_subst", "fiber mismatch");
    Ty out{f.dom, {}};
    for (const auto& x : f.dom.elems) out.fiber[x] = a.at(f(x));
    return out;
  }

  Tm tm_subst(const Tm& t, const Mor& f) const {
    Tm out{ty_subst(t.ty, f), {}};
    for (const auto& x : f.dom.elems) out.vals[x] = t(f(x));
    return out;
  }

  /// Γ.A: the set of dependent pairs.
  Obj comprehend(const Ty& a) const {
    Obj out;
    for (const auto& g : a.base.elems)
      for (const auto& x : a.at(g)) out.elems.insert(pairv(g, x));
    return out;
  }

  Mor proj(const Ty& a) const {
    Obj ext = comprehend(a);
    Mor m{ext, a.base, {}};
    for (const auto& e : ext.elems) m.table[e] = e.kids[0];
    return m;
  }

  Tm generic_var(const Ty& a) const {
    Tm t{ty_subst(a, proj(a)), {}};
    for (const auto& e : comprehend(a).elems) t.vals[e] = e.kids[1];
    return t;
  }

  /// <f, t>_A : Δ → Γ.A for f : Δ → Γ, t a section of A{f}.
  Mor pair_mor(const Mor& f, const Ty& a, const Tm& t) const {
    if (!(a.base == f.cod)) throw CheckError("pair_mor", "type not over the map target");
    if (!(t.ty == ty_subst(a, f)))
      throw CheckError("pair_mor", "term fiber mismatch");
    Mor m{f.dom, comprehend(a), {}};
    for (const auto& x : f.dom.elems) m.table[x] = pairv(f(x), t(x));
    return m;
  }
};

// ---------------------------------------------------------------------------
// Type constructions (Appendix-style: N_k, Σ, +, Π)
// ---------------------------------------------------------------------------

class Constructions : public FinSetCwF {
 public:
  // ----- N_k -----
  Ty nk_type(std::size_t k, const Obj& base) const {
    FinSet f;
    for (std::size_t i = 0; i < k; ++i) f.insert(atom(std::to_string(i)));
    Ty t{base, {}};
    for (const auto& g : base.elems) t.fiber[g] = f;
    return t;
  }

  Tm nk_elem(std::size_t k, std::size_t i, const Obj& base) const {
    if (i >= k) throw CheckError("nk_elem", "index out of range");
    Tm t{nk_type(k, base), {}};
    for (const auto& g : base.elems) t.vals[g] = atom(std::to_string(i));
    return t;
  }

  /// R_k(P, M_0..M_{k-1}) ∈ Tm(Γ, C{<1, P>}) for C over Γ.N_k.
  Tm nk_elim(std::size_t k, const Ty& c, const Tm& p, const std::vector<Tm>& branches) const {
    const Obj& base = p.ty.base;
    if (!(p.ty == nk_type(k, base))) throw CheckError("nk_elim", "scrutinee is not an N_k term");
    if (!(c.base == comprehend(nk_type(k, base)))) throw CheckError("nk_elim", "motive base");
    if (branches.size() != k) throw CheckError("nk_elim", "branch count");
    for (std::size_t i = 0; i < k; ++i) {
      Ty expect = ty_subst(c, pair_mor(id(base), nk_type(k, base), nk_elem(k, i, base)));
      if (!(branches[i].ty == expect)) throw CheckError("nk_elim", "branch fiber mismatch");
    }
    Tm out{ty_subst(c, pair_mor(id(base), nk_type(k, base), p)), {}};
    for (const auto& g : base.elems) {
      std::size_t i = static_cast<std::size_t>(std::stoull(p(g).tag));
      out.vals[g] = branches[i](g);
    }
    return out;
  }

  // ----- Σ -----
  Ty sigma_type(const Ty& a, const Ty& b) const {
    if (!(b.base == comprehend(a))) throw CheckError("sigma", "second component base");
    Ty out{a.base, {}};
    for (const auto& g : a.base.elems) {
      FinSet f;
      for (const auto& x : a.at(g))
        for (const auto& y : b.at(pairv(g, x))) f.insert(pairv(x, y));
      out.fiber[g] = f;
    }
    return out;
  }

  /// Pair(M, N) for M : A and N : B{<1, M>}.
  Tm pair_term(const Ty& a, const Ty& b, const Tm& m, const Tm& n) const {
    if (!(m.ty == a)) throw CheckError("pair_term", "first component fiber");
    Ty expect = ty_subst(b, pair_mor(id(a.base), a, m));
    if (!(n.ty == expect)) throw CheckError("pair_term", "second component fiber");
    Tm out{sigma_type(a, b), {}};
    for (const auto& g : a.base.elems) out.vals[g] = pairv(m(g), n(g));
    return out;
  }

  /// pair_{A,B} : Γ.A.B → Γ.Σ(A,B), ((γ,x),y) ↦ (γ,(x,y)).
  Mor sigma_pack(const Ty& a, const Ty& b) const {
    Obj dom = comprehend(b);
    Mor m{dom, comprehend(sigma_type(a, b)), {}};
    for (const auto& e : dom.elems)
      m.table[e] = pairv(e.kids[0].kids[0], pairv(e.kids[0].kids[1], e.kids[1]));
    return m;
  }

  /// E(P, K) for C over Γ.Σ(A,B), P : Σ(A,B), K ∈ Tm(Γ.A.B, C{pair_{A,B}}).
  Tm sigma_elim(const Ty& a, const Ty& b, const Ty& c, const Tm& p, const Tm& k) const {
    Ty sig = sigma_type(a, b);
    if (!(p.ty == sig)) throw CheckError("sigma_elim", "scrutinee fiber");
    if (!(c.base == comprehend(sig))) throw CheckError("sigma_elim", "motive base");
    if (!(k.ty == ty_subst(c, sigma_pack(a, b)))) throw CheckError("sigma_elim", "branch fiber");
    Tm out{ty_subst(c, pair_mor(id(a.base), sig, p)), {}};
    for (const auto& g : a.base.elems) {
      const Val& pr = p(g);
      out.vals[g] = k(pairv(pairv(g, pr.kids[0]), pr.kids[1]));
    }
    return out;
  }

  // ----- + -----
  Ty sum_type(const Ty& a, const Ty& b) const {
    if (!(a.base == b.base)) throw CheckError("sum", "base mismatch");
    Ty out{a.base, {}};
    for (const auto& g : a.base.elems) {
      FinSet f;
      for (const auto& x : a.at(g)) f.insert(Val{"inl", {x}});
      for (const auto& y : b.at(g)) f.insert(Val{"inr", {y}});
      out.fiber[g] = f;
    }
    return out;
  }

  Tm inl_term(const Ty& a, const Ty& b, const Tm& m) const {
    if (!(m.ty == a)) throw CheckError("inl", "fiber mismatch");
    Tm out{sum_type(a, b), {}};
    for (const auto& g : a.base.elems) out.vals[g] = Val{"inl", {m(g)}};
    return out;
  }

  Tm inr_term(const Ty& a, const Ty& b, const Tm& m) const {
    if (!(m.ty == b)) throw CheckError("inr", "fiber mismatch");
    Tm out{sum_type(a, b), {}};
    for (const auto& g : a.base.elems) out.vals[g] = Val{"inr", {m(g)}};
    return out;
  }

  /// Γ.A → Γ.(A+B), (γ,x) ↦ (γ, inl x); likewise for inr.
  Mor sum_pack_l(const Ty& a, const Ty& b) const {
    Obj dom = comprehend(a);
    Mor m{dom, comprehend(sum_type(a, b)), {}};
    for (const auto& e : dom.elems) m.table[e] = pairv(e.kids[0], Val{"inl", {e.kids[1]}});
    return m;
  }
  Mor sum_pack_r(const Ty& a, const Ty& b) const {
    Obj dom = comprehend(b);
    Mor m{dom, comprehend(sum_type(a, b)), {}};
    for (const auto& e : dom.elems) m.table[e] = pairv(e.kids[0], Val{"inr", {e.kids[1]}});
    return m;
  }

  /// D(P, K1, K2) for C over Γ.(A+B), K1 ∈ Tm(Γ.A, C{inl-pack}), etc.
  Tm sum_elim(const Ty& a, const Ty& b, const Ty& c, const Tm& p, const Tm& k1,
              const Tm& k2) const {
    Ty sum = sum_type(a, b);
    if (!(p.ty == sum)) throw CheckError("sum_elim", "scrutinee fiber");
    if (!(c.base == comprehend(sum))) throw CheckError("sum_elim", "motive base");
    if (!(k1.ty == ty_subst(c, sum_pack_l(a, b)))) throw CheckError("sum_elim", "left branch");
    if (!(k2.ty == ty_subst(c, sum_pack_r(a, b)))) throw CheckError("sum_elim", "right branch");
    Tm out{ty_subst(c, pair_mor(id(a.base), sum, p)), {}};
    for (const auto& g : a.base.elems) {
      const Val& v = p(g);
      out.vals[g] = v.tag == "inl" ? k1(pairv(g, v.kids[0])) : k2(pairv(g, v.kids[0]));
    }
    return out;
  }

  // ----- Π -----
  /// Functions are encoded canonically: fun(=>(a1,b1), =>(a2,b2), ...) with
  /// the entries ordered by the argument value.
  static Val encode_fun(const std::map<Val, Val>& table) {
    Val out{"fun", {}};
    for (const auto& [x, y] : table) out.kids.push_back(Val{"=>", {x, y}});
    return out;
  }
  static Val apply_fun(const Val& f, const Val& x) {
    for (const auto& e : f.kids)
      if (e.kids[0] == x) return e.kids[1];
    throw CheckError("apply", "argument outside the function table");
  }

  Ty pi_type(const Ty& a, const Ty& b) const {
    if (!(b.base == comprehend(a))) throw CheckError("pi", "second component base");
    Ty out{a.base, {}};
    for (const auto& g : a.base.elems) {
      std::vector<Val> dom(a.at(g).begin(), a.at(g).end());
      std::vector<std::map<Val, Val>> tables{{}};
      for (const auto& x : dom) {
        std::vector<std::map<Val, Val>> next;
        for (const auto& t : tables)
          for (const auto& y : b.at(pairv(g, x))) {
            auto t2 = t;
            t2[x] = y;
            next.push_back(std::move(t2));
          }
        tables = std::move(next);
      }
      FinSet f;
      for (const auto& t : tables) f.insert(encode_fun(t));
      out.fiber[g] = f;
    }
    return out;
  }

  /// λ(P) for P ∈ Tm(Γ.A, B).
  Tm lambda_term(const Ty& a, const Ty& b, const Tm& p) const {
    if (!(p.ty == b)) throw CheckError("lambda", "body fiber mismatch");
    Tm out{pi_type(a, b), {}};
    for (const auto& g : a.base.elems) {
      std::map<Val, Val> table;
      for (const auto& x : a.at(g)) table[x] = p(pairv(g, x));
      out.vals[g] = encode_fun(table);
    }
    return out;
  }

  /// App(M, N) ∈ Tm(Γ, B{<1, N>}).
  Tm app_term(const Ty& a, const Ty& b, const Tm& m, const Tm& n) const {
    if (!(m.ty == pi_type(a, b))) throw CheckError("app", "function fiber mismatch");
    if (!(n.ty == a)) throw CheckError("app", "argument fiber mismatch");
    Tm out{ty_subst(b, pair_mor(id(a.base), a, n)), {}};
    for (const auto& g : a.base.elems) out.vals[g] = apply_fun(m(g), n(g));
    return out;
  }

  // ----- non-dependent abbreviations -----
  Ty weaken_ty(const Ty& a, const Ty& over) const { return ty_subst(a, proj(over)); }
  Ty times_type(const Ty& a, const Ty& b) const { return sigma_type(a, weaken_ty(b, a)); }
  Ty arrow_type(const Ty& a, const Ty& b) const { return pi_type(a, weaken_ty(b, a)); }
};

// ---------------------------------------------------------------------------
// Enumeration helpers (used by the law suites)
// ---------------------------------------------------------------------------

inline std::vector<FinSet> all_subsets(const std::vector<Val>& pool) {
  std::vector<FinSet> out;
  std::size_t n = pool.size();
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    FinSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.insert(pool[i]);
    out.push_back(std::move(s));
  }
  return out;
}

/// All types over `base` with fibers drawn from subsets of `pool`.
inline std::vector<Ty> all_types(const Obj& base, const std::vector<Val>& pool) {
  std::vector<Ty> out{Ty{base, {}}};
  for (const auto& g : base.elems) {
    std::vector<Ty> next;
    for (const auto& t : out)
      for (const auto& f : all_subsets(pool)) {
        Ty t2 = t;
        t2.fiber[g] = f;
        next.push_back(std::move(t2));
      }
    out = std::move(next);
  }
  return out;
}

/// All sections of a type (empty when some fiber is empty).
inline std::vector<Tm> all_terms(const Ty& a) {
  std::vector<Tm> out{Tm{a, {}}};
  for (const auto& g : a.base.elems) {
    std::vector<Tm> next;
    for (const auto& t : out)
      for (const auto& v : a.at(g)) {
        Tm t2 = t;
        t2.vals[g] = v;
        next.push_back(std::move(t2));
      }
    out = std::move(next);
  }
  return out;
}

/// All morphisms dom → cod (empty when cod is empty and dom is not).
inline std::vector<Mor> all_mors(const Obj& dom, const Obj& cod) {
  std::vector<Mor> out{Mor{dom, cod, {}}};
  for (const auto& x : dom.elems) {
    std::vector<Mor> next;
    for (const auto& m : out)
      for (const auto& y : cod.elems) {
        Mor m2 = m;
        m2.table[x] = y;
        next.push_back(std::move(m2));
      }
    out = std::move(next);
  }
  return out;
}

} // namespace dsk::fs
