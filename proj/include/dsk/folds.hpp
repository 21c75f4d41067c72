/**
 * folds.hpp — FOLDS vocabularies as finite one-way skeletal categories,
 * the translations vocabulary→signature and signature→vocabulary, the
 * level order with its canonical linear extension, and irreducibility
 * analysis.
 *
 * Canonical enumeration (documented in the README): the linear extension
 * ≤* is the stable topological sort of the reachability order by input
 * order, and the context variables of an object are its outgoing
 * non-identity arrows sorted by (position of the codomain in ≤*, input
 * order).
 */
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dsk/checker.hpp"
#include "dsk/signature.hpp"

namespace dsk {

struct Arrow {
  Name name;
  Name dom;
  Name cod;
};

/// Raw input: objects, non-identity arrows, and the composition table as
/// equations g∘f = h.  `h` may be the sentinel "id" (used only to *report*
/// mutually inverse arrows; a valid vocabulary never needs it).
struct RawVocabulary {
  std::vector<Name> objects;
  std::vector<Arrow> arrows;
  std::vector<std::array<Name, 3>> equations; // {g, f, h} meaning g∘f = h
};

/// A validated vocabulary: finite, skeletal, one-way category with a total
/// composition table on composable non-identity pairs.
struct Vocabulary {
  std::vector<Name> objects; // input order
  std::vector<Arrow> arrows; // input order, non-identity only
  std::map<std::pair<Name, Name>, Name> compose; // (g, f) -> g∘f

  const Arrow& arrow(const Name& n) const {
    for (const auto& a : arrows)
      if (a.name == n) return a;
    throw CheckError(n, "unknown arrow");
  }
  bool has_object(const Name& o) const {
    return std::find(objects.begin(), objects.end(), o) != objects.end();
  }
  std::vector<const Arrow*> out_of(const Name& o) const {
    std::vector<const Arrow*> r;
    for (const auto& a : arrows)
      if (a.dom == o) r.push_back(&a);
    return r;
  }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline Vocabulary validate_vocabulary(const RawVocabulary& raw) {
  Vocabulary k;
  k.objects = raw.objects;
  {
    NameSet seen;
    for (const auto& o : raw.objects)
      if (!seen.insert(o).second) throw CheckError(o, "duplicate object");
  }
  NameSet arrow_names;
  for (const auto& a : raw.arrows) {
    if (!k.has_object(a.dom) || !k.has_object(a.cod))
      throw CheckError(a.name, "arrow endpoint is not a declared object");
    if (!arrow_names.insert(a.name).second) throw CheckError(a.name, "duplicate arrow");
    if (a.dom == a.cod)
      throw CheckError(a.name, "one-way violation: non-identity endomorphism");
    k.arrows.push_back(a);
  }
  // Read the equation list into the composition table.
  for (const auto& eq : raw.equations) {
    const Arrow& g = k.arrow(eq[0]);
    const Arrow& f = k.arrow(eq[1]);
    if (f.cod != g.dom)
      throw CheckError(eq[0] + "." + eq[1], "equation composes non-composable arrows");
    if (eq[2] == "id") {
      // g∘f = identity forces f and g to be mutually inverse
      throw CheckError(eq[0] + "." + eq[1],
                       "skeletal violation: mutually inverse non-identity arrows");
    }
    const Arrow& h = k.arrow(eq[2]);
    if (h.dom != f.dom || h.cod != g.cod)
      throw CheckError(eq[2], "composite endpoints do not match");
    auto key = std::make_pair(g.name, f.name);
    auto it = k.compose.find(key);
    if (it != k.compose.end() && it->second != h.name)
      throw CheckError(eq[0] + "." + eq[1], "conflicting composition equations");
    k.compose[key] = h.name;
  }
  // Totality: every composable non-identity pair must have a composite.
  for (const auto& f : k.arrows)
    for (const auto& g : k.arrows)
      if (f.cod == g.dom && !k.compose.count({g.name, f.name}))
        throw CheckError(g.name + "." + f.name, "composition table not total");
  // Associativity over all composable triples (identities are automatic).
  for (const auto& f : k.arrows)
    for (const auto& g : k.arrows) {
      if (f.cod != g.dom) continue;
      for (const auto& h : k.arrows) {
        if (g.cod != h.dom) continue;
        const Name& hg = k.compose.at({h.name, g.name});
        const Name& gf = k.compose.at({g.name, f.name});
        if (k.compose.at({h.name, gf}) != k.compose.at({hg, f.name}))
          throw CheckError(h.name + "." + g.name + "." + f.name, "associativity violation");
      }
    }
  return k;
}

// ---------------------------------------------------------------------------
// Level order and canonical enumeration
// ---------------------------------------------------------------------------

struct LevelOrder {
  // le[b][a] true iff b ≤ a (b reachable from a by a chain of arrows)
  std::map<Name, NameSet> below; // object -> objects ≤ it
  std::vector<Name> linear;      // ≤*: lower objects first

  bool le(const Name& b, const Name& a) const { return below.at(a).count(b) != 0; }
  std::size_t rank(const Name& o) const {
    for (std::size_t i = 0; i < linear.size(); ++i)
      if (linear[i] == o) return i;
    throw CheckError(o, "unknown object");
  }
};

inline LevelOrder level_order(const Vocabulary& k) {
  LevelOrder lo;
  for (const auto& o : k.objects) lo.below[o] = {o};
  // transitive closure of "cod is below dom"
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : k.arrows)
      for (const auto& b : lo.below[a.cod])
        if (lo.below[a.dom].insert(b).second) changed = true;
  }
  // stable topological sort by input order
  NameSet placed;
  while (placed.size() < k.objects.size()) {
    bool progress = false;
    for (const auto& o : k.objects) {
      if (placed.count(o)) continue;
      bool ready = true;
      for (const auto& b : lo.below.at(o))
        if (b != o && !placed.count(b)) ready = false;
      if (ready) {
        lo.linear.push_back(o);
        placed.insert(o);
        progress = true;
      }
    }
    if (!progress) throw CheckError("", "level order is cyclic (not one-way)");
  }
  return lo;
}

/// The canonical enumeration of an object's context variables: outgoing
/// non-identity arrows sorted by (codomain position in ≤*, input order).
inline std::vector<const Arrow*> canonical_out(const Vocabulary& k, const LevelOrder& lo,
                                               const Name& obj) {
  std::vector<std::pair<std::size_t, const Arrow*>> keyed;
  std::size_t idx = 0;
  for (const auto& a : k.arrows) {
    if (a.dom == obj) keyed.push_back({lo.rank(a.cod) * k.arrows.size() + idx, &a});
    ++idx;
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<const Arrow*> out;
  for (auto& [_, a] : keyed) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Vocabulary → signature
// ---------------------------------------------------------------------------

struct VocabSignature {
  Signature sig; // FOLDS-like, standard form, positional variables
  // per object: the arrows giving its context entries, in order
  std::map<Name, std::vector<Name>> enumeration;
};

inline VocabSignature vocab_to_signature(const Vocabulary& k) {
  LevelOrder lo = level_order(k);
  VocabSignature out;
  out.sig = empty_signature(VarFlavor::DeBruijnPositional);
  for (const auto& obj : lo.linear) {
    std::vector<const Arrow*> entries = canonical_out(k, lo, obj);
    out.enumeration[obj] = {};
    Context ctx;
    for (std::size_t j = 0; j < entries.size(); ++j) {
      const Arrow* f = entries[j];
      out.enumeration[obj].push_back(f->name);
      // argument list: for each context entry g of the codomain, the
      // variable of this context carrying the composite g∘f
      std::vector<TermPtr> args;
      for (const auto& gname : out.enumeration.at(f->cod)) {
        const Name& comp = k.compose.at({gname, f->name});
        const auto& en = out.enumeration.at(obj);
        auto it = std::find(en.begin(), en.end(), comp);
        if (it == en.end())
          throw std::logic_error("composite arrow not enumerated before its user");
        args.push_back(Term::var(positional_name(
            static_cast<std::size_t>(it - en.begin()) + 1)));
      }
      ctx.push_back(CtxEntry{positional_name(j + 1), Type{f->cod, std::move(args)}});
    }
    std::vector<std::size_t> det;
    for (std::size_t j = 1; j <= ctx.size(); ++j) det.push_back(j);
    out.sig = extend(out.sig, Declaration{DeclKind::Type, obj, std::move(ctx), std::move(det),
                                          std::nullopt});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Signature → vocabulary
// ---------------------------------------------------------------------------

/// Arrow names in the generated vocabulary are "<object>#<position>".
inline Vocabulary signature_to_vocab(const Signature& sig) {
  RawVocabulary raw;
  for (const auto& d : sig.decls) {
    if (d.kind != DeclKind::Type)
      throw CheckError(d.symbol, "signature is not FOLDS-like (non-type declaration)");
    if (!d.standard_form())
      throw CheckError(d.symbol, "signature is not on standard form");
    raw.objects.push_back(d.symbol);
    for (std::size_t j = 0; j < d.ctx.size(); ++j)
      raw.arrows.push_back(Arrow{d.symbol + "#" + std::to_string(j + 1), d.symbol,
                                 d.ctx[j].type.head});
  }
  // composition: x_k^{cod} ∘ x_j^{S} = the arrow of S carrying the k-th
  // argument variable of the j-th entry's type
  for (const auto& d : sig.decls) {
    for (std::size_t j = 0; j < d.ctx.size(); ++j) {
      const Type& a = d.ctx[j].type;
      const Declaration& cd = sig.at(a.head);
      if (a.args.size() != cd.ctx.size())
        throw CheckError(d.symbol, "argument list does not match the codomain context");
      for (std::size_t kk = 0; kk < a.args.size(); ++kk) {
        const TermPtr& arg = a.args[kk];
        if (!arg->is_var)
          throw CheckError(d.symbol, "signature is not FOLDS-like (non-variable argument)");
        auto pos = context_position(d.ctx, arg->head);
        if (!pos) throw CheckError(d.symbol, "argument variable not in context");
        raw.equations.push_back({a.head + "#" + std::to_string(kk + 1),
                                 d.symbol + "#" + std::to_string(j + 1),
                                 d.symbol + "#" + std::to_string(*pos + 1)});
      }
    }
  }
  return validate_vocabulary(raw);
}

// ---------------------------------------------------------------------------
// Irreducibility
// ---------------------------------------------------------------------------

/// Arrows out of `obj` that do not factor as g∘h with g, h non-identity.
inline std::set<Name> irreducible_arrows(const Vocabulary& k, const Name& obj) {
  if (!k.has_object(obj)) throw CheckError(obj, "unknown object");
  std::set<Name> out;
  for (const auto& f : k.arrows) {
    if (f.dom != obj) continue;
    bool reducible = false;
    for (const auto& h : k.arrows) {
      if (h.dom != obj) continue;
      for (const auto& g : k.arrows) {
        if (g.dom != h.cod) continue;
        if (k.compose.at({g.name, h.name}) == f.name) reducible = true;
      }
    }
    if (!reducible) out.insert(f.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search (exhaustive, used by tests and the round-trip check)
// ---------------------------------------------------------------------------

namespace detail {
inline bool try_arrow_groups(const Vocabulary& k1, const Vocabulary& k2,
                             const std::map<Name, Name>& objmap,
                             std::map<Name, Name>& arrmap,
                             std::vector<std::pair<std::vector<Name>, std::vector<Name>>>& groups,
                             std::size_t gi) {
  if (gi == groups.size()) {
    // functoriality on the composition table
    for (const auto& [pair, h] : k1.compose) {
      const Name& img = k2.compose.at({arrmap.at(pair.first), arrmap.at(pair.second)});
      if (img != arrmap.at(h)) return false;
    }
    return true;
  }
  auto& [g1, g2] = groups[gi];
  std::vector<std::size_t> perm(g2.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    for (std::size_t i = 0; i < g1.size(); ++i) arrmap[g1[i]] = g2[perm[i]];
    if (try_arrow_groups(k1, k2, objmap, arrmap, groups, gi + 1)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (const auto& n : g1) arrmap.erase(n);
  return false;
}
} // namespace detail

/// Exhaustive search for an isomorphism of vocabularies; returns the object
/// mapping if one exists.
inline std::optional<std::map<Name, Name>> find_isomorphism(const Vocabulary& k1,
                                                            const Vocabulary& k2) {
  if (k1.objects.size() != k2.objects.size() || k1.arrows.size() != k2.arrows.size())
    return std::nullopt;
  std::vector<std::size_t> perm(k2.objects.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end());
  do {
    std::map<Name, Name> objmap;
    for (std::size_t i = 0; i < k1.objects.size(); ++i)
      objmap[k1.objects[i]] = k2.objects[perm[i]];
    // group arrows by (dom, cod); hom-set sizes must agree
    std::vector<std::pair<std::vector<Name>, std::vector<Name>>> groups;
    bool ok = true;
    for (const auto& o1 : k1.objects) {
      for (const auto& o2 : k1.objects) {
        std::vector<Name> g1, g2;
        for (const auto& a : k1.arrows)
          if (a.dom == o1 && a.cod == o2) g1.push_back(a.name);
        for (const auto& a : k2.arrows)
          if (a.dom == objmap[o1] && a.cod == objmap[o2]) g2.push_back(a.name);
        if (g1.size() != g2.size()) {
          ok = false;
          break;
        }
        if (!g1.empty()) groups.push_back({g1, g2});
      }
      if (!ok) break;
    }
    if (!ok) continue;
    std::map<Name, Name> arrmap;
    if (detail::try_arrow_groups(k1, k2, objmap, arrmap, groups, 0)) return objmap;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The running two-level example: objects O, A, T with d,c : A→O,
// s,t : T→A, ds,cs : T→O and d∘s = d∘t = ds, c∘s = c∘t = cs.
// Arrow input order c,d,ds,cs,s,t fixes the canonical enumeration.
// ---------------------------------------------------------------------------
inline Vocabulary k2_vocabulary() {
  RawVocabulary raw;
  raw.objects = {"O", "A", "T"};
  raw.arrows = {{"c", "A", "O"}, {"d", "A", "O"}, {"ds", "T", "O"},
                {"cs", "T", "O"}, {"s", "T", "A"}, {"t", "T", "A"}};
  raw.equations = {{"d", "s", "ds"}, {"d", "t", "ds"}, {"c", "s", "cs"}, {"c", "t", "cs"}};
  return validate_vocabulary(raw);
}

} // namespace dsk
