// Bounded enumeration of well-typed syntax over a signature — the oracle
// and data generator for property tests.
#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "dsk/checker.hpp"

namespace gen {

using namespace dsk;

/// All well-typed terms over (sig, ctx) up to the given application depth,
/// deduplicated by printed form.
inline std::vector<TermPtr> enumerate_terms(const Signature& sig, const Context& ctx,
                                            int depth, std::size_t cap = 4000) {
  std::vector<TermPtr> pool;
  std::map<std::string, bool> seen;
  auto add = [&](const TermPtr& t) {
    std::string key = show(t);
    if (seen.count(key)) return;
    seen[key] = true;
    pool.push_back(t);
  };
  for (const auto& e : ctx) add(Term::var(e.var));
  for (const auto& d : sig.decls)
    if (d.kind == DeclKind::Fun && d.det.empty()) add(Term::app(d.symbol));

  for (int level = 1; level <= depth; ++level) {
    std::vector<TermPtr> prev = pool;
    for (const auto& d : sig.decls) {
      if (d.kind != DeclKind::Fun || d.det.empty()) continue;
      // all tuples of written arguments drawn from the previous level
      std::vector<std::vector<TermPtr>> tuples{{}};
      for (std::size_t k = 0; k < d.det.size(); ++k) {
        std::vector<std::vector<TermPtr>> next;
        for (const auto& tup : tuples) {
          if (next.size() >= cap) break;
          for (const auto& t : prev) {
            auto t2 = tup;
            t2.push_back(t);
            next.push_back(std::move(t2));
            if (next.size() >= cap) break;
          }
        }
        tuples = std::move(next);
      }
      for (const auto& tup : tuples) {
        TermPtr cand = Term::app(d.symbol, tup);
        try {
          infer_type(sig, ctx, cand);
          add(cand);
        } catch (const CheckError&) {
        }
        if (pool.size() >= cap) return pool;
      }
    }
  }
  return pool;
}

inline std::vector<TermPtr> terms_of_type(const Signature& sig, const Context& ctx,
                                          const Type& want, int depth,
                                          std::size_t cap = 4000) {
  std::vector<TermPtr> out;
  for (const auto& t : enumerate_terms(sig, ctx, depth, cap))
    if (infer_type(sig, ctx, t).first == want) out.push_back(t);
  return out;
}

/// A per-context pool of enumerated terms with their inferred types, cached
/// so repeated sampling against the same context is a linear scan.
using TypedPool = std::vector<std::pair<TermPtr, Type>>;
using PoolCache = std::map<std::string, TypedPool>;

inline const TypedPool& typed_pool(PoolCache& cache, const Signature& sig, const Context& ctx,
                                   int depth, std::size_t cap = 4000) {
  std::string key = show(ctx) + "#" + std::to_string(depth) + "#" + std::to_string(cap);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  TypedPool out;
  for (const auto& t : enumerate_terms(sig, ctx, depth, cap))
    out.emplace_back(t, infer_type(sig, ctx, t).first);
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

/// Cached variant of random_map_terms.
inline std::optional<std::vector<TermPtr>> random_map_terms(std::mt19937_64& rng,
                                                            PoolCache& cache,
                                                            const Signature& sig,
                                                            const Context& src,
                                                            const Context& tgt, int depth,
                                                            std::size_t cap = 4000) {
  const TypedPool& pool = typed_pool(cache, sig, src, depth, cap);
  std::vector<TermPtr> terms;
  std::vector<Name> over;
  for (std::size_t k = 0; k < tgt.size(); ++k) {
    Type want = over.empty() ? tgt[k].type : subst(tgt[k].type, terms, over);
    std::vector<const TermPtr*> cands;
    for (const auto& [t, ty] : pool)
      if (ty == want) cands.push_back(&t);
    if (cands.empty()) return std::nullopt;
    terms.push_back(*cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)]);
    over.push_back(tgt[k].var);
  }
  return terms;
}

/// A random checked context map src → tgt, if one exists at the depth.
inline std::optional<std::vector<TermPtr>> random_map_terms(std::mt19937_64& rng,
                                                            const Signature& sig,
                                                            const Context& src,
                                                            const Context& tgt, int depth,
                                                            std::size_t cap = 4000) {
  std::vector<TermPtr> terms;
  std::vector<Name> over;
  for (std::size_t k = 0; k < tgt.size(); ++k) {
    Type want = over.empty() ? tgt[k].type : subst(tgt[k].type, terms, over);
    std::vector<TermPtr> cands = terms_of_type(sig, src, want, depth, cap);
    if (cands.empty()) return std::nullopt;
    terms.push_back(cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)]);
    over.push_back(tgt[k].var);
  }
  return terms;
}

/// A pool of checked contexts over the semigroup-style signature (carrier A,
/// equality sort E), used by the free-cwf and formula generators.
inline std::vector<Context> context_pool(bool positional) {
  auto n = [&](const char* named, std::size_t pos) -> Name {
    return positional ? positional_name(pos) : Name(named);
  };
  auto A = Type{"A", {}};
  auto E2 = [&](Name u, Name v) { return Type{"E", {Term::var(u), Term::var(v)}}; };
  Name x = n("x", 1), y = n("y", 2), z = n("z", 3);
  std::vector<Context> pool;
  pool.push_back({});
  pool.push_back({{x, A}});
  pool.push_back({{x, A}, {y, A}});
  pool.push_back({{x, A}, {y, A}, {z, A}});
  pool.push_back({{x, A}, {y, A}, {n("p", 3), E2(x, y)}});
  pool.push_back({{x, A}, {n("p", 2), E2(x, x)}});
  pool.push_back({{x, A}, {y, A}, {n("p", 3), E2(x, y)}, {n("q", 4), E2(y, x)}});
  return pool;
}

} // namespace gen
