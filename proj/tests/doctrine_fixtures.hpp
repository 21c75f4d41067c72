// Fixtures for the doctrine layer: a positional predicate signature with a
// binary predicate E and unary R, enumerated finite models over it, and
// positional proof trees for the soundness harness.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dsk/doctrine.hpp"
#include "fixtures.hpp"

namespace fixtures {

using namespace dsk;

/// Standard-form positional signature: type A; E(1,2) and R(1) predicates;
/// constant c0 : A.
inline Signature doctrine_sig() {
  Signature s = empty_signature(VarFlavor::DeBruijnPositional);
  s = extend(s, type_decl("A", {}, {}));
  s = extend(s, pred_decl("E", {E("1", Ty("A")), E("2", Ty("A"))}, {1, 2}));
  s = extend(s, pred_decl("R", {E("1", Ty("A"))}, {1}));
  s = extend(s, fun_decl("c0", {}, {}, Ty("A")));
  return s;
}

/// Theory with the symmetry axiom  esym : E(1,2) ==> E(2,1)  (1:A, 2:A).
inline Theory doctrine_theory() {
  Signature s = doctrine_sig();
  Context g{E("1", Ty("A")), E("2", Ty("A"))};
  Sequent ax{g, Formula::atom("E", {V("1"), V("2")}), Formula::atom("E", {V("2"), V("1")})};
  return make_theory(std::move(s), {{"esym", ax}});
}

/// A model over doctrine_sig with carrier {0,…,n−1}, c0 ↦ c0val, and the
/// given predicate subsets (elements of the interpreted contexts).
inline FiniteModel make_finite_model(std::size_t n, std::size_t c0val, const fs::FinSet& e_star,
                                     const fs::FinSet& r_star) {
  fs::Constructions c;
  ModelAssignment m = empty_model();
  fs::FinSet carrier;
  for (std::size_t i = 0; i < n; ++i) carrier.insert(fs::atom(std::to_string(i)));
  fs::Ty a_sem{c.terminal(), {{fs::star(), carrier}}};
  m = extend_model_by_type(m, type_decl("A", {}, {}), a_sem);
  m = extend_model_by_pred(m, pred_decl("E", {E("1", Ty("A")), E("2", Ty("A"))}, {1, 2}));
  m = extend_model_by_pred(m, pred_decl("R", {E("1", Ty("A"))}, {1}));
  fs::Tm c0_sem{a_sem, {{fs::star(), fs::atom(std::to_string(c0val))}}};
  m = extend_model_by_fun(m, fun_decl("c0", {}, {}, Ty("A")), c0_sem);
  FiniteModel out{std::move(m), PredInterp{{{"E", e_star}, {"R", r_star}}}};
  return out;
}

/// Elements of [[⟨1:A⟩]] and [[⟨1:A, 2:A⟩]] for carrier {0..n−1}.
inline fs::Val elem1(std::size_t x) {
  return fs::pairv(fs::star(), fs::atom(std::to_string(x)));
}
inline fs::Val elem2(std::size_t x, std::size_t y) {
  return fs::pairv(elem1(x), fs::atom(std::to_string(y)));
}

/// Every model with carrier size 1..max_n, every c0 value, and every
/// choice of E* and R* (axiom-violating models included on purpose —
/// the harness must reject them, not fail).
inline std::vector<FiniteModel> finite_models(std::size_t max_n) {
  std::vector<FiniteModel> out;
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<fs::Val> pool1, pool2;
    for (std::size_t x = 0; x < n; ++x) {
      pool1.push_back(elem1(x));
      for (std::size_t y = 0; y < n; ++y) pool2.push_back(elem2(x, y));
    }
    for (const auto& e_star : fs::all_subsets(pool2))
      for (const auto& r_star : fs::all_subsets(pool1))
        for (std::size_t c0val = 0; c0val < n; ++c0val)
          out.push_back(make_finite_model(n, c0val, e_star, r_star));
  }
  return out;
}

/// Positional rendering of the sample proof:
///   true ==> (all 1:A)(R(1) -> R(1))  (<>).
inline ProofNode positional_sample_proof() {
  Context g1{E("1", Ty("A"))};
  FormulaPtr r1 = Formula::atom("R", {V("1")});
  ProofNode conj_l2{ProofRule::ConjL2, Sequent{g1, Formula::conj(Formula::top(), r1), r1},
                    {}, {}, {}};
  ProofNode imp_i{ProofRule::ImpI, Sequent{g1, Formula::top(), Formula::imp(r1, r1)},
                  {conj_l2}, {}, {}};
  ProofNode univ_i{ProofRule::UnivI,
                   Sequent{{}, Formula::top(),
                           Formula::forall("1", Ty("A"), Formula::imp(r1, r1))},
                   {imp_i}, {}, {}};
  return univ_i;
}

/// The axiom instantiated at (c0, c0):  E(c0,c0) ==> E(c0,c0)  (<>).
inline ProofNode positional_axiom_proof() {
  Context g2{E("1", Ty("A")), E("2", Ty("A"))};
  ProofNode ax{ProofRule::Axiom,
               Sequent{g2, Formula::atom("E", {V("1"), V("2")}),
                       Formula::atom("E", {V("2"), V("1")})},
               {}, "esym", {}};
  FormulaPtr ecc = Formula::atom("E", {F("c0"), F("c0")});
  return ProofNode{ProofRule::Subs, Sequent{{}, ecc, ecc}, {ax}, {}, {F("c0"), F("c0")}};
}

/// Existential round trip:  (ex 1:A)R(1) ==> (ex 1:A)R(1)  (<>).
inline ProofNode positional_exists_proof() {
  Signature s = doctrine_sig();
  FormulaPtr r1 = Formula::atom("R", {V("1")});
  FormulaPtr ex = Formula::exists("1", Ty("A"), r1);
  Context g1{E("1", Ty("A"))};
  ProofNode refn{ProofRule::Ref, Sequent{{}, ex, ex}, {}, {}, {}};
  ProofNode exis_i{ProofRule::ExisI,
                   Sequent{g1, r1, subst_canonical_proj(s, ex, {}, "1", Ty("A"))},
                   {refn}, {}, {}};
  return ProofNode{ProofRule::ExisE, Sequent{{}, ex, ex}, {exis_i}, {}, {}};
}

} // namespace fixtures
