/**
 * doctrine.hpp — hyperdoctrines over cwfs.
 *
 * A first-order hyperdoctrine assigns to every object Γ a Heyting
 * prealgebra Pr(Γ), to every morphism f a structure-preserving
 * substitution action R{f}, and to every type S over Γ monotone
 * quantifiers ∀_S, ∃_S : Pr(Γ.S) → Pr(Γ) satisfying
 *
 *   3(a)  Q ≤ ∀_S(R)  iff  Q{p(S)} ≤ R
 *   3(b)  ∃_S(R) ≤ Q  iff  R ≤ Q{p(S)}
 *   4(a)  ∀_S(R){f} = ∀_{S{f}}(R{q(f,S)})      (Beck–Chevalley)
 *   4(b)  ∃_S(R){f} = ∃_{S{f}}(R{q(f,S)})
 *
 * Instances provided here:
 *   - SubsetDoctrine: powersets over the finite-set cwf (the semantic
 *     target of the soundness harness);
 *   - HornDoctrine: finite sequences of types ordered by section
 *     inhabitation (meet-semilattice fragment, no quantifiers);
 *   - PatDoctrine: types ordered by inhabitation with connectives from
 *     N₀ / N₁ / × / + / → / Π / Σ (propositions-as-types);
 *   - LTDoctrine: formulas in context with derivability as the
 *     (certificate-checked) order — the symbolic universal model.
 *
 * Evaluator implements the unique per-predicate-interpretation morphism
 * from formulas into the subset doctrine, and the harness checks
 * accepted proofs against all supplied finite models.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dsk/dfol.hpp"
#include "dsk/finset.hpp"
#include "dsk/model.hpp"

namespace dsk {

// ---------------------------------------------------------------------------
// Subset doctrine over the finite-set cwf
// ---------------------------------------------------------------------------

/// Pr(Γ) = the powerset of Γ; substitution is preimage; the quantifiers
/// range over the comprehension fibers.
struct SubsetDoctrine {
  using El = fs::FinSet;

  static bool le(const El& a, const El& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  }
  static El top(const fs::Obj& g) { return g.elems; }
  static El bot() { return {}; }
  static El meet(const El& a, const El& b) {
    El out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.end()));
    return out;
  }
  static El join(const El& a, const El& b) {
    El out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
  }
  /// Relative pseudo-complement in the powerset: (Γ \ a) ∪ b.
  static El imp(const fs::Obj& g, const El& a, const El& b) {
    El out;
    for (const auto& x : g.elems)
      if (!a.count(x) || b.count(x)) out.insert(x);
    return out;
  }
  /// Preimage along f (r ⊆ cod f).
  static El subst(const El& r, const fs::Mor& f) {
    El out;
    for (const auto& [x, y] : f.table)
      if (r.count(y)) out.insert(x);
    return out;
  }
  /// ∀_S(R) = {γ | every a ∈ S(γ) has (γ,a) ∈ R}, for R ⊆ base.S.
  static El forall(const fs::Ty& s, const El& r) {
    El out;
    for (const auto& g : s.base.elems) {
      bool all = true;
      for (const auto& a : s.at(g))
        if (!r.count(fs::pairv(g, a))) {
          all = false;
          break;
        }
      if (all) out.insert(g);
    }
    return out;
  }
  /// ∃_S(R) = {γ | some a ∈ S(γ) has (γ,a) ∈ R}.
  static El exists(const fs::Ty& s, const El& r) {
    El out;
    for (const auto& g : s.base.elems)
      for (const auto& a : s.at(g))
        if (r.count(fs::pairv(g, a))) {
          out.insert(g);
          break;
        }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Horn doctrine (meet-semilattice fragment)
// ---------------------------------------------------------------------------

/// Pr^∧(Γ) = finite sequences ⟨A₁,…,Aₙ⟩ of types over Γ; ⊤ is the empty
/// sequence, ∧ is concatenation, substitution is componentwise, and the
/// order is inhabitation of the iterated-comprehension term sets
///   ⟨Ā⟩ ≤ ⟨B̄⟩ iff Tm(Γ.A₁.A₂{p}…, B_k{p⁽ⁿ⁾}) is inhabited for every k.
/// The order is implemented for the finite-set instance, where
/// inhabitation is decidable fiberwise.
struct HornDoctrine {
  fs::Constructions c;
  using El = std::vector<fs::Ty>; // each component over the same base

  El top() const { return {}; }
  El meet(const El& a, const El& b) const {
    El out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
  }
  El subst(const El& a, const fs::Mor& f) const {
    El out;
    for (const auto& t : a) out.push_back(c.ty_subst(t, f));
    return out;
  }

  /// The iterated projection p⁽ⁿ⁾ : Γ.A₁.A₂{p}…Aₙ{p⁽ⁿ⁻¹⁾} → Γ.
  fs::Mor iterated_weakening(const fs::Obj& base, const El& a) const {
    fs::Mor pm = c.id(base);
    for (const auto& t : a) {
      fs::Ty w = c.ty_subst(t, pm);
      pm = c.compose(pm, c.proj(w));
    }
    return pm;
  }

  bool le(const fs::Obj& base, const El& a, const El& b) const {
    fs::Mor pm = iterated_weakening(base, a);
    for (const auto& t : b) {
      fs::Ty w = c.ty_subst(t, pm);
      for (const auto& [g, fib] : w.fiber) {
        (void)g;
        if (fib.empty()) return false; // no section exists
      }
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// Propositions-as-types doctrine over the finite-set cwf
// ---------------------------------------------------------------------------

/// Pr_C(Γ) = Ty(Γ) with A ≤ B iff Tm(Γ.A, B{p(A)}) is inhabited;
/// ⊤ = N₁, ⊥ = N₀, ∧ = ×, ∨ = +, → = non-dependent Π, ∀ = Π, ∃ = Σ.
struct PatDoctrine {
  fs::Constructions c;
  using El = fs::Ty;

  bool le(const El& a, const El& b) const {
    fs::Ty w = c.ty_subst(b, c.proj(a));
    for (const auto& [g, fib] : w.fiber) {
      (void)g;
      if (fib.empty()) return false;
    }
    return true;
  }
  El top(const fs::Obj& g) const { return c.nk_type(1, g); }
  El bot(const fs::Obj& g) const { return c.nk_type(0, g); }
  El meet(const El& a, const El& b) const { return c.times_type(a, b); }
  El join(const El& a, const El& b) const { return c.sum_type(a, b); }
  El imp(const El& a, const El& b) const { return c.arrow_type(a, b); }
  El subst(const El& a, const fs::Mor& f) const { return c.ty_subst(a, f); }
  El forall(const fs::Ty& s, const El& r) const { return c.pi_type(s, r); }
  El exists(const fs::Ty& s, const El& r) const { return c.sigma_type(s, r); }
};

// ---------------------------------------------------------------------------
// Lindenbaum–Tarski doctrine (symbolic)
// ---------------------------------------------------------------------------

/// Pr(Γ) = checked formulas over Γ; the order φ ≤ ψ holds when a supplied
/// proof tree of φ ⟹ ψ (Γ) is accepted — a certificate checker, not a
/// decision procedure.  Substitution is capture-avoiding; the quantifiers
/// wrap the body in a fresh(Γ) binder.
struct LTDoctrine {
  Theory theory;
  Mode mode = Mode::Dfol;
  using El = FormulaPtr;

  /// Certified order: accepts iff `cert` is a valid proof whose
  /// conclusion is exactly φ ⟹ ψ (Γ).
  bool le(const Context& ctx, const El& phi, const El& psi, const ProofNode& cert) const {
    if (!context_eq(cert.conclusion.ctx, ctx)) return false;
    bool match = mode == Mode::Dfol
                     ? formula_eq(cert.conclusion.lhs, phi) && formula_eq(cert.conclusion.rhs, psi)
                     : alpha_eq(cert.conclusion.lhs, phi) && alpha_eq(cert.conclusion.rhs, psi);
    if (!match) return false;
    check_proof(theory, cert, mode); // throws on an invalid certificate
    return true;
  }

  El top() const { return Formula::top(); }
  El bot() const { return Formula::bot(); }
  El meet(const El& a, const El& b) const { return Formula::conj(a, b); }
  El join(const El& a, const El& b) const { return Formula::disj(a, b); }
  El imp(const El& a, const El& b) const { return Formula::imp(a, b); }

  El subst(const Context& delta, const Context& gamma, const El& f,
           const std::vector<TermPtr>& as) const {
    return subst_capture_avoiding(theory.sig, f, delta, gamma, as);
  }

  /// ∀_{(Γ,A)}(ψ) = (∀x:A)ψ with x = fresh(Γ); ψ lives over ⟨Γ, x:A⟩.
  El forall(const Context& gamma, const Type& a, const El& body) const {
    return Formula::forall(fresh_for(theory.sig, gamma), a, body);
  }
  El exists(const Context& gamma, const Type& a, const El& body) const {
    return Formula::exists(fresh_for(theory.sig, gamma), a, body);
  }

  /// The comprehension companion q(f, A) of ā : Δ → Γ at A over Γ:
  /// (⟨Δ, y:A[ā/Γ]⟩, ⟨Γ, x:A⟩, (ā, y)) with y = fresh(Δ).  Returns the
  /// extended contexts and map terms, for checking Beck–Chevalley.
  struct QSquare {
    Context dom; // ⟨Δ, y:A{f}⟩
    Context cod; // ⟨Γ, x:A⟩
    std::vector<TermPtr> terms;
  };
  QSquare q_square(const Context& delta, const Context& gamma, const std::vector<TermPtr>& as,
                   const Type& a, const Name& x) const {
    QSquare out;
    Name y = fresh_for(theory.sig, delta);
    out.dom = delta;
    out.dom.push_back(CtxEntry{y, dsk::subst(a, as, context_names(gamma))});
    out.cod = gamma;
    out.cod.push_back(CtxEntry{x, a});
    out.terms = as;
    out.terms.push_back(Term::var(y));
    return out;
  }
};

// ---------------------------------------------------------------------------
// Formula evaluation into the subset doctrine
// ---------------------------------------------------------------------------

/// Per-predicate semantic data: for each predicate declaration (Γ_R, R),
/// a subset R* of the interpreted declaration context.
struct PredInterp {
  std::map<Name, fs::FinSet> vals;
};

/// The interpretation morphism determined by a model assignment and a
/// predicate interpretation: atoms by preimage along the interpreted
/// argument tuple, connectives pointwise, quantifiers via ∀_S / ∃_S of
/// the subset doctrine at the interpreted bound type.
class Evaluator {
 public:
  Evaluator(const ModelAssignment& m, const PredInterp& pi) : m_(m), pi_(pi), interp_(m) {}

  const Interpreter& interpreter() const { return interp_; }

  fs::FinSet eval(const Context& ctx, const FormulaPtr& f) const {
    check_formula(m_.sig, ctx, f, Mode::Dfol);
    return go(ctx, f);
  }

  /// eval(lhs) ≤ eval(rhs) as subsets of the interpreted context.
  bool sequent_holds(const Sequent& s) const {
    return SubsetDoctrine::le(eval(s.ctx, s.lhs), eval(s.ctx, s.rhs));
  }

 private:
  fs::FinSet go(const Context& ctx, const FormulaPtr& f) const {
    switch (f->conn) {
      case Conn::Atom: {
        const Declaration& d = m_.sig.at(f->pred);
        auto it = pi_.vals.find(f->pred);
        if (it == pi_.vals.end()) throw CheckError(f->pred, "unassigned predicate symbol");
        std::vector<TermPtr> full = reconstruct_args(m_.sig, ctx, d, f->args);
        fs::Mor fm = interp_.context_map(ctx, d.ctx, full);
        return SubsetDoctrine::subst(it->second, fm);
      }
      case Conn::Top: return SubsetDoctrine::top(interp_.interpret_context(ctx));
      case Conn::Bot: return SubsetDoctrine::bot();
      case Conn::And: return SubsetDoctrine::meet(go(ctx, f->kids[0]), go(ctx, f->kids[1]));
      case Conn::Or: return SubsetDoctrine::join(go(ctx, f->kids[0]), go(ctx, f->kids[1]));
      case Conn::Imp:
        return SubsetDoctrine::imp(interp_.interpret_context(ctx), go(ctx, f->kids[0]),
                                   go(ctx, f->kids[1]));
      case Conn::Forall:
      case Conn::Exists: {
        fs::Ty s = interp_.type(ctx, *f->bound);
        Context ext = ctx;
        ext.push_back(CtxEntry{f->var, *f->bound});
        fs::FinSet body = go(ext, f->kids[0]);
        return f->conn == Conn::Forall ? SubsetDoctrine::forall(s, body)
                                       : SubsetDoctrine::exists(s, body);
      }
    }
    return {};
  }

  const ModelAssignment& m_;
  const PredInterp& pi_;
  Interpreter interp_;
};

inline bool check_sequent_semantic(const ModelAssignment& m, const PredInterp& pi,
                                   const Sequent& s) {
  return Evaluator(m, pi).sequent_holds(s);
}

// ---------------------------------------------------------------------------
// Soundness harness
// ---------------------------------------------------------------------------

struct FiniteModel {
  ModelAssignment assignment;
  PredInterp preds;
};

struct SoundnessReport {
  std::size_t models_supplied = 0;
  std::size_t models_rejected = 0; // some axiom fails in the model
  std::size_t sequents_checked = 0;
  std::size_t violations = 0;
  std::vector<std::string> violation_notes;
};

/// Checks every accepted proof's conclusion against every model whose
/// axioms hold; models violating an axiom are rejected (counted, not an
/// error), proofs are re-verified before evaluation.
inline SoundnessReport soundness_harness(const Theory& t, const std::vector<ProofNode>& proofs,
                                         const std::vector<FiniteModel>& models,
                                         Mode mode = Mode::Dfol) {
  SoundnessReport rep;
  rep.models_supplied = models.size();
  for (const auto& p : proofs) check_proof(t, p, mode);
  for (const auto& m : models) {
    Evaluator ev(m.assignment, m.preds);
    bool ok = true;
    for (const auto& [name, ax] : t.axioms) {
      (void)name;
      if (!ev.sequent_holds(ax)) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++rep.models_rejected;
      continue;
    }
    for (const auto& p : proofs) {
      ++rep.sequents_checked;
      if (!ev.sequent_holds(p.conclusion)) {
        ++rep.violations;
        rep.violation_notes.push_back(show(p.conclusion));
      }
    }
  }
  return rep;
}

} // namespace dsk
