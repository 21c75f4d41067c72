/**
 * dfol.hpp — dependently typed intuitionistic first-order logic over a
 * term/predicate signature: formulas in context (formation rules F1–F4),
 * capture-avoiding and plain syntactic substitution, α-equivalence,
 * formula standardization, theories, and the sequent-calculus proof
 * checker in two modes:
 *
 *   Mode::Dfol      — quantifier rules carry the canonical projection
 *                     substitution φ{p_Γ(x:A)}; all comparison syntactic.
 *   Mode::DfolStar  — formulas are α-classes; quantifier premises use the
 *                     plain formula, substitution is syntactic, and all
 *                     comparison is up to α.
 */
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dsk/checker.hpp"

namespace dsk {

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

enum class Conn { Atom, Top, Bot, And, Or, Imp, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  Conn conn;
  // Atom
  Name pred;
  std::vector<TermPtr> args;
  // And / Or / Imp: kids = {lhs, rhs}; Forall / Exists: kids = {body}
  std::vector<FormulaPtr> kids;
  // Forall / Exists
  Name var;
  std::optional<Type> bound;

  static FormulaPtr atom(Name r, std::vector<TermPtr> as = {}) {
    return std::make_shared<Formula>(Formula{Conn::Atom, std::move(r), std::move(as), {}, {}, {}});
  }
  static FormulaPtr top() { return std::make_shared<Formula>(Formula{Conn::Top, {}, {}, {}, {}, {}}); }
  static FormulaPtr bot() { return std::make_shared<Formula>(Formula{Conn::Bot, {}, {}, {}, {}, {}}); }
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(
        Formula{Conn::And, {}, {}, {std::move(a), std::move(b)}, {}, {}});
  }
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(
        Formula{Conn::Or, {}, {}, {std::move(a), std::move(b)}, {}, {}});
  }
  static FormulaPtr imp(FormulaPtr a, FormulaPtr b) {
    return std::make_shared<Formula>(
        Formula{Conn::Imp, {}, {}, {std::move(a), std::move(b)}, {}, {}});
  }
  static FormulaPtr forall(Name x, Type a, FormulaPtr body) {
    return std::make_shared<Formula>(
        Formula{Conn::Forall, {}, {}, {std::move(body)}, std::move(x), std::move(a)});
  }
  static FormulaPtr exists(Name x, Type a, FormulaPtr body) {
    return std::make_shared<Formula>(
        Formula{Conn::Exists, {}, {}, {std::move(body)}, std::move(x), std::move(a)});
  }
};

inline std::string show(const FormulaPtr& f) {
  switch (f->conn) {
    case Conn::Atom: {
      std::string s = f->pred;
      if (!f->args.empty()) {
        s += "(";
        for (std::size_t i = 0; i < f->args.size(); ++i) {
          if (i) s += ",";
          s += show(f->args[i]);
        }
        s += ")";
      }
      return s;
    }
    case Conn::Top: return "true";
    case Conn::Bot: return "false";
    case Conn::And: return "(" + show(f->kids[0]) + " /\\ " + show(f->kids[1]) + ")";
    case Conn::Or: return "(" + show(f->kids[0]) + " \\/ " + show(f->kids[1]) + ")";
    case Conn::Imp: return "(" + show(f->kids[0]) + " -> " + show(f->kids[1]) + ")";
    case Conn::Forall:
      return "(all " + f->var + ":" + show(*f->bound) + ")" + show(f->kids[0]);
    case Conn::Exists:
      return "(ex " + f->var + ":" + show(*f->bound) + ")" + show(f->kids[0]);
  }
  return "?";
}

/// Literal structural equality.
inline bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  if (a->conn != b->conn) return false;
  switch (a->conn) {
    case Conn::Atom: return a->pred == b->pred && term_list_eq(a->args, b->args);
    case Conn::Top:
    case Conn::Bot: return true;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      return formula_eq(a->kids[0], b->kids[0]) && formula_eq(a->kids[1], b->kids[1]);
    case Conn::Forall:
    case Conn::Exists:
      return a->var == b->var && *a->bound == *b->bound && formula_eq(a->kids[0], b->kids[0]);
  }
  return false;
}

/// FV with the modified quantifier clause FV((Qx:A)φ) = FV(A) ∪ (FV(φ)\{x}).
inline void free_vars_into(const FormulaPtr& f, NameSet& out) {
  switch (f->conn) {
    case Conn::Atom:
      for (const auto& t : f->args) {
        NameSet v = free_vars(t);
        out.insert(v.begin(), v.end());
      }
      break;
    case Conn::Top:
    case Conn::Bot: break;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      free_vars_into(f->kids[0], out);
      free_vars_into(f->kids[1], out);
      break;
    case Conn::Forall:
    case Conn::Exists: {
      NameSet tv = free_vars(*f->bound);
      out.insert(tv.begin(), tv.end());
      NameSet body;
      free_vars_into(f->kids[0], body);
      body.erase(f->var);
      out.insert(body.begin(), body.end());
      break;
    }
  }
}

inline NameSet free_vars(const FormulaPtr& f) {
  NameSet out;
  free_vars_into(f, out);
  return out;
}

/// Formula height: 0 for atoms/constants, 1 + max over subformulas.
inline std::size_t formula_height(const FormulaPtr& f) {
  std::size_t h = 0;
  for (const auto& k : f->kids) h = std::max(h, 1 + formula_height(k));
  return h;
}

/// fr(X), skipping names taken by declared symbols (the checker rejects
/// variables clashing with the symbol namespace).
inline Name fresh_for(const Signature& sig, NameSet used) {
  Name x = sig.vars.pick(used);
  while (sig.find(x)) {
    used.insert(x);
    x = sig.vars.pick(used);
  }
  return x;
}

inline Name fresh_for(const Signature& sig, const Context& ctx) {
  NameSet used = free_vars(ctx);
  for (const auto& e : ctx) used.insert(e.var);
  return fresh_for(sig, std::move(used));
}

// ---------------------------------------------------------------------------
// Formation (F1)–(F4)
// ---------------------------------------------------------------------------

enum class Mode { Dfol, DfolStar };

/// Checks φ form (Γ).  In Dfol mode the binder of a quantifier must be
/// fresh for the ambient context (bound and free variables stay distinct);
/// in DfolStar mode clashing binders are allowed (the formula stands for
/// its α-class) and are checked on a renamed representative.
inline void check_formula(const Signature& sig, const Context& ctx, const FormulaPtr& f,
                          Mode mode = Mode::Dfol, const CheckOptions& opts = {}) {
  switch (f->conn) {
    case Conn::Atom: {
      const Declaration* d = sig.find(f->pred);
      if (!d) throw CheckError(f->pred, "unknown predicate symbol");
      if (d->kind != DeclKind::Pred) throw CheckError(f->pred, "not a predicate symbol");
      check_context(sig, ctx, opts);
      std::vector<TermPtr> full = reconstruct_args(sig, ctx, *d, f->args, opts);
      check_ctx_map(sig, ctx, d->ctx, full, opts);
      return;
    }
    case Conn::Top:
    case Conn::Bot:
      check_context(sig, ctx, opts);
      return;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      check_formula(sig, ctx, f->kids[0], mode, opts);
      check_formula(sig, ctx, f->kids[1], mode, opts);
      return;
    case Conn::Forall:
    case Conn::Exists: {
      check_type(sig, ctx, *f->bound, opts);
      Name x = f->var;
      FormulaPtr body = f->kids[0];
      NameSet ctx_used = free_vars(ctx);
      for (const auto& e : ctx) ctx_used.insert(e.var);
      bool clashes = !sig.vars.is_fresh_for(x, ctx_used) || sig.find(x) != nullptr;
      if (clashes) {
        if (mode == Mode::Dfol)
          throw CheckError(show(f), "binder '" + x + "' is not fresh for the context");
        Name y = fresh_for(sig, ctx);
        std::vector<Name> over;
        std::vector<TermPtr> terms;
        // rename only the binder occurrence; the body is over <Γ, x:A>
        Context renamed;
        for (const auto& e : ctx) renamed.push_back(e);
        // substitute x ↦ y inside the body syntactically (x bound, so a
        // plain recursive rename of free occurrences of x is sound here)
        struct Renamer {
          static FormulaPtr run(const FormulaPtr& g, const Name& from, const TermPtr& to) {
            switch (g->conn) {
              case Conn::Atom: {
                std::vector<TermPtr> as;
                for (const auto& t : g->args) as.push_back(subst(t, {to}, {from}));
                return Formula::atom(g->pred, std::move(as));
              }
              case Conn::Top:
              case Conn::Bot: return g;
              case Conn::And: return Formula::conj(run(g->kids[0], from, to), run(g->kids[1], from, to));
              case Conn::Or: return Formula::disj(run(g->kids[0], from, to), run(g->kids[1], from, to));
              case Conn::Imp: return Formula::imp(run(g->kids[0], from, to), run(g->kids[1], from, to));
              case Conn::Forall:
              case Conn::Exists: {
                if (g->var == from) return g; // shadowed
                Type a = subst(*g->bound, {to}, {from});
                auto mk = g->conn == Conn::Forall ? Formula::forall : Formula::exists;
                return mk(g->var, std::move(a), run(g->kids[0], from, to));
              }
            }
            return g;
          }
        };
        body = Renamer::run(body, x, Term::var(y));
        x = y;
      }
      Context ext = ctx;
      ext.push_back(CtxEntry{x, *f->bound});
      check_formula(sig, ext, body, mode, opts);
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// α-equivalence (locally nameless comparison)
// ---------------------------------------------------------------------------

namespace detail {

using BEnv = std::map<Name, std::size_t>; // binder name → binding depth

inline bool term_alpha(const TermPtr& a, const TermPtr& b, const BEnv& ea, const BEnv& eb) {
  if (a->is_var != b->is_var) return false;
  if (a->is_var) {
    auto ia = ea.find(a->head), ib = eb.find(b->head);
    if (ia != ea.end() || ib != eb.end())
      return ia != ea.end() && ib != eb.end() && ia->second == ib->second;
    return a->head == b->head;
  }
  if (a->head != b->head || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_alpha(a->args[i], b->args[i], ea, eb)) return false;
  return true;
}

inline bool type_alpha(const Type& a, const Type& b, const BEnv& ea, const BEnv& eb) {
  if (a.head != b.head || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!term_alpha(a.args[i], b.args[i], ea, eb)) return false;
  return true;
}

inline bool formula_alpha(const FormulaPtr& a, const FormulaPtr& b, BEnv ea, BEnv eb,
                          std::size_t depth) {
  if (a->conn != b->conn) return false;
  switch (a->conn) {
    case Conn::Atom: {
      if (a->pred != b->pred || a->args.size() != b->args.size()) return false;
      for (std::size_t i = 0; i < a->args.size(); ++i)
        if (!term_alpha(a->args[i], b->args[i], ea, eb)) return false;
      return true;
    }
    case Conn::Top:
    case Conn::Bot: return true;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp:
      return formula_alpha(a->kids[0], b->kids[0], ea, eb, depth) &&
             formula_alpha(a->kids[1], b->kids[1], ea, eb, depth);
    case Conn::Forall:
    case Conn::Exists: {
      if (!type_alpha(*a->bound, *b->bound, ea, eb)) return false;
      ea[a->var] = depth;
      eb[b->var] = depth;
      return formula_alpha(a->kids[0], b->kids[0], std::move(ea), std::move(eb), depth + 1);
    }
  }
  return false;
}

} // namespace detail

inline bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) {
  return detail::formula_alpha(a, b, {}, {}, 0);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

/// Capture-avoiding substitution φ{(Δ,Γ,ā)}: atoms substitute syntactically,
/// connectives go componentwise, quantifiers rebind y = fresh(Δ).
inline FormulaPtr subst_capture_avoiding(const Signature& sig, const FormulaPtr& f,
                                         const Context& delta, const Context& gamma,
                                         const std::vector<TermPtr>& as) {
  std::vector<Name> over = context_names(gamma);
  switch (f->conn) {
    case Conn::Atom: {
      std::vector<TermPtr> args;
      for (const auto& t : f->args) args.push_back(subst(t, as, over));
      return Formula::atom(f->pred, std::move(args));
    }
    case Conn::Top:
    case Conn::Bot: return f;
    case Conn::And:
    case Conn::Or:
    case Conn::Imp: {
      FormulaPtr l = subst_capture_avoiding(sig, f->kids[0], delta, gamma, as);
      FormulaPtr r = subst_capture_avoiding(sig, f->kids[1], delta, gamma, as);
      switch (f->conn) {
        case Conn::And: return Formula::conj(std::move(l), std::move(r));
        case Conn::Or: return Formula::disj(std::move(l), std::move(r));
        default: return Formula::imp(std::move(l), std::move(r));
      }
    }
    case Conn::Forall:
    case Conn::Exists: {
      Name y = fresh_for(sig, delta);
      Type a = subst(*f->bound, as, over);
      Context dext = delta;
      dext.push_back(CtxEntry{y, a});
      Context gext = gamma;
      gext.push_back(CtxEntry{f->var, *f->bound});
      std::vector<TermPtr> aext = as;
      aext.push_back(Term::var(y));
      FormulaPtr body = subst_capture_avoiding(sig, f->kids[0], dext, gext, aext);
      auto mk = f->conn == Conn::Forall ? Formula::forall : Formula::exists;
      return mk(std::move(y), std::move(a), std::move(body));
    }
  }
  return f;
}

/// Substitution along the canonical projection p_Γ(x:A) = (⟨Γ,x:A⟩, Γ, OV(Γ)).
inline FormulaPtr subst_canonical_proj(const Signature& sig, const FormulaPtr& f,
                                       const Context& gamma, const Name& x, const Type& a) {
  Context ext = gamma;
  ext.push_back(CtxEntry{x, a});
  return subst_capture_avoiding(sig, f, ext, gamma, ov(gamma));
}

/// Plain syntactic substitution φ[ā/Γ] on an α-representative: binders
/// clashing with substituted variables or with variables of ā are renamed
/// on demand; the result is defined up to α.
inline FormulaPtr subst_syntactic(const Signature& sig, const FormulaPtr& f,
                                  const std::vector<TermPtr>& as, const std::vector<Name>& over) {
  switch (f->conn) {
    case Conn::Atom: {
      std::vector<TermPtr> args;
      for (const auto& t : f->args) args.push_back(subst(t, as, over));
      return Formula::atom(f->pred, std::move(args));
    }
    case Conn::Top:
    case Conn::Bot: return f;
    case Conn::And:
      return Formula::conj(subst_syntactic(sig, f->kids[0], as, over),
                           subst_syntactic(sig, f->kids[1], as, over));
    case Conn::Or:
      return Formula::disj(subst_syntactic(sig, f->kids[0], as, over),
                           subst_syntactic(sig, f->kids[1], as, over));
    case Conn::Imp:
      return Formula::imp(subst_syntactic(sig, f->kids[0], as, over),
                          subst_syntactic(sig, f->kids[1], as, over));
    case Conn::Forall:
    case Conn::Exists: {
      Type a = subst(*f->bound, as, over);
      // drop a shadowed substitution component
      std::vector<TermPtr> as2;
      std::vector<Name> over2;
      NameSet avoid;
      for (std::size_t i = 0; i < over.size(); ++i) {
        if (over[i] == f->var) continue;
        as2.push_back(as[i]);
        over2.push_back(over[i]);
        NameSet fv = free_vars(as[i]);
        avoid.insert(fv.begin(), fv.end());
        avoid.insert(over[i]);
      }
      Name x = f->var;
      FormulaPtr body = f->kids[0];
      if (avoid.count(x)) { // would capture: rename the binder first
        NameSet used = avoid;
        NameSet bfv = free_vars(body);
        used.insert(bfv.begin(), bfv.end());
        used.insert(x);
        Name y = fresh_for(sig, std::move(used));
        body = subst_syntactic(sig, body, {Term::var(y)}, {x});
        x = y;
      }
      body = subst_syntactic(sig, body, as2, over2);
      auto mk = f->conn == Conn::Forall ? Formula::forall : Formula::exists;
      return mk(std::move(x), std::move(a), std::move(body));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

/// The canonical fresh variable sequence σ(n) = fr({σ(0),…,σ(n−1)}),
/// skipping declared symbols.
inline std::vector<Name> canonical_sequence(const Signature& sig, std::size_t n) {
  std::vector<Name> out;
  NameSet used;
  for (std::size_t k = 0; k < n; ++k) {
    Name x = fresh_for(sig, used);
    used.insert(x);
    out.push_back(std::move(x));
  }
  return out;
}

struct StandardizedFormula {
  Context ctx;      // Γ^σ
  FormulaPtr formula; // φ^σ
};

/// φ^σ per the inductive clauses: atoms substitute σ(Γ) for Γ, connectives
/// recurse, and (Qx:A)φ binds σ(|Γ|) : A[σ(Γ)/Γ].
inline StandardizedFormula standardize_formula(const Signature& sig, const Context& gamma,
                                               const FormulaPtr& f) {
  std::vector<Name> seq = canonical_sequence(sig, gamma.size() + formula_height(f) + 1);
  std::vector<Name> over = context_names(gamma);
  std::vector<TermPtr> sg;
  for (std::size_t i = 0; i < gamma.size(); ++i) sg.push_back(Term::var(seq[i]));

  struct Rec {
    const Signature& sig;
    const std::vector<Name>& seq;
    FormulaPtr run(const Context& g, const std::vector<Name>& over,
                   const std::vector<TermPtr>& sg, const FormulaPtr& f) const {
      switch (f->conn) {
        case Conn::Atom: {
          std::vector<TermPtr> args;
          for (const auto& t : f->args) args.push_back(subst(t, sg, over));
          return Formula::atom(f->pred, std::move(args));
        }
        case Conn::Top:
        case Conn::Bot: return f;
        case Conn::And: return Formula::conj(run(g, over, sg, f->kids[0]), run(g, over, sg, f->kids[1]));
        case Conn::Or: return Formula::disj(run(g, over, sg, f->kids[0]), run(g, over, sg, f->kids[1]));
        case Conn::Imp: return Formula::imp(run(g, over, sg, f->kids[0]), run(g, over, sg, f->kids[1]));
        case Conn::Forall:
        case Conn::Exists: {
          Name y = seq.at(g.size());
          Type a = subst(*f->bound, sg, over);
          Context gext = g;
          gext.push_back(CtxEntry{f->var, *f->bound});
          std::vector<Name> over2 = over;
          over2.push_back(f->var);
          std::vector<TermPtr> sg2 = sg;
          sg2.push_back(Term::var(y));
          FormulaPtr body = run(gext, over2, sg2, f->kids[0]);
          auto mk = f->conn == Conn::Forall ? Formula::forall : Formula::exists;
          return mk(std::move(y), std::move(a), std::move(body));
        }
      }
      return f;
    }
  };

  StandardizedFormula out;
  std::vector<Name> gnames(seq.begin(), seq.begin() + static_cast<long>(gamma.size()));
  out.ctx = rename_context(gamma, gnames);
  out.formula = Rec{sig, seq}.run(gamma, over, sg, f);
  return out;
}

// ---------------------------------------------------------------------------
// Sequents, theories, proofs
// ---------------------------------------------------------------------------

struct Sequent {
  Context ctx;
  FormulaPtr lhs;
  FormulaPtr rhs;
};

inline std::string show(const Sequent& s) {
  return show(s.lhs) + " ==> " + show(s.rhs) + " (" + show(s.ctx) + ")";
}

inline bool sequent_eq(const Sequent& a, const Sequent& b, Mode mode) {
  if (!context_eq(a.ctx, b.ctx)) return false;
  if (mode == Mode::Dfol) return formula_eq(a.lhs, b.lhs) && formula_eq(a.rhs, b.rhs);
  return alpha_eq(a.lhs, b.lhs) && alpha_eq(a.rhs, b.rhs);
}

struct Theory {
  Signature sig;
  std::vector<std::pair<Name, Sequent>> axioms;

  const Sequent* axiom(const Name& n) const {
    for (const auto& [name, s] : axioms)
      if (name == n) return &s;
    return nullptr;
  }
};

inline void check_sequent(const Signature& sig, const Sequent& s, Mode mode = Mode::Dfol) {
  check_formula(sig, s.ctx, s.lhs, mode);
  check_formula(sig, s.ctx, s.rhs, mode);
}

inline Theory make_theory(Signature sig, std::vector<std::pair<Name, Sequent>> axioms,
                          Mode mode = Mode::Dfol) {
  Theory t{std::move(sig), std::move(axioms)};
  for (const auto& [name, s] : t.axioms) {
    try {
      check_sequent(t.sig, s, mode);
    } catch (const CheckError& e) {
      throw CheckError("axiom " + name, e.what());
    }
  }
  return t;
}

enum class ProofRule {
  Axiom, Ref, Cut, ConjL1, ConjL2, ConjI, TopI,
  DisjR1, DisjR2, DisjE, BotE, ImpI, ImpE,
  UnivI, UnivE, ExisI, ExisE, Subs
};

inline const char* rule_name(ProofRule r) {
  switch (r) {
    case ProofRule::Axiom: return "axiom";
    case ProofRule::Ref: return "ref";
    case ProofRule::Cut: return "cut";
    case ProofRule::ConjL1: return "conj-l1";
    case ProofRule::ConjL2: return "conj-l2";
    case ProofRule::ConjI: return "conj-i";
    case ProofRule::TopI: return "top-i";
    case ProofRule::DisjR1: return "disj-r1";
    case ProofRule::DisjR2: return "disj-r2";
    case ProofRule::DisjE: return "disj-e";
    case ProofRule::BotE: return "bot-e";
    case ProofRule::ImpI: return "imp-i";
    case ProofRule::ImpE: return "imp-e";
    case ProofRule::UnivI: return "univ-i";
    case ProofRule::UnivE: return "univ-e";
    case ProofRule::ExisI: return "exis-i";
    case ProofRule::ExisE: return "exis-e";
    case ProofRule::Subs: return "subs";
  }
  return "?";
}

struct ProofNode {
  ProofRule rule;
  Sequent conclusion;
  std::vector<ProofNode> premises;
  Name axiom_name;                 // Axiom
  std::vector<TermPtr> subst_terms; // Subs: ā with Γ taken from the premise
};

namespace detail {

inline void fail(const std::string& path, const std::string& what) {
  throw CheckError(path, what);
}

inline void match(bool ok, const std::string& path, const std::string& what) {
  if (!ok) fail(path, what);
}

inline bool feq(Mode mode, const FormulaPtr& a, const FormulaPtr& b) {
  return mode == Mode::Dfol ? formula_eq(a, b) : alpha_eq(a, b);
}

inline void check_node(const Theory& t, const ProofNode& n, Mode mode, const std::string& path) {
  const Signature& sig = t.sig;
  auto premise_count = [&](std::size_t k) {
    match(n.premises.size() == k, path,
          std::string(rule_name(n.rule)) + ": expected " + std::to_string(k) + " premises, got " +
              std::to_string(n.premises.size()));
  };
  try {
    check_sequent(sig, n.conclusion, mode);
  } catch (const CheckError& e) {
    fail(path, e.what());
  }
  for (std::size_t i = 0; i < n.premises.size(); ++i)
    check_node(t, n.premises[i], mode, path + ".premise[" + std::to_string(i) + "]");

  const Sequent& c = n.conclusion;
  switch (n.rule) {
    case ProofRule::Axiom: {
      premise_count(0);
      const Sequent* ax = t.axiom(n.axiom_name);
      if (!ax) fail(path, "unknown axiom '" + n.axiom_name + "'");
      match(sequent_eq(c, *ax, mode), path,
            "conclusion does not match axiom '" + n.axiom_name + "': expected " + show(*ax));
      return;
    }
    case ProofRule::Ref:
      premise_count(0);
      match(feq(mode, c.lhs, c.rhs), path, "ref: sides differ");
      return;
    case ProofRule::Cut: {
      premise_count(2);
      const Sequent &p0 = n.premises[0].conclusion, &p1 = n.premises[1].conclusion;
      match(context_eq(p0.ctx, c.ctx) && context_eq(p1.ctx, c.ctx), path, "cut: context mismatch");
      match(feq(mode, p0.lhs, c.lhs), path, "cut: left premise lhs mismatch");
      match(feq(mode, p0.rhs, p1.lhs), path, "cut: middle formula mismatch");
      match(feq(mode, p1.rhs, c.rhs), path, "cut: right premise rhs mismatch");
      return;
    }
    case ProofRule::ConjL1:
      premise_count(0);
      match(c.lhs->conn == Conn::And, path, "conj-l1: lhs is not a conjunction");
      match(feq(mode, c.lhs->kids[0], c.rhs), path, "conj-l1: rhs is not the first conjunct");
      return;
    case ProofRule::ConjL2:
      premise_count(0);
      match(c.lhs->conn == Conn::And, path, "conj-l2: lhs is not a conjunction");
      match(feq(mode, c.lhs->kids[1], c.rhs), path, "conj-l2: rhs is not the second conjunct");
      return;
    case ProofRule::ConjI: {
      premise_count(2);
      match(c.rhs->conn == Conn::And, path, "conj-i: rhs is not a conjunction");
      const Sequent &p0 = n.premises[0].conclusion, &p1 = n.premises[1].conclusion;
      match(context_eq(p0.ctx, c.ctx) && context_eq(p1.ctx, c.ctx), path, "conj-i: context mismatch");
      match(feq(mode, p0.lhs, c.lhs) && feq(mode, p1.lhs, c.lhs), path, "conj-i: premise lhs mismatch");
      match(feq(mode, p0.rhs, c.rhs->kids[0]), path, "conj-i: first conjunct mismatch");
      match(feq(mode, p1.rhs, c.rhs->kids[1]), path, "conj-i: second conjunct mismatch");
      return;
    }
    case ProofRule::TopI:
      premise_count(0);
      match(c.rhs->conn == Conn::Top, path, "top-i: rhs is not true");
      return;
    case ProofRule::DisjR1:
      premise_count(0);
      match(c.rhs->conn == Conn::Or, path, "disj-r1: rhs is not a disjunction");
      match(feq(mode, c.lhs, c.rhs->kids[0]), path, "disj-r1: lhs is not the first disjunct");
      return;
    case ProofRule::DisjR2:
      premise_count(0);
      match(c.rhs->conn == Conn::Or, path, "disj-r2: rhs is not a disjunction");
      match(feq(mode, c.lhs, c.rhs->kids[1]), path, "disj-r2: lhs is not the second disjunct");
      return;
    case ProofRule::DisjE: {
      premise_count(2);
      match(c.lhs->conn == Conn::Or, path, "disj-e: lhs is not a disjunction");
      const Sequent &p0 = n.premises[0].conclusion, &p1 = n.premises[1].conclusion;
      match(context_eq(p0.ctx, c.ctx) && context_eq(p1.ctx, c.ctx), path, "disj-e: context mismatch");
      match(feq(mode, p0.lhs, c.lhs->kids[0]), path, "disj-e: first disjunct mismatch");
      match(feq(mode, p1.lhs, c.lhs->kids[1]), path, "disj-e: second disjunct mismatch");
      match(feq(mode, p0.rhs, c.rhs) && feq(mode, p1.rhs, c.rhs), path, "disj-e: premise rhs mismatch");
      return;
    }
    case ProofRule::BotE:
      premise_count(0);
      match(c.lhs->conn == Conn::Bot, path, "bot-e: lhs is not false");
      return;
    case ProofRule::ImpI: {
      premise_count(1);
      match(c.rhs->conn == Conn::Imp, path, "imp-i: rhs is not an implication");
      const Sequent& p = n.premises[0].conclusion;
      match(context_eq(p.ctx, c.ctx), path, "imp-i: context mismatch");
      match(feq(mode, p.lhs, Formula::conj(c.lhs, c.rhs->kids[0])), path,
            "imp-i: premise lhs is not the conjunction of lhs and antecedent");
      match(feq(mode, p.rhs, c.rhs->kids[1]), path, "imp-i: consequent mismatch");
      return;
    }
    case ProofRule::ImpE: {
      premise_count(1);
      match(c.lhs->conn == Conn::And, path, "imp-e: lhs is not a conjunction");
      const Sequent& p = n.premises[0].conclusion;
      match(context_eq(p.ctx, c.ctx), path, "imp-e: context mismatch");
      match(feq(mode, p.lhs, c.lhs->kids[0]), path, "imp-e: premise lhs mismatch");
      match(feq(mode, p.rhs, Formula::imp(c.lhs->kids[1], c.rhs)), path,
            "imp-e: premise rhs is not the implication form");
      return;
    }
    case ProofRule::UnivI: {
      // premise: φ{p_Γ(x:A)} ⟹ ψ (Γ,x:A);  conclusion: φ ⟹ (∀x:A)ψ (Γ)
      premise_count(1);
      match(c.rhs->conn == Conn::Forall, path, "univ-i: rhs is not universal");
      const Sequent& p = n.premises[0].conclusion;
      match(p.ctx.size() == c.ctx.size() + 1 &&
                context_eq(Context(p.ctx.begin(), p.ctx.end() - 1), c.ctx),
            path, "univ-i: premise context does not extend the conclusion context");
      const CtxEntry& last = p.ctx.back();
      match(last.type == *c.rhs->bound, path, "univ-i: bound type mismatch");
      if (mode == Mode::Dfol) {
        match(last.var == c.rhs->var, path, "univ-i: bound variable mismatch");
        FormulaPtr want = subst_canonical_proj(sig, c.lhs, c.ctx, last.var, last.type);
        match(formula_eq(p.lhs, want), path,
              "univ-i: premise lhs is " + show(p.lhs) + " but the projected formula is " +
                  show(want));
        match(formula_eq(p.rhs, c.rhs->kids[0]), path, "univ-i: body mismatch");
      } else {
        match(alpha_eq(p.lhs, c.lhs), path, "univ-i: premise lhs differs from the conclusion lhs");
        NameSet fv = free_vars(c.lhs);
        match(!fv.count(last.var), path, "univ-i: lhs mentions the bound variable");
        match(alpha_eq(Formula::forall(last.var, last.type, p.rhs), c.rhs), path,
              "univ-i: rhs is not the generalization of the premise rhs");
      }
      return;
    }
    case ProofRule::UnivE: {
      // premise: φ ⟹ (∀x:A)ψ (Γ);  conclusion: φ{p_Γ(x:A)} ⟹ ψ (Γ,x:A)
      premise_count(1);
      const Sequent& p = n.premises[0].conclusion;
      match(p.rhs->conn == Conn::Forall, path, "univ-e: premise rhs is not universal");
      match(c.ctx.size() == p.ctx.size() + 1 &&
                context_eq(Context(c.ctx.begin(), c.ctx.end() - 1), p.ctx),
            path, "univ-e: conclusion context does not extend the premise context");
      const CtxEntry& last = c.ctx.back();
      match(last.type == *p.rhs->bound, path, "univ-e: bound type mismatch");
      if (mode == Mode::Dfol) {
        match(last.var == p.rhs->var, path, "univ-e: bound variable mismatch");
        FormulaPtr want = subst_canonical_proj(sig, p.lhs, p.ctx, last.var, last.type);
        match(formula_eq(c.lhs, want), path,
              "univ-e: conclusion lhs is " + show(c.lhs) + " but the projected formula is " +
                  show(want));
        match(formula_eq(c.rhs, p.rhs->kids[0]), path, "univ-e: body mismatch");
      } else {
        match(alpha_eq(c.lhs, p.lhs), path, "univ-e: conclusion lhs differs from the premise lhs");
        match(alpha_eq(Formula::forall(last.var, last.type, c.rhs), p.rhs), path,
              "univ-e: conclusion rhs is not the instantiated body");
      }
      return;
    }
    case ProofRule::ExisE: {
      // premise: ψ ⟹ φ{p_Γ(x:A)} (Γ,x:A);  conclusion: (∃x:A)ψ ⟹ φ (Γ)
      premise_count(1);
      match(c.lhs->conn == Conn::Exists, path, "exis-e: lhs is not existential");
      const Sequent& p = n.premises[0].conclusion;
      match(p.ctx.size() == c.ctx.size() + 1 &&
                context_eq(Context(p.ctx.begin(), p.ctx.end() - 1), c.ctx),
            path, "exis-e: premise context does not extend the conclusion context");
      const CtxEntry& last = p.ctx.back();
      match(last.type == *c.lhs->bound, path, "exis-e: bound type mismatch");
      if (mode == Mode::Dfol) {
        match(last.var == c.lhs->var, path, "exis-e: bound variable mismatch");
        FormulaPtr want = subst_canonical_proj(sig, c.rhs, c.ctx, last.var, last.type);
        match(formula_eq(p.rhs, want), path,
              "exis-e: premise rhs is " + show(p.rhs) + " but the projected formula is " +
                  show(want));
        match(formula_eq(p.lhs, c.lhs->kids[0]), path, "exis-e: body mismatch");
      } else {
        match(alpha_eq(p.rhs, c.rhs), path, "exis-e: premise rhs differs from the conclusion rhs");
        NameSet fv = free_vars(c.rhs);
        match(!fv.count(last.var), path, "exis-e: rhs mentions the bound variable");
        match(alpha_eq(Formula::exists(last.var, last.type, p.lhs), c.lhs), path,
              "exis-e: lhs is not the existential closure of the premise lhs");
      }
      return;
    }
    case ProofRule::ExisI: {
      // premise: (∃x:A)ψ ⟹ φ (Γ);  conclusion: ψ ⟹ φ{p_Γ(x:A)} (Γ,x:A)
      premise_count(1);
      const Sequent& p = n.premises[0].conclusion;
      match(p.lhs->conn == Conn::Exists, path, "exis-i: premise lhs is not existential");
      match(c.ctx.size() == p.ctx.size() + 1 &&
                context_eq(Context(c.ctx.begin(), c.ctx.end() - 1), p.ctx),
            path, "exis-i: conclusion context does not extend the premise context");
      const CtxEntry& last = c.ctx.back();
      match(last.type == *p.lhs->bound, path, "exis-i: bound type mismatch");
      if (mode == Mode::Dfol) {
        match(last.var == p.lhs->var, path, "exis-i: bound variable mismatch");
        FormulaPtr want = subst_canonical_proj(sig, p.rhs, p.ctx, last.var, last.type);
        match(formula_eq(c.rhs, want), path,
              "exis-i: conclusion rhs is " + show(c.rhs) + " but the projected formula is " +
                  show(want));
        match(formula_eq(c.lhs, p.lhs->kids[0]), path, "exis-i: body mismatch");
      } else {
        match(alpha_eq(c.rhs, p.rhs), path, "exis-i: conclusion rhs differs from the premise rhs");
        match(alpha_eq(Formula::exists(last.var, last.type, c.lhs), p.lhs), path,
              "exis-i: conclusion lhs is not the witnessed body");
      }
      return;
    }
    case ProofRule::Subs: {
      // premise: φ ⟹ ψ (Γ);  conclusion: φ{ā} ⟹ ψ{ā} (Δ) with ā : Δ → Γ
      premise_count(1);
      const Sequent& p = n.premises[0].conclusion;
      try {
        check_ctx_map(sig, c.ctx, p.ctx, n.subst_terms);
      } catch (const CheckError& e) {
        fail(path, std::string("subs: ") + e.what());
      }
      FormulaPtr wl, wr;
      if (mode == Mode::Dfol) {
        wl = subst_capture_avoiding(sig, p.lhs, c.ctx, p.ctx, n.subst_terms);
        wr = subst_capture_avoiding(sig, p.rhs, c.ctx, p.ctx, n.subst_terms);
      } else {
        wl = subst_syntactic(sig, p.lhs, n.subst_terms, context_names(p.ctx));
        wr = subst_syntactic(sig, p.rhs, n.subst_terms, context_names(p.ctx));
      }
      match(feq(mode, c.lhs, wl), path,
            "subs: lhs is " + show(c.lhs) + " but the substituted formula is " + show(wl));
      match(feq(mode, c.rhs, wr), path,
            "subs: rhs is " + show(c.rhs) + " but the substituted formula is " + show(wr));
      return;
    }
  }
}

} // namespace detail

/// Verifies a proof tree node by node.  Throws CheckError with a node path
/// ("root.premise[0]...") on the first violation.
inline void check_proof(const Theory& t, const ProofNode& root, Mode mode = Mode::Dfol) {
  detail::check_node(t, root, mode, "root");
}

/// DFOL → DFOL* conversion: over a signature with the de Bruijn property,
/// every DFOL-accepted tree is DFOL*-accepted with the same structure
/// (capture-avoiding and syntactic substitution agree up to α on
/// standard-form maps); the conversion is therefore the identity on the
/// tree, re-verified in the starred mode.
inline ProofNode convert_to_star(const Theory& t, const ProofNode& root) {
  ProofNode out = root;
  check_proof(t, out, Mode::DfolStar);
  return out;
}

} // namespace dsk
