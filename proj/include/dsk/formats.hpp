/**
 * formats.hpp — the s-expression file formats.
 *
 * Theory files: `(vars <unrestricted|debruijn>)` followed by declarations
 * in replay order and axioms:
 *   (type S (ctx (x A) …) (det 1 2))
 *   (fun f (ctx …) (det …) (ret U))
 *   (pred R (ctx …) (det …))
 *   (axiom name (seq (ctx …) φ ψ))
 *
 * Formula syntax: true | false | (and φ ψ) | (or φ ψ) | (imp φ ψ) |
 * (all x A φ) | (ex x A φ) | R | (R a …).  A bare token is a variable
 * unless it names a declared function symbol.
 *
 * Judgements: (context (ctx …)) | (istype A (ctx …)) |
 * (hastype a A (ctx …)).
 *
 * Proof files: (proof (rule <tag>) (seq …) [(name ax)] [(terms a …)]
 * [(premises <proof> …)]).
 *
 * Model files resolve against a theory's signature, one block per
 * declaration: (type S (table (<val> (set <val> …)) …)),
 * (fun f (table (<val> <val>) …)) or (fun f forced),
 * (pred R (subset <val> …)).  Values are canonical tagged trees:
 * bare tokens, (pair a b), (inl v), (inr v), (fn (k v) …).
 *
 * Vocabulary files: (objects O …), (arrow f dom cod), (compose g f h).
 */
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dsk/doctrine.hpp"
#include "dsk/folds.hpp"
#include "dsk/sexpr.hpp"

namespace dsk::fmt {

using sx::Node;
using sx::ParseError;

inline ParseError err(const Node& n, const std::string& what) {
  return ParseError(n.line, n.col, what);
}

inline const std::string& atom_of(const Node& n, const char* what) {
  if (!n.is_atom) throw err(n, std::string("expected ") + what);
  return n.atom;
}

inline const Node& nth(const Node& n, std::size_t i, const char* what) {
  if (n.is_atom || n.kids.size() <= i) throw err(n, std::string("expected ") + what);
  return n.kids[i];
}

inline bool headed(const Node& n, const char* head) {
  return !n.is_atom && !n.kids.empty() && n.kids[0].is_atom && n.kids[0].atom == head;
}

// ---------------------------------------------------------------------------
// Terms, types, contexts
// ---------------------------------------------------------------------------

inline TermPtr parse_term(const Signature& sig, const Node& n) {
  if (n.is_atom) {
    const Declaration* d = sig.find(n.atom);
    if (d) {
      if (d->kind != DeclKind::Fun) throw err(n, "'" + n.atom + "' is not a function symbol");
      return Term::app(n.atom);
    }
    return Term::var(n.atom);
  }
  if (n.kids.empty()) throw err(n, "empty term");
  const std::string& head = atom_of(n.kids[0], "function symbol");
  std::vector<TermPtr> args;
  for (std::size_t i = 1; i < n.kids.size(); ++i) args.push_back(parse_term(sig, n.kids[i]));
  return Term::app(head, std::move(args));
}

inline Node print_term(const TermPtr& t) {
  if (t->is_var || t->args.empty()) return sx::a(t->head);
  std::vector<Node> kids{sx::a(t->head)};
  for (const auto& u : t->args) kids.push_back(print_term(u));
  return sx::l(std::move(kids));
}

inline Type parse_type(const Signature& sig, const Node& n) {
  if (n.is_atom) return Type{n.atom, {}};
  if (n.kids.empty()) throw err(n, "empty type");
  Type out{atom_of(n.kids[0], "type symbol"), {}};
  for (std::size_t i = 1; i < n.kids.size(); ++i) out.args.push_back(parse_term(sig, n.kids[i]));
  return out;
}

inline Node print_type(const Type& a) {
  if (a.args.empty()) return sx::a(a.head);
  std::vector<Node> kids{sx::a(a.head)};
  for (const auto& t : a.args) kids.push_back(print_term(t));
  return sx::l(std::move(kids));
}

inline Context parse_ctx(const Signature& sig, const Node& n) {
  if (!headed(n, "ctx")) throw err(n, "expected (ctx …)");
  Context out;
  for (std::size_t i = 1; i < n.kids.size(); ++i) {
    const Node& e = n.kids[i];
    if (e.is_atom || e.kids.size() != 2) throw err(e, "expected (var type) context entry");
    out.push_back(CtxEntry{atom_of(e.kids[0], "variable"), parse_type(sig, e.kids[1])});
  }
  return out;
}

inline Node print_ctx(const Context& ctx) {
  std::vector<Node> kids{sx::a("ctx")};
  for (const auto& e : ctx) kids.push_back(sx::l({sx::a(e.var), print_type(e.type)}));
  return sx::l(std::move(kids));
}

// ---------------------------------------------------------------------------
// Judgements
// ---------------------------------------------------------------------------

inline Judgement parse_judgement(const Signature& sig, const Node& n) {
  if (headed(n, "context")) return Judgement::is_context(parse_ctx(sig, nth(n, 1, "(ctx …)")));
  if (headed(n, "istype"))
    return Judgement::is_type(parse_ctx(sig, nth(n, 2, "(ctx …)")),
                              parse_type(sig, nth(n, 1, "type")));
  if (headed(n, "hastype"))
    return Judgement::has_type(parse_ctx(sig, nth(n, 3, "(ctx …)")),
                               parse_term(sig, nth(n, 1, "term")),
                               parse_type(sig, nth(n, 2, "type")));
  throw err(n, "expected (context …), (istype …) or (hastype …)");
}

inline Node print_judgement(const Judgement& j) {
  switch (j.kind) {
    case Judgement::IsContext: return sx::l({sx::a("context"), print_ctx(j.ctx)});
    case Judgement::IsType: return sx::l({sx::a("istype"), print_type(*j.type), print_ctx(j.ctx)});
    default:
      return sx::l({sx::a("hastype"), print_term(j.term), print_type(*j.type), print_ctx(j.ctx)});
  }
}

// ---------------------------------------------------------------------------
// Formulas and sequents
// ---------------------------------------------------------------------------

inline FormulaPtr parse_formula(const Signature& sig, const Node& n) {
  if (n.is_atom) {
    if (n.atom == "true") return Formula::top();
    if (n.atom == "false") return Formula::bot();
    return Formula::atom(n.atom);
  }
  if (n.kids.empty()) throw err(n, "empty formula");
  const std::string& head = atom_of(n.kids[0], "connective or predicate");
  auto binary = [&](auto mk) {
    return mk(parse_formula(sig, nth(n, 1, "formula")), parse_formula(sig, nth(n, 2, "formula")));
  };
  if (head == "and") return binary(Formula::conj);
  if (head == "or") return binary(Formula::disj);
  if (head == "imp") return binary(Formula::imp);
  if (head == "all" || head == "ex") {
    Name x = atom_of(nth(n, 1, "bound variable"), "bound variable");
    Type a = parse_type(sig, nth(n, 2, "bound type"));
    FormulaPtr body = parse_formula(sig, nth(n, 3, "body"));
    return head == "all" ? Formula::forall(std::move(x), std::move(a), std::move(body))
                         : Formula::exists(std::move(x), std::move(a), std::move(body));
  }
  std::vector<TermPtr> args;
  for (std::size_t i = 1; i < n.kids.size(); ++i) args.push_back(parse_term(sig, n.kids[i]));
  return Formula::atom(head, std::move(args));
}

inline Node print_formula(const FormulaPtr& f) {
  switch (f->conn) {
    case Conn::Atom: {
      if (f->args.empty()) return sx::a(f->pred);
      std::vector<Node> kids{sx::a(f->pred)};
      for (const auto& t : f->args) kids.push_back(print_term(t));
      return sx::l(std::move(kids));
    }
    case Conn::Top: return sx::a("true");
    case Conn::Bot: return sx::a("false");
    case Conn::And:
      return sx::l({sx::a("and"), print_formula(f->kids[0]), print_formula(f->kids[1])});
    case Conn::Or:
      return sx::l({sx::a("or"), print_formula(f->kids[0]), print_formula(f->kids[1])});
    case Conn::Imp:
      return sx::l({sx::a("imp"), print_formula(f->kids[0]), print_formula(f->kids[1])});
    case Conn::Forall:
      return sx::l({sx::a("all"), sx::a(f->var), print_type(*f->bound),
                    print_formula(f->kids[0])});
    case Conn::Exists:
      return sx::l({sx::a("ex"), sx::a(f->var), print_type(*f->bound),
                    print_formula(f->kids[0])});
  }
  throw std::logic_error("unreachable");
}

inline Sequent parse_sequent(const Signature& sig, const Node& n) {
  if (!headed(n, "seq")) throw err(n, "expected (seq (ctx …) φ ψ)");
  return Sequent{parse_ctx(sig, nth(n, 1, "(ctx …)")), parse_formula(sig, nth(n, 2, "formula")),
                 parse_formula(sig, nth(n, 3, "formula"))};
}

inline Node print_sequent(const Sequent& s) {
  return sx::l({sx::a("seq"), print_ctx(s.ctx), print_formula(s.lhs), print_formula(s.rhs)});
}

// ---------------------------------------------------------------------------
// Theory files
// ---------------------------------------------------------------------------

inline std::vector<std::size_t> parse_det(const Node& n) {
  if (!headed(n, "det")) throw err(n, "expected (det …)");
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < n.kids.size(); ++i) {
    const std::string& tok = atom_of(n.kids[i], "position");
    try {
      out.push_back(static_cast<std::size_t>(std::stoull(tok)));
    } catch (const std::exception&) {
      throw err(n.kids[i], "expected a numeric position");
    }
  }
  return out;
}

inline Theory parse_theory(const std::vector<Node>& forms) {
  if (forms.empty() || !headed(forms[0], "vars"))
    throw ParseError(1, 1, "theory file must start with (vars unrestricted|debruijn)");
  const std::string& fl = atom_of(nth(forms[0], 1, "flavor"), "flavor");
  VarFlavor flavor;
  if (fl == "unrestricted") flavor = VarFlavor::Unrestricted;
  else if (fl == "debruijn") flavor = VarFlavor::DeBruijnPositional;
  else throw err(forms[0], "unknown variable flavor '" + fl + "'");

  Signature sig = empty_signature(flavor);
  std::vector<std::pair<Name, Sequent>> axioms;
  for (std::size_t i = 1; i < forms.size(); ++i) {
    const Node& n = forms[i];
    if (headed(n, "type")) {
      Name s = atom_of(nth(n, 1, "symbol"), "symbol");
      Context ctx = parse_ctx(sig, nth(n, 2, "(ctx …)"));
      sig = extend(sig, Declaration{DeclKind::Type, std::move(s), std::move(ctx),
                                    parse_det(nth(n, 3, "(det …)")), std::nullopt});
    } else if (headed(n, "fun")) {
      Name s = atom_of(nth(n, 1, "symbol"), "symbol");
      Context ctx = parse_ctx(sig, nth(n, 2, "(ctx …)"));
      std::vector<std::size_t> det = parse_det(nth(n, 3, "(det …)"));
      const Node& retn = nth(n, 4, "(ret …)");
      if (!headed(retn, "ret")) throw err(retn, "expected (ret type)");
      sig = extend(sig, Declaration{DeclKind::Fun, std::move(s), std::move(ctx), std::move(det),
                                    parse_type(sig, nth(retn, 1, "type"))});
    } else if (headed(n, "pred")) {
      Name s = atom_of(nth(n, 1, "symbol"), "symbol");
      Context ctx = parse_ctx(sig, nth(n, 2, "(ctx …)"));
      sig = extend(sig, Declaration{DeclKind::Pred, std::move(s), std::move(ctx),
                                    parse_det(nth(n, 3, "(det …)")), std::nullopt});
    } else if (headed(n, "axiom")) {
      Name name = atom_of(nth(n, 1, "axiom name"), "axiom name");
      axioms.emplace_back(std::move(name), parse_sequent(sig, nth(n, 2, "(seq …)")));
    } else {
      throw err(n, "expected a type/fun/pred/axiom form");
    }
  }
  return make_theory(std::move(sig), std::move(axioms));
}

inline std::vector<Node> print_signature(const Signature& sig) {
  std::vector<Node> out;
  out.push_back(sx::l({sx::a("vars"), sx::a(sig.vars.flavor == VarFlavor::Unrestricted
                                                ? "unrestricted"
                                                : "debruijn")}));
  for (const auto& d : sig.decls) {
    std::vector<Node> det{sx::a("det")};
    for (std::size_t k : d.det) det.push_back(sx::a(std::to_string(k)));
    switch (d.kind) {
      case DeclKind::Type:
        out.push_back(sx::l({sx::a("type"), sx::a(d.symbol), print_ctx(d.ctx), sx::l(det)}));
        break;
      case DeclKind::Fun:
        out.push_back(sx::l({sx::a("fun"), sx::a(d.symbol), print_ctx(d.ctx), sx::l(det),
                             sx::l({sx::a("ret"), print_type(*d.ret)})}));
        break;
      case DeclKind::Pred:
        out.push_back(sx::l({sx::a("pred"), sx::a(d.symbol), print_ctx(d.ctx), sx::l(det)}));
        break;
    }
  }
  return out;
}

inline std::vector<Node> print_theory(const Theory& t) {
  std::vector<Node> out = print_signature(t.sig);
  for (const auto& [name, s] : t.axioms)
    out.push_back(sx::l({sx::a("axiom"), sx::a(name), print_sequent(s)}));
  return out;
}

// ---------------------------------------------------------------------------
// Proof files
// ---------------------------------------------------------------------------

inline const std::vector<ProofRule>& all_proof_rules() {
  static const std::vector<ProofRule> rules{
      ProofRule::Axiom, ProofRule::Ref, ProofRule::Cut, ProofRule::ConjL1, ProofRule::ConjL2,
      ProofRule::ConjI, ProofRule::TopI, ProofRule::DisjR1, ProofRule::DisjR2, ProofRule::DisjE,
      ProofRule::BotE, ProofRule::ImpI, ProofRule::ImpE, ProofRule::UnivI, ProofRule::UnivE,
      ProofRule::ExisI, ProofRule::ExisE, ProofRule::Subs};
  return rules;
}

inline ProofRule parse_rule(const Node& n) {
  const std::string& tag = atom_of(n, "rule tag");
  for (ProofRule r : all_proof_rules())
    if (tag == rule_name(r)) return r;
  throw err(n, "unknown proof rule '" + tag + "'");
}

inline ProofNode parse_proof(const Signature& sig, const Node& n) {
  if (!headed(n, "proof")) throw err(n, "expected (proof …)");
  ProofNode out{};
  bool have_rule = false, have_seq = false;
  for (std::size_t i = 1; i < n.kids.size(); ++i) {
    const Node& k = n.kids[i];
    if (headed(k, "rule")) {
      out.rule = parse_rule(nth(k, 1, "rule tag"));
      have_rule = true;
    } else if (headed(k, "seq")) {
      out.conclusion = parse_sequent(sig, k);
      have_seq = true;
    } else if (headed(k, "name")) {
      out.axiom_name = atom_of(nth(k, 1, "axiom name"), "axiom name");
    } else if (headed(k, "terms")) {
      for (std::size_t j = 1; j < k.kids.size(); ++j)
        out.subst_terms.push_back(parse_term(sig, k.kids[j]));
    } else if (headed(k, "premises")) {
      for (std::size_t j = 1; j < k.kids.size(); ++j)
        out.premises.push_back(parse_proof(sig, k.kids[j]));
    } else {
      throw err(k, "expected a rule/seq/name/terms/premises block");
    }
  }
  if (!have_rule) throw err(n, "proof node without a (rule …) block");
  if (!have_seq) throw err(n, "proof node without a (seq …) block");
  return out;
}

inline Node print_proof(const ProofNode& p) {
  std::vector<Node> kids{sx::a("proof"), sx::l({sx::a("rule"), sx::a(rule_name(p.rule))}),
                         print_sequent(p.conclusion)};
  if (!p.axiom_name.empty()) kids.push_back(sx::l({sx::a("name"), sx::a(p.axiom_name)}));
  if (!p.subst_terms.empty()) {
    std::vector<Node> ts{sx::a("terms")};
    for (const auto& t : p.subst_terms) ts.push_back(print_term(t));
    kids.push_back(sx::l(std::move(ts)));
  }
  if (!p.premises.empty()) {
    std::vector<Node> ps{sx::a("premises")};
    for (const auto& q : p.premises) ps.push_back(print_proof(q));
    kids.push_back(sx::l(std::move(ps)));
  }
  return sx::l(std::move(kids));
}

// ---------------------------------------------------------------------------
// Semantic values and model files
// ---------------------------------------------------------------------------

inline fs::Val parse_val(const Node& n) {
  if (n.is_atom) return fs::atom(n.atom);
  if (n.kids.empty()) throw err(n, "empty value");
  const std::string& head = atom_of(n.kids[0], "value tag");
  if (head == "pair") return fs::pairv(parse_val(nth(n, 1, "value")), parse_val(nth(n, 2, "value")));
  if (head == "inl") return fs::Val{"inl", {parse_val(nth(n, 1, "value"))}};
  if (head == "inr") return fs::Val{"inr", {parse_val(nth(n, 1, "value"))}};
  if (head == "fn") {
    std::map<fs::Val, fs::Val> table;
    for (std::size_t i = 1; i < n.kids.size(); ++i) {
      const Node& e = n.kids[i];
      if (e.is_atom || e.kids.size() != 2) throw err(e, "expected (arg result) entry");
      table[parse_val(e.kids[0])] = parse_val(e.kids[1]);
    }
    return fs::Constructions::encode_fun(table);
  }
  throw err(n, "unknown value tag '" + head + "'");
}

inline Node print_val(const fs::Val& v) {
  if (v.kids.empty()) return sx::a(v.tag);
  if (v.tag == ".") return sx::l({sx::a("pair"), print_val(v.kids[0]), print_val(v.kids[1])});
  if (v.tag == "inl" || v.tag == "inr") return sx::l({sx::a(v.tag), print_val(v.kids[0])});
  if (v.tag == "fun") {
    std::vector<Node> kids{sx::a("fn")};
    for (const auto& e : v.kids)
      kids.push_back(sx::l({print_val(e.kids[0]), print_val(e.kids[1])}));
    return sx::l(std::move(kids));
  }
  throw std::logic_error("unprintable value tag: " + v.tag);
}

/// A section whose every fiber is a singleton.
inline fs::Tm forced_section(const fs::Ty& ty) {
  fs::Tm t{ty, {}};
  for (const auto& [g, f] : ty.fiber) {
    if (f.size() != 1)
      throw CheckError("forced", "fiber at " + fs::show(g) + " is not a singleton");
    t.vals[g] = *f.begin();
  }
  return t;
}

/// Replays the signature's declarations, reading the semantic data for
/// each from the matching file block.
inline FiniteModel parse_model(const Signature& sig, const std::vector<Node>& forms) {
  std::map<Name, const Node*> blocks;
  for (const auto& n : forms) {
    if (!headed(n, "type") && !headed(n, "fun") && !headed(n, "pred"))
      throw err(n, "expected a type/fun/pred model block");
    const std::string& sym = atom_of(nth(n, 1, "symbol"), "symbol");
    if (!blocks.emplace(sym, &n).second) throw err(n, "duplicate block for '" + sym + "'");
  }
  FiniteModel out{empty_model(), {}};
  for (const auto& d : sig.decls) {
    auto it = blocks.find(d.symbol);
    if (d.kind == DeclKind::Pred) {
      out.assignment = extend_model_by_pred(out.assignment, d);
      fs::FinSet subset;
      if (it != blocks.end()) {
        const Node& blk = nth(*it->second, 2, "(subset …)");
        if (!headed(blk, "subset")) throw err(blk, "expected (subset …)");
        for (std::size_t i = 1; i < blk.kids.size(); ++i) subset.insert(parse_val(blk.kids[i]));
      }
      out.preds.vals[d.symbol] = std::move(subset);
      continue;
    }
    if (it == blocks.end()) throw ParseError(1, 1, "missing model block for '" + d.symbol + "'");
    const Node& blk = nth(*it->second, 2, "model data");
    Interpreter partial(out.assignment);
    if (d.kind == DeclKind::Type) {
      if (!headed(blk, "table")) throw err(blk, "expected (table …)");
      fs::Ty sem{partial.interpret_context(d.ctx), {}};
      for (std::size_t i = 1; i < blk.kids.size(); ++i) {
        const Node& e = blk.kids[i];
        if (e.is_atom || e.kids.size() != 2 || !headed(e.kids[1], "set"))
          throw err(e, "expected (<val> (set …)) entry");
        fs::FinSet fib;
        for (std::size_t j = 1; j < e.kids[1].kids.size(); ++j)
          fib.insert(parse_val(e.kids[1].kids[j]));
        sem.fiber[parse_val(e.kids[0])] = std::move(fib);
      }
      out.assignment = extend_model_by_type(out.assignment, d, sem);
    } else {
      fs::Ty ret = partial.type(d.ctx, *d.ret);
      fs::Tm sem{ret, {}};
      if (blk.is_atom && blk.atom == "forced") {
        sem = forced_section(ret);
      } else if (headed(blk, "table")) {
        for (std::size_t i = 1; i < blk.kids.size(); ++i) {
          const Node& e = blk.kids[i];
          if (e.is_atom || e.kids.size() != 2) throw err(e, "expected (<val> <val>) entry");
          sem.vals[parse_val(e.kids[0])] = parse_val(e.kids[1]);
        }
      } else {
        throw err(blk, "expected (table …) or forced");
      }
      out.assignment = extend_model_by_fun(out.assignment, d, sem);
    }
  }
  return out;
}

inline std::vector<Node> print_model(const FiniteModel& m) {
  std::vector<Node> out;
  for (const auto& d : m.assignment.sig.decls) {
    if (d.kind == DeclKind::Type) {
      std::vector<Node> table{sx::a("table")};
      for (const auto& [g, fib] : m.assignment.type_vals.at(d.symbol).fiber) {
        std::vector<Node> set{sx::a("set")};
        for (const auto& v : fib) set.push_back(print_val(v));
        table.push_back(sx::l({print_val(g), sx::l(std::move(set))}));
      }
      out.push_back(sx::l({sx::a("type"), sx::a(d.symbol), sx::l(std::move(table))}));
    } else if (d.kind == DeclKind::Fun) {
      std::vector<Node> table{sx::a("table")};
      for (const auto& [g, v] : m.assignment.fun_vals.at(d.symbol).vals)
        table.push_back(sx::l({print_val(g), print_val(v)}));
      out.push_back(sx::l({sx::a("fun"), sx::a(d.symbol), sx::l(std::move(table))}));
    } else {
      std::vector<Node> set{sx::a("subset")};
      auto it = m.preds.vals.find(d.symbol);
      if (it != m.preds.vals.end())
        for (const auto& v : it->second) set.push_back(print_val(v));
      out.push_back(sx::l({sx::a("pred"), sx::a(d.symbol), sx::l(std::move(set))}));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vocabulary files
// ---------------------------------------------------------------------------

inline Vocabulary parse_vocab(const std::vector<Node>& forms) {
  RawVocabulary raw;
  for (const auto& n : forms) {
    if (headed(n, "objects")) {
      for (std::size_t i = 1; i < n.kids.size(); ++i)
        raw.objects.push_back(atom_of(n.kids[i], "object"));
    } else if (headed(n, "arrow")) {
      raw.arrows.push_back(Arrow{atom_of(nth(n, 1, "name"), "name"),
                                 atom_of(nth(n, 2, "domain"), "domain"),
                                 atom_of(nth(n, 3, "codomain"), "codomain")});
    } else if (headed(n, "compose")) {
      raw.equations.push_back({atom_of(nth(n, 1, "g"), "g"), atom_of(nth(n, 2, "f"), "f"),
                               atom_of(nth(n, 3, "h"), "h")});
    } else {
      throw err(n, "expected an objects/arrow/compose form");
    }
  }
  return validate_vocabulary(raw);
}

inline std::vector<Node> print_vocab(const Vocabulary& k) {
  std::vector<Node> out;
  std::vector<Node> objs{sx::a("objects")};
  for (const auto& o : k.objects) objs.push_back(sx::a(o));
  out.push_back(sx::l(std::move(objs)));
  for (const auto& a : k.arrows)
    out.push_back(sx::l({sx::a("arrow"), sx::a(a.name), sx::a(a.dom), sx::a(a.cod)}));
  for (const auto& [pair, h] : k.compose)
    out.push_back(sx::l({sx::a("compose"), sx::a(pair.first), sx::a(pair.second), sx::a(h)}));
  return out;
}

} // namespace dsk::fmt
