// Shared test fixtures: small signatures used across the unit and
// acceptance suites, built programmatically through extend() so every
// fixture is inductive by construction.
#pragma once

#include <numeric>
#include <vector>

#include "dsk/checker.hpp"
#include "dsk/signature.hpp"
#include "dsk/syntax.hpp"

namespace fixtures {

using namespace dsk;

inline TermPtr V(const Name& x) { return Term::var(x); }
inline TermPtr F(const Name& f, std::vector<TermPtr> args = {}) {
  return Term::app(f, std::move(args));
}
inline Type Ty(const Name& s, std::vector<TermPtr> args = {}) {
  return Type{s, std::move(args)};
}
inline CtxEntry E(const Name& x, Type a) { return CtxEntry{x, std::move(a)}; }

inline Declaration type_decl(Name s, Context ctx, std::vector<std::size_t> det) {
  return Declaration{DeclKind::Type, std::move(s), std::move(ctx), std::move(det), std::nullopt};
}
inline Declaration fun_decl(Name f, Context ctx, std::vector<std::size_t> det, Type ret) {
  return Declaration{DeclKind::Fun, std::move(f), std::move(ctx), std::move(det), std::move(ret)};
}
inline Declaration pred_decl(Name r, Context ctx, std::vector<std::size_t> det) {
  return Declaration{DeclKind::Pred, std::move(r), std::move(ctx), std::move(det), std::nullopt};
}

/// The running semigroup-with-equality signature: a carrier A, a binary
/// equality sort E, a binary operation m, equality axioms as function
/// symbols (with hidden arguments), three constants and one equation
/// constant ax1 : E(m(a,b), m(b,c)).
inline Signature semigroup_sig(VarFlavor flavor = VarFlavor::Unrestricted,
                               bool with_constants = true) {
  auto n = [&](const char* named, std::size_t pos) -> Name {
    return flavor == VarFlavor::Unrestricted ? Name(named) : positional_name(pos);
  };
  Signature s = empty_signature(flavor);
  Name x = n("x", 1), y = n("y", 2);
  s = extend(s, type_decl("A", {}, {}));
  s = extend(s, type_decl("E", {E(x, Ty("A")), E(y, Ty("A"))}, {1, 2}));
  s = extend(s, fun_decl("m", {E(x, Ty("A")), E(y, Ty("A"))}, {1, 2}, Ty("A")));
  // rfl(x) : E(x,x) (x:A)
  s = extend(s, fun_decl("rfl", {E(x, Ty("A"))}, {1}, Ty("E", {V(x), V(x)})));
  // sym(p) : E(y,x) (x,y:A, p:E(x,y)) — x,y hidden
  {
    Name p = n("p", 3);
    s = extend(s, fun_decl("sym",
                           {E(x, Ty("A")), E(y, Ty("A")), E(p, Ty("E", {V(x), V(y)}))}, {3},
                           Ty("E", {V(y), V(x)})));
  }
  // trans(p,q) : E(x,z) (x,y,z:A, p:E(x,y), q:E(y,z)) — x,y,z hidden
  {
    Name z = n("z", 3), p = n("p", 4), q = n("q", 5);
    s = extend(s, fun_decl("trans",
                           {E(x, Ty("A")), E(y, Ty("A")), E(z, Ty("A")),
                            E(p, Ty("E", {V(x), V(y)})), E(q, Ty("E", {V(y), V(z)}))},
                           {4, 5}, Ty("E", {V(x), V(z)})));
  }
  // cng(p,q) : E(m(x,u), m(y,v)) (x,y,u,v:A, p:E(x,y), q:E(u,v))
  {
    Name u = n("u", 3), v = n("v", 4), p = n("p", 5), q = n("q", 6);
    s = extend(s, fun_decl("cng",
                           {E(x, Ty("A")), E(y, Ty("A")), E(u, Ty("A")), E(v, Ty("A")),
                            E(p, Ty("E", {V(x), V(y)})), E(q, Ty("E", {V(u), V(v)}))},
                           {5, 6},
                           Ty("E", {F("m", {V(x), V(u)}), F("m", {V(y), V(v)})})));
  }
  // assoc(x,y,z) : E(m(m(x,y),z), m(x,m(y,z))) (x,y,z:A)
  {
    Name z = n("z", 3);
    s = extend(s, fun_decl("assoc", {E(x, Ty("A")), E(y, Ty("A")), E(z, Ty("A"))}, {1, 2, 3},
                           Ty("E", {F("m", {F("m", {V(x), V(y)}), V(z)}),
                                    F("m", {V(x), F("m", {V(y), V(z)})})})));
  }
  if (with_constants) {
    s = extend(s, fun_decl("a", {}, {}, Ty("A")));
    s = extend(s, fun_decl("b", {}, {}, Ty("A")));
    s = extend(s, fun_decl("c", {}, {}, Ty("A")));
    s = extend(s, fun_decl("ax1", {}, {},
                           Ty("E", {F("m", {F("a"), F("b")}), F("m", {F("b"), F("c")})})));
  }
  return s;
}

/// The semigroup signature with every argument written out (det = 1..n for
/// each declaration) in the positional flavor.  Model assignments are only
/// defined over such signatures.
inline Signature semigroup_sig_standard(bool with_constants = true) {
  Signature ref = semigroup_sig(VarFlavor::DeBruijnPositional, with_constants);
  Signature s = empty_signature(VarFlavor::DeBruijnPositional);
  for (Declaration d : ref.decls) {
    d.det.resize(d.ctx.size());
    std::iota(d.det.begin(), d.det.end(), std::size_t{1});
    s = extend(s, d);
  }
  return s;
}

/// A tiny "universe" signature: U type (); T(x) type (x:U); a : U;
/// b(y) : U (y : T(a)).  T works as a dependent type over U.
inline Signature universe_sig(VarFlavor flavor = VarFlavor::Unrestricted) {
  Name x = flavor == VarFlavor::Unrestricted ? "x" : positional_name(1);
  Name y = flavor == VarFlavor::Unrestricted ? "y" : positional_name(1);
  Signature s = empty_signature(flavor);
  s = extend(s, type_decl("U", {}, {}));
  s = extend(s, type_decl("T", {E(x, Ty("U"))}, {1}));
  s = extend(s, fun_decl("a", {}, {}, Ty("U")));
  s = extend(s, fun_decl("b", {E(y, Ty("T", {F("a")}))}, {1}, Ty("U")));
  return s;
}

/// Plain one-sort signature with a unary predicate R — the smallest theory
/// that can state quantified sequents.
inline Signature pred_sig(VarFlavor flavor = VarFlavor::Unrestricted) {
  Name x = flavor == VarFlavor::Unrestricted ? "x" : positional_name(1);
  Signature s = empty_signature(flavor);
  s = extend(s, type_decl("A", {}, {}));
  s = extend(s, pred_decl("R", {E(x, Ty("A"))}, {1}));
  return s;
}

} // namespace fixtures
