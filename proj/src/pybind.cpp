// dskcore — Python bindings for the dependent-sorts kernel.
//
// The API is string based: theories, judgements, proofs, models, and
// vocabularies come in as the same s-expression text the command-line tool
// reads, and results go back out as printed s-expressions.  Parse errors
// raise ValueError, checking failures raise dskcore.CheckFailure.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dsk/doctrine.hpp"
#include "dsk/formats.hpp"
#include "dsk/laws.hpp"

namespace py = pybind11;
using namespace dsk;

namespace {

Theory load_theory(const std::string& text) { return fmt::parse_theory(sx::parse(text)); }

sx::Node parse_one(const std::string& text, const char* what) {
  std::vector<sx::Node> forms = sx::parse(text);
  if (forms.size() != 1) throw sx::ParseError(1, 1, std::string("expected exactly one ") + what);
  return forms[0];
}

py::dict check_sig(const std::string& theory) {
  Theory t = load_theory(theory);
  py::dict rep;
  rep["decls"] = t.sig.decls.size();
  rep["axioms"] = t.axioms.size();
  rep["vars"] = t.sig.vars.flavor == VarFlavor::Unrestricted ? "unrestricted" : "debruijn";
  return rep;
}

std::size_t check_judgement_py(const std::string& theory, const std::string& judgement) {
  Theory t = load_theory(theory);
  Judgement j = fmt::parse_judgement(t.sig, parse_one(judgement, "judgement"));
  return check_judgement(t.sig, j)->height;
}

std::string infer_py(const std::string& theory, const std::string& ctx, const std::string& term) {
  Theory t = load_theory(theory);
  Context g = fmt::parse_ctx(t.sig, parse_one(ctx, "context"));
  TermPtr tm = fmt::parse_term(t.sig, parse_one(term, "term"));
  auto [ty, d] = infer_type(t.sig, g, tm);
  (void)d;
  return sx::print(fmt::print_type(ty));
}

void check_proof_py(const std::string& theory, const std::string& proof,
                    const std::string& mode) {
  if (mode != "dfol" && mode != "dfolstar")
    throw sx::ParseError(1, 1, "mode must be 'dfol' or 'dfolstar'");
  Theory t = load_theory(theory);
  ProofNode p = fmt::parse_proof(t.sig, parse_one(proof, "proof"));
  check_proof(t, p, mode == "dfol" ? Mode::Dfol : Mode::DfolStar);
}

std::string standardize_judgement_py(const std::string& theory, const std::string& judgement) {
  Theory t = load_theory(theory);
  Judgement j = fmt::parse_judgement(t.sig, parse_one(judgement, "judgement"));
  return sx::print(fmt::print_judgement(standardize(t.sig, j).judgement));
}

std::string standardize_formula_py(const std::string& theory, const std::string& ctx,
                                   const std::string& formula) {
  Theory t = load_theory(theory);
  Context g = fmt::parse_ctx(t.sig, parse_one(ctx, "context"));
  FormulaPtr f = fmt::parse_formula(t.sig, parse_one(formula, "formula"));
  check_formula(t.sig, g, f, Mode::Dfol);
  StandardizedFormula s = standardize_formula(t.sig, g, f);
  return sx::print(
      sx::l({sx::a("formula"), fmt::print_ctx(s.ctx), fmt::print_formula(s.formula)}));
}

bool eval_sequent_py(const std::string& theory, const std::string& model,
                     const std::string& sequent) {
  Theory t = load_theory(theory);
  FiniteModel m = fmt::parse_model(t.sig, sx::parse(model));
  Sequent s = fmt::parse_sequent(t.sig, parse_one(sequent, "sequent"));
  Evaluator ev(m.assignment, m.preds);
  return SubsetDoctrine::le(ev.eval(s.ctx, s.lhs), ev.eval(s.ctx, s.rhs));
}

std::string transform_py(const std::string& theory, const std::string& judgement,
                         const std::string& kind, std::size_t at, const std::string& var,
                         const std::string& type) {
  Theory t = load_theory(theory);
  Judgement j = fmt::parse_judgement(t.sig, parse_one(judgement, "judgement"));
  DerivPtr d = check_judgement(t.sig, j);
  TransformSpec spec{at, var, {}};
  if (!type.empty()) spec.type = fmt::parse_type(t.sig, parse_one(type, "type"));
  TransformKind k = kind == "weaken"        ? TransformKind::Weaken
                    : kind == "strengthen"  ? TransformKind::Strengthen
                    : kind == "interchange" ? TransformKind::Interchange
                                            : throw sx::ParseError(
                                                  1, 1,
                                                  "kind must be weaken, strengthen, or "
                                                  "interchange");
  return sx::print(fmt::print_judgement(structural_transform(k, t.sig, d, spec)->conclusion));
}

std::string folds_to_sig(const std::string& vocab) {
  VocabSignature vs = vocab_to_signature(fmt::parse_vocab(sx::parse(vocab)));
  return sx::print_all(fmt::print_signature(vs.sig));
}

std::string sig_to_folds(const std::string& theory) {
  Theory t = load_theory(theory);
  return sx::print_all(fmt::print_vocab(signature_to_vocab(t.sig)));
}

std::size_t laws_py(const std::string& suite, std::size_t size) {
  if (size < 1 || size > 4) throw sx::ParseError(1, 1, "size must be in 1..4");
  if (suite == "cwf") return laws::run_cwf_laws(size);
  if (suite == "doctrine") return laws::run_doctrine_laws(size);
  throw sx::ParseError(1, 1, "suite must be 'cwf' or 'doctrine'");
}

} // namespace

PYBIND11_MODULE(dskcore, m) {
  m.doc() = "proof-checking kernel for first-order logic with dependent sorts";

  py::register_exception<sx::ParseError>(m, "ParseFailure", PyExc_ValueError);
  py::register_exception<CheckError>(m, "CheckFailure", PyExc_RuntimeError);

  m.def("check_sig", &check_sig, py::arg("theory"),
        "Replay a theory file's declarations and axioms; returns a summary dict.");
  m.def("check_judgement", &check_judgement_py, py::arg("theory"), py::arg("judgement"),
        "Check a judgement against a theory; returns the derivation height.");
  m.def("infer", &infer_py, py::arg("theory"), py::arg("ctx"), py::arg("term"),
        "Infer the unique type of a term in a context; returns the printed type.");
  m.def("check_proof", &check_proof_py, py::arg("theory"), py::arg("proof"),
        py::arg("mode") = "dfol", "Check a proof tree; raises CheckFailure on rejection.");
  m.def("standardize_judgement", &standardize_judgement_py, py::arg("theory"),
        py::arg("judgement"), "Rename a judgement's context to positional form.");
  m.def("standardize_formula", &standardize_formula_py, py::arg("theory"), py::arg("ctx"),
        py::arg("formula"), "Rename a formula-in-context to positional form.");
  m.def("eval_sequent", &eval_sequent_py, py::arg("theory"), py::arg("model"),
        py::arg("sequent"), "Evaluate a sequent in a finite model; returns whether it holds.");
  m.def("transform", &transform_py, py::arg("theory"), py::arg("judgement"), py::arg("kind"),
        py::arg("at") = 0, py::arg("var") = "", py::arg("type") = "",
        "Apply a structural transform (weaken/strengthen/interchange) to a judgement.");
  m.def("folds_to_sig", &folds_to_sig, py::arg("vocab"),
        "Signature of a FOLDS vocabulary, printed as theory declarations.");
  m.def("sig_to_folds", &sig_to_folds, py::arg("theory"),
        "Vocabulary of a FOLDS-like signature, printed as vocabulary forms.");
  m.def("laws", &laws_py, py::arg("suite"), py::arg("size") = 2,
        "Run the cwf or doctrine law suite; returns the number of checks.");
}
