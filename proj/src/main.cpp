// dsk — command-line front end for the dependent-sorts kernel.
//
// Exit codes: 0 success, 1 check failure (a well-formed input that does
// not pass), 2 parse or I/O error.  `--json` switches every report to a
// machine-readable object on stdout; reports are deterministic.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dsk/doctrine.hpp"
#include "dsk/formats.hpp"
#include "dsk/laws.hpp"

using namespace dsk;
using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Theory load_theory(const std::string& path) {
  return fmt::parse_theory(sx::parse(read_file(path)));
}

sx::Node parse_one(const std::string& text, const char* what) {
  std::vector<sx::Node> forms = sx::parse(text);
  if (forms.size() != 1) throw sx::ParseError(1, 1, std::string("expected exactly one ") + what);
  return forms[0];
}

void emit(bool as_json, const json& report, const std::string& human) {
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human;
}


} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dsk — proof-checking toolkit for first-order logic with dependent sorts"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a machine-readable report");

  std::string theory_file, aux_file, judgement_s, term_s, ctx_s, formula_s, sequent_s;
  std::string mode_s = "dfol", suite_s, var_s, type_s;
  std::size_t at = 0, size = 2;
  bool do_weaken = false, do_strengthen = false, do_interchange = false;

  auto* c_sig = app.add_subcommand("check-sig", "replay and validate a theory file");
  c_sig->add_option("theory", theory_file, "theory file")->required();

  auto* c_check = app.add_subcommand("check", "check a judgement against a theory");
  c_check->add_option("theory", theory_file)->required();
  c_check->add_option("--judgement", judgement_s, "judgement s-expression")->required();

  auto* c_infer = app.add_subcommand("infer", "infer the unique type of a term");
  c_infer->add_option("theory", theory_file)->required();
  c_infer->add_option("--term", term_s, "term s-expression")->required();
  c_infer->add_option("--ctx", ctx_s, "context s-expression")->required();

  auto* c_f2s = app.add_subcommand("folds2sig", "signature of a FOLDS vocabulary");
  c_f2s->add_option("vocab", aux_file, "vocabulary file")->required();

  auto* c_s2f = app.add_subcommand("sig2folds", "vocabulary of a FOLDS-like signature");
  c_s2f->add_option("theory", theory_file)->required();

  auto* c_proof = app.add_subcommand("check-proof", "check a proof tree against a theory");
  c_proof->add_option("theory", theory_file)->required();
  c_proof->add_option("proof", aux_file, "proof file")->required();
  c_proof->add_option("--mode", mode_s, "dfol or dfolstar")
      ->check(CLI::IsMember({"dfol", "dfolstar"}));

  auto* c_std = app.add_subcommand("standardize", "rename a context to positional form");
  c_std->add_option("theory", theory_file)->required();
  c_std->add_option("--judgement", judgement_s, "judgement s-expression");
  c_std->add_option("--formula", formula_s, "(formula (ctx ...) phi) s-expression");

  auto* c_eval = app.add_subcommand("eval", "evaluate a sequent in a finite model");
  c_eval->add_option("theory", theory_file)->required();
  c_eval->add_option("model", aux_file, "model file")->required();
  c_eval->add_option("--sequent", sequent_s, "sequent s-expression")->required();

  auto* c_tr = app.add_subcommand("transform", "structural transform of a checked judgement");
  c_tr->add_option("theory", theory_file)->required();
  c_tr->add_option("--judgement", judgement_s)->required();
  c_tr->add_flag("--weaken", do_weaken);
  c_tr->add_flag("--strengthen", do_strengthen);
  c_tr->add_flag("--interchange", do_interchange);
  c_tr->add_option("--at", at, "0-based context position");
  c_tr->add_option("--var", var_s, "weakening: new variable");
  c_tr->add_option("--type", type_s, "weakening: its type");

  auto* c_laws = app.add_subcommand("laws", "run a law suite at a given size");
  c_laws->add_option("--suite", suite_s)->required()->check(CLI::IsMember({"cwf", "doctrine"}));
  c_laws->add_option("--size", size, "base-set size (1..4)")->check(CLI::Range(1, 4));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_sig)) {
      Theory t = load_theory(theory_file);
      json rep{{"ok", true},
               {"decls", t.sig.decls.size()},
               {"axioms", t.axioms.size()},
               {"vars", t.sig.vars.flavor == VarFlavor::Unrestricted ? "unrestricted" : "debruijn"}};
      emit(as_json, rep,
           "ok: " + std::to_string(t.sig.decls.size()) + " declarations, " +
               std::to_string(t.axioms.size()) + " axioms\n");
    } else if (app.got_subcommand(c_check)) {
      Theory t = load_theory(theory_file);
      Judgement j = fmt::parse_judgement(t.sig, parse_one(judgement_s, "judgement"));
      DerivPtr d = check_judgement(t.sig, j);
      emit(as_json, json{{"ok", true}, {"height", d->height}},
           "ok: derivation height " + std::to_string(d->height) + "\n");
    } else if (app.got_subcommand(c_infer)) {
      Theory t = load_theory(theory_file);
      Context g = fmt::parse_ctx(t.sig, parse_one(ctx_s, "context"));
      TermPtr tm = fmt::parse_term(t.sig, parse_one(term_s, "term"));
      auto [ty, d] = infer_type(t.sig, g, tm);
      std::string printed = sx::print(fmt::print_type(ty));
      emit(as_json, json{{"ok", true}, {"type", printed}, {"height", d->height}}, printed + "\n");
    } else if (app.got_subcommand(c_f2s)) {
      Vocabulary k = fmt::parse_vocab(sx::parse(read_file(aux_file)));
      VocabSignature vs = vocab_to_signature(k);
      std::string printed = sx::print_all(fmt::print_signature(vs.sig));
      if (as_json) {
        json enumj = json::object();
        for (const auto& [obj, names] : vs.enumeration) enumj[obj] = names;
        emit(true, json{{"ok", true}, {"signature", printed}, {"enumeration", enumj}}, "");
      } else {
        std::cout << printed;
      }
    } else if (app.got_subcommand(c_s2f)) {
      Theory t = load_theory(theory_file);
      Vocabulary k = signature_to_vocab(t.sig);
      std::string printed = sx::print_all(fmt::print_vocab(k));
      emit(as_json, json{{"ok", true}, {"vocab", printed}}, printed);
    } else if (app.got_subcommand(c_proof)) {
      Theory t = load_theory(theory_file);
      ProofNode p = fmt::parse_proof(t.sig, parse_one(read_file(aux_file), "proof"));
      check_proof(t, p, mode_s == "dfol" ? Mode::Dfol : Mode::DfolStar);
      emit(as_json, json{{"ok", true}, {"mode", mode_s}}, "ok: proof accepted (" + mode_s + ")\n");
    } else if (app.got_subcommand(c_std)) {
      Theory t = load_theory(theory_file);
      if (judgement_s.empty() == formula_s.empty())
        throw IoError("standardize needs exactly one of --judgement / --formula");
      if (!judgement_s.empty()) {
        Judgement j = fmt::parse_judgement(t.sig, parse_one(judgement_s, "judgement"));
        Standardized s = standardize(t.sig, j);
        std::string printed = sx::print(fmt::print_judgement(s.judgement));
        std::vector<std::string> sigma;
        for (const auto& tm : s.to_orig.map.terms) sigma.push_back(sx::print(fmt::print_term(tm)));
        emit(as_json, json{{"ok", true}, {"judgement", printed}, {"to-orig", sigma}},
             printed + "\n");
      } else {
        sx::Node n = parse_one(formula_s, "formula block");
        if (!fmt::headed(n, "formula")) throw fmt::err(n, "expected (formula (ctx ...) phi)");
        Context g = fmt::parse_ctx(t.sig, fmt::nth(n, 1, "(ctx ...)"));
        FormulaPtr f = fmt::parse_formula(t.sig, fmt::nth(n, 2, "formula"));
        check_formula(t.sig, g, f, Mode::Dfol);
        StandardizedFormula s = standardize_formula(t.sig, g, f);
        std::string printed = sx::print(
            sx::l({sx::a("formula"), fmt::print_ctx(s.ctx), fmt::print_formula(s.formula)}));
        emit(as_json, json{{"ok", true}, {"formula", printed}}, printed + "\n");
      }
    } else if (app.got_subcommand(c_eval)) {
      Theory t = load_theory(theory_file);
      FiniteModel m = fmt::parse_model(t.sig, sx::parse(read_file(aux_file)));
      Sequent s = fmt::parse_sequent(t.sig, parse_one(sequent_s, "sequent"));
      Evaluator ev(m.assignment, m.preds);
      fs::FinSet lhs = ev.eval(s.ctx, s.lhs), rhs = ev.eval(s.ctx, s.rhs);
      bool holds = SubsetDoctrine::le(lhs, rhs);
      emit(as_json, json{{"ok", holds}, {"lhs-size", lhs.size()}, {"rhs-size", rhs.size()}},
           std::string(holds ? "holds" : "fails") + ": |lhs| = " + std::to_string(lhs.size()) +
               ", |rhs| = " + std::to_string(rhs.size()) + "\n");
      if (!holds) return 1;
    } else if (app.got_subcommand(c_tr)) {
      Theory t = load_theory(theory_file);
      if (do_weaken + do_strengthen + do_interchange != 1)
        throw IoError("transform needs exactly one of --weaken / --strengthen / --interchange");
      Judgement j = fmt::parse_judgement(t.sig, parse_one(judgement_s, "judgement"));
      DerivPtr d = check_judgement(t.sig, j);
      TransformSpec spec{at, var_s, {}};
      if (!type_s.empty()) spec.type = fmt::parse_type(t.sig, parse_one(type_s, "type"));
      TransformKind kind = do_weaken ? TransformKind::Weaken
                           : do_strengthen ? TransformKind::Strengthen
                                           : TransformKind::Interchange;
      DerivPtr r = structural_transform(kind, t.sig, d, spec);
      std::string printed = sx::print(fmt::print_judgement(r->conclusion));
      emit(as_json,
           json{{"ok", true}, {"judgement", printed}, {"height", r->height},
                {"input-height", d->height}},
           printed + "\n");
    } else if (app.got_subcommand(c_laws)) {
      std::size_t checks =
          suite_s == "cwf" ? laws::run_cwf_laws(size) : laws::run_doctrine_laws(size);
      emit(as_json, json{{"ok", true}, {"suite", suite_s}, {"size", size}, {"checks", checks}},
           "ok: " + std::to_string(checks) + " law checks passed\n");
    }
  } catch (const sx::ParseError& e) {
    if (as_json)
      std::cout << json{{"ok", false}, {"error", e.what()}, {"kind", "parse"}}.dump(2) << "\n";
    else
      std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    if (as_json)
      std::cout << json{{"ok", false}, {"error", e.what()}, {"kind", "io"}}.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckError& e) {
    if (as_json)
      std::cout << json{{"ok", false}, {"error", e.what()}, {"path", e.path()}, {"kind", "check"}}
                       .dump(2)
                << "\n";
    else
      std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    if (as_json)
      std::cout << json{{"ok", false}, {"error", e.what()}, {"kind", "check"}}.dump(2) << "\n";
    else
      std::cerr << "failed: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
