#include "lie2/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lie2/io.hpp"
#include "lie2/suites.hpp"

namespace lie2 {

namespace {

// Bad input detected after argument parsing.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Element load_element(const std::string& path, const Lie2Algebra<Rat>& L) {
  try {
    return parse_element(read_file(path), L);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("LIE2_SEED");
  if (!env) return 1;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used == std::string(env).size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError(std::string("LIE2_SEED is not an unsigned integer: '") + env + "'");
}

std::string flag(bool b) { return b ? "yes" : "no"; }

void print_float_matrix(std::ostream& out, const char* key, const Matrix<double>& m) {
  char buf[40];
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
        out << key << ' ' << r << ' ' << c << ' ' << buf << '\n';
      }
}

void print_float_bilinear(std::ostream& out, const char* key, const AltTensor<double>& t) {
  char buf[40];
  for (const auto& tup : t.tuples())
    for (std::size_t a = 0; a < t.codomain_dim(); ++a)
      if (const double v = t.get(tup, a); v != 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << key << ' ' << tup[0] << ' ' << tup[1] << ' ' << a << ' ' << buf << '\n';
      }
}

int verdict(const Report& r, double tol) { return r.all_pass(tol) ? kPass : kViolation; }

int cmd_validate(const Lie2Algebra<Rat>& L, std::ostream& out) {
  const auto rep = validate_lie2(L);
  out << emit_report("validate", rep);
  return verdict(rep, 0.0);
}

struct DerFlags {
  bool basis = false;
  bool inner = false;
  bool classify = false;
};

int cmd_der(const Lie2Algebra<Rat>& L, const DerFlags& f, std::ostream& out) {
  const auto b0 = compute_der0_basis(L);
  const auto bm = derM1_basis(L);
  const auto inn = inn0_basis(L);
  out << "dim Der^0 = " << b0.size() << ", dim Der^-1 = " << bm.size() << ", dim inn^0 = " << inn.size() << '\n';

  // Each listed element is re-checked against the derivation conditions.
  IdentityResidual sound{"der.basis", Mode::exact, 0.0, "0", "", {}};
  for (std::size_t k = 0; k < b0.size(); ++k)
    for (const auto& item : is_derivation0(L, b0[k]).items) absorb(sound, item, "Der^0 element " + std::to_string(k));
  for (std::size_t k = 0; k < inn.size(); ++k)
    for (const auto& item : is_derivation0(L, inn[k]).items) absorb(sound, item, "inn^0 element " + std::to_string(k));

  auto list = [&](const std::string& title, const auto& basis) {
    for (std::size_t k = 0; k < basis.size(); ++k) out << "BASIS " << title << ' ' << k << '\n' << serialize_element(basis[k]);
  };
  if (f.basis) {
    list("Der^0", b0);
    list("Der^-1", bm);
  }
  if (f.inner) list("inn^0", inn);
  if (f.classify) {
    auto show = [&](const std::string& title, std::size_t k, const DerElement& e) {
      const auto c = classify_derivation(L, e);
      out << "CLASSIFY " << title << ' ' << k << " weak " << flag(c.weak) << " strict " << flag(c.strict) << " homotopy "
          << flag(c.homotopy) << '\n';
    };
    for (std::size_t k = 0; k < b0.size(); ++k) show("Der^0", k, b0[k]);
    for (std::size_t k = 0; k < bm.size(); ++k) show("Der^-1", k, bm[k]);
  }
  const Report rep{{sound}};
  out << emit_report("der", rep);
  return verdict(rep, 0.0);
}

int cmd_aut(const Lie2Algebra<Rat>& L, const Element& e, std::ostream& out) {
  Report rep;
  AutFlags flags;
  if (const auto* A = std::get_if<Lie2Hom<Rat>>(&e)) {
    rep = is_aut0(L, *A);
    flags = classify_automorphism(L, *A);
  } else if (const auto* t = std::get_if<Tau<Rat>>(&e)) {
    const auto inv = tau_inverse(L, *t);
    rep.items.push_back({"aut.invertible", Mode::exact, inv ? 0.0 : 1.0, inv ? "0" : "1", inv ? "" : "I + d tau is singular", {}});
    flags = classify_automorphism(L, *t);
    if (inv) out << "INVERSE\n" << serialize_element(*inv);
  } else {
    throw InputError("aut expects a 'hom' or 'tau' element, got '" + element_kind(e) + "'");
  }
  out << "FLAGS weak " << flag(flags.weak) << " strict " << flag(flags.strict) << '\n';
  out << emit_report("aut", rep);
  return verdict(rep, 0.0);
}

int cmd_exp(const Lie2Algebra<Rat>& L, const Element& e, const Rat& t, const ExpConfig& cfg, std::ostream& out) {
  Report rep;
  if (const auto* D = std::get_if<Derivation0<Rat>>(&e)) {
    if (!is_derivation0(L, *D).all_zero()) throw InputError("element is not a degree 0 derivation");
    std::visit(
        [&](const auto& A) {
          using T = std::decay_t<decltype(A.hom().a0(0, 0))>;
          if constexpr (std::is_same_v<T, Rat>) {
            out << "RESULT exact\n" << serialize_element(A.hom());
          } else {
            out << "RESULT float\nhom\n";
            print_float_matrix(out, "a0", A.hom().a0);
            print_float_matrix(out, "a1", A.hom().a1);
            print_float_bilinear(out, "a2", A.hom().a2);
          }
          rep = is_aut0(L.cast<T>(), A.hom());
        },
        exp_der0(L, *D, t, cfg));
  } else if (const auto* th = std::get_if<DerM1<Rat>>(&e)) {
    std::visit(
        [&](const auto& tau) {
          using T = std::decay_t<decltype(tau.tau(0, 0))>;
          if constexpr (std::is_same_v<T, Rat>) {
            out << "RESULT exact\n" << serialize_element(tau);
          } else {
            out << "RESULT float\ntau\n";
            print_float_matrix(out, "tau", tau.tau);
          }
        },
        exp_derM1(L, *th, cfg, t));
    rep.items.push_back(check_commuting_square(L, *th * t, cfg));
  } else {
    throw InputError("exp expects a 'der0' or 'derM1' element, got '" + element_kind(e) + "'");
  }
  out << emit_report("exp", rep);
  return verdict(rep, cfg.tol);
}

int cmd_check(const Lie2Algebra<Rat>& L, const std::string& suite, const SuiteConfig& cfg, std::ostream& out) {
  const auto rep = run_suite(suite, L, cfg);
  out << emit_report(suite + " samples " + std::to_string(cfg.samples) + " seed " + std::to_string(cfg.seed), rep);
  return verdict(rep, cfg.exp.tol);
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"abelian", "string-sl2", "endo-1-1", "skeletal-demo"};
  return names;
}

Lie2Algebra<Rat> example_algebra(const std::string& name) {
  if (name == "abelian") return fixture_abelian();
  if (name == "string-sl2") return fixture_string_sl2();
  if (name == "endo-1-1") return fixture_endo_1_1();
  if (name == "skeletal-demo") return fixture_skeletal_demo();
  throw std::invalid_argument("unknown example '" + name + "'");
}

Lie2Algebra<Rat> load_algebra(const std::string& path_or_name) {
  std::ifstream probe(path_or_name);
  if (!probe) {
    const auto& ex = example_names();
    if (std::find(ex.begin(), ex.end(), path_or_name) != ex.end()) return example_algebra(path_or_name);
    throw InputError("cannot read '" + path_or_name + "' and it is not an example name");
  }
  try {
    return parse_lie2(read_file(path_or_name));
  } catch (const ParseError& e) {
    throw InputError(path_or_name + ": " + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semistrict Lie 2-algebras: derivations, automorphisms and exponentials", "lie2"};
  app.require_subcommand(1);

  std::string file, element, suite, name;
  DerFlags der_flags;
  std::string t_text = "1";
  ExpConfig exp_cfg;
  SuiteConfig suite_cfg;
  std::optional<std::uint64_t> seed;

  auto* validate = app.add_subcommand("validate", "Check the Lie 2-algebra axioms");
  validate->add_option("FILE", file, "Algebra file or example name")->required();

  auto* der = app.add_subcommand("der", "Derivation spaces");
  der->add_option("FILE", file, "Algebra file or example name")->required();
  der->add_flag("--basis", der_flags.basis, "Print bases of Der^0 and Der^-1");
  der->add_flag("--inner", der_flags.inner, "Print a basis of inn^0");
  der->add_flag("--classify", der_flags.classify, "Classify the basis elements");

  auto* aut = app.add_subcommand("aut", "Check an automorphism");
  aut->add_option("FILE", file, "Algebra file or example name")->required();
  aut->add_option("--element", element, "Element file with a hom or tau block")->required();

  auto* exp = app.add_subcommand("exp", "Exponentiate a derivation");
  exp->add_option("FILE", file, "Algebra file or example name")->required();
  exp->add_option("--element", element, "Element file with a der0 or derM1 block")->required();
  exp->add_option("--t", t_text, "Rational time")->capture_default_str();
  exp->add_option("--order", exp_cfg.order, "Series order in float mode")->capture_default_str();
  exp->add_option("--tol", exp_cfg.tol, "Tolerance for float residuals")->capture_default_str();

  auto* check = app.add_subcommand("check", "Run a verification suite");
  check->add_option("FILE", file, "Algebra file or example name")->required();
  check->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  check->add_option("--samples", suite_cfg.samples, "Number of random samples")->capture_default_str();
  check->add_option("--seed", seed, "Random seed (default: LIE2_SEED, else 1)");
  check->add_option("--fd-step", suite_cfg.exp.fd_step, "Finite difference step")->capture_default_str();
  check->add_option("--order", suite_cfg.exp.order, "Series order in float mode")->capture_default_str();
  check->add_option("--tol", suite_cfg.exp.tol, "Tolerance for float residuals")->capture_default_str();

  auto* example = app.add_subcommand("example", "Print a built-in algebra file");
  example->add_option("--name", name, "Example name")->required()->check(CLI::IsMember(example_names()));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*example) {
      out << serialize_lie2(example_algebra(name));
      return kPass;
    }
    const auto L = load_algebra(file);
    if (*validate) return cmd_validate(L, out);
    if (*der) return cmd_der(L, der_flags, out);
    if (*aut) return cmd_aut(L, load_element(element, L), out);
    if (*exp) {
      exp_cfg.validate();
      Rat t;
      try {
        t = parse_rat(t_text);
      } catch (const std::invalid_argument& e) {
        throw InputError(std::string("--t: ") + e.what());
      }
      return cmd_exp(L, load_element(element, L), t, exp_cfg, out);
    }
    suite_cfg.seed = seed ? *seed : default_seed();
    suite_cfg.exp.validate();
    return cmd_check(L, suite, suite_cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace lie2
