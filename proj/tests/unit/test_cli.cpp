#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "lie2/cli.hpp"
#include "lie2/io.hpp"
#include "support.hpp"

using namespace lie2;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("lie2_cli_" + name);
  std::ofstream(path, std::ios::binary) << content;
  return path.string();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST_CASE("der reports the dimensions") {
  const auto r = call({"der", "string-sl2"});
  CHECK(r.code == kPass);
  CHECK(has_line(r.out, "dim Der^0 = 6, dim Der^-1 = 3, dim inn^0 = 6"));
  CHECK(has_line(r.out, "IDENTITY der.basis RESIDUAL 0 MODE exact"));

  const auto ab = call({"der", "abelian"});
  CHECK(has_line(ab.out, "dim Der^0 = 2, dim Der^-1 = 1, dim inn^0 = 0"));

  const auto strict = temp_file("strict.lie2", serialize_lie2(make_strict_lie(LieAlgebra::sl2())));
  CHECK(call({"der", strict}).out.find("dim Der^0 = 3,") != std::string::npos);
}

TEST_CASE("der basis output parses back") {
  const auto S = fixture_string_sl2();
  const auto r = call({"der", "string-sl2", "--basis", "--inner", "--classify"});
  REQUIRE(r.code == kPass);
  std::istringstream in(r.out);
  std::vector<std::string> blocks;
  std::string line, cur;
  int count0 = 0, countm1 = 0, classified = 0;
  while (std::getline(in, line)) {
    if (line.rfind("BASIS ", 0) == 0 || line.rfind("CLASSIFY", 0) == 0 || line.rfind("REPORT", 0) == 0) {
      if (!cur.empty()) blocks.push_back(cur);
      cur.clear();
      if (line.rfind("BASIS Der^0", 0) == 0) ++count0;
      if (line.rfind("BASIS Der^-1", 0) == 0) ++countm1;
      if (line.rfind("CLASSIFY", 0) == 0) ++classified;
      continue;
    }
    if (line.rfind("dim ", 0) == 0 || line.rfind("IDENTITY", 0) == 0) continue;
    cur += line + "\n";
  }
  CHECK(count0 == 6);
  CHECK(countm1 == 3);
  CHECK(classified == 9);
  REQUIRE(blocks.size() == 6 + 3 + 6);
  for (const auto& b : blocks) {
    const auto e = parse_element(b, S);
    if (const auto* D = std::get_if<Derivation0<Rat>>(&e)) CHECK(is_derivation0(S, *D).all_zero());
  }
}

TEST_CASE("validate and exit codes") {
  CHECK(call({"validate", "abelian"}).code == kPass);
  CHECK(call({"validate", temp_file("ab.lie2", "lie2 v1\ndim0 1\ndim1 1\n")}).code == kPass);

  // [h,e] = 3e with [h,f] = -2f breaks the Jacobi identity.
  auto text = serialize_lie2(fixture_string_sl2());
  text.replace(text.find("b00 0 1 1 2"), 11, "b00 0 1 1 3");
  const auto bad = call({"validate", temp_file("bad.lie2", text)});
  CHECK(bad.code == kViolation);
  CHECK(bad.out.find("IDENTITY lie2.b1 RESIDUAL") != std::string::npos);
  CHECK(bad.out.find("WITNESS") != std::string::npos);

  const auto broken = call({"validate", temp_file("broken.lie2", "lie2 v1\ndim0 2\ndim1 1\nd 0 3 1\n")});
  CHECK(broken.code == kInputError);
  CHECK(broken.err.find("line 4") != std::string::npos);

  CHECK(call({"validate", "/nonexistent/file"}).code == kInputError);
  CHECK(call({"frobnicate"}).code == kInputError);
  CHECK(call({}).code == kInputError);
  CHECK(call({"check", "abelian", "--suite", "nope"}).code == kInputError);
  CHECK(call({"check", "abelian", "--suite", "axioms", "--fd-step", "-1"}).code == kInputError);
  CHECK(call({"example", "--name", "nope"}).code == kInputError);
  CHECK(call({"--help"}).code == kPass);
}

TEST_CASE("crossed-module suite on the string algebra") {
  const auto r = call({"check", "string-sl2", "--suite", "crossed-module", "--samples", "50", "--seed", "7"});
  CHECK(r.code == kPass);
  for (const auto* name : {"aut.equivariance", "aut.peiffer", "aut.partial_hom", "aut.action"})
    CHECK(has_line(r.out, std::string("IDENTITY ") + name + " RESIDUAL 0 MODE exact"));
}

TEST_CASE("seeds make reports reproducible") {
  const std::vector<std::string> args{"check", "skeletal-demo", "--suite", "one-parameter", "--samples", "10", "--seed", "11"};
  CHECK(call(args).out == call(args).out);
  CHECK(call(args).out != call({"check", "skeletal-demo", "--suite", "one-parameter", "--samples", "10", "--seed", "12"}).out);

  ::setenv("LIE2_SEED", "11", 1);
  CHECK(call({"check", "skeletal-demo", "--suite", "one-parameter", "--samples", "10"}).out == call(args).out);
  ::setenv("LIE2_SEED", "eleven", 1);
  CHECK(call({"check", "skeletal-demo", "--suite", "one-parameter", "--samples", "10"}).code == kInputError);
  ::unsetenv("LIE2_SEED");
}

TEST_CASE("examples print parseable files") {
  for (const auto& name : example_names()) {
    const auto r = call({"example", "--name", name});
    CHECK(r.code == kPass);
    CHECK(parse_lie2(r.out) == example_algebra(name));
    CHECK(load_algebra(name) == example_algebra(name));
  }
}

TEST_CASE("aut command") {
  const auto id = temp_file("id.elem", "hom\na0 0 0 1\na0 1 1 1\na0 2 2 1\na1 0 0 1\n");
  const auto r = call({"aut", "string-sl2", "--element", id});
  CHECK(r.code == kPass);
  CHECK(has_line(r.out, "FLAGS weak yes strict yes"));

  const auto scale = temp_file("scale.elem", "hom\na0 0 0 2\na0 1 1 1\na0 2 2 1\na1 0 0 1\n");
  CHECK(call({"aut", "string-sl2", "--element", scale}).code == kViolation);

  // On R --id--> R, tau = -1 makes I + d tau zero.
  const auto sing = call({"aut", "endo-1-1", "--element", temp_file("sing.elem", "tau\ntau 0 0 -1\n")});
  CHECK(sing.code == kViolation);
  CHECK(has_line(sing.out, "FLAGS weak no strict no"));
  const auto reg = call({"aut", "endo-1-1", "--element", temp_file("reg.elem", "tau\ntau 0 0 1\n")});
  CHECK(reg.code == kPass);
  CHECK(reg.out.find("INVERSE\ntau\ntau 0 0 -1/2\n") != std::string::npos);

  CHECK(call({"aut", "string-sl2", "--element", temp_file("d.elem", "derM1\n")}).code == kInputError);
  CHECK(call({"aut", "string-sl2", "--element", temp_file("g.elem", "hom\na0 0 5 1\n")}).code == kInputError);
}

TEST_CASE("exp command") {
  // e^{t dbar(xi)} on the string algebra is exact: (I, I, -t D xi).
  const auto r = call({"exp", "string-sl2", "--element", temp_file("xi.elem", "der0\nlx 1 2 0 1\n"), "--t", "1/2"});
  CHECK(r.code == kPass);
  CHECK(r.out.rfind("RESULT exact\nhom\n", 0) == 0);
  CHECK(r.out.find("a2 1 2 0 1/2\n") != std::string::npos);

  const auto h = call({"exp", "string-sl2", "--element", temp_file("h.elem", "der0\nx0 1 1 2\nx0 2 2 -2\nlx 1 2 0 8\n")});
  CHECK(h.code == kPass);
  CHECK(h.out.rfind("RESULT float\n", 0) == 0);
  CHECK(h.out.find("MODE float") != std::string::npos);

  const auto th = call({"exp", "endo-1-1", "--element", temp_file("th.elem", "derM1\ntheta 0 0 1\n"), "--order", "30"});
  CHECK(th.code == kPass);
  CHECK(th.out.find("tau 0 0 1.718281828459045") != std::string::npos);

  CHECK(call({"exp", "string-sl2", "--element", temp_file("nd.elem", "der0\nx0 0 0 1\n")}).code == kInputError);
  CHECK(call({"exp", "string-sl2", "--element", temp_file("tt.elem", "tau\n")}).code == kInputError);
  CHECK(call({"exp", "string-sl2", "--element", temp_file("xi.elem", "der0\n"), "--t", "0.5"}).code == kInputError);
  CHECK(call({"exp", "string-sl2", "--element", temp_file("xi.elem", "der0\n"), "--order", "0"}).code == kInputError);
}

TEST_CASE("report format") {
  CHECK(emit_report("empty", Report{}) == "REPORT empty ITEMS 0\n");
  const auto r = call({"check", "string-sl2", "--suite", "conjugation", "--samples", "25", "--seed", "3"});
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("REPORT conjugation", 0) == 0);
  int items = 0;
  while (std::getline(in, line)) {
    ++items;
    std::istringstream ws(line);
    std::string id, name, res, value, mode, m;
    ws >> id >> name >> res >> value >> mode >> m;
    CHECK(id == "IDENTITY");
    CHECK(res == "RESIDUAL");
    CHECK(mode == "MODE");
    CHECK((m == "exact" || m == "float"));
  }
  CHECK(items == 6);
}
