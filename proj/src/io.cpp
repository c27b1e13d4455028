#include "lie2/io.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace lie2 {

ParseError::ParseError(std::size_t line, const std::string& msg)
    : std::runtime_error(line == 0 ? msg : "line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

constexpr std::size_t kMaxDim = 256;

struct Line {
  std::size_t no;
  std::vector<std::string> tok;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 0;
  while (!text.empty()) {
    ++no;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (raw.find('\r') != std::string_view::npos) throw ParseError(no, "carriage return (files must use LF line endings)");
    raw = raw.substr(0, raw.find('#'));
    std::istringstream in{std::string(raw)};
    Line line{no, {}};
    for (std::string t; in >> t;) line.tok.push_back(t);
    if (!line.tok.empty()) out.push_back(std::move(line));
  }
  return out;
}

std::size_t parse_index(const Line& line, const std::string& tok) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || end != tok.data() + tok.size()) throw ParseError(line.no, "bad index '" + tok + "'");
  return v;
}

Rat parse_value(const Line& line, const std::string& tok) {
  try {
    return parse_rat(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line.no, e.what());
  }
}

std::size_t parse_dim(const Line& line, const char* key) {
  if (line.tok.size() != 2 || line.tok[0] != key) throw ParseError(line.no, std::string("expected '") + key + " <n>'");
  const auto n = parse_index(line, line.tok[1]);
  if (n > kMaxDim) throw ParseError(line.no, std::string(key) + " exceeds " + std::to_string(kMaxDim));
  return n;
}

// One entry keyword: index bounds, how many leading indices must increase,
// and where the value goes.
struct EntryKind {
  std::vector<std::size_t> bounds;
  std::size_t increasing = 0;
  std::function<void(const std::vector<std::size_t>&, const Rat&)> store;
};

void parse_entries(const std::vector<Line>& lines, std::size_t first, const std::map<std::string, EntryKind>& kinds) {
  std::set<std::pair<std::string, std::vector<std::size_t>>> seen;
  for (std::size_t n = first; n < lines.size(); ++n) {
    const auto& line = lines[n];
    const auto it = kinds.find(line.tok[0]);
    if (it == kinds.end()) throw ParseError(line.no, "unknown entry '" + line.tok[0] + "'");
    const auto& kind = it->second;
    if (line.tok.size() != kind.bounds.size() + 2)
      throw ParseError(line.no, "'" + line.tok[0] + "' takes " + std::to_string(kind.bounds.size()) + " indices and a value");
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < kind.bounds.size(); ++k) {
      idx.push_back(parse_index(line, line.tok[k + 1]));
      if (idx.back() >= kind.bounds[k])
        throw ParseError(line.no, "index " + line.tok[k + 1] + " out of range (must be < " +
                                      std::to_string(kind.bounds[k]) + ")");
      if (k > 0 && k < kind.increasing && idx[k - 1] >= idx[k])
        throw ParseError(line.no, "indices of '" + line.tok[0] + "' must be strictly increasing");
    }
    if (!seen.insert({line.tok[0], idx}).second) throw ParseError(line.no, "duplicate entry");
    kind.store(idx, parse_value(line, line.tok.back()));
  }
}

void emit(std::ostringstream& out, const char* key, std::initializer_list<std::size_t> idx, const Rat& v) {
  if (sgn(v) == 0) return;
  out << key;
  for (auto i : idx) out << ' ' << i;
  out << ' ' << format_rat(v) << '\n';
}

void emit_matrix(std::ostringstream& out, const char* key, const Matrix<Rat>& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) emit(out, key, {r, c}, m(r, c));
}

void emit_bilinear(std::ostringstream& out, const char* key, const AltTensor<Rat>& t) {
  for (const auto& tup : t.tuples())
    for (std::size_t a = 0; a < t.codomain_dim(); ++a) emit(out, key, {tup[0], tup[1], a}, t.get(tup, a));
}

EntryKind matrix_kind(Matrix<Rat>& m) {
  return {{m.rows(), m.cols()}, 0, [&m](const auto& i, const Rat& v) { m(i[0], i[1]) = v; }};
}

EntryKind bilinear_kind(AltTensor<Rat>& t) {
  return {{t.domain_dim(), t.domain_dim(), t.codomain_dim()}, 2,
          [&t](const auto& i, const Rat& v) { t.set({i[0], i[1]}, i[2], v); }};
}

}  // namespace

Lie2Algebra<Rat> parse_lie2(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty file");
  if (lines[0].tok != std::vector<std::string>{"lie2", "v1"}) throw ParseError(lines[0].no, "expected header 'lie2 v1'");
  if (lines.size() < 3) throw ParseError(lines.back().no, "missing dim0/dim1 lines");
  const auto n0 = parse_dim(lines[1], "dim0");
  const auto n1 = parse_dim(lines[2], "dim1");
  auto L = Lie2Algebra<Rat>::zero(n0, n1);

  std::map<std::string, EntryKind> kinds;
  kinds["d"] = matrix_kind(L.d);
  kinds["b00"] = {{n0, n0, n0}, 2, [&](const auto& i, const Rat& v) { L.b00.set({i[0], i[1]}, i[2], v); }};
  kinds["b01"] = {{n0, n1, n1}, 0, [&](const auto& i, const Rat& v) { L.b01[i[0]](i[2], i[1]) = v; }};
  kinds["l3"] = {{n0, n0, n0, n1}, 3, [&](const auto& i, const Rat& v) { L.l3.set({i[0], i[1], i[2]}, i[3], v); }};
  parse_entries(lines, 3, kinds);
  L.check_shapes();
  return L;
}

std::string serialize_lie2(const Lie2Algebra<Rat>& L) {
  std::ostringstream out;
  out << "lie2 v1\ndim0 " << L.n0 << "\ndim1 " << L.n1 << '\n';
  emit_matrix(out, "d", L.d);
  emit_bilinear(out, "b00", L.b00);
  for (std::size_t i = 0; i < L.n0; ++i)
    for (std::size_t a = 0; a < L.n1; ++a)
      for (std::size_t b = 0; b < L.n1; ++b) emit(out, "b01", {i, a, b}, L.b01[i](b, a));
  for (const auto& tup : L.l3.tuples())
    for (std::size_t a = 0; a < L.n1; ++a) emit(out, "l3", {tup[0], tup[1], tup[2], a}, L.l3.get(tup, a));
  return out.str();
}

Element parse_element(std::string_view text, const Lie2Algebra<Rat>& L) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty element file");
  const auto& head = lines[0];
  if (head.tok.size() != 1) throw ParseError(head.no, "expected a block name: hom, der0, derM1 or tau");
  const auto& kind = head.tok[0];
  std::map<std::string, EntryKind> kinds;
  if (kind == "hom") {
    // Entries override the zero map, not the identity.
    Lie2Hom<Rat> A{Matrix<Rat>(L.n0, L.n0), Matrix<Rat>(L.n1, L.n1), AltTensor<Rat>(2, L.n0, L.n1)};
    kinds["a0"] = matrix_kind(A.a0);
    kinds["a1"] = matrix_kind(A.a1);
    kinds["a2"] = bilinear_kind(A.a2);
    parse_entries(lines, 1, kinds);
    return A;
  }
  if (kind == "der0") {
    auto D = Derivation0<Rat>::zero(L);
    kinds["x0"] = matrix_kind(D.x0);
    kinds["x1"] = matrix_kind(D.x1);
    kinds["lx"] = bilinear_kind(D.lx);
    parse_entries(lines, 1, kinds);
    return D;
  }
  if (kind == "derM1") {
    DerM1<Rat> th{Matrix<Rat>(L.n1, L.n0)};
    kinds["theta"] = matrix_kind(th.theta);
    parse_entries(lines, 1, kinds);
    return th;
  }
  if (kind == "tau") {
    auto t = Tau<Rat>::zero(L.n0, L.n1);
    kinds["tau"] = matrix_kind(t.tau);
    parse_entries(lines, 1, kinds);
    return t;
  }
  throw ParseError(head.no, "unknown block '" + kind + "'");
}

std::string serialize_element(const Element& e) {
  std::ostringstream out;
  out << element_kind(e) << '\n';
  std::visit(
      [&](const auto& x) {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Lie2Hom<Rat>>) {
          emit_matrix(out, "a0", x.a0);
          emit_matrix(out, "a1", x.a1);
          emit_bilinear(out, "a2", x.a2);
        } else if constexpr (std::is_same_v<X, Derivation0<Rat>>) {
          emit_matrix(out, "x0", x.x0);
          emit_matrix(out, "x1", x.x1);
          emit_bilinear(out, "lx", x.lx);
        } else if constexpr (std::is_same_v<X, DerM1<Rat>>) {
          emit_matrix(out, "theta", x.theta);
        } else {
          emit_matrix(out, "tau", x.tau);
        }
      },
      e);
  return out.str();
}

std::string element_kind(const Element& e) {
  static const char* names[] = {"hom", "der0", "derM1", "tau"};
  return names[e.index()];
}

}  // namespace lie2
