#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "lie2/automorphisms.hpp"
#include "lie2/derivations.hpp"
#include "lie2/lie2_core.hpp"

namespace lie2 {

/// Input rejected by a parser. `line` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& msg);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Algebra file:
///
///   lie2 v1
///   dim0 <n0>
///   dim1 <n1>
///   d <i> <a> <rat>             d(f_a) has e_i coefficient <rat>
///   b00 <i> <j> <k> <rat>       i < j; [e_i, e_j] has e_k coefficient <rat>
///   b01 <i> <a> <b> <rat>       [e_i, f_a] has f_b coefficient <rat>
///   l3 <i> <j> <k> <a> <rat>    i < j < k
///
/// '#' starts a comment, blank lines are ignored, omitted entries are zero.
Lie2Algebra<Rat> parse_lie2(std::string_view text);

/// Canonical form: header, dims, then nonzero entries in the order d, b00,
/// b01, l3, each sorted by indices.
std::string serialize_lie2(const Lie2Algebra<Rat>& L);

/// Element file: the first line names the block, the rest are entries.
///
///   hom     a0 <i> <j> <rat> | a1 <a> <b> <rat> | a2 <i> <j> <a> <rat>
///   der0    x0 <i> <j> <rat> | x1 <a> <b> <rat> | lx <i> <j> <a> <rat>
///   derM1   theta <a> <i> <rat>
///   tau     tau <a> <i> <rat>
///
/// Shapes come from the algebra the element lives on; homomorphisms are
/// endomorphisms of it.
using Element = std::variant<Lie2Hom<Rat>, Derivation0<Rat>, DerM1<Rat>, Tau<Rat>>;

Element parse_element(std::string_view text, const Lie2Algebra<Rat>& L);
std::string serialize_element(const Element& e);
std::string element_kind(const Element& e);

}  // namespace lie2
