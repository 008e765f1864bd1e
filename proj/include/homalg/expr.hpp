#pragma once

#include <string>

#include "homalg/chain.hpp"

namespace homalg {

Ring parse_ring(const std::string& text);  // "Z" or "Z/n"

// Grammar: term ('+' term)*, term = 'Z' | 'Z/k' | 'coker[[..],[..]]'.
// Over Z/n the free module is written Z/n and each Z/k needs k | n; plain
// 'Z' is rejected with WrongRing. coker rows are generators, columns of the
// written matrix are read as relation columns on those generators.
FpModule parse_module_expr(const Ring& ring, const std::string& text);

// Modules listed from the top degree down, separated by '|' from the
// differential matrices between them; an optional trailing '@ k' places the
// lowest listed degree at k (default 0). A differential matrix has one row
// per generator of the lower module and one column per generator of the
// upper one. Example: "Z | [[6]] | Z" is Z --6--> Z in degrees 1, 0.
ChainComplex parse_complex_expr(const Ring& ring, const std::string& text);

// Components of a chain map listed from the source's top degree down,
// separated by ';'; each entry is a matrix literal or '0'.
ChainMap parse_chain_map(const ChainComplex& source, const ChainComplex& target,
                         const std::string& components);

}  // namespace homalg
