#include "homalg/expr.hpp"

#include <cctype>
#include <vector>

namespace homalg {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw ParseError(std::string("expected '") + c + "'", pos);
  }
  bool accept_word(const char* w) {
    skip_ws();
    std::size_t n = std::string(w).size();
    if (s.compare(pos, n, w) == 0) {
      pos += n;
      return true;
    }
    return false;
  }
  Int integer() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == digits) throw ParseError("expected an integer", start);
    return Int(s.substr(start, pos - start));
  }
};

std::vector<std::vector<Int>> matrix_literal(Cursor& c) {
  c.expect('[');
  std::vector<std::vector<Int>> rows;
  if (c.accept(']')) return rows;  // []: no rows
  do {
    c.expect('[');
    std::vector<Int> row;
    if (!c.accept(']')) {
      do {
        row.push_back(c.integer());
      } while (c.accept(','));
      c.expect(']');
    }
    rows.push_back(std::move(row));
  } while (c.accept(','));
  c.expect(']');
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw ParseError("ragged matrix rows", c.pos);
  return rows;
}

FpModule parse_term(const Ring& ring, Cursor& c) {
  c.skip_ws();
  if (c.accept_word("coker")) {
    std::size_t at = c.pos;
    auto rows = matrix_literal(c);
    if (rows.empty()) throw ParseError("coker needs at least one row", at);
    return FpModule(ring, static_cast<Index>(rows.size()),
                    Matrix::from_rows(ring, rows));
  }
  if (c.accept_word("Z")) {
    if (c.accept('/')) {
      std::size_t at = c.pos;
      Int k = c.integer();
      if (k < 1) throw ParseError("modulus must be >= 1", at);
      if (ring.is_modular() && ring.modulus() % k != 0)
        throw WrongRing("Z/" + k.get_str() + " is not a module over " +
                        ring.name() + " (modulus must divide " +
                        ring.modulus().get_str() + ")");
      return FpModule::cyclic(ring, k);
    }
    if (ring.is_modular())
      throw WrongRing("over " + ring.name() + " the free module is written " +
                      ring.name());
    return FpModule::free(ring, 1);
  }
  throw ParseError("expected Z, Z/k or coker[[..]]", c.pos);
}

}  // namespace

Ring parse_ring(const std::string& text) {
  Cursor c{text};
  if (!c.accept_word("Z")) throw ParseError("ring must be Z or Z/n", c.pos);
  if (c.accept('/')) {
    std::size_t at = c.pos;
    Int n = c.integer();
    if (n < 2) throw ParseError("ring modulus must be >= 2", at);
    if (!c.done()) throw ParseError("trailing input after ring", c.pos);
    return Ring::integers_mod(n);
  }
  if (!c.done()) throw ParseError("trailing input after ring", c.pos);
  return Ring::integers();
}

FpModule parse_module_expr(const Ring& ring, const std::string& text) {
  Cursor c{text};
  std::vector<FpModule> parts;
  parts.push_back(parse_term(ring, c));
  while (c.accept('+')) parts.push_back(parse_term(ring, c));
  if (!c.done()) throw ParseError("trailing input after module", c.pos);
  if (parts.size() == 1) return parts[0];
  return direct_sum_many(ring, std::move(parts)).module;
}

ChainComplex parse_complex_expr(const Ring& ring, const std::string& text) {
  std::string body = text;
  int lo = 0;
  if (auto at = body.rfind('@'); at != std::string::npos) {
    Cursor c{body};
    c.pos = at + 1;
    lo = static_cast<int>(c.integer().get_si());
    if (!c.done()) throw ParseError("trailing input after degree", c.pos);
    body = body.substr(0, at);
  }
  // split on '|' at top level
  std::vector<std::string> pieces;
  std::string cur;
  int depth = 0;
  for (char ch : body) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == '|' && depth == 0) {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  pieces.push_back(cur);
  if (pieces.size() % 2 == 0)
    throw ParseError("complex must alternate modules and matrices", 0);
  std::vector<FpModule> modules;  // top degree first
  std::vector<std::vector<std::vector<Int>>> mats;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i % 2 == 0) {
      modules.push_back(parse_module_expr(ring, pieces[i]));
    } else {
      Cursor c{pieces[i]};
      mats.push_back(matrix_literal(c));
      if (!c.done()) throw ParseError("trailing input after matrix", c.pos);
    }
  }
  ChainComplexBuilder cb(ring);
  const int hi = lo + static_cast<int>(modules.size()) - 1;
  for (std::size_t i = 0; i < modules.size(); ++i)
    cb.set_module(hi - static_cast<int>(i), modules[i]);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const FpModule& upper = modules[i];
    const FpModule& lower = modules[i + 1];
    Matrix m = mats[i].empty()
                   ? Matrix::zero(ring, lower.gens(), upper.gens())
                   : Matrix::from_rows(ring, mats[i]);
    if (m.rows() != lower.gens() || m.cols() != upper.gens())
      throw ParseError("differential must be (lower gens) x (upper gens)", 0);
    cb.set_differential(hi - static_cast<int>(i),
                        make_morphism(upper, lower, std::move(m)));
  }
  return cb.build();
}

ChainMap parse_chain_map(const ChainComplex& source, const ChainComplex& target,
                         const std::string& components) {
  std::vector<std::string> pieces;
  std::string cur;
  for (char ch : components) {
    if (ch == ';') {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  pieces.push_back(cur);
  if (static_cast<int>(pieces.size()) != source.hi() - source.lo() + 1)
    throw ParseError("need one component per source degree", 0);
  std::map<int, ModMorphism> comps;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const int n = source.hi() - static_cast<int>(i);
    Cursor c{pieces[i]};
    if (c.peek() == '0') {
      c.expect('0');
      if (!c.done()) throw ParseError("trailing input after 0", c.pos);
      continue;
    }
    auto rows = matrix_literal(c);
    if (!c.done()) throw ParseError("trailing input after matrix", c.pos);
    Matrix m = Matrix::from_rows(source.ring(), rows);
    if (m.rows() != target.module_at(n).gens() ||
        m.cols() != source.module_at(n).gens())
      throw ParseError("component must be (target gens) x (source gens)", 0);
    comps.emplace(n, make_morphism(source.module_at(n), target.module_at(n),
                                   std::move(m)));
  }
  return ChainMap(source, target, std::move(comps));
}

}  // namespace homalg
