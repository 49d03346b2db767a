#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmfn/group.hpp"
#include "zmfn/morph.hpp"

namespace zmfn {

/// Parse failure with position information.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(msg + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// word syntax: whitespace-separated `x<i>` / `X<i>` tokens, `1` for
/// the identity
Word parse_word(const std::string& text, int n, std::size_t line = 1);
std::string print_word(const Word& w);

/// element syntax: `[a1,...,am] <word>`
GElem parse_element(const std::string& text, std::size_t line = 1);
GElem parse_element(const std::string& text, std::size_t m, int n, std::size_t line = 1);
std::string print_element(const GElem& g);

/// subgroup file: header `group m=<m> n=<n>`, one element per line;
/// blank lines and lines starting with '#' are skipped
struct SubgroupInput {
  std::size_t m;
  int n;
  std::vector<GElem> generators;
};
SubgroupInput parse_subgroup(const std::string& text);
std::string print_subgroup(const GSubgroupBasis& basis);
/// the (A, B) display of a basis: a lone free generator joins the
/// abelian component
std::string print_basis_ab_form(const GSubgroupBasis& basis);

/// endomorphism file: header `endo m=<m> n=<n>`, lines `x<i> -> <element>`
/// and `t<j> -> <element>`; classification happens on load
Endo parse_endo(const std::string& text);
std::string print_endo(const Endo& e);

/// word list file: one word per line over x1..xn
std::vector<Word> parse_word_list(const std::string& text, int n);

}  // namespace zmfn
