#include "zmfn/io.hpp"

#include <cctype>
#include <sstream>

namespace zmfn {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t pos = 0;
  std::size_t line;

  explicit Cursor(const std::string& text, std::size_t l) : s(text), line(l) {}
  std::size_t column() const { return pos + 1; }
  bool done() const { return pos >= s.size(); }
  char peek() const { return s[pos]; }
  void skip_space() {
    while (!done() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, column()); }
};

Int parse_integer(Cursor& c) {
  c.skip_space();
  std::size_t start = c.pos;
  if (!c.done() && (c.peek() == '-' || c.peek() == '+')) ++c.pos;
  std::size_t digits = 0;
  while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
    ++c.pos;
    ++digits;
  }
  if (digits == 0) c.fail("expected integer");
  return Int(c.s.substr(start, c.pos - start));
}

long parse_index(Cursor& c, const char* what) {
  Int v = parse_integer(c);
  if (v < 1 || !v.fits_slong_p()) c.fail(std::string("bad ") + what);
  return v.get_si();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  lines.push_back(cur);
  return lines;
}

bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t') return false;
  }
  return true;
}

// header `name key1=<v1> key2=<v2>`
std::pair<Int, Int> parse_header(const std::string& line, const std::string& name,
                                 std::size_t lineno) {
  Cursor c(line, lineno);
  c.skip_space();
  for (char ch : name) {
    if (c.done() || c.peek() != ch) c.fail("expected `" + name + "` header");
    ++c.pos;
  }
  auto key = [&](const std::string& k) {
    c.skip_space();
    for (char ch : k + "=") {
      if (c.done() || c.peek() != ch) c.fail("expected `" + k + "=`");
      ++c.pos;
    }
    Int v = parse_integer(c);
    if (v < 0) c.fail(k + " must be nonnegative");
    return v;
  };
  Int m = key("m"), n = key("n");
  c.skip_space();
  if (!c.done()) c.fail("trailing text after header");
  return {m, n};
}

Word parse_word_at(Cursor& c, int n) {
  std::vector<int> letters;
  bool any = false;
  while (true) {
    c.skip_space();
    if (c.done()) break;
    char ch = c.peek();
    if (ch == '1') {
      ++c.pos;
      any = true;
      continue;
    }
    if (ch != 'x' && ch != 'X') break;
    ++c.pos;
    long idx = parse_index(c, "generator index");
    if (idx > n) c.fail("generator index exceeds rank n=" + std::to_string(n));
    letters.push_back(ch == 'x' ? static_cast<int>(idx) : -static_cast<int>(idx));
    any = true;
  }
  if (!any) c.fail("expected word");
  return Word::from_letters(n, letters);
}

}  // namespace

Word parse_word(const std::string& text, int n, std::size_t line) {
  Cursor c(text, line);
  Word w = parse_word_at(c, n);
  c.skip_space();
  if (!c.done()) c.fail("trailing text after word");
  return w;
}

std::string print_word(const Word& w) { return w.str(); }

namespace {

GElem parse_element_at(Cursor& c) {
  c.skip_space();
  if (c.done() || c.peek() != '[') c.fail("expected `[`");
  ++c.pos;
  Vec avec;
  c.skip_space();
  if (!c.done() && c.peek() == ']') {
    ++c.pos;
  } else {
    while (true) {
      avec.push_back(parse_integer(c));
      c.skip_space();
      if (c.done()) c.fail("unterminated vector");
      if (c.peek() == ',') {
        ++c.pos;
        continue;
      }
      if (c.peek() == ']') {
        ++c.pos;
        break;
      }
      c.fail("expected `,` or `]`");
    }
  }
  // the word needs the rank; callers with a known rank use the checked
  // overload, the free-standing one infers from the largest index used
  return GElem(std::move(avec), Word(0));
}

}  // namespace

GElem parse_element(const std::string& text, std::size_t m, int n, std::size_t line) {
  Cursor c(text, line);
  GElem g = parse_element_at(c);
  if (g.avec.size() != m)
    c.fail("vector has " + std::to_string(g.avec.size()) + " entries, expected " +
           std::to_string(m));
  Word w = parse_word_at(c, n);
  c.skip_space();
  if (!c.done()) c.fail("trailing text after element");
  return GElem(g.avec, w);
}

GElem parse_element(const std::string& text, std::size_t line) {
  // infer n as the largest generator index mentioned
  Cursor probe(text, line);
  GElem g = parse_element_at(probe);
  Cursor rest(text, line);
  rest.pos = probe.pos;
  int maxidx = 0;
  {
    Cursor scan(text, line);
    scan.pos = probe.pos;
    while (true) {
      scan.skip_space();
      if (scan.done()) break;
      char ch = scan.peek();
      if (ch == '1') {
        ++scan.pos;
        continue;
      }
      if (ch != 'x' && ch != 'X') break;
      ++scan.pos;
      long idx = parse_index(scan, "generator index");
      maxidx = std::max(maxidx, static_cast<int>(idx));
    }
  }
  Word w = parse_word_at(rest, maxidx);
  rest.skip_space();
  if (!rest.done()) rest.fail("trailing text after element");
  return GElem(g.avec, w);
}

std::string print_element(const GElem& g) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < g.avec.size(); ++i) os << (i ? "," : "") << g.avec[i];
  os << "] " << g.word.str();
  return os.str();
}

SubgroupInput parse_subgroup(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  SubgroupInput in{0, 0, {}};
  bool have_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    if (!have_header) {
      auto [m, n] = parse_header(lines[i], "group", i + 1);
      if (!m.fits_slong_p() || !n.fits_slong_p()) throw ParseError("rank too large", i + 1, 1);
      in.m = static_cast<std::size_t>(m.get_si());
      in.n = static_cast<int>(n.get_si());
      have_header = true;
      continue;
    }
    in.generators.push_back(parse_element(lines[i], in.m, in.n, i + 1));
  }
  if (!have_header) throw ParseError("missing `group m=<m> n=<n>` header", 1, 1);
  return in;
}

std::string print_subgroup(const GSubgroupBasis& basis) {
  std::ostringstream os;
  os << "group m=" << basis.m() << " n=" << basis.n() << "\n";
  for (const GElem& e : basis.basis_elements()) os << print_element(e) << "\n";
  return os.str();
}

std::string print_basis_ab_form(const GSubgroupBasis& basis) {
  std::ostringstream os;
  std::vector<GElem> abelian, free;
  for (const GElem& e : basis.basis_elements())
    (e.word.trivial() ? abelian : free).push_back(e);
  if (free.size() == 1) {
    abelian.push_back(free[0]);
    free.clear();
  }
  os << "A:";
  for (const GElem& e : abelian) os << " { " << print_element(e) << " }";
  os << "\nB:";
  for (const GElem& e : free) os << " { " << print_element(e) << " }";
  os << "\n";
  return os.str();
}

Endo parse_endo(const std::string& text) {
  std::vector<std::string> lines = split_lines(text);
  std::size_t m = 0;
  int n = 0;
  bool have_header = false;
  std::vector<std::optional<GElem>> xim, tim;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    if (!have_header) {
      auto [mm, nn] = parse_header(lines[i], "endo", i + 1);
      if (!mm.fits_slong_p() || !nn.fits_slong_p()) throw ParseError("rank too large", i + 1, 1);
      m = static_cast<std::size_t>(mm.get_si());
      n = static_cast<int>(nn.get_si());
      xim.assign(n, std::nullopt);
      tim.assign(m, std::nullopt);
      have_header = true;
      continue;
    }
    Cursor c(lines[i], i + 1);
    c.skip_space();
    if (c.done()) continue;
    char kind = c.peek();
    if (kind != 'x' && kind != 't') c.fail("expected `x<i> ->` or `t<j> ->`");
    ++c.pos;
    long idx = parse_index(c, "generator index");
    c.skip_space();
    if (c.pos + 1 >= c.s.size() || c.s[c.pos] != '-' || c.s[c.pos + 1] != '>')
      c.fail("expected `->`");
    c.pos += 2;
    GElem img = parse_element(lines[i].substr(c.pos), m, n, i + 1);
    if (kind == 'x') {
      if (idx > n) c.fail("x index out of range");
      if (xim[idx - 1]) c.fail("duplicate image for x" + std::to_string(idx));
      xim[idx - 1] = img;
    } else {
      if (idx > static_cast<long>(m)) c.fail("t index out of range");
      if (tim[idx - 1]) c.fail("duplicate image for t" + std::to_string(idx));
      tim[idx - 1] = img;
    }
  }
  if (!have_header) throw ParseError("missing `endo m=<m> n=<n>` header", 1, 1);
  std::vector<GElem> xs, ts;
  for (int i = 0; i < n; ++i) {
    if (!xim[i]) throw ParseError("missing image for x" + std::to_string(i + 1), lines.size(), 1);
    xs.push_back(*xim[i]);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!tim[j]) throw ParseError("missing image for t" + std::to_string(j + 1), lines.size(), 1);
    ts.push_back(*tim[j]);
  }
  return endo_from_images(xs, ts);
}

std::string print_endo(const Endo& e) {
  std::ostringstream os;
  os << "endo m=" << e.m() << " n=" << e.n() << "\n";
  for (int i = 1; i <= e.n(); ++i) os << "x" << i << " -> " << print_element(e.x_image(i)) << "\n";
  for (std::size_t j = 0; j < e.m(); ++j)
    os << "t" << j + 1 << " -> " << print_element(e.t_image(j)) << "\n";
  return os.str();
}

std::vector<Word> parse_word_list(const std::string& text, int n) {
  std::vector<Word> words;
  std::vector<std::string> lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank_or_comment(lines[i])) continue;
    words.push_back(parse_word(lines[i], n, i + 1));
  }
  return words;
}

}  // namespace zmfn
