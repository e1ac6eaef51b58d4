#include "septree/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace septree {

namespace {

std::vector<std::string> tokenize_line(std::string line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  std::string spaced;
  for (char c : line) {
    if (c == '{' || c == '}') {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
    } else {
      spaced += c;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> toks;
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

int parse_int(const std::string& s) {
  try {
    size_t used = 0;
    int value = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return value;
  } catch (const std::exception&) {
    throw DomainError("malformed number '" + s + "'");
  }
}

}  // namespace

GraphFile parse_graph(std::istream& in) {
  GraphFile out;
  std::string line;
  int lineno = 0;
  int last = 1;
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, lineno); };
  auto vertex_of = [&](const std::string& name) {
    auto v = out.graph.find_vertex(name);
    if (!v) fail("unknown vertex '" + name + "'");
    return *v;
  };
  auto edge_of = [&](const std::string& name) {
    auto e = out.graph.find_edge(name);
    if (!e) fail("unknown edge '" + name + "'");
    return *e;
  };
  auto block_of = [&](const std::string& vname, const std::string& idx) {
    VertexId v = vertex_of(vname);
    int i = parse_int(idx);
    if (i < 0 || i >= out.graph.block_count(v))
      fail("vertex '" + vname + "' has no block " + idx +
           " (is its partition declared above this line?)");
    return BlockRef{v, i};
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tok = tokenize_line(line);
    if (tok.empty()) continue;
    last = lineno;
    try {
      if (tok[0] == "vertex") {
        if (tok.size() != 2) fail("expected: vertex NAME");
        out.graph.add_vertex(tok[1]);
      } else if (tok[0] == "edge") {
        if (tok.size() != 4) fail("expected: edge NAME SRC DST");
        out.graph.add_edge(tok[1], vertex_of(tok[2]), vertex_of(tok[3]));
      } else if (tok[0] == "partition") {
        if (tok.size() < 2) fail("expected: partition VERTEX { ... } ...");
        VertexId v = vertex_of(tok[1]);
        std::vector<std::vector<EdgeId>> blocks;
        size_t i = 2;
        while (i < tok.size()) {
          if (tok[i] != "{") fail("expected '{' to open a block");
          ++i;
          std::vector<EdgeId> block;
          while (i < tok.size() && tok[i] != "}") block.push_back(edge_of(tok[i++]));
          if (i == tok.size()) fail("unclosed block (missing '}')");
          ++i;
          blocks.push_back(std::move(block));
        }
        out.graph.set_partition(v, std::move(blocks));
      } else if (tok[0] == "choice") {
        if (tok.size() != 4) fail("expected: choice VERTEX BLOCK_INDEX EDGE");
        BlockRef b = block_of(tok[1], tok[2]);
        EdgeId e = edge_of(tok[3]);
        const auto& edges = out.graph.block_edges(b);
        if (std::find(edges.begin(), edges.end(), e) == edges.end())
          fail("edge '" + tok[3] + "' is not in that block");
        out.choice[b] = e;
      } else if (tok[0] == "relative") {
        if (tok.size() != 3) fail("expected: relative VERTEX BLOCK_INDEX");
        out.relative.insert(block_of(tok[1], tok[2]));
      } else {
        fail("unknown directive '" + tok[0] + "'");
      }
    } catch (const DomainError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  std::vector<std::string> diags = out.graph.validate();
  if (!diags.empty()) throw ParseError(diags.front(), last);
  return out;
}

GraphFile parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

GraphFile load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file '" + path + "'");
  return parse_graph(in);
}

// ---- Literals ---------------------------------------------------------------

namespace {

[[noreturn]] void fail_at(const std::string& msg, size_t column) {
  throw ParseError(msg + " at column " + std::to_string(column + 1), 1);
}

std::string trim(const std::string& s, size_t& offset) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  offset += b;
  return s.substr(b, e - b);
}

// Splits at top-level occurrences of `sep` (depth counts (), {}).
std::vector<std::pair<std::string, size_t>> split_top(const std::string& s,
                                                      size_t offset, char sep) {
  std::vector<std::pair<std::string, size_t>> parts;
  int depth = 0;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (depth == 0 && s[i] == sep)) {
      parts.push_back({s.substr(start, i - start), offset + start});
      start = i + 1;
      continue;
    }
    if (s[i] == '(' || s[i] == '{') ++depth;
    if (s[i] == ')' || s[i] == '}') --depth;
  }
  return parts;
}

Path parse_path_at(const SeparatedGraph& g, std::string text, size_t offset) {
  text = trim(text, offset);
  if (text.empty()) fail_at("empty path literal", offset);
  std::vector<std::pair<std::string, size_t>> toks = split_top(text, offset, '.');
  if (toks.size() == 1) {
    if (auto v = g.find_vertex(toks[0].first)) return trivial_path(*v);
  }
  Word letters;
  for (auto& [tok, pos] : toks) {
    if (tok.empty()) fail_at("empty path segment", pos);
    bool inv = tok.back() == '~';
    std::string name = inv ? tok.substr(0, tok.size() - 1) : tok;
    auto e = g.find_edge(name);
    if (!e) fail_at("unknown edge '" + name + "'", pos);
    letters.push_back({*e, inv});
  }
  for (size_t i = 0; i + 1 < letters.size(); ++i)
    if (letter_dst(g, letters[i]) != letter_src(g, letters[i + 1]))
      fail_at("letters do not compose", toks[i + 1].second);
  return Path{letter_src(g, letters[0]), std::move(letters)};
}

ETree parse_tree_at(const SeparatedGraph& g, std::string text, size_t offset,
                    std::optional<VertexId> root) {
  text = trim(text, offset);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    fail_at("expected a brace-enclosed tree literal", offset);
  size_t inner_off = offset + 1;
  std::string inner = text.substr(1, text.size() - 2);
  std::vector<Path> gens;
  if (!trim(inner, inner_off).empty())
    for (auto& [part, pos] : split_top(inner, offset + 1, ','))
      gens.push_back(parse_path_at(g, part, pos));
  for (const Path& p : gens)
    if (p.root != gens.front().root)
      fail_at("tree generators have different sources", offset);
  if (gens.empty() && !root)
    fail_at("cannot infer the root of an empty tree literal", offset);
  ETree t(gens.empty() ? *root : gens.front().root);
  if (root && t.root() != *root)
    fail_at("tree root differs from the surrounding context", offset);
  for (const Path& p : gens) t.add_path(g, p);
  return t;
}

}  // namespace

Path parse_path(const SeparatedGraph& g, const std::string& text) {
  return parse_path_at(g, text, 0);
}

ETree parse_tree(const SeparatedGraph& g, const std::string& text,
                 std::optional<VertexId> root) {
  return parse_tree_at(g, text, 0, root);
}

SgElement parse_element(const SeparatedGraph& g, const std::string& text) {
  size_t offset = 0;
  std::string s = trim(text, offset);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    fail_at("expected a parenthesized element literal", offset);
  std::string inner = s.substr(1, s.size() - 2);
  std::vector<std::pair<std::string, size_t>> parts =
      split_top(inner, offset + 1, ';');
  if (parts.size() != 2)
    fail_at("expected one ';' between tree and marker", offset);
  Path marker = parse_path_at(g, parts[1].first, parts[1].second);
  ETree tree = parse_tree_at(g, parts[0].first, parts[0].second, marker.root);
  return SgElement{std::move(tree), std::move(marker)};
}

BlockedTree parse_blocked(const SeparatedGraph& g, const std::string& text,
                          std::optional<VertexId> root) {
  size_t offset = 0;
  std::string s = trim(text, offset);
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    fail_at("expected a brace-enclosed blocked-tree literal", offset);
  std::string inner = s.substr(1, s.size() - 2);
  // The separator is '\' or the UTF-8 set-minus sign.
  size_t sep = inner.find('\\');
  size_t sep_len = 1;
  if (sep == std::string::npos) {
    sep = inner.find("\xe2\x88\x96");
    sep_len = 3;
  }
  std::string tree_part = sep == std::string::npos ? inner : inner.substr(0, sep);
  std::string fam_part =
      sep == std::string::npos ? "" : inner.substr(sep + sep_len);
  size_t tree_off = offset + 1;
  ETree tree = parse_tree_at(g, "{" + tree_part + "}", tree_off - 1, root);

  std::vector<std::pair<Word, BlockRef>> entries;
  size_t fam_off = offset + 1 + (sep == std::string::npos ? 0 : sep + sep_len);
  size_t probe = fam_off;
  if (!trim(fam_part, probe).empty()) {
    for (auto& [part, pos] : split_top(fam_part, fam_off, ',')) {
      size_t at = part.find('@');
      if (at == std::string::npos)
        fail_at("expected anchor@vertex.block", pos);
      Path anchor = parse_path_at(g, part.substr(0, at), pos);
      if (anchor.root != tree.root())
        fail_at("anchor does not start at the tree root", pos);
      std::string ref = part.substr(at + 1);
      size_t ref_off = pos + at + 1;
      ref = trim(ref, ref_off);
      size_t dot = ref.rfind('.');
      if (dot == std::string::npos)
        fail_at("expected vertex.block after '@'", ref_off);
      auto v = g.find_vertex(ref.substr(0, dot));
      if (!v) fail_at("unknown vertex '" + ref.substr(0, dot) + "'", ref_off);
      int idx = -1;
      try {
        idx = parse_int(ref.substr(dot + 1));
      } catch (const std::exception&) {
        fail_at("malformed block index", ref_off + dot + 1);
      }
      if (idx < 0 || idx >= g.block_count(*v))
        fail_at("vertex has no block " + std::to_string(idx), ref_off + dot + 1);
      entries.push_back({std::move(anchor.letters), BlockRef{*v, idx}});
    }
  }
  return make_blocked(g, std::move(tree), std::move(entries));
}

// ---- Printing ---------------------------------------------------------------

namespace {

std::string print_word(const SeparatedGraph& g, const Word& w) {
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += g.edge_name(w[i].edge);
    if (w[i].inv) out += '~';
  }
  return out;
}

std::string print_anchor(const SeparatedGraph& g, VertexId root, const Word& w) {
  return w.empty() ? g.vertex_name(root) : print_word(g, w);
}

std::string tree_body(const SeparatedGraph& g, const ETree& t) {
  std::string out;
  bool first = true;
  for (const Word& w : t.max_elements()) {
    if (w.empty()) continue;
    if (!first) out += ", ";
    first = false;
    out += print_word(g, w);
  }
  return out;
}

}  // namespace

std::string print_path(const SeparatedGraph& g, const Path& p) {
  return p.letters.empty() ? g.vertex_name(p.root) : print_word(g, p.letters);
}

std::string print_tree(const SeparatedGraph& g, const ETree& t) {
  std::string body = tree_body(g, t);
  if (body.empty()) return "{" + g.vertex_name(t.root()) + "}";
  return "{" + body + "}";
}

std::string print_element(const SeparatedGraph& g, const SgElement& e) {
  return "(" + print_tree(g, e.tree) + "; " + print_path(g, e.marker) + ")";
}

std::string print_sg_value(const SeparatedGraph& g, const SgValue& v) {
  return v ? print_element(g, *v) : "0";
}

std::string print_blocked(const SeparatedGraph& g, const BlockedTree& b) {
  std::string out = "{" + tree_body(g, b.tree);
  if (out.size() == 1) out += g.vertex_name(b.tree.root());
  if (!b.blocks.empty()) {
    out += " \\ ";
    for (size_t i = 0; i < b.blocks.size(); ++i) {
      if (i) out += ", ";
      const auto& [anchor, block] = b.blocks[i];
      out += print_anchor(g, b.tree.root(), anchor) + "@" +
             g.vertex_name(block.vertex) + "." + std::to_string(block.index);
    }
  }
  return out + "}";
}

std::string print_monomial(const SeparatedGraph& g, const Monomial& m) {
  return "e{" + tree_body(g, m.tree) + "} |> " + print_path(g, m.marker);
}

std::string print_algebra(const SeparatedGraph& g, const AlgebraElement& a) {
  if (a.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(a.terms().begin(),
                                                   a.terms().end());
  auto grade = [](const Monomial& m) {
    return m.tree.total_length() + static_cast<int>(m.marker.letters.size());
  };
  std::stable_sort(terms.begin(), terms.end(),
                   [&](const auto& x, const auto& y) {
                     int gx = grade(x.first), gy = grade(y.first);
                     if (gx != gy) return gx < gy;
                     return x.first < y.first;
                   });
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    const Rational& c = terms[i].second;
    bool neg = c < 0;
    if (i == 0) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    out += rational_to_string(neg ? Rational(-c) : c) + " * " +
           print_monomial(g, terms[i].first);
  }
  return out;
}

std::string print_q_element(const SeparatedGraph& g, const QBasisElement& q) {
  return "e" + print_blocked(g, q.blocked) + " |> " + print_path(g, q.marker);
}

// ---- Expressions --------------------------------------------------------------

namespace {

struct Token {
  enum Kind { ident, number, plus, minus, times, prime, lparen, rparen, end };
  Kind kind;
  std::string text;
  size_t pos = 0;
};

std::vector<Token> lex_expression(const std::string& s) {
  std::vector<Token> toks;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i < s.size() && s[i] == '/') {
        size_t j = i + 1;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i + 1) fail_at("expected digits after '/'", i + 1);
        i = j;
      }
      toks.push_back({Token::number, s.substr(start, i - start), start});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                              s[i] == '_'))
        ++i;
      toks.push_back({Token::ident, s.substr(start, i - start), start});
      continue;
    }
    Token::Kind k;
    switch (c) {
      case '+': k = Token::plus; break;
      case '-': k = Token::minus; break;
      case '*': k = Token::times; break;
      case '\'': k = Token::prime; break;
      case '(': k = Token::lparen; break;
      case ')': k = Token::rparen; break;
      default: fail_at(std::string("unexpected character '") + c + "'", i);
    }
    toks.push_back({k, s.substr(i, 1), i});
    ++i;
  }
  toks.push_back({Token::end, "", s.size()});
  return toks;
}

class ExpressionParser {
 public:
  ExpressionParser(const AlgebraCtx& ctx, const std::string& text)
      : ctx_(ctx), toks_(lex_expression(text)) {}

  AlgebraElement parse() {
    AlgebraElement e = expr();
    if (peek().kind != Token::end)
      fail_at("unexpected trailing input", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  bool accept(Token::Kind k) {
    if (peek().kind != k) return false;
    ++i_;
    return true;
  }

  AlgebraElement expr() {
    bool neg = accept(Token::minus);
    AlgebraElement acc = term();
    if (neg) acc *= Rational(-1);
    while (peek().kind == Token::plus || peek().kind == Token::minus) {
      bool sub = peek().kind == Token::minus;
      ++i_;
      AlgebraElement t = term();
      if (sub)
        acc -= t;
      else
        acc += t;
    }
    return acc;
  }

  AlgebraElement term() {
    Rational coeff = 1;
    if (peek().kind == Token::number) {
      auto r = parse_rational(peek().text);
      if (!r) fail_at("malformed rational '" + peek().text + "'", peek().pos);
      coeff = *r;
      ++i_;
      if (!accept(Token::times))
        fail_at("expected '*' after the coefficient", peek().pos);
    }
    AlgebraElement acc = factor();
    while (accept(Token::times))
      acc = algebra_multiply(ctx_, acc, factor());
    if (coeff != 1) acc *= coeff;
    return acc;
  }

  AlgebraElement factor() {
    AlgebraElement a = atom();
    if (accept(Token::prime)) a = star(ctx_, a);
    return a;
  }

  AlgebraElement atom() {
    if (accept(Token::lparen)) {
      AlgebraElement e = expr();
      if (!accept(Token::rparen)) fail_at("expected ')'", peek().pos);
      return e;
    }
    if (peek().kind == Token::ident) {
      const std::string& name = peek().text;
      const SeparatedGraph& g = *ctx_.graph;
      if (auto v = g.find_vertex(name)) {
        ++i_;
        return vertex_element(ctx_, *v);
      }
      if (auto e = g.find_edge(name)) {
        size_t pos = peek().pos;
        ++i_;
        (void)pos;
        return path_algebra_element(ctx_, Path{g.src(*e), {septree::pos(*e)}});
      }
      fail_at("unknown name '" + name + "'", peek().pos);
    }
    fail_at("expected a name, a rational, or '('", peek().pos);
  }

  const AlgebraCtx& ctx_;
  std::vector<Token> toks_;
  size_t i_ = 0;
};

}  // namespace

AlgebraElement parse_expression(const AlgebraCtx& ctx, const std::string& text) {
  return ExpressionParser(ctx, text).parse();
}

}  // namespace septree
