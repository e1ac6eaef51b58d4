#include "septree/path.hpp"

namespace septree {

VertexId range(const SeparatedGraph& g, const Path& p) {
  return p.letters.empty() ? p.root : letter_dst(g, p.letters.back());
}

bool is_reduced_path(const SeparatedGraph& g, const Path& p) {
  VertexId at = p.root;
  if (at < 0 || at >= g.vertex_count()) return false;
  for (size_t i = 0; i < p.letters.size(); ++i) {
    Letter l = p.letters[i];
    if (letter_src(g, l) != at) return false;
    if (i > 0 && !reduced_pair(p.letters[i - 1], l)) return false;
    at = letter_dst(g, l);
  }
  return true;
}

bool is_c_separated(const SeparatedGraph& g, const Path& p) {
  for (size_t i = 1; i < p.letters.size(); ++i)
    if (separation_violation(g, p.letters[i - 1], p.letters[i])) return false;
  return true;
}

std::optional<Path> compose(const SeparatedGraph& g, const Path& a, const Path& b) {
  if (range(g, a) != source(b)) return std::nullopt;
  Path out = a;
  for (Letter l : b.letters) {
    if (!out.letters.empty() && out.letters.back() == inverse(l))
      out.letters.pop_back();
    else
      out.letters.push_back(l);
  }
  return out;
}

Path invert_path(const SeparatedGraph& g, const Path& p) {
  Path out = trivial_path(range(g, p));
  out.letters.reserve(p.letters.size());
  for (auto it = p.letters.rbegin(); it != p.letters.rend(); ++it)
    out.letters.push_back(inverse(*it));
  return out;
}

bool prefix_leq(const Path& a, const Path& b) {
  if (a.root != b.root || a.letters.size() > b.letters.size()) return false;
  return std::equal(a.letters.begin(), a.letters.end(), b.letters.begin());
}

std::pair<Path, Word> decompose(const SeparatedGraph& g, const Path& p,
                                const std::set<EdgeId>& U) {
  (void)g;
  size_t cut = p.letters.size();
  while (cut > 0) {
    Letter l = p.letters[cut - 1];
    if (l.inv || U.count(l.edge))
      --cut;
    else
      break;
  }
  Path head{p.root, Word(p.letters.begin(), p.letters.begin() + cut)};
  Word tail(p.letters.begin() + cut, p.letters.end());
  return {head, tail};
}

Path path_of_word(VertexId root, const Word& w) { return {root, w}; }

Path prefix_path(const Path& p, int len) {
  return {p.root, Word(p.letters.begin(), p.letters.begin() + len)};
}

}  // namespace septree
