#include "jewelbox/words.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>

namespace jewelbox::freegroup {

int letter_rank(Letter l) {
  int m = l > 0 ? l : -l;
  return 2 * (m - 1) + (l < 0 ? 1 : 0);
}

bool letter_less(Letter a, Letter b) { return letter_rank(a) < letter_rank(b); }

char letter_to_char(Letter l) {
  return l > 0 ? static_cast<char>('a' + l - 1) : static_cast<char>('A' - l - 1);
}

Letter letter_from_char(char c) {
  if (c >= 'a' && c <= 'z') return c - 'a' + 1;
  if (c >= 'A' && c <= 'Z') return -(c - 'A' + 1);
  throw index_out_of_range(std::string("bad letter '") + c + "'");
}

Word Word::inverse() const {
  Word r{rank, {}};
  r.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(-*it);
  return r;
}

static std::string letters_str(const std::vector<Letter>& ls) {
  if (ls.empty()) return "1";
  std::string s;
  for (Letter l : ls) s += letter_to_char(l);
  return s;
}

std::string Word::str() const { return letters_str(letters); }
std::string CyclicWord::str() const { return letters_str(letters); }

std::strong_ordering CyclicWord::operator<=>(const CyclicWord& o) const {
  if (letters.size() != o.letters.size())
    return letters.size() <=> o.letters.size();
  for (size_t i = 0; i < letters.size(); ++i) {
    int a = letter_rank(letters[i]), b = letter_rank(o.letters[i]);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

bool shortlex_less(const CyclicWord& a, const CyclicWord& b) { return a < b; }

Word reduce(const std::vector<Letter>& raw, int rank) {
  Word w{rank, {}};
  w.letters.reserve(raw.size());
  for (Letter l : raw) {
    int m = l > 0 ? l : -l;
    if (l == 0 || m > rank)
      throw index_out_of_range("letter " + std::to_string(l) + " out of range for rank " +
                               std::to_string(rank));
    if (!w.letters.empty() && w.letters.back() == -l)
      w.letters.pop_back();
    else
      w.letters.push_back(l);
  }
  return w;
}

Word parse_word(const std::string& s, int rank) {
  std::vector<Letter> ls;
  if (s != "1") {
    for (char c : s) ls.push_back(letter_from_char(c));
  }
  return reduce(ls, rank);
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> raw = a.letters;
  raw.insert(raw.end(), b.letters.begin(), b.letters.end());
  return reduce(raw, a.rank);
}

CyclicWord cyclic_canonical(const Word& w) {
  std::vector<Letter> ls = w.letters;
  // Cyclic reduction: strip inverse first/last pairs.
  while (ls.size() >= 2 && ls.front() == -ls.back()) {
    ls.erase(ls.begin());
    ls.pop_back();
  }
  CyclicWord best{w.rank, ls};
  if (ls.empty()) return best;
  int n = static_cast<int>(ls.size());
  for (int s = 1; s < n; ++s) {
    CyclicWord cand{w.rank, {}};
    cand.letters.reserve(n);
    for (int i = 0; i < n; ++i) cand.letters.push_back(ls[(s + i) % n]);
    if (cand < best) best = cand;
  }
  return best;
}

CyclicWord cyclic_canonical(const std::vector<Letter>& raw, int rank) {
  return cyclic_canonical(reduce(raw, rank));
}

Marking Marking::identity(int rank) {
  Marking g{rank, {}};
  for (int i = 1; i <= rank; ++i) g.images.push_back(Word{rank, {i}});
  return g;
}

Word Marking::apply(const Word& w) const {
  std::vector<Letter> raw;
  for (Letter l : w.letters) {
    const Word& img = images[(l > 0 ? l : -l) - 1];
    if (l > 0)
      raw.insert(raw.end(), img.letters.begin(), img.letters.end());
    else {
      Word inv = img.inverse();
      raw.insert(raw.end(), inv.letters.begin(), inv.letters.end());
    }
  }
  return reduce(raw, rank);
}

Marking Marking::compose(const Marking& inner) const {
  Marking r{rank, {}};
  for (const Word& w : inner.images) r.images.push_back(apply(w));
  return r;
}

std::string Marking::str() const {
  std::string s = "[";
  for (size_t i = 0; i < images.size(); ++i) {
    if (i) s += ",";
    s += images[i].str();
  }
  return s + "]";
}

Word apply_marking(const Marking& g, const Word& w) { return g.apply(w); }

namespace {

long long tuple_length(const std::vector<Word>& ws) {
  long long t = 0;
  for (const auto& w : ws) t += w.length();
  return t;
}

bool is_standard_basis(const std::vector<Word>& ws, int rank) {
  std::vector<bool> seen(rank + 1, false);
  for (const auto& w : ws) {
    if (w.length() != 1) return false;
    int m = std::abs(w.letters[0]);
    if (seen[m]) return false;
    seen[m] = true;
  }
  return true;
}

// Abelianized determinant must be +-1 for an automorphism; cheap rejection.
bool abelian_det_unit(const Marking& g) {
  int n = g.rank;
  std::vector<std::vector<long long>> a(n, std::vector<long long>(n, 0));
  for (int j = 0; j < n; ++j)
    for (Letter l : g.images[j].letters) a[std::abs(l) - 1][j] += l > 0 ? 1 : -1;
  // Fraction-free elimination over the integers (Bareiss).
  long long prev = 1;
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a[i][k] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      for (auto& x : a[k]) x = -x;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return a[n - 1][n - 1] == 1 || a[n - 1][n - 1] == -1;
}

// All single elementary Nielsen moves w_i -> w_i w_j^{+-1} or w_j^{+-1} w_i,
// plus inversions w_i -> w_i^{-1}.
std::vector<std::vector<Word>> nielsen_neighbors(const std::vector<Word>& ws) {
  std::vector<std::vector<Word>> out;
  int n = static_cast<int>(ws.size());
  for (int i = 0; i < n; ++i) {
    auto inv = ws;
    inv[i] = ws[i].inverse();
    out.push_back(std::move(inv));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int s = 0; s < 2; ++s) {
        Word wj = s ? ws[j].inverse() : ws[j];
        auto left = ws;
        left[i] = concat(wj, ws[i]);
        out.push_back(std::move(left));
        auto right = ws;
        right[i] = concat(ws[i], wj);
        out.push_back(std::move(right));
      }
    }
  }
  return out;
}

std::string tuple_key(const std::vector<Word>& ws) {
  std::string k;
  for (const auto& w : ws) {
    k += w.str();
    k += '|';
  }
  return k;
}

}  // namespace

bool is_automorphism(const Marking& g) {
  if (g.rank < 1 || static_cast<int>(g.images.size()) != g.rank) return false;
  for (const auto& w : g.images)
    if (w.empty()) return false;
  if (!abelian_det_unit(g)) return false;

  // Greedy strictly-decreasing Nielsen reduction, with a bounded BFS over
  // length-preserving moves to escape plateaus.
  std::vector<Word> cur = g.images;
  constexpr int kPlateauBudget = 20000;
  while (true) {
    if (tuple_length(cur) == g.rank) return is_standard_basis(cur, g.rank);
    bool improved = false;
    for (auto& nb : nielsen_neighbors(cur)) {
      if (tuple_length(nb) < tuple_length(cur)) {
        cur = std::move(nb);
        improved = true;
        break;
      }
    }
    if (improved) continue;

    long long len = tuple_length(cur);
    std::set<std::string> seen{tuple_key(cur)};
    std::queue<std::vector<Word>> frontier;
    frontier.push(cur);
    bool escaped = false;
    while (!frontier.empty() && static_cast<int>(seen.size()) < kPlateauBudget) {
      auto t = frontier.front();
      frontier.pop();
      for (auto& nb : nielsen_neighbors(t)) {
        long long l = tuple_length(nb);
        if (l < len) {
          cur = std::move(nb);
          escaped = true;
          break;
        }
        if (l == len && seen.insert(tuple_key(nb)).second) frontier.push(nb);
      }
      if (escaped) break;
    }
    if (!escaped) return false;
  }
}

std::vector<CyclicWord> generate_W0(int rank) {
  if (rank < 2) throw index_out_of_range("generate_W0 needs rank >= 2");
  std::set<CyclicWord> classes;
  for (int i = 1; i <= rank; ++i) classes.insert(cyclic_canonical({i}, rank));
  for (int i = 1; i <= rank; ++i)
    for (int j = 1; j <= rank; ++j) {
      if (i == j) continue;
      classes.insert(cyclic_canonical({i, j}, rank));
      classes.insert(cyclic_canonical({i, -j}, rank));
    }
  return {classes.begin(), classes.end()};
}

std::vector<CyclicWord> enumerate_classes_of_length(int rank, int len) {
  static std::map<std::pair<int, int>, std::vector<CyclicWord>> cache;
  auto hit = cache.find({rank, len});
  if (hit != cache.end()) return hit->second;

  std::set<CyclicWord> classes;
  // DFS over freely reduced words; cyclic reducedness is the extra condition
  // that the first letter is not the inverse of the last.
  std::vector<Letter> stack;
  auto alphabet = [&] {
    std::vector<Letter> a;
    for (int i = 1; i <= rank; ++i) {
      a.push_back(i);
      a.push_back(-i);
    }
    std::sort(a.begin(), a.end(), letter_less);
    return a;
  }();
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(stack.size()) == len) {
      if (stack.front() != -stack.back())
        classes.insert(cyclic_canonical(Word{rank, stack}));
      return;
    }
    for (Letter l : alphabet) {
      if (!stack.empty() && stack.back() == -l) continue;
      stack.push_back(l);
      self(self);
      stack.pop_back();
    }
  };
  if (len >= 1) rec(rec);
  std::vector<CyclicWord> out(classes.begin(), classes.end());
  cache[{rank, len}] = out;
  return out;
}

std::vector<CyclicWord> enumerate_classes(int rank, int max_len) {
  std::vector<CyclicWord> out;
  for (int len = 1; len <= max_len; ++len) {
    auto slice = enumerate_classes_of_length(rank, len);
    out.insert(out.end(), slice.begin(), slice.end());
  }
  return out;
}

}  // namespace jewelbox::freegroup
