#include "sageev/words.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <mutex>
#include <set>

#include <fmt/format.h>

#include "sageev/error.hpp"

namespace sageev {

namespace {

void check_genus(int genus) {
  if (genus < 2) throw Error(ErrorKind::InvalidArgument, fmt::format("genus {} < 2", genus));
}

// Cyclic rotations of R and R^-1, grouped by first letter for fast matching.
struct Pieces {
  int genus;
  std::vector<std::vector<int>> rotations;
  std::vector<std::vector<int>> by_first;  // index: letter + 2g

  explicit Pieces(int g) : genus(g), by_first(4 * g + 1) {
    std::vector<int> r = relator(g);
    std::vector<int> rinv(r.rbegin(), r.rend());
    for (int& x : rinv) x = -x;
    for (const auto* base : {&r, &rinv}) {
      int n = static_cast<int>(base->size());
      for (int s = 0; s < n; ++s) {
        std::vector<int> rot(n);
        for (int k = 0; k < n; ++k) rot[k] = (*base)[(s + k) % n];
        by_first[rot[0] + 2 * g].push_back(static_cast<int>(rotations.size()));
        rotations.push_back(std::move(rot));
      }
    }
  }

  const std::vector<int>& starting_with(int letter) const { return by_first[letter + 2 * genus]; }
};

const Pieces& pieces(int genus) {
  static std::vector<std::unique_ptr<Pieces>> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  if (static_cast<int>(cache.size()) <= genus) cache.resize(genus + 1);
  if (!cache[genus]) cache[genus] = std::make_unique<Pieces>(genus);
  return *cache[genus];
}

// Inverse of the complement of the first m letters of rotation `rot`.
std::vector<int> complement_inverse(const std::vector<int>& rot, int m) {
  std::vector<int> out;
  for (int k = static_cast<int>(rot.size()) - 1; k >= m; --k) out.push_back(-rot[k]);
  return out;
}

struct Match {
  int length = 0;
  int pos = 0;
  int rot = 0;
};

// Longest relator piece starting at each position; leftmost wins ties. With
// `cyclic`, reading wraps around and lengths are capped at the word length.
Match longest_piece(const Pieces& P, const std::vector<int>& w, bool cyclic) {
  Match best;
  int n = static_cast<int>(w.size());
  int cap = 4 * P.genus;
  for (int i = 0; i < n; ++i) {
    for (int r : P.starting_with(w[i])) {
      const auto& rot = P.rotations[r];
      int limit = cyclic ? std::min(cap, n) : std::min(cap, n - i);
      int m = 0;
      while (m < limit && w[(i + m) % n] == rot[m]) ++m;
      if (m > best.length) best = {m, i, r};
    }
  }
  return best;
}

std::vector<int> rotate_to(const std::vector<int>& w, int i) {
  std::vector<int> out(w.begin() + i, w.end());
  out.insert(out.end(), w.begin(), w.begin() + i);
  return out;
}

std::vector<int> free_reduce_raw(const std::vector<int>& raw) {
  std::vector<int> out;
  out.reserve(raw.size());
  for (int x : raw) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

void cyclic_reduce_inplace(std::vector<int>& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == -w[hi - 1]) {
    ++lo;
    --hi;
  }
  w = std::vector<int>(w.begin() + lo, w.begin() + hi);
}

std::vector<int> inverse_raw(const std::vector<int>& w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

bool rank_less(const std::vector<int>& x, const std::vector<int>& y) {
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](int p, int q) { return letter_rank(p) < letter_rank(q); });
}

std::vector<int> min_rotation(const std::vector<int>& w) {
  std::vector<int> best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    auto r = rotate_to(w, static_cast<int>(i));
    if (rank_less(r, best)) best = std::move(r);
  }
  return best;
}

std::vector<int> cyclic_dehn_raw(const Pieces& P, std::vector<int> w) {
  for (;;) {
    w = free_reduce_raw(w);
    cyclic_reduce_inplace(w);
    if (w.empty()) return w;
    Match m = longest_piece(P, w, true);
    if (m.length <= 2 * P.genus) return w;
    std::vector<int> rot = rotate_to(w, m.pos);
    std::vector<int> next = complement_inverse(P.rotations[m.rot], m.length);
    next.insert(next.end(), rot.begin() + m.length, rot.end());
    w = std::move(next);
  }
}

constexpr std::size_t kSwapClosureCap = 20000;

// All cyclic words reachable by swapping a half-relator piece for the
// complementary half, as minimal rotations. Returns a shorter word instead if
// a swap exposes a Dehn reduction.
std::set<std::vector<int>> swap_closure(const Pieces& P, std::vector<int>& w) {
  const int half = 2 * P.genus;
restart:
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  seen.insert(min_rotation(w));
  queue.push_back(w);
  while (!queue.empty()) {
    std::vector<int> x = std::move(queue.front());
    queue.pop_front();
    int n = static_cast<int>(x.size());
    if (n < half) continue;
    for (int i = 0; i < n; ++i) {
      for (int r : P.starting_with(x[i])) {
        const auto& rot = P.rotations[r];
        int m = 0;
        while (m < half && x[(i + m) % n] == rot[m]) ++m;
        if (m < half) continue;
        std::vector<int> y = complement_inverse(rot, half);
        std::vector<int> rx = rotate_to(x, i);
        y.insert(y.end(), rx.begin() + half, rx.end());
        y = cyclic_dehn_raw(P, std::move(y));
        if (static_cast<int>(y.size()) < n) {
          w = std::move(y);
          if (w.empty()) return {};
          goto restart;
        }
        auto key = min_rotation(y);
        if (seen.insert(key).second) {
          if (seen.size() > kSwapClosureCap)
            throw Error(ErrorKind::BudgetExceeded, "half-relator swap closure too large");
          queue.push_back(std::move(key));
        }
      }
    }
  }
  return seen;
}

}  // namespace

int letter_rank(int letter) { return 2 * (std::abs(letter) - 1) + (letter < 0 ? 1 : 0); }

bool word_less(const GroupWord& x, const GroupWord& y) {
  if (x.size() != y.size()) return x.size() < y.size();
  return rank_less(x.letters, y.letters);
}

GroupWord free_reduce(int genus, const std::vector<int>& raw) {
  check_genus(genus);
  for (int x : raw)
    if (x == 0 || std::abs(x) > 2 * genus)
      throw Error(ErrorKind::BadLetter,
                  fmt::format("letter {} out of range for genus {}", x, genus));
  return {genus, free_reduce_raw(raw)};
}

GroupWord inverse(const GroupWord& w) { return {w.genus, inverse_raw(w.letters)}; }

GroupWord concat(const GroupWord& x, const GroupWord& y) {
  std::vector<int> raw = x.letters;
  raw.insert(raw.end(), y.letters.begin(), y.letters.end());
  return {x.genus, free_reduce_raw(raw)};
}

GroupWord power(const GroupWord& w, int k) {
  GroupWord base = k < 0 ? inverse(w) : w;
  std::vector<int> raw;
  for (int i = 0; i < std::abs(k); ++i)
    raw.insert(raw.end(), base.letters.begin(), base.letters.end());
  return {w.genus, free_reduce_raw(raw)};
}

std::vector<int> relator(int genus) {
  check_genus(genus);
  std::vector<int> r;
  for (int i = 1; i <= genus; ++i) {
    int a = 2 * i - 1, b = 2 * i;
    r.insert(r.end(), {a, b, -a, -b});
  }
  return r;
}

GroupWord dehn_reduce(const GroupWord& w) {
  const Pieces& P = pieces(w.genus);
  std::vector<int> x = free_reduce_raw(w.letters);
  for (;;) {
    Match m = longest_piece(P, x, false);
    if (m.length <= 2 * P.genus) break;
    std::vector<int> next(x.begin(), x.begin() + m.pos);
    auto repl = complement_inverse(P.rotations[m.rot], m.length);
    next.insert(next.end(), repl.begin(), repl.end());
    next.insert(next.end(), x.begin() + m.pos + m.length, x.end());
    x = free_reduce_raw(next);
  }
  return {w.genus, std::move(x)};
}

GroupWord cyclic_dehn_reduce(const GroupWord& w) {
  return {w.genus, cyclic_dehn_raw(pieces(w.genus), w.letters)};
}

bool class_less(const ConjugacyClass& x, const ConjugacyClass& y) {
  return word_less(x.canonical, y.canonical);
}

ConjugacyClass cyclic_canonical(const GroupWord& w) {
  const Pieces& P = pieces(w.genus);
  std::vector<int> u = cyclic_dehn_raw(P, w.letters);
  if (u.empty()) throw Error(ErrorKind::IdentityClass, "word represents the identity");
  auto closure = swap_closure(P, u);
  if (u.empty()) throw Error(ErrorKind::IdentityClass, "word represents the identity");
  std::vector<int> best;
  bool first = true;
  for (const auto& x : closure) {
    for (auto cand : {x, min_rotation(inverse_raw(x))}) {
      if (first || rank_less(cand, best)) {
        best = cand;
        first = false;
      }
    }
  }
  ConjugacyClass c;
  c.canonical = {w.genus, best};
  auto [root, k] = primitive_decompose(c);
  c.root = root;
  c.power = k;
  return c;
}

std::pair<GroupWord, int> primitive_decompose(const ConjugacyClass& c) {
  const auto& w = c.canonical.letters;
  int n = static_cast<int>(w.size());
  for (int p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (int i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return {GroupWord{c.genus(), {w.begin(), w.begin() + p}}, n / p};
  }
  return {c.canonical, 1};
}

std::vector<ConjugacyClass> enumerate_classes(int genus, int L, std::size_t budget) {
  check_genus(genus);
  if (L < 1) throw Error(ErrorKind::InvalidArgument, "enumeration length must be >= 1");
  // A canonical word starts with a positive generator whose index is
  // minimal among all letters, and is cyclically reduced.
  std::vector<ConjugacyClass> out;
  std::vector<int> w;
  auto leaf = [&] {
    if (w.size() >= 2 && w.front() == -w.back()) return;
    ConjugacyClass c = cyclic_canonical({genus, w});
    if (c.canonical.letters != w) return;
    out.push_back(std::move(c));
    if (out.size() > budget)
      throw Error(ErrorKind::BudgetExceeded,
                  fmt::format("more than {} classes of length <= {}", budget, L));
  };
  auto dfs = [&](auto&& self, int first, int n) -> void {
    if (static_cast<int>(w.size()) == n) {
      leaf();
      return;
    }
    for (int g = first; g <= 2 * genus; ++g) {
      for (int x : {g, -g}) {
        if (x == -first && w.size() <= 1) continue;
        if (!w.empty() && w.back() == -x) continue;
        w.push_back(x);
        self(self, first, n);
        w.pop_back();
      }
    }
  };
  for (int n = 1; n <= L; ++n) {
    for (int first = 1; first <= 2 * genus; ++first) {
      w = {first};
      dfs(dfs, first, n);
    }
  }
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

GroupWord parse_word(int genus, std::string_view text) {
  check_genus(genus);
  std::vector<int> raw;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && (text[i] == 'e' || text[i] == '1')) {
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j == text.size()) return {genus, {}};
  }
  while (skip_ws(), i < text.size()) {
    char ch = text[i];
    int sign;
    bool is_a;
    switch (ch) {
      case 'a': sign = 1; is_a = true; break;
      case 'A': sign = -1; is_a = true; break;
      case 'b': sign = 1; is_a = false; break;
      case 'B': sign = -1; is_a = false; break;
      default:
        throw Error(ErrorKind::ParseError,
                    fmt::format("column {}: unexpected character '{}'", i + 1, ch));
    }
    std::size_t start = ++i;
    long idx = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      idx = idx * 10 + (text[i] - '0');
      if (idx > 1000000) break;
      ++i;
    }
    if (i == start)
      throw Error(ErrorKind::ParseError, fmt::format("column {}: missing generator index", i + 1));
    if (idx < 1 || idx > genus)
      throw Error(ErrorKind::BadLetter, fmt::format("column {}: generator index {} out of range "
                                                    "for genus {}", start + 1, idx, genus));
    int letter = static_cast<int>(is_a ? 2 * idx - 1 : 2 * idx);
    raw.push_back(sign * letter);
  }
  return free_reduce(genus, raw);
}

std::string format_letter(int letter) {
  int idx = (std::abs(letter) + 1) / 2;
  bool is_a = std::abs(letter) % 2 == 1;
  char ch = is_a ? (letter > 0 ? 'a' : 'A') : (letter > 0 ? 'b' : 'B');
  return fmt::format("{}{}", ch, idx);
}

std::string format_word(const GroupWord& w) {
  std::string out;
  for (int x : w.letters) {
    if (!out.empty()) out += ' ';
    out += format_letter(x);
  }
  return out;
}

}  // namespace sageev
