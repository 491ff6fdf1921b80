#pragma once

// Words in the genus-g surface group
//   Γ = ⟨a1, b1, ..., ag, bg | a1 b1 A1 B1 ... ag bg Ag Bg⟩.
// Letters are signed generator indices: a_i = 2i-1, b_i = 2i, negative for
// inverses. Text form uses "a1", "B2" (uppercase = inverse).

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sageev {

struct GroupWord {
  int genus = 2;
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  bool operator==(const GroupWord&) const = default;
};

// Order used for canonical forms: a1 < A1 < b1 < B1 < a2 < ...
int letter_rank(int letter);
// Length first, then lexicographic by letter_rank.
bool word_less(const GroupWord& x, const GroupWord& y);

GroupWord free_reduce(int genus, const std::vector<int>& raw);
GroupWord inverse(const GroupWord& w);
GroupWord concat(const GroupWord& x, const GroupWord& y);
GroupWord power(const GroupWord& w, int k);

std::vector<int> relator(int genus);

// Greedy Dehn algorithm: longest relator piece first, leftmost on ties.
GroupWord dehn_reduce(const GroupWord& w);

// Cyclic reduction followed by Dehn reduction on the cyclic word.
GroupWord cyclic_dehn_reduce(const GroupWord& w);

struct ConjugacyClass {
  GroupWord canonical;
  GroupWord root;
  int power = 1;

  int genus() const { return canonical.genus; }
  bool operator==(const ConjugacyClass& o) const { return canonical == o.canonical; }
};

bool class_less(const ConjugacyClass& x, const ConjugacyClass& y);

ConjugacyClass cyclic_canonical(const GroupWord& w);
std::pair<GroupWord, int> primitive_decompose(const ConjugacyClass& c);

inline constexpr std::size_t kDefaultClassBudget = 200000;

// All classes of canonical length <= L, sorted by class_less.
std::vector<ConjugacyClass> enumerate_classes(int genus, int L,
                                              std::size_t budget = kDefaultClassBudget);

// Grammar: word := token*, token := [aAbB][1-9][0-9]*, separated by optional
// whitespace. "1" or "e" alone denotes the empty word.
GroupWord parse_word(int genus, std::string_view text);
std::string format_letter(int letter);
std::string format_word(const GroupWord& w);

}  // namespace sageev
