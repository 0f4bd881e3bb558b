#pragma once

// Tower words over the alphabet P_k of level-k paths, the language and
// complexity of the factor subshifts, and periodicity detection.

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "bvd/diagram.hpp"

namespace bvd {

// A level-k path, interned as its terminal vertex and tower rank.
struct Symbol {
  VertexId vertex = 0;
  Count rank = 1;

  auto operator<=>(const Symbol&) const = default;
};

using Word = std::vector<std::uint32_t>;

// Dense codes for P_k: vertices in index order, ranks in tower order.
class Alphabet {
 public:
  Alphabet(const OrderedDiagram& diagram, std::size_t k);

  std::size_t level() const noexcept { return k_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(offsets_.back()); }

  std::uint32_t code(Symbol s) const;
  std::uint32_t code(const FinitePath& path) const;
  Symbol symbol(std::uint32_t code) const;
  FinitePath path(std::uint32_t code) const;

 private:
  std::size_t k_;
  TowerHeights heights_;
  std::vector<Count> offsets_;
};

Word encode(const Alphabet& alphabet, const std::vector<FinitePath>& paths);

struct TowerWord {
  std::size_t level = 0;
  VertexId vertex = 0;
  std::size_t alphabet_level = 0;
  Word codes;
};

TowerWord tower_word(const OrderedDiagram& diagram, std::size_t n, VertexId v, std::size_t k);
// Tower words of every vertex at level n, over P_k.
std::vector<Word> tower_words(const OrderedDiagram& diagram, std::size_t n, std::size_t k);

struct LanguageSample {
  std::size_t k = 0;
  std::size_t length = 0;
  std::size_t depth = 0;
  std::set<Word> words;

  std::size_t complexity() const noexcept { return words.size(); }
};

// Length-`length` factors of the level-`depth` tower words plus those crossing
// the seam where the max path wraps to the min path. Needs a properly ordered
// repeating diagram whose level-`depth` towers are at least `length` tall.
LanguageSample language(const OrderedDiagram& diagram, std::size_t k, std::size_t length, std::size_t depth);

// complexity[l - 1] for l = 1..max_length, same requirements as language().
std::vector<std::size_t> complexity_profile(const OrderedDiagram& diagram, std::size_t k, std::size_t depth,
                                            std::size_t max_length);

struct PeriodVerdict {
  bool periodic = false;
  Count period = 0;
  // Length at which the complexity first repeats.
  std::size_t plateau_length = 0;
  std::size_t depth = 0;
  std::vector<std::size_t> complexity;
};

// Periodic(p) iff complexity(l) == complexity(l + 1) == p for some l within the
// budget; nothing is certified otherwise.
PeriodVerdict detect_period(const OrderedDiagram& diagram, std::size_t k, std::size_t depth,
                            std::size_t max_length = 32);

}  // namespace bvd
