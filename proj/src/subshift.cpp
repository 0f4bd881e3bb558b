#include "bvd/subshift.hpp"

#include <algorithm>
#include <limits>

#include "bvd/errors.hpp"
#include "bvd/vershik.hpp"

namespace bvd {

namespace {

constexpr Count kMaxWordLength = Count{1} << 26;

void require_language_preconditions(const OrderedDiagram& d, std::size_t k, std::size_t length,
                                    std::size_t depth) {
  if (length == 0) throw ContractError("factor length must be positive");
  if (k == 0 || k > depth) throw ContractError("alphabet level must satisfy 1 <= k <= depth");
  if (!d.is_infinite()) throw ContractError("the language needs a repeating diagram");
  if (is_properly_ordered(d).status != ProperOrderVerdict::Status::Yes)
    throw ContractError("the diagram is not properly ordered");
  const TowerHeights h(d, depth);
  if (h.min_height(depth) < length)
    throw ContractError("depth budget " + std::to_string(depth) + " too small for length " + std::to_string(length));
}

void add_factors(std::set<Word>& out, const Word& w, std::size_t length) {
  if (w.size() < length) return;
  for (std::size_t i = 0; i + length <= w.size(); ++i)
    out.emplace(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + length));
}

// Suffix of the max tower followed by the prefix of the min tower, each length - 1 long.
Word seam_word(const OrderedDiagram& d, const std::vector<Word>& words, std::size_t depth, std::size_t length) {
  const Word& top = words[extreme_thread_vertex(d, depth, Extreme::Max)];
  const Word& bottom = words[extreme_thread_vertex(d, depth, Extreme::Min)];
  const std::size_t half = length - 1;
  Word seam(top.end() - static_cast<std::ptrdiff_t>(half), top.end());
  seam.insert(seam.end(), bottom.begin(), bottom.begin() + static_cast<std::ptrdiff_t>(half));
  return seam;
}

}  // namespace

Alphabet::Alphabet(const OrderedDiagram& d, std::size_t k) : k_(k), heights_(d, k) {
  offsets_.resize(d.vertex_count(k) + 1, 0);
  for (VertexId v = 0; v < d.vertex_count(k); ++v) offsets_[v + 1] = offsets_[v] + heights_.height(k, v);
  if (offsets_.back() > std::numeric_limits<std::uint32_t>::max())
    throw ContractError("alphabet P_" + std::to_string(k) + " too large to intern");
}

std::uint32_t Alphabet::code(Symbol s) const {
  if (s.vertex + 1 >= offsets_.size() || s.rank == 0 || s.rank > heights_.height(k_, s.vertex))
    throw ContractError("symbol outside the alphabet");
  return static_cast<std::uint32_t>(offsets_[s.vertex] + s.rank - 1);
}

std::uint32_t Alphabet::code(const FinitePath& p) const {
  if (p.level() != k_) throw ContractError("symbol path has the wrong level");
  return code(Symbol{p.terminal(), heights_.rank(p.edges)});
}

Symbol Alphabet::symbol(std::uint32_t c) const {
  if (c >= size()) throw ContractError("code outside the alphabet");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), Count{c});
  const auto v = static_cast<VertexId>(it - offsets_.begin() - 1);
  return Symbol{v, c - offsets_[v] + 1};
}

FinitePath Alphabet::path(std::uint32_t c) const {
  const Symbol s = symbol(c);
  return FinitePath{heights_.unrank(k_, s.vertex, s.rank)};
}

Word encode(const Alphabet& alphabet, const std::vector<FinitePath>& paths) {
  Word out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(alphabet.code(p));
  return out;
}

std::vector<Word> tower_words(const OrderedDiagram& d, std::size_t n, std::size_t k) {
  if (k > n) throw ContractError("alphabet level exceeds the tower level");
  const TowerHeights h(d, n);
  if (h.max_height(n) > kMaxWordLength) throw ContractError("tower word too long to materialize");
  const Alphabet alphabet(d, k);
  std::vector<Word> words(d.vertex_count(k));
  for (VertexId v = 0; v < words.size(); ++v) {
    const std::uint32_t first = alphabet.code(Symbol{v, 1});
    words[v].resize(h.height(k, v));
    for (std::size_t i = 0; i < words[v].size(); ++i) words[v][i] = first + static_cast<std::uint32_t>(i);
  }
  for (std::size_t t = k + 1; t <= n; ++t) {
    const Level& l = d.level(t);
    std::vector<Word> next(l.vertex_count());
    for (std::size_t v = 0; v < next.size(); ++v) {
      next[v].reserve(h.height(t, static_cast<VertexId>(v)));
      for (VertexId s : l.sources[v]) next[v].insert(next[v].end(), words[s].begin(), words[s].end());
    }
    words = std::move(next);
  }
  return words;
}

TowerWord tower_word(const OrderedDiagram& d, std::size_t n, VertexId v, std::size_t k) {
  if (v >= d.vertex_count(n)) throw ContractError("vertex " + std::to_string(v) + " does not exist at level " + std::to_string(n));
  auto words = tower_words(d, n, k);
  return TowerWord{n, v, k, std::move(words[v])};
}

LanguageSample language(const OrderedDiagram& d, std::size_t k, std::size_t length, std::size_t depth) {
  require_language_preconditions(d, k, length, depth);
  const auto words = tower_words(d, depth, k);
  LanguageSample sample{k, length, depth, {}};
  for (const auto& w : words) add_factors(sample.words, w, length);
  add_factors(sample.words, seam_word(d, words, depth, length), length);
  return sample;
}

std::vector<std::size_t> complexity_profile(const OrderedDiagram& d, std::size_t k, std::size_t depth,
                                            std::size_t max_length) {
  require_language_preconditions(d, k, max_length, depth);
  const auto words = tower_words(d, depth, k);
  const Word seam = seam_word(d, words, depth, max_length);
  std::vector<std::size_t> profile;
  profile.reserve(max_length);
  for (std::size_t l = 1; l <= max_length; ++l) {
    std::set<Word> factors;
    for (const auto& w : words) add_factors(factors, w, l);
    // Seam windows for l start in [mid + 1 - l, mid - 1] and straddle index mid.
    const std::size_t mid = max_length - 1;
    for (std::size_t start = mid + 1 - l; start < mid; ++start)
      factors.emplace(seam.begin() + static_cast<std::ptrdiff_t>(start),
                      seam.begin() + static_cast<std::ptrdiff_t>(start + l));
    profile.push_back(factors.size());
  }
  return profile;
}

PeriodVerdict detect_period(const OrderedDiagram& d, std::size_t k, std::size_t depth, std::size_t max_length) {
  if (max_length < 2) throw ContractError("period detection needs lengths up to at least 2");
  const TowerHeights h(d, depth);
  const std::size_t usable = static_cast<std::size_t>(std::min<Count>(max_length, h.min_height(depth)));
  if (usable < 2) throw ContractError("depth budget " + std::to_string(depth) + " too small for period detection");
  PeriodVerdict verdict;
  verdict.depth = depth;
  verdict.complexity = complexity_profile(d, k, depth, usable);
  for (std::size_t l = 1; l < verdict.complexity.size(); ++l) {
    if (verdict.complexity[l] == verdict.complexity[l - 1]) {
      verdict.periodic = true;
      verdict.period = verdict.complexity[l - 1];
      verdict.plateau_length = l;
      break;
    }
  }
  return verdict;
}

}  // namespace bvd
