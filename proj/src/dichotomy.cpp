#include "bvd/dichotomy.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "bvd/errors.hpp"
#include "bvd/surgery.hpp"

namespace bvd {

namespace {

constexpr std::size_t kMaxDepthSearch = 256;
constexpr Count kMaxCandidates = 4096;

Count checked_mul(Count a, Count b) {
  Count out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("bound exceeds 64 bits");
  return out;
}

Count checked_add(Count a, Count b) {
  Count out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("bound exceeds 64 bits");
  return out;
}

Count pow2(std::size_t e) {
  if (e >= 64) throw std::overflow_error("bound exceeds 64 bits");
  return Count{1} << e;
}

bool all_minimal(const FinitePath& p) {
  return std::all_of(p.edges.begin(), p.edges.end(), [](const Edge& e) { return e.ordinal == 1; });
}

std::size_t agreement(const FinitePath& a, const FinitePath& b) {
  const std::size_t n = std::min(a.level(), b.level());
  std::size_t t = 0;
  while (t < n && a.edges[t] == b.edges[t]) ++t;
  return t;
}

struct PairFacts {
  std::size_t depth = 0;
  bool common_cut = false;
};

PairFacts pair_facts(const std::vector<FinitePath>& a, const std::vector<FinitePath>& b, std::size_t j) {
  PairFacts f;
  f.depth = j;
  for (std::size_t t = 0; t < a.size(); ++t) {
    f.depth = std::min(f.depth, agreement(a[t], b[t]));
    if (all_minimal(a[t]) && all_minimal(b[t])) f.common_cut = true;
  }
  return f;
}

std::vector<Count> candidate_positions(Count height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Count> positions;
  if (height <= kMaxCandidates) {
    positions.resize(height);
    std::iota(positions.begin(), positions.end(), Count{1});
    std::shuffle(positions.begin(), positions.end(), rng);
    return positions;
  }
  std::uniform_int_distribution<Count> pick(1, height);
  std::set<Count> seen;
  while (positions.size() < kMaxCandidates)
    if (const Count r = pick(rng); seen.insert(r).second) positions.push_back(r);
  return positions;
}

PointApprox with_base(const OrderedDiagram& d, const PointApprox& templ, Count position) {
  PointApprox y = templ;
  y.base = path_unrank(d, templ.base.level(), templ.base.terminal(), position);
  return y;
}

}  // namespace

Count infection_bound(std::size_t K) {
  if (K == 0) throw ContractError("rank must be at least 1");
  return checked_add(checked_mul(K - 1, pow2(K)), 2);
}

Count dm_bound(std::size_t K) {
  if (K == 0) throw ContractError("rank must be at least 1");
  Count p = 1;
  for (std::size_t e = 0; e <= K; ++e) p = checked_mul(p, K);
  return checked_add(p, 1);
}

Count infection_cap(std::size_t K, std::size_t l) {
  if (K == 0 || l == 0 || l > K) throw ContractError("cap index must satisfy 1 <= l <= K");
  const Count h = pow2(l - 1);
  return checked_mul(h, K) - (h - 1);
}

std::vector<Count> infection_caps(std::size_t K) {
  std::vector<Count> caps;
  for (std::size_t l = 1; l <= K; ++l) caps.push_back(infection_cap(K, l));
  return caps;
}

const char* to_string(ClassificationVerdict::Kind kind) {
  switch (kind) {
    case ClassificationVerdict::Kind::Odometer: return "Odometer";
    case ClassificationVerdict::Kind::ExpansiveLikely: return "ExpansiveLikely";
    case ClassificationVerdict::Kind::Unknown: return "Unknown";
  }
  return "Unknown";
}

ClassificationVerdict classify(const OrderedDiagram& d, std::size_t level_budget, std::size_t length_budget) {
  require_valid(d);
  if (!d.is_infinite()) throw ContractError("classification needs a repeating diagram");
  if (level_budget == 0 || length_budget < 2) throw ContractError("budgets too small");
  const auto profile = validate_and_profile(d);
  if (profile.simple != true) throw ContractError("the diagram is not simple");
  if (is_properly_ordered(d).status != ProperOrderVerdict::Status::Yes)
    throw ContractError("the diagram is not properly ordered");

  ClassificationVerdict out;
  out.level_budget = level_budget;
  out.length_budget = length_budget;
  for (std::size_t k = 1; k <= level_budget; ++k) {
    std::optional<std::size_t> depth;
    for (std::size_t n = k + 1; n <= k + kMaxDepthSearch && !depth; ++n) {
      try {
        if (TowerHeights(d, n).min_height(n) > length_budget) depth = n;
      } catch (const std::overflow_error&) {
        break;
      }
    }
    if (!depth) {
      out.kind = ClassificationVerdict::Kind::Unknown;
      out.reason = "towers at level " + std::to_string(k) + " never exceed the length budget";
      return out;
    }
    LevelClassification level{k, {}};
    try {
      level.verdict = detect_period(d, k, *depth, length_budget);
    } catch (const ContractError& e) {
      out.kind = ClassificationVerdict::Kind::Unknown;
      out.reason = std::string("budget exhausted at level ") + std::to_string(k) + ": " + e.what();
      return out;
    }
    out.levels.push_back(level);
    if (!level.verdict.periodic) {
      out.kind = ClassificationVerdict::Kind::ExpansiveLikely;
      out.first_aperiodic_level = k;
      out.complexity = level.verdict.complexity;
      return out;
    }
    if (out.levels.size() > 1 && level.verdict.period < out.levels[out.levels.size() - 2].verdict.period) {
      out.kind = ClassificationVerdict::Kind::Unknown;
      out.reason = "periods decrease at level " + std::to_string(k);
      return out;
    }
  }
  out.kind = ClassificationVerdict::Kind::Odometer;
  return out;
}

InfectionReport verify_infection_argument(const OrderedDiagram& d, std::size_t i0,
                                          const std::vector<PointApprox>& points, Window window) {
  if (i0 == 0) throw ContractError("i0 must be at least 1");
  if (window.lo > window.hi) throw ContractError("empty window");
  InfectionReport r;
  r.i0 = i0;
  r.j = i0 + 1;
  r.K = d.vertex_count(r.j);
  r.required = infection_bound(r.K);
  r.points_checked = points.size();
  r.window = window;
  r.caps = infection_caps(r.K);

  r.sufficient_witnesses = points.size() >= r.required;
  if (!r.sufficient_witnesses)
    r.flags.push_back("insufficient witnesses: " + std::to_string(points.size()) + " < " + std::to_string(r.required));

  std::vector<PointApprox> unique;
  for (const auto& x : points) {
    PointApprox c = canonical(x);
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(std::move(c));
  }
  r.distinct = unique.size() == points.size();
  if (!r.distinct) r.flags.push_back("points are not distinct");

  std::vector<std::vector<FinitePath>> orbits;
  orbits.reserve(points.size());
  for (const auto& x : points) orbits.push_back(orbit_window(d, x, r.j, window.lo, window.hi));

  const std::size_t L = points.size();
  r.depth.assign(L, std::vector<std::size_t>(L, r.j));
  r.common_cut.assign(L, std::vector<bool>(L, false));
  r.pairwise_compatible = r.pairwise_separated = r.no_common_cuts = true;
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a + 1; b < L; ++b) {
      const PairFacts f = pair_facts(orbits[a], orbits[b], r.j);
      r.depth[a][b] = r.depth[b][a] = f.depth;
      r.common_cut[a][b] = r.common_cut[b][a] = f.common_cut;
      r.pairwise_compatible &= f.depth >= i0;
      r.pairwise_separated &= f.depth < r.j;
      r.no_common_cuts &= !f.common_cut;
    }
  if (!r.pairwise_compatible) r.flags.push_back("points are not pairwise " + std::to_string(i0) + "-compatible");
  if (!r.pairwise_separated) r.flags.push_back("some pair is not " + std::to_string(r.j) + "-separated on the window");
  if (!r.no_common_cuts) r.flags.push_back("some pair has a common " + std::to_string(r.j) + "-cut on the window");
  r.valid_family = r.sufficient_witnesses && r.distinct && r.pairwise_compatible && r.pairwise_separated &&
                   r.no_common_cuts;

  // Gaps l_v and per-offset occupancy read off the level-j orbits.
  const TowerHeights heights(d, r.j);
  std::vector<std::optional<Count>> gaps(r.K);
  std::vector<std::vector<Count>> occupancy(window.size(), std::vector<Count>(r.K, 0));
  std::vector<std::vector<Count>> ranks(r.K);
  for (std::size_t t = 0; t < window.size(); ++t) {
    for (auto& rs : ranks) rs.clear();
    for (const auto& orbit : orbits) {
      const VertexId v = orbit[t].terminal();
      ++occupancy[t][v];
      ranks[v].push_back(heights.rank(orbit[t].edges));
    }
    for (VertexId v = 0; v < r.K; ++v) {
      auto& rs = ranks[v];
      std::sort(rs.begin(), rs.end());
      for (std::size_t q = 1; q < rs.size(); ++q) {
        const Count g = rs[q] - rs[q - 1];
        if (g > 0 && (!gaps[v] || g < *gaps[v])) gaps[v] = g;
      }
    }
  }
  for (VertexId v = 0; v < r.K; ++v) r.sorted_gaps.push_back(VertexGap{v, gaps[v]});
  std::stable_sort(r.sorted_gaps.begin(), r.sorted_gaps.end(), [](const VertexGap& a, const VertexGap& b) {
    if (a.gap.has_value() != b.gap.has_value()) return a.gap.has_value();
    return a.gap.has_value() && *a.gap < *b.gap;
  });

  for (std::int64_t m : scan_order(window)) {
    const auto t = static_cast<std::size_t>(m - window.lo);
    for (std::size_t l = 0; l < r.K && !r.first_exceedance; ++l) {
      const VertexId v = r.sorted_gaps[l].vertex;
      if (occupancy[t][v] > r.caps[l]) r.first_exceedance = CapExceedance{m, v, l + 1, occupancy[t][v], r.caps[l]};
    }
    if (r.first_exceedance) break;
  }

  if (!points.empty()) {
    const Alphabet alphabet(d, i0);
    std::vector<FinitePath> image;
    image.reserve(window.size());
    for (const auto& p : orbits[0]) image.push_back(truncate(p, i0));
    const Word word = encode(alphabet, image);
    r.image_period = smallest_period(word);
    r.image_periodic = r.image_period.has_value();
  }
  r.conclusion_consistent = !r.valid_family || (r.first_exceedance.has_value() && r.image_periodic);
  if (!r.conclusion_consistent) r.flags.push_back("valid family without the expected conclusion");
  return r;
}

std::vector<PointApprox> search_witness_family(const OrderedDiagram& d, std::size_t i0, const PointApprox& templ,
                                               std::size_t size, Window window, std::uint64_t seed) {
  if (i0 == 0) throw ContractError("i0 must be at least 1");
  check_point(d, templ);
  const std::size_t j = i0 + 1;
  if (templ.base.level() < j) throw ContractError("template base must reach level " + std::to_string(j));
  const Count height = count_paths(d, templ.base.level(), templ.base.terminal());
  std::vector<PointApprox> chosen;
  std::vector<std::vector<FinitePath>> orbits;
  for (Count position : candidate_positions(height, seed)) {
    if (chosen.size() >= size) break;
    PointApprox y = with_base(d, templ, position);
    std::vector<FinitePath> orbit;
    try {
      orbit = orbit_window(d, y, j, window.lo, window.hi);
    } catch (const std::runtime_error&) {
      continue;
    }
    const bool fits = std::all_of(orbits.begin(), orbits.end(), [&](const auto& other) {
      const PairFacts f = pair_facts(orbit, other, j);
      return f.depth == i0 && !f.common_cut;
    });
    if (!fits) continue;
    chosen.push_back(std::move(y));
    orbits.push_back(std::move(orbit));
  }
  return chosen;
}

std::optional<PointApprox> search_surgery_partner(const OrderedDiagram& d, std::size_t i, const PointApprox& x,
                                                  std::optional<Window> window, std::uint64_t seed) {
  check_point(d, x);
  const Count height = count_paths(d, x.base.level(), x.base.terminal());
  for (Count position : candidate_positions(height, seed)) {
    PointApprox y = with_base(d, x, position);
    if (y == x) continue;
    try {
      const Window w = window ? *window : default_window(d, std::vector<PointApprox>{x, y});
      if (find_surgery_plan(d, i, x, y, w).plan) return y;
    } catch (const std::runtime_error&) {
    }
  }
  return std::nullopt;
}

}  // namespace bvd
