#pragma once

// Odometer / expansive classification on finite budgets, the infection bound
// and its cap table, and a windowed check of the pigeonhole argument on a
// supplied witness family.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bvd/compatibility.hpp"
#include "bvd/diagram.hpp"
#include "bvd/subshift.hpp"
#include "bvd/vershik.hpp"

namespace bvd {

// (K - 1) 2^K + 2. Throws std::overflow_error past 64 bits; K >= 1.
Count infection_bound(std::size_t K);
// K^(K + 1) + 1.
Count dm_bound(std::size_t K);
// Occupancy cap of the l-th vertex in gap order: 2^(l-1) K - (2^(l-1) - 1), 1 <= l <= K.
Count infection_cap(std::size_t K, std::size_t l);
std::vector<Count> infection_caps(std::size_t K);

struct LevelClassification {
  std::size_t k = 0;
  PeriodVerdict verdict;
};

struct ClassificationVerdict {
  enum class Kind { Odometer, ExpansiveLikely, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<LevelClassification> levels;
  // ExpansiveLikely: the first level without a complexity plateau.
  std::optional<std::size_t> first_aperiodic_level;
  std::vector<std::size_t> complexity;
  std::size_t level_budget = 0;
  std::size_t length_budget = 0;
  std::string reason;
};

const char* to_string(ClassificationVerdict::Kind kind);

// Runs detect_period for k = 1..level_budget on a valid, simple, properly
// ordered repeating diagram; each level uses the shallowest depth whose towers
// exceed length_budget.
ClassificationVerdict classify(const OrderedDiagram& diagram, std::size_t level_budget, std::size_t length_budget = 32);

struct VertexGap {
  VertexId vertex = 0;
  std::optional<Count> gap;
  bool operator==(const VertexGap&) const = default;
};

struct CapExceedance {
  std::int64_t offset = 0;
  VertexId vertex = 0;
  // 1-based position of the vertex in gap order.
  std::size_t order = 0;
  Count occupancy = 0;
  Count cap = 0;
};

struct InfectionReport {
  std::size_t i0 = 0;
  std::size_t j = 0;
  std::size_t K = 0;
  Count required = 0;
  std::size_t points_checked = 0;
  Window window;

  bool sufficient_witnesses = false;
  bool distinct = false;
  // depth[a][b]: largest level of agreement over the window, capped at j.
  std::vector<std::vector<std::size_t>> depth;
  // common_cut[a][b]: some offset shows both level-j truncations minimal.
  std::vector<std::vector<bool>> common_cut;
  bool pairwise_compatible = false;
  bool pairwise_separated = false;
  bool no_common_cuts = false;
  bool valid_family = false;

  // Vertices of level j in nondecreasing gap order; vertices never co-ranged come last.
  std::vector<VertexGap> sorted_gaps;
  std::vector<Count> caps;
  std::optional<CapExceedance> first_exceedance;

  bool image_periodic = false;
  std::optional<std::size_t> image_period;
  // Valid families must show both an exceedance and a periodic image.
  bool conclusion_consistent = false;
  std::vector<std::string> flags;
};

// Hypothesis failures are reported in the flags; only malformed input throws.
InfectionReport verify_infection_argument(const OrderedDiagram& diagram, std::size_t i0,
                                          const std::vector<PointApprox>& points, Window window);

// Greedy seeded scan over the tower of the template's base vertex (keeping its
// tail) for points that are pairwise i0-compatible, (i0+1)-separated and free
// of common (i0+1)-cuts on the window. May return fewer than `size` points.
std::vector<PointApprox> search_witness_family(const OrderedDiagram& diagram, std::size_t i0,
                                               const PointApprox& templ, std::size_t size, Window window,
                                               std::uint64_t seed);

// Seeded scan of the same tower for a partner y of `x` that admits a surgery plan at level i.
// Without a window each candidate is tried on the default window of {x, y}.
std::optional<PointApprox> search_surgery_partner(const OrderedDiagram& diagram, std::size_t i, const PointApprox& x,
                                                  std::optional<Window> window, std::uint64_t seed);

}  // namespace bvd
