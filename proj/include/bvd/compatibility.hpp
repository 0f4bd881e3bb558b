#pragma once

// Windowed semi-decisions about pairs (and families) of points: depth of
// compatibility, common cuts, minimal-cut witnesses, ordinal gaps l_v, and the
// l_v-periodicity law on a common image.
//
// Every verdict only covers the offsets of the window it was computed on.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bvd/diagram.hpp"
#include "bvd/vershik.hpp"

namespace bvd {

struct Window {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(hi - lo + 1); }
  bool contains(std::int64_t m) const noexcept { return lo <= m && m <= hi; }
  Window shifted(std::int64_t by) const noexcept { return {lo + by, hi + by}; }

  bool operator==(const Window&) const = default;
};

// Offsets 0, 1, ..., hi followed by -1, -2, ..., lo (clipped to the window).
std::vector<std::int64_t> scan_order(const Window& window);

// Largest forward window over which every point stays inside its specified
// tower; for repeating tails, one sweep of the tallest base tower.
Window default_window(const OrderedDiagram& diagram, std::span<const PointApprox> points);

struct DepthReport {
  std::size_t max_level = 0;
  // Largest i with tau_i agreement at every offset (max_level when equal on the window).
  std::size_t compatible_through = 0;
  std::optional<std::size_t> separated_at;
  std::optional<std::int64_t> witness_offset;
  Window window;

  bool equal_on_window() const noexcept { return !separated_at.has_value(); }
};

DepthReport depth_report(const OrderedDiagram& diagram, const PointApprox& x, const PointApprox& y,
                         std::size_t max_level, Window window);

struct CutScanReport {
  std::size_t level = 0;
  bool has_common_cut = false;
  std::optional<std::int64_t> witness_offset;
  std::optional<std::pair<VertexId, VertexId>> ranges_at_witness;
  Window window;
};

CutScanReport cut_scan(const OrderedDiagram& diagram, const PointApprox& x, const PointApprox& y, std::size_t level,
                       Window window);

struct WitnessResult {
  enum class Status { Found, NotFound, NoCommonCut };
  Status status = Status::NotFound;
  std::optional<std::int64_t> offset;
  VertexId range_x = 0;
  VertexId range_y = 0;
};

const char* to_string(WitnessResult::Status status);

// Looks for an offset where both level-(i+1) truncations are minimal paths with distinct ranges.
WitnessResult find_minimal_cut_witness(const OrderedDiagram& diagram, const PointApprox& x, const PointApprox& y,
                                       std::size_t i, Window window);

// Smallest positive difference of tower ranks among points whose level-`level`
// truncation ranges at v at a common offset. The points must share their
// level-(level - 1) orbit on the window (ContractError otherwise).
std::optional<Count> min_ordinal_gap(const OrderedDiagram& diagram, std::span<const PointApprox> points,
                                     std::size_t level, VertexId v, Window window);

// True when every pair of points has the same level-k orbit on the window.
bool pairwise_compatible(const OrderedDiagram& diagram, std::span<const PointApprox> points, std::size_t k,
                         Window window);

// Coordinates n in [from, to] with word(n) == word(n + gap); `word` holds
// coordinates origin .. origin + word.size() - 1.
std::vector<std::int64_t> periodicity_law_check(std::span<const std::uint32_t> word, std::int64_t origin, Count gap,
                                                std::int64_t from, std::int64_t to);

// Smallest q <= word.size() / 2 with word(n) == word(n + q) throughout, if any.
std::optional<std::size_t> smallest_period(std::span<const std::uint32_t> word);

}  // namespace bvd
