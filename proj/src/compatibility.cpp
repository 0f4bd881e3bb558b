#include "bvd/compatibility.hpp"

#include <algorithm>
#include <limits>

#include "bvd/errors.hpp"
#include "bvd/kernels.hpp"
#include "bvd/subshift.hpp"

namespace bvd {

namespace {

void check_window(const Window& w) {
  if (w.lo > w.hi) throw ContractError("empty window");
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

std::size_t index_of(const Window& w, std::int64_t m) { return static_cast<std::size_t>(m - w.lo); }

}  // namespace

std::vector<std::int64_t> scan_order(const Window& w) {
  std::vector<std::int64_t> order;
  order.reserve(w.size());
  for (std::int64_t m = std::max<std::int64_t>(0, w.lo); m <= w.hi; ++m) order.push_back(m);
  for (std::int64_t m = std::min<std::int64_t>(-1, w.hi); m >= w.lo; --m) order.push_back(m);
  return order;
}

Window default_window(const OrderedDiagram& d, std::span<const PointApprox> points) {
  if (points.empty()) throw ContractError("no points given");
  Count room = std::numeric_limits<Count>::max();
  Count sweep = 0;
  for (const auto& x : points) {
    if (x.is_infinite()) {
      const std::size_t n = x.base.level();
      sweep = std::max(sweep, count_paths(d, n, x.base.terminal()) - 1);
      continue;
    }
    const FinitePath p = x.prefix(x.specified_depth());
    room = std::min(room, count_paths(d, p.level(), p.terminal()) - path_rank(d, p));
  }
  if (room == std::numeric_limits<Count>::max()) room = sweep;
  return Window{0, static_cast<std::int64_t>(room)};
}

DepthReport depth_report(const OrderedDiagram& d, const PointApprox& x, const PointApprox& y, std::size_t max_level,
                         Window window) {
  check_window(window);
  const auto ox = orbit_window(d, x, max_level, window.lo, window.hi);
  const auto oy = orbit_window(d, y, max_level, window.lo, window.hi);
  DepthReport report;
  report.max_level = max_level;
  report.window = window;
  report.compatible_through = max_level;
  for (std::int64_t m : scan_order(window)) {
    const std::size_t a = agreement(ox[index_of(window, m)], oy[index_of(window, m)]);
    if (a < report.compatible_through) {
      report.compatible_through = a;
      report.witness_offset = m;
    }
  }
  if (report.compatible_through < max_level) report.separated_at = report.compatible_through + 1;
  return report;
}

CutScanReport cut_scan(const OrderedDiagram& d, const PointApprox& x, const PointApprox& y, std::size_t level,
                       Window window) {
  check_window(window);
  const auto ox = orbit_window(d, x, level, window.lo, window.hi);
  const auto oy = orbit_window(d, y, level, window.lo, window.hi);
  CutScanReport report;
  report.level = level;
  report.window = window;
  for (std::int64_t m : scan_order(window)) {
    const auto& a = ox[index_of(window, m)];
    const auto& b = oy[index_of(window, m)];
    if (all_minimal(a) && all_minimal(b)) {
      report.has_common_cut = true;
      report.witness_offset = m;
      report.ranges_at_witness = std::make_pair(a.terminal(), b.terminal());
      break;
    }
  }
  return report;
}

const char* to_string(WitnessResult::Status status) {
  switch (status) {
    case WitnessResult::Status::Found: return "found";
    case WitnessResult::Status::NotFound: return "not-found";
    case WitnessResult::Status::NoCommonCut: return "no-common-cut";
  }
  return "unknown";
}

WitnessResult find_minimal_cut_witness(const OrderedDiagram& d, const PointApprox& x, const PointApprox& y,
                                       std::size_t i, Window window) {
  check_window(window);
  const auto ox = orbit_window(d, x, i + 1, window.lo, window.hi);
  const auto oy = orbit_window(d, y, i + 1, window.lo, window.hi);
  WitnessResult result;
  bool any_cut = false;
  for (std::int64_t m : scan_order(window)) {
    const auto& a = ox[index_of(window, m)];
    const auto& b = oy[index_of(window, m)];
    if (!all_minimal(a) || !all_minimal(b)) continue;
    any_cut = true;
    if (a.terminal() != b.terminal()) {
      result.status = WitnessResult::Status::Found;
      result.offset = m;
      result.range_x = a.terminal();
      result.range_y = b.terminal();
      return result;
    }
  }
  result.status = any_cut ? WitnessResult::Status::NotFound : WitnessResult::Status::NoCommonCut;
  return result;
}

bool pairwise_compatible(const OrderedDiagram& d, std::span<const PointApprox> points, std::size_t k, Window window) {
  if (points.size() < 2 || k == 0) return true;
  const Alphabet alphabet(d, k);
  const Word first = encode(alphabet, orbit_window(d, points[0], k, window.lo, window.hi));
  for (std::size_t p = 1; p < points.size(); ++p) {
    const Word other = encode(alphabet, orbit_window(d, points[p], k, window.lo, window.hi));
    if (kernels::first_mismatch(first, other) != first.size()) return false;
  }
  return true;
}

std::optional<Count> min_ordinal_gap(const OrderedDiagram& d, std::span<const PointApprox> points, std::size_t level,
                                     VertexId v, Window window) {
  check_window(window);
  if (level == 0) throw ContractError("the gap level must be at least 1");
  if (v >= d.vertex_count(level)) throw ContractError("vertex " + std::to_string(v) + " does not exist at level " + std::to_string(level));
  if (!pairwise_compatible(d, points, level - 1, window))
    throw ContractError("points do not share their level-" + std::to_string(level - 1) + " orbit on the window");
  const TowerHeights heights(d, level);
  std::vector<std::vector<FinitePath>> orbits;
  orbits.reserve(points.size());
  for (const auto& x : points) orbits.push_back(orbit_window(d, x, level, window.lo, window.hi));
  std::optional<Count> best;
  std::vector<Count> ranks;
  for (std::size_t t = 0; t < window.size(); ++t) {
    ranks.clear();
    for (const auto& orbit : orbits)
      if (orbit[t].terminal() == v) ranks.push_back(heights.rank(orbit[t].edges));
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t r = 1; r < ranks.size(); ++r) {
      const Count gap = ranks[r] - ranks[r - 1];
      if (gap > 0 && (!best || gap < *best)) best = gap;
    }
  }
  return best;
}

std::vector<std::int64_t> periodicity_law_check(std::span<const std::uint32_t> word, std::int64_t origin, Count gap,
                                                std::int64_t from, std::int64_t to) {
  if (from > to) return {};
  const std::int64_t end = origin + static_cast<std::int64_t>(word.size());
  if (from < origin || to + static_cast<std::int64_t>(gap) >= end)
    throw ContractError("coordinate range leaves the window");
  const auto start = static_cast<std::size_t>(from - origin);
  const auto n = static_cast<std::size_t>(to - from + 1);
  std::vector<std::uint8_t> mask(n);
  kernels::equal_mask(word.subspan(start, n), word.subspan(start + gap, n), mask);
  std::vector<std::int64_t> holds;
  for (std::size_t i = 0; i < n; ++i)
    if (mask[i]) holds.push_back(from + static_cast<std::int64_t>(i));
  return holds;
}

std::optional<std::size_t> smallest_period(std::span<const std::uint32_t> word) {
  for (std::size_t q = 1; q <= word.size() / 2; ++q) {
    const std::size_t n = word.size() - q;
    if (kernels::first_mismatch(word.first(n), word.subspan(q, n)) == n) return q;
  }
  return std::nullopt;
}

}  // namespace bvd
