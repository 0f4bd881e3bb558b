#include "bvd/vershik.hpp"

#include <algorithm>
#include <set>

#include "bvd/errors.hpp"

namespace bvd {

namespace {

Ordinal extreme_ordinal(const OrderedDiagram& d, std::size_t n, VertexId v, Extreme which) {
  return which == Extreme::Min ? 1 : static_cast<Ordinal>(d.in_degree(n, v));
}

// Source of the min (max) in-edge of every vertex at level n.
std::vector<VertexId> extreme_sources(const OrderedDiagram& d, std::size_t n, Extreme which) {
  const Level& l = d.level(n);
  std::vector<VertexId> mu(l.vertex_count());
  for (std::size_t v = 0; v < mu.size(); ++v) mu[v] = which == Extreme::Min ? l.sources[v].front() : l.sources[v].back();
  return mu;
}

// Maps a vertex at level top down to level bottom along extreme edges.
VertexId follow_extreme(const OrderedDiagram& d, std::size_t top, std::size_t bottom, VertexId v, Extreme which) {
  for (std::size_t n = top; n > bottom; --n) {
    const auto& s = d.sources(n, v);
    v = which == Extreme::Min ? s.front() : s.back();
  }
  return v;
}

// Size of the eventual image of the composed extreme maps over one period,
// together with the (unique, when the size is 1) surviving vertex at level from - 1.
std::pair<std::size_t, VertexId> eventual_image(const OrderedDiagram& d, Extreme which) {
  const RepeatSpec r = *d.repeat();
  const std::size_t top = r.from_level + r.period - 1;
  const std::size_t bottom = r.from_level - 1;
  const std::size_t count = d.vertex_count(bottom);
  std::vector<VertexId> phi(count);
  for (VertexId v = 0; v < count; ++v) phi[v] = follow_extreme(d, top, bottom, v, which);
  std::set<VertexId> image;
  for (VertexId v = 0; v < count; ++v) image.insert(v);
  while (true) {
    std::set<VertexId> next;
    for (VertexId v : image) next.insert(phi[v]);
    if (next.size() == image.size()) break;
    image = std::move(next);
  }
  return {image.size(), *image.begin()};
}

bool repeat_usable(const OrderedDiagram& d) {
  const auto& r = d.repeat();
  return r && r->period > 0 && r->from_level > 0 && r->from_level + r->period - 1 <= d.stored_depth() &&
         d.vertex_count(r->from_level - 1) == d.vertex_count(r->from_level + r->period - 1);
}

std::vector<Edge> specified_edges(const PointApprox& x) {
  std::vector<Edge> edges = x.base.edges;
  edges.insert(edges.end(), x.tail.lead.begin(), x.tail.lead.end());
  return edges;
}

}  // namespace

FinitePath extreme_path(const OrderedDiagram& d, std::size_t n, VertexId v, Extreme which) {
  if (v >= d.vertex_count(n)) throw ContractError("vertex " + std::to_string(v) + " does not exist at level " + std::to_string(n));
  FinitePath p;
  p.edges.resize(n);
  for (std::size_t t = n; t >= 1; --t) {
    const Ordinal o = extreme_ordinal(d, t, v, which);
    p.edges[t - 1] = Edge{v, o};
    v = d.source(t, v, o);
  }
  return p;
}

std::size_t advance_edges(const OrderedDiagram& d, std::vector<Edge>& edges, Direction direction) {
  for (std::size_t t = 1; t <= edges.size(); ++t) {
    Edge& e = edges[t - 1];
    const std::size_t degree = d.in_degree(t, e.range);
    const bool movable = direction == Direction::Forward ? e.ordinal < degree : e.ordinal > 1;
    if (!movable) continue;
    e.ordinal = direction == Direction::Forward ? e.ordinal + 1 : e.ordinal - 1;
    if (t > 1) {
      const VertexId s = d.source(t, e.range, e.ordinal);
      const FinitePath below =
          extreme_path(d, t - 1, s, direction == Direction::Forward ? Extreme::Min : Extreme::Max);
      std::copy(below.edges.begin(), below.edges.end(), edges.begin());
    }
    return t;
  }
  return 0;
}

StepOutcome successor_path(const OrderedDiagram& d, const FinitePath& p) {
  check_path(d, p);
  FinitePath next = p;
  if (advance_edges(d, next.edges, Direction::Forward) == 0) return std::nullopt;
  return next;
}

StepOutcome predecessor_path(const OrderedDiagram& d, const FinitePath& p) {
  check_path(d, p);
  FinitePath prev = p;
  if (advance_edges(d, prev.edges, Direction::Backward) == 0) return std::nullopt;
  return prev;
}

FinitePath PointApprox::prefix(std::size_t n) const {
  FinitePath out;
  out.edges.reserve(n);
  for (std::size_t i = 0; i < n && i < base.level(); ++i) out.edges.push_back(base.edges[i]);
  for (std::size_t i = 0; out.level() < n && i < tail.lead.size(); ++i) out.edges.push_back(tail.lead[i]);
  if (out.level() < n) {
    if (tail.kind != Tail::Kind::Repeating || tail.cycle.empty())
      throw TailExhausted("point is specified only to level " + std::to_string(specified_depth()));
    for (std::size_t i = 0; out.level() < n; ++i) out.edges.push_back(tail.cycle[i % tail.cycle.size()]);
  }
  return out;
}

PointApprox make_point(FinitePath base, Tail tail) { return canonical(PointApprox{std::move(base), std::move(tail)}); }

bool is_well_formed(const OrderedDiagram& d, const PointApprox& x) {
  if (x.tail.kind == Tail::Kind::None && !x.tail.lead.empty()) return false;
  if (x.tail.kind != Tail::Kind::Repeating) return x.tail.cycle.empty() && is_well_formed(d, FinitePath{specified_edges(x)});
  if (!repeat_usable(d) || x.tail.cycle.empty()) return false;
  const RepeatSpec r = *d.repeat();
  if (x.tail.cycle.size() % r.period != 0) return false;
  const std::size_t settled = std::max(x.specified_depth(), r.from_level - 1);
  return is_well_formed(d, x.prefix(settled + 2 * x.tail.cycle.size()));
}

void check_point(const OrderedDiagram& d, const PointApprox& x) {
  if (!is_well_formed(d, x)) throw ContractError("malformed point");
}

PointApprox canonical(PointApprox x) {
  if (x.tail.kind != Tail::Kind::Repeating) return x;
  auto& lead = x.tail.lead;
  const auto& cycle = x.tail.cycle;
  while (!cycle.empty() && lead.size() >= cycle.size() &&
         std::equal(cycle.begin(), cycle.end(), lead.end() - static_cast<std::ptrdiff_t>(cycle.size())))
    lead.resize(lead.size() - cycle.size());
  return x;
}

PointApprox step_point(const OrderedDiagram& d, const PointApprox& x, Direction direction) {
  std::vector<Edge> edges = specified_edges(x);
  std::size_t moved = advance_edges(d, edges, direction);
  if (moved == 0) {
    if (x.tail.kind != Tail::Kind::Repeating)
      throw TailExhausted("every specified edge is " + std::string(direction == Direction::Forward ? "maximal" : "minimal"));
    edges.insert(edges.end(), x.tail.cycle.begin(), x.tail.cycle.end());
    moved = advance_edges(d, edges, direction);
    if (moved == 0)
      throw ExtremePoint(direction == Direction::Forward ? "point is an infinite max path" : "point is an infinite min path");
  }
  PointApprox out;
  out.base.edges.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(x.base.level()));
  out.tail.kind = x.tail.kind;
  out.tail.lead.assign(edges.begin() + static_cast<std::ptrdiff_t>(x.base.level()), edges.end());
  out.tail.cycle = x.tail.cycle;
  return canonical(std::move(out));
}

PointApprox step_point(const OrderedDiagram& d, const PointApprox& x, std::int64_t steps) {
  PointApprox y = x;
  const Direction dir = steps >= 0 ? Direction::Forward : Direction::Backward;
  for (std::int64_t i = 0; i < (steps >= 0 ? steps : -steps); ++i) y = step_point(d, y, dir);
  return y;
}

std::vector<FinitePath> orbit_window(const OrderedDiagram& d, const PointApprox& x, std::size_t k, std::int64_t lo,
                                     std::int64_t hi) {
  if (lo > hi) throw ContractError("empty orbit window");
  if (!x.is_infinite() && k > x.specified_depth())
    throw ContractError("level " + std::to_string(k) + " is deeper than the point");
  PointApprox y = step_point(d, x, lo);
  std::vector<FinitePath> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  out.push_back(y.prefix(k));
  for (std::int64_t m = lo; m < hi; ++m) {
    y = step_point(d, y, Direction::Forward);
    out.push_back(y.prefix(k));
  }
  return out;
}

const char* to_string(ProperOrderVerdict::Status status) {
  switch (status) {
    case ProperOrderVerdict::Status::Yes: return "yes";
    case ProperOrderVerdict::Status::No: return "no";
    case ProperOrderVerdict::Status::Unknown: return "unknown";
  }
  return "unknown";
}

ProperOrderVerdict is_properly_ordered(const OrderedDiagram& d) {
  ProperOrderVerdict verdict;
  if (!repeat_usable(d)) {
    const std::size_t n = d.stored_depth();
    const std::size_t mid = n / 2;
    verdict.checked_level = n;
    for (Extreme which : {Extreme::Min, Extreme::Max}) {
      std::set<VertexId> image;
      for (VertexId v = 0; v < d.vertex_count(n); ++v) image.insert(follow_extreme(d, n, mid, v, which));
      (which == Extreme::Min ? verdict.min_count : verdict.max_count) = image.size();
    }
    return verdict;
  }
  verdict.min_count = eventual_image(d, Extreme::Min).first;
  verdict.max_count = eventual_image(d, Extreme::Max).first;
  verdict.checked_level = d.repeat()->from_level + d.repeat()->period - 1;
  verdict.status = verdict.min_count == 1 && verdict.max_count == 1 ? ProperOrderVerdict::Status::Yes
                                                                    : ProperOrderVerdict::Status::No;
  return verdict;
}

VertexId extreme_thread_vertex(const OrderedDiagram& d, std::size_t n, Extreme which) {
  if (!repeat_usable(d)) throw ContractError("extreme threads need a repeating diagram");
  const auto [size, fixed] = eventual_image(d, which);
  if (size != 1) throw ContractError("the infinite extreme path is not unique");
  const RepeatSpec r = *d.repeat();
  std::size_t anchor = r.from_level - 1;
  while (anchor < n) anchor += r.period;
  return follow_extreme(d, anchor, n, fixed, which);
}

bool has_uniform_extreme_sources(const OrderedDiagram& d, std::size_t n) {
  for (Extreme which : {Extreme::Min, Extreme::Max}) {
    const auto mu = extreme_sources(d, n, which);
    if (std::adjacent_find(mu.begin(), mu.end(), std::not_equal_to<>()) != mu.end()) return false;
  }
  return true;
}

double path_distance(const FinitePath& x, const FinitePath& y) {
  const std::size_t common = std::min(x.level(), y.level());
  for (std::size_t t = 0; t < common; ++t)
    if (x.edges[t] != y.edges[t]) return 1.0 / static_cast<double>(t + 1);
  return 0.0;
}

}  // namespace bvd
