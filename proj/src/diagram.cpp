#include "bvd/diagram.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "bvd/errors.hpp"

namespace bvd {

namespace {

Count checked_add(Count a, Count b) {
  if (b > ~Count{0} - a) throw std::overflow_error("path count exceeds 64 bits");
  return a + b;
}

using BoolMatrix = std::vector<std::vector<bool>>;

BoolMatrix boolean_incidence(const Level& level, std::size_t source_count) {
  BoolMatrix m(level.vertex_count(), std::vector<bool>(source_count, false));
  for (std::size_t v = 0; v < level.vertex_count(); ++v)
    for (VertexId s : level.sources[v])
      if (s < source_count) m[v][s] = true;
  return m;
}

BoolMatrix boolean_product(const BoolMatrix& a, const BoolMatrix& b) {
  const std::size_t inner = b.size();
  const std::size_t cols = inner == 0 ? 0 : b[0].size();
  BoolMatrix out(a.size(), std::vector<bool>(cols, false));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < cols; ++j)
          if (b[k][j]) out[i][j] = true;
  return out;
}

bool all_true(const BoolMatrix& m) {
  return std::all_of(m.begin(), m.end(),
                     [](const auto& row) { return std::all_of(row.begin(), row.end(), [](bool b) { return b; }); });
}

void append_composites(const OrderedDiagram& d, std::size_t level, VertexId v, std::size_t stop,
                       std::vector<VertexId>& out) {
  if (level == stop) {
    out.push_back(v);
    return;
  }
  for (VertexId s : d.sources(level, v)) append_composites(d, level - 1, s, stop, out);
}

void check_cuts(const OrderedDiagram& d, std::span<const std::size_t> cuts) {
  if (cuts.empty() || cuts.front() != 0) throw ContractError("cut levels must start at 0");
  for (std::size_t t = 1; t < cuts.size(); ++t)
    if (cuts[t] <= cuts[t - 1]) throw ContractError("cut levels must be strictly increasing");
  if (!d.has_level(cuts.back()))
    throw ContractError("cut level " + std::to_string(cuts.back()) + " is beyond the diagram");
}

}  // namespace

std::size_t Level::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& s : sources) total += s.size();
  return total;
}

OrderedDiagram::OrderedDiagram() : levels_{Level{{{}}}} {}

OrderedDiagram::OrderedDiagram(std::vector<Level> levels, std::optional<RepeatSpec> repeat)
    : levels_(std::move(levels)), repeat_(repeat) {
  if (levels_.empty()) levels_.push_back(Level{{{}}});
}

OrderedDiagram OrderedDiagram::from_sources(std::vector<std::vector<std::vector<VertexId>>> per_level,
                                            std::optional<RepeatSpec> repeat) {
  std::vector<Level> levels;
  levels.reserve(per_level.size() + 1);
  levels.push_back(Level{{{}}});
  for (auto& l : per_level) levels.push_back(Level{std::move(l)});
  return OrderedDiagram(std::move(levels), repeat);
}

bool OrderedDiagram::has_level(std::size_t n) const noexcept {
  if (n < levels_.size()) return true;
  if (!repeat_ || repeat_->period == 0 || repeat_->from_level == 0) return false;
  return repeat_->from_level + repeat_->period - 1 < levels_.size();
}

const Level& OrderedDiagram::level(std::size_t n) const {
  if (n < levels_.size()) return levels_[n];
  if (!has_level(n)) throw ContractError("level " + std::to_string(n) + " is beyond the diagram");
  const std::size_t from = repeat_->from_level;
  return levels_[from + (n - from) % repeat_->period];
}

const std::vector<VertexId>& OrderedDiagram::sources(std::size_t n, VertexId v) const {
  const Level& l = level(n);
  if (v >= l.vertex_count())
    throw ContractError("vertex " + std::to_string(v) + " does not exist at level " + std::to_string(n));
  return l.sources[v];
}

VertexId OrderedDiagram::source(std::size_t n, VertexId v, Ordinal ordinal) const {
  const auto& s = sources(n, v);
  if (ordinal == 0 || ordinal > s.size())
    throw ContractError("ordinal " + std::to_string(ordinal) + " out of range at level " + std::to_string(n));
  return s[ordinal - 1];
}

std::vector<std::vector<Count>> OrderedDiagram::incidence(std::size_t n) const {
  if (n == 0) throw ContractError("level 0 has no incidence matrix");
  const std::size_t cols = vertex_count(n - 1);
  const Level& l = level(n);
  std::vector<std::vector<Count>> m(l.vertex_count(), std::vector<Count>(cols, 0));
  for (std::size_t v = 0; v < l.vertex_count(); ++v)
    for (VertexId s : l.sources[v]) {
      if (s >= cols) throw ContractError("source out of range at level " + std::to_string(n));
      ++m[v][s];
    }
  return m;
}

OrderedDiagram OrderedDiagram::truncated(std::size_t n) const {
  if (!has_level(n)) throw ContractError("level " + std::to_string(n) + " is beyond the diagram");
  std::vector<Level> out;
  out.reserve(n + 1);
  for (std::size_t t = 0; t <= n; ++t) out.push_back(level(t));
  return OrderedDiagram(std::move(out));
}

OrderedDiagram OrderedDiagram::with_repeat_start_after(std::size_t lvl) const {
  if (!repeat_ || repeat_->from_level > lvl) return *this;
  const std::size_t from = repeat_->from_level;
  const std::size_t period = repeat_->period;
  const std::size_t shift = ((lvl - from) / period + 1) * period;
  const std::size_t new_from = from + shift;
  const std::size_t needed = std::max(new_from + period - 1, stored_depth());
  std::vector<Level> out;
  out.reserve(needed + 1);
  for (std::size_t t = 0; t <= needed; ++t) out.push_back(level(t));
  return OrderedDiagram(std::move(out), RepeatSpec{new_from, period});
}

const char* to_string(Issue::Kind kind) {
  switch (kind) {
    case Issue::Kind::RootLevel: return "root level malformed";
    case Issue::Kind::NoInEdges: return "vertex without in-edges";
    case Issue::Kind::SourceOutOfRange: return "source out of range";
    case Issue::Kind::NoOutEdges: return "vertex without out-edges";
    case Issue::Kind::RepeatIncomplete: return "repeat spec incomplete";
    case Issue::Kind::RepeatMismatch: return "repeat spec mismatch";
  }
  return "unknown";
}

ValidationReport validate_and_profile(const OrderedDiagram& d, std::size_t horizon) {
  ValidationReport report;
  const auto& levels = d.stored_levels();
  const std::size_t depth = d.stored_depth();
  auto add = [&report](Issue::Kind kind, std::size_t level, std::size_t vertex, std::string msg) {
    report.ok = false;
    report.issues.push_back(Issue{kind, level, vertex, std::move(msg)});
  };

  if (levels[0].vertex_count() != 1 || !levels[0].sources[0].empty())
    add(Issue::Kind::RootLevel, 0, 0, "level 0 must hold exactly one vertex with no in-edges");

  bool repeat_usable = false;
  if (const auto& r = d.repeat()) {
    if (r->period == 0 || r->from_level == 0) {
      add(Issue::Kind::RepeatIncomplete, r->from_level, 0, "repeat needs from >= 1 and period >= 1");
    } else if (r->from_level + r->period - 1 > depth) {
      add(Issue::Kind::RepeatIncomplete, r->from_level, 0, "stored levels do not cover one full period");
    } else {
      repeat_usable = true;
      for (std::size_t t = r->from_level; t + r->period <= depth; ++t)
        if (!(levels[t] == levels[t + r->period]))
          add(Issue::Kind::RepeatMismatch, t + r->period, 0,
              "level differs from level " + std::to_string(t));
      if (levels[r->from_level - 1].vertex_count() != levels[r->from_level + r->period - 1].vertex_count())
        add(Issue::Kind::RepeatMismatch, r->from_level, 0,
            "levels from-1 and from+period-1 have different vertex counts");
    }
  }

  // Structural checks; a repeating diagram also checks the level after the last stored one.
  const std::size_t last = repeat_usable ? depth + 1 : depth;
  for (std::size_t n = 1; n <= last; ++n) {
    const Level& l = d.level(n);
    const std::size_t prev = d.level(n - 1).vertex_count();
    std::vector<bool> used(prev, false);
    for (std::size_t v = 0; v < l.vertex_count(); ++v) {
      if (l.sources[v].empty() && n <= depth) add(Issue::Kind::NoInEdges, n, v, "vertex without in-edges");
      for (VertexId s : l.sources[v]) {
        if (s >= prev) {
          if (n <= depth) add(Issue::Kind::SourceOutOfRange, n, v, "source " + std::to_string(s) + " out of range");
        } else {
          used[s] = true;
        }
      }
    }
    for (std::size_t s = 0; s < prev; ++s)
      if (!used[s]) add(Issue::Kind::NoOutEdges, n - 1, s, "vertex without out-edges");
  }

  for (std::size_t n = 1; n <= depth; ++n) {
    const Level& l = levels[n];
    report.rank = std::max(report.rank, l.vertex_count());
    for (const auto& s : l.sources)
      if (s.size() != l.sources.front().size()) report.has_ers = false;
  }
  if (!report.ok) return report;

  // Greedy telescoping with fully connected segments.
  std::size_t limit = depth;
  if (d.is_infinite()) {
    const std::size_t k = report.rank;
    limit = horizon != 0 ? horizon : depth + d.repeat()->period * ((k - 1) * (k - 1) + 2);
  }
  report.checked_up_to = limit;
  BoolMatrix acc;
  bool fresh = true;
  for (std::size_t n = 1; n <= limit; ++n) {
    BoolMatrix m = boolean_incidence(d.level(n), d.vertex_count(n - 1));
    acc = fresh ? std::move(m) : boolean_product(m, acc);
    fresh = false;
    if (all_true(acc)) {
      report.simple_up_to = n;
      fresh = true;
    }
  }

  if (const auto& r = d.repeat()) {
    BoolMatrix block;
    for (std::size_t n = r->from_level; n < r->from_level + r->period; ++n) {
      BoolMatrix m = boolean_incidence(d.level(n), d.vertex_count(n - 1));
      block = block.empty() ? std::move(m) : boolean_product(m, block);
    }
    const std::size_t k = block.size();
    BoolMatrix power = block;
    bool primitive = all_true(power);
    for (std::size_t q = 2; !primitive && q <= (k - 1) * (k - 1) + 1; ++q) {
      power = boolean_product(block, power);
      primitive = all_true(power);
    }
    report.simple = primitive;
  }
  return report;
}

void require_valid(const OrderedDiagram& d) {
  const auto report = validate_and_profile(d);
  if (!report.ok) {
    const Issue& i = report.issues.front();
    throw ContractError("invalid diagram at level " + std::to_string(i.level) + ", vertex " +
                        std::to_string(i.vertex) + ": " + i.message);
  }
}

OrderedDiagram telescope(const OrderedDiagram& d, std::span<const std::size_t> cuts) {
  check_cuts(d, cuts);
  std::vector<Level> out;
  out.reserve(cuts.size());
  out.push_back(d.level(0));
  for (std::size_t t = 1; t < cuts.size(); ++t) {
    const std::size_t top = cuts[t];
    Level l;
    l.sources.resize(d.vertex_count(top));
    for (VertexId v = 0; v < l.sources.size(); ++v) append_composites(d, top, v, cuts[t - 1], l.sources[v]);
    out.push_back(std::move(l));
  }
  return OrderedDiagram(std::move(out));
}

std::vector<Ordinal> FinitePath::ordinals() const {
  std::vector<Ordinal> out;
  out.reserve(edges.size());
  for (const Edge& e : edges) out.push_back(e.ordinal);
  return out;
}

bool is_well_formed(const OrderedDiagram& d, const FinitePath& p) {
  VertexId above = 0;
  for (std::size_t t = 1; t <= p.level(); ++t) {
    if (!d.has_level(t)) return false;
    const Level& l = d.level(t);
    const Edge& e = p.edges[t - 1];
    if (e.range >= l.vertex_count()) return false;
    const auto& s = l.sources[e.range];
    if (e.ordinal == 0 || e.ordinal > s.size() || s[e.ordinal - 1] != above) return false;
    above = e.range;
  }
  return true;
}

void check_path(const OrderedDiagram& d, const FinitePath& p) {
  if (!is_well_formed(d, p)) throw ContractError("malformed path");
}

FinitePath truncate(const FinitePath& p, std::size_t level) {
  if (level > p.level()) throw ContractError("cannot truncate a path to a deeper level");
  return FinitePath{{p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(level)}};
}

FinitePath path_from_ordinals(const OrderedDiagram& d, VertexId terminal, std::span<const Ordinal> ordinals) {
  FinitePath p;
  p.edges.resize(ordinals.size());
  VertexId v = terminal;
  for (std::size_t t = ordinals.size(); t >= 1; --t) {
    p.edges[t - 1] = Edge{v, ordinals[t - 1]};
    v = d.source(t, v, ordinals[t - 1]);
  }
  if (!ordinals.empty() && v != 0) throw ContractError("path does not start at the root");
  return p;
}

TowerHeights::TowerHeights(const OrderedDiagram& d, std::size_t top_level, std::size_t base_level)
    : diagram_(&d), base_(base_level) {
  if (top_level < base_level) throw ContractError("tower top below its base");
  if (!d.has_level(top_level)) throw ContractError("level " + std::to_string(top_level) + " is beyond the diagram");
  heights_.resize(top_level - base_level + 1);
  prefix_.resize(heights_.size());
  heights_[0].assign(d.vertex_count(base_level), 1);
  for (std::size_t n = base_level + 1; n <= top_level; ++n) {
    const Level& l = d.level(n);
    const auto& above = heights_[n - 1 - base_level];
    auto& h = heights_[n - base_level];
    auto& pre = prefix_[n - base_level];
    h.resize(l.vertex_count());
    pre.resize(l.vertex_count());
    for (std::size_t v = 0; v < l.vertex_count(); ++v) {
      auto& ps = pre[v];
      ps.resize(l.sources[v].size() + 1);
      ps[0] = 0;
      for (std::size_t o = 0; o < l.sources[v].size(); ++o) {
        const VertexId s = l.sources[v][o];
        if (s >= above.size()) throw ContractError("source out of range at level " + std::to_string(n));
        ps[o + 1] = checked_add(ps[o], above[s]);
      }
      h[v] = ps.back();
    }
  }
}

Count TowerHeights::height(std::size_t n, VertexId v) const {
  if (n < base_ || n > top_level()) throw ContractError("level outside the tower table");
  const auto& h = heights_[n - base_];
  if (v >= h.size()) throw ContractError("vertex " + std::to_string(v) + " does not exist at level " + std::to_string(n));
  return h[v];
}

Count TowerHeights::before(std::size_t n, VertexId v, Ordinal ordinal) const {
  if (n <= base_ || n > top_level()) throw ContractError("level outside the tower table");
  const auto& pre = prefix_[n - base_];
  if (v >= pre.size() || ordinal == 0 || ordinal >= pre[v].size()) throw ContractError("edge out of range");
  return pre[v][ordinal - 1];
}

Count TowerHeights::min_height(std::size_t n) const {
  const auto& h = heights_.at(n - base_);
  return *std::min_element(h.begin(), h.end());
}

Count TowerHeights::max_height(std::size_t n) const {
  const auto& h = heights_.at(n - base_);
  return *std::max_element(h.begin(), h.end());
}

Count TowerHeights::rank(std::span<const Edge> edges) const {
  if (base_ + edges.size() > top_level()) throw ContractError("path deeper than the tower table");
  Count r = 1;
  for (std::size_t i = 0; i < edges.size(); ++i) r += before(base_ + i + 1, edges[i].range, edges[i].ordinal);
  return r;
}

std::vector<Edge> TowerHeights::unrank(std::size_t n, VertexId v, Count position) const {
  if (position == 0 || position > height(n, v)) throw ContractError("tower position out of range");
  std::vector<Edge> edges(n - base_);
  for (std::size_t t = n; t > base_; --t) {
    const auto& ps = prefix_[t - base_][v];
    // Largest o with ps[o - 1] < position.
    const auto it = std::lower_bound(ps.begin() + 1, ps.end(), position);
    const auto o = static_cast<Ordinal>(it - ps.begin());
    edges[t - base_ - 1] = Edge{v, o};
    position -= ps[o - 1];
    v = diagram_->level(t).sources[v][o - 1];
  }
  return edges;
}

Count count_paths(const OrderedDiagram& d, std::size_t n, VertexId v) {
  return TowerHeights(d, n).height(n, v);
}

Count path_rank(const OrderedDiagram& d, const FinitePath& p) {
  check_path(d, p);
  return TowerHeights(d, p.level()).rank(p.edges);
}

FinitePath path_unrank(const OrderedDiagram& d, std::size_t n, VertexId v, Count position) {
  return FinitePath{TowerHeights(d, n).unrank(n, v, position)};
}

FinitePath to_telescoped(const OrderedDiagram& d, std::span<const std::size_t> cuts, const FinitePath& p) {
  check_cuts(d, cuts);
  check_path(d, p);
  const auto top = std::find(cuts.begin(), cuts.end(), p.level());
  if (top == cuts.end()) throw ContractError("path does not end at a cut level");
  FinitePath out;
  for (auto it = cuts.begin() + 1; it <= top; ++it) {
    const TowerHeights seg(d, *it, *(it - 1));
    std::span<const Edge> part(p.edges.data() + *(it - 1), *it - *(it - 1));
    out.edges.push_back(Edge{part.back().range, static_cast<Ordinal>(seg.rank(part))});
  }
  return out;
}

FinitePath from_telescoped(const OrderedDiagram& d, std::span<const std::size_t> cuts, const FinitePath& p) {
  check_cuts(d, cuts);
  if (p.level() >= cuts.size()) throw ContractError("path deeper than the telescoping");
  FinitePath out;
  VertexId above = 0;
  for (std::size_t t = 1; t <= p.level(); ++t) {
    const TowerHeights seg(d, cuts[t], cuts[t - 1]);
    const Edge& e = p.edges[t - 1];
    auto part = seg.unrank(cuts[t], e.range, e.ordinal);
    if (d.source(cuts[t - 1] + 1, part.front().range, part.front().ordinal) != above)
      throw ContractError("malformed telescoped path");
    out.edges.insert(out.edges.end(), part.begin(), part.end());
    above = e.range;
  }
  return out;
}

}  // namespace bvd
