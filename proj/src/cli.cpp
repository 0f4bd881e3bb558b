#include "bvd/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

#include "bvd/compatibility.hpp"
#include "bvd/dichotomy.hpp"
#include "bvd/document.hpp"
#include "bvd/dot.hpp"
#include "bvd/errors.hpp"
#include "bvd/subshift.hpp"
#include "bvd/surgery.hpp"
#include "bvd/vershik.hpp"

namespace bvd::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string file;
  bool as_json = false;
  std::size_t horizon = 0;
  std::optional<std::size_t> levels;
  std::string rank_path;
  std::string unrank;
  std::string cuts;
  std::string out_file;
  std::string path;
  std::string point;
  bool back = false;
  std::int64_t steps = 1;
  std::size_t level = 0;
  std::string window;
  std::string vertex;
  std::size_t length = 0;
  std::size_t depth = 0;
  bool period = false;
  std::size_t classify_levels = 3;
  std::size_t classify_length = 32;
  std::string points;
  std::size_t max_level = 0;
  std::size_t cut = 0;
  std::optional<std::size_t> witness;
  bool law = false;
  bool infection = false;
  std::string search_from;
  std::size_t family_size = 0;
  std::uint64_t seed = 1;
  std::size_t budget = 64;
  std::size_t rank = 0;
  std::optional<std::size_t> dot_max_level;
  bool no_ordinals = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) parts.push_back(cur);
  return parts;
}

std::size_t to_size(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw ContractError(std::string("invalid ") + what + " '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s[0] == '-') throw ContractError(std::string("invalid ") + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

std::int64_t to_int(const std::string& s, const char* what) {
  std::size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ContractError(std::string("invalid ") + what + " '" + s + "'");
  }
  if (pos != s.size()) throw ContractError(std::string("invalid ") + what + " '" + s + "'");
  return v;
}

Window parse_window(const std::string& s) {
  const auto colon = s.find(':', s.empty() ? 0 : 1);
  if (colon == std::string::npos) throw ContractError("window must be written lo:hi");
  Window w{to_int(s.substr(0, colon), "window bound"), to_int(s.substr(colon + 1), "window bound")};
  if (w.lo > w.hi) throw ContractError("empty window " + s);
  return w;
}

std::pair<std::size_t, VertexId> parse_vertex(const DiagramDocument& doc, const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ContractError("vertex must be written level:vertex");
  const std::size_t n = to_size(s.substr(0, colon), "level");
  if (n > 0 && !doc.diagram.has_level(n)) throw ContractError("level " + std::to_string(n) + " is beyond the diagram");
  const auto v = doc.find_vertex(n, s.substr(colon + 1));
  if (!v || *v >= doc.diagram.vertex_count(n)) throw ContractError("unknown vertex '" + s + "'");
  return {n, *v};
}

FinitePath parse_path(const DiagramDocument& doc, const std::string& s) {
  FinitePath p;
  std::string spaced = s;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  for (const auto& tok : split(spaced, ' ')) {
    const std::size_t n = p.level() + 1;
    const auto colon = tok.rfind(':');
    if (colon == std::string::npos) throw ContractError("edge must be written vertex:ordinal");
    if (!doc.diagram.has_level(n)) throw ContractError("path longer than the diagram");
    const auto v = doc.find_vertex(n, tok.substr(0, colon));
    if (!v) throw ContractError("unknown vertex in edge '" + tok + "'");
    p.edges.push_back(Edge{*v, static_cast<Ordinal>(to_size(tok.substr(colon + 1), "ordinal"))});
  }
  check_path(doc.diagram, p);
  return p;
}

const PointApprox& named_point(const DiagramDocument& doc, const std::string& name) {
  const PointApprox* p = doc.find_point(name);
  if (!p) throw ContractError("no point named '" + name + "'");
  check_point(doc.diagram, *p);
  return *p;
}

std::vector<PointApprox> named_points(const DiagramDocument& doc, const std::string& list) {
  std::vector<PointApprox> pts;
  for (const auto& name : split(list, ',')) pts.push_back(named_point(doc, name));
  return pts;
}

std::string edges_text(const DiagramDocument& doc, const std::vector<Edge>& edges, std::size_t first_level) {
  std::string s;
  std::size_t n = first_level;
  for (const auto& e : edges) {
    if (!s.empty()) s += ' ';
    s += doc.vertex_label(n++, e.range) + ":" + std::to_string(e.ordinal);
  }
  return s;
}

std::string path_text(const DiagramDocument& doc, const FinitePath& p) { return edges_text(doc, p.edges, 1); }

std::string point_text(const DiagramDocument& doc, const PointApprox& x) {
  std::string s = path_text(doc, x.base);
  if (x.tail.kind == Tail::Kind::None) return s;
  s += s.empty() ? "|" : " |";
  const std::size_t lead_level = x.base.level() + 1;
  if (!x.tail.lead.empty()) s += " " + edges_text(doc, x.tail.lead, lead_level);
  if (x.tail.kind == Tail::Kind::Repeating)
    s += " (" + edges_text(doc, x.tail.cycle, lead_level + x.tail.lead.size()) + ")";
  return s;
}

std::string symbol_text(const DiagramDocument& doc, const TowerHeights& h, std::size_t k, Symbol s) {
  std::string label = doc.vertex_label(k, s.vertex);
  if (h.height(k, s.vertex) > 1) label += "." + std::to_string(s.rank);
  return label;
}

std::string word_text(const DiagramDocument& doc, const Alphabet& alphabet, const TowerHeights& h, const Word& w) {
  std::string s;
  for (auto c : w) {
    if (!s.empty()) s += ' ';
    s += symbol_text(doc, h, alphabet.level(), alphabet.symbol(c));
  }
  return s;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (auto x : xs) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

json window_json(const Window& w) { return json{{"lo", w.lo}, {"hi", w.hi}}; }

Window window_or_default(const Options& o, const OrderedDiagram& d, const std::vector<PointApprox>& pts) {
  return o.window.empty() ? default_window(d, pts) : parse_window(o.window);
}

struct Report {
  json data;
  std::ostringstream text;
};

int cmd_validate(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto v = validate_and_profile(doc.diagram, o.horizon);
  r.data["ok"] = v.ok;
  r.data["rank"] = v.rank;
  r.data["has_ers"] = v.has_ers;
  r.data["simple_up_to"] = v.simple_up_to;
  r.data["checked_up_to"] = v.checked_up_to;
  r.data["simple"] = v.simple ? json(*v.simple) : json(nullptr);
  json issues = json::array();
  for (const auto& i : v.issues)
    issues.push_back({{"kind", to_string(i.kind)}, {"level", i.level}, {"vertex", i.vertex}, {"message", i.message}});
  r.data["issues"] = issues;
  r.text << (v.ok ? "valid" : "invalid") << '\n';
  r.text << "rank: " << v.rank << '\n';
  r.text << "has_ers: " << (v.has_ers ? "yes" : "no") << '\n';
  r.text << "simple_up_to: " << v.simple_up_to << " (checked " << v.checked_up_to << ")\n";
  if (v.simple) r.text << "simple: " << (*v.simple ? "yes" : "no") << '\n';
  for (const auto& i : v.issues) r.text << "issue " << to_string(i.kind) << " at level " << i.level << ": " << i.message << '\n';
  return v.ok ? kOk : kContract;
}

int cmd_info(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  const std::size_t top = o.levels.value_or(d.stored_depth());
  if (top > 0 && !d.has_level(top)) throw ContractError("level " + std::to_string(top) + " is beyond the diagram");
  const TowerHeights h(d, top);
  r.data["stored_depth"] = d.stored_depth();
  r.data["repeat"] = d.repeat() ? json{{"from", d.repeat()->from_level}, {"period", d.repeat()->period}} : json(nullptr);
  r.text << "stored_depth: " << d.stored_depth() << '\n';
  if (d.repeat()) r.text << "repeat: from " << d.repeat()->from_level << " period " << d.repeat()->period << '\n';
  json levels = json::array();
  for (std::size_t n = 0; n <= top; ++n) {
    json lv = {{"level", n}, {"vertices", json::array()}};
    r.text << "level " << n << ':';
    for (VertexId v = 0; v < d.vertex_count(n); ++v) {
      const std::size_t deg = n == 0 ? 0 : d.in_degree(n, v);
      lv["vertices"].push_back({{"name", doc.vertex_label(n, v)}, {"in_degree", deg}, {"height", h.height(n, v)}});
      r.text << ' ' << doc.vertex_label(n, v) << "(deg " << deg << ", |" << h.height(n, v) << "|)";
    }
    r.text << '\n';
    if (n > 0) {
      lv["incidence"] = d.incidence(n);
      for (const auto& row : d.incidence(n)) {
        r.text << "  [";
        for (std::size_t c = 0; c < row.size(); ++c) r.text << (c ? " " : "") << row[c];
        r.text << "]\n";
      }
    }
    levels.push_back(lv);
  }
  r.data["levels"] = levels;
  const auto po = is_properly_ordered(d);
  r.data["properly_ordered"] = {{"status", to_string(po.status)},
                                {"min_paths", po.min_count},
                                {"max_paths", po.max_count},
                                {"checked_level", po.checked_level}};
  r.text << "properly ordered: " << to_string(po.status) << " (min " << po.min_count << ", max " << po.max_count
         << ", level " << po.checked_level << ")\n";
  if (!o.rank_path.empty()) {
    const FinitePath p = parse_path(doc, o.rank_path);
    r.data["rank"] = path_rank(d, p);
    r.text << "rank: " << path_rank(d, p) << '\n';
  }
  if (!o.unrank.empty()) {
    const auto parts = split(o.unrank, ':');
    if (parts.size() != 3) throw ContractError("--unrank takes level:vertex:position");
    const auto [n, v] = parse_vertex(doc, parts[0] + ":" + parts[1]);
    const FinitePath p = path_unrank(d, n, v, to_size(parts[2], "position"));
    r.data["unrank"] = path_text(doc, p);
    r.text << "unrank: " << path_text(doc, p) << '\n';
  }
  return kOk;
}

int cmd_telescope(const Options& o, const DiagramDocument& doc, Report& r) {
  require_valid(doc.diagram);
  std::vector<std::size_t> cuts;
  for (const auto& c : split(o.cuts, ',')) cuts.push_back(to_size(c, "cut level"));
  const std::string text = serialize_diagram(telescope(doc.diagram, cuts));
  r.data["cuts"] = cuts;
  r.data["document"] = text;
  if (!o.out_file.empty()) save_document(o.out_file, parse_document(text));
  r.text << text;
  return kOk;
}

int cmd_successor(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  if (o.path.empty() == o.point.empty()) throw ContractError("give exactly one of --path and --point");
  if (!o.path.empty()) {
    const FinitePath p = parse_path(doc, o.path);
    const StepOutcome s = o.back ? predecessor_path(d, p) : successor_path(d, p);
    r.data["input"] = path_text(doc, p);
    r.data["result"] = s ? json(path_text(doc, *s)) : json(nullptr);
    r.data["rolled_over"] = !s.has_value();
    r.text << (s ? path_text(doc, *s) : std::string("rollover")) << '\n';
    return kOk;
  }
  const PointApprox& x = named_point(doc, o.point);
  const PointApprox y = step_point(d, x, o.back ? -o.steps : o.steps);
  r.data["input"] = point_text(doc, x);
  r.data["steps"] = o.back ? -o.steps : o.steps;
  r.data["result"] = point_text(doc, y);
  r.text << point_text(doc, y) << '\n';
  return kOk;
}

int cmd_orbit(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  const PointApprox& x = named_point(doc, o.point);
  const Window w = o.window.empty() ? default_window(d, std::vector<PointApprox>{x}) : parse_window(o.window);
  const auto orbit = orbit_window(d, x, o.level, w.lo, w.hi);
  const TowerHeights h(d, o.level);
  json rows = json::array();
  for (std::size_t t = 0; t < orbit.size(); ++t) {
    const std::int64_t m = w.lo + static_cast<std::int64_t>(t);
    const Symbol s{orbit[t].terminal(), o.level == 0 ? 1 : h.rank(orbit[t].edges)};
    const std::string label = o.level == 0 ? "root" : symbol_text(doc, h, o.level, s);
    rows.push_back({{"offset", m}, {"symbol", label}, {"path", path_text(doc, orbit[t])}});
    r.text << m << '\t' << label << '\t' << path_text(doc, orbit[t]) << '\n';
  }
  r.data["level"] = o.level;
  r.data["window"] = window_json(w);
  r.data["orbit"] = rows;
  return kOk;
}

int cmd_tower_word(const Options& o, const DiagramDocument& doc, Report& r) {
  require_valid(doc.diagram);
  const auto [n, v] = parse_vertex(doc, o.vertex);
  const TowerWord tw = tower_word(doc.diagram, n, v, o.level);
  const Alphabet alphabet(doc.diagram, o.level);
  const TowerHeights h(doc.diagram, o.level);
  const std::string text = word_text(doc, alphabet, h, tw.codes);
  r.data["vertex"] = {{"level", n}, {"name", doc.vertex_label(n, v)}};
  r.data["alphabet_level"] = o.level;
  r.data["length"] = tw.codes.size();
  r.data["word"] = split(text, ' ');
  r.text << text << '\n';
  return kOk;
}

int cmd_language(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  r.data["level"] = o.level;
  r.data["depth"] = o.depth;
  if (o.period) {
    const PeriodVerdict pv = detect_period(d, o.level, o.depth, o.length);
    r.data["periodic"] = pv.periodic;
    r.data["period"] = pv.periodic ? json(pv.period) : json(nullptr);
    r.data["plateau_length"] = pv.periodic ? json(pv.plateau_length) : json(nullptr);
    r.data["complexity"] = pv.complexity;
    if (pv.periodic)
      r.text << "periodic, period " << pv.period << " (plateau at length " << pv.plateau_length << ")\n";
    else
      r.text << "no plateau up to length " << pv.complexity.size() << '\n';
    r.text << "complexity: " << join(pv.complexity) << '\n';
    return kOk;
  }
  const LanguageSample s = language(d, o.level, o.length, o.depth);
  const Alphabet alphabet(d, o.level);
  const TowerHeights h(d, o.level);
  json words = json::array();
  for (const auto& w : s.words) words.push_back(word_text(doc, alphabet, h, w));
  r.data["length"] = o.length;
  r.data["complexity"] = s.complexity();
  r.data["words"] = words;
  r.text << "complexity: " << s.complexity() << '\n';
  for (const auto& w : words) r.text << w.get<std::string>() << '\n';
  return kOk;
}

int cmd_classify(const Options& o, const DiagramDocument& doc, Report& r) {
  const ClassificationVerdict v = classify(doc.diagram, o.classify_levels, o.classify_length);
  r.data["verdict"] = to_string(v.kind);
  r.data["level_budget"] = v.level_budget;
  r.data["length_budget"] = v.length_budget;
  json levels = json::array();
  for (const auto& l : v.levels)
    levels.push_back({{"k", l.k},
                      {"depth", l.verdict.depth},
                      {"periodic", l.verdict.periodic},
                      {"period", l.verdict.periodic ? json(l.verdict.period) : json(nullptr)},
                      {"complexity", l.verdict.complexity}});
  r.data["levels"] = levels;
  r.data["first_aperiodic_level"] = v.first_aperiodic_level ? json(*v.first_aperiodic_level) : json(nullptr);
  r.data["reason"] = v.reason;
  r.text << to_string(v.kind) << " (levels " << v.level_budget << ", length " << v.length_budget << ")\n";
  for (const auto& l : v.levels) {
    r.text << "k=" << l.k << " depth " << l.verdict.depth << ": ";
    if (l.verdict.periodic)
      r.text << "period " << l.verdict.period << '\n';
    else
      r.text << "aperiodic, complexity " << join(l.verdict.complexity) << '\n';
  }
  if (!v.reason.empty()) r.text << v.reason << '\n';
  return kOk;
}

int cmd_depth(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  const auto pts = named_points(doc, o.points);
  if (pts.size() != 2) throw ContractError("--points takes exactly two names");
  const Window w = window_or_default(o, d, pts);
  const DepthReport rep = depth_report(d, pts[0], pts[1], o.max_level, w);
  r.data["window"] = window_json(w);
  r.data["max_level"] = rep.max_level;
  r.data["compatible_through"] = rep.compatible_through;
  r.data["separated_at"] = rep.separated_at ? json(*rep.separated_at) : json(nullptr);
  r.data["witness_offset"] = rep.witness_offset ? json(*rep.witness_offset) : json(nullptr);
  r.text << "window: " << w.lo << ':' << w.hi << '\n';
  r.text << "compatible through level " << rep.compatible_through << '\n';
  if (rep.separated_at)
    r.text << "separated at level " << *rep.separated_at << " (offset " << *rep.witness_offset << ")\n";
  else
    r.text << "equal through level " << rep.max_level << " on the window\n";
  return kOk;
}

int cmd_cut_scan(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  const auto pts = named_points(doc, o.points);
  if (pts.size() != 2) throw ContractError("--points takes exactly two names");
  const Window w = window_or_default(o, d, pts);
  r.data["window"] = window_json(w);
  if (o.witness) {
    const WitnessResult wr = find_minimal_cut_witness(d, pts[0], pts[1], *o.witness, w);
    const std::size_t n = *o.witness + 1;
    r.data["i"] = *o.witness;
    r.data["status"] = to_string(wr.status);
    r.data["offset"] = wr.offset ? json(*wr.offset) : json(nullptr);
    if (wr.status == WitnessResult::Status::Found) {
      r.data["ranges"] = {doc.vertex_label(n, wr.range_x), doc.vertex_label(n, wr.range_y)};
      r.text << "witness at offset " << *wr.offset << ": ranges " << doc.vertex_label(n, wr.range_x) << ", "
             << doc.vertex_label(n, wr.range_y) << '\n';
    } else {
      r.text << to_string(wr.status) << '\n';
    }
    return kOk;
  }
  const CutScanReport rep = cut_scan(d, pts[0], pts[1], o.cut, w);
  r.data["level"] = o.cut;
  r.data["has_common_cut"] = rep.has_common_cut;
  r.data["offset"] = rep.witness_offset ? json(*rep.witness_offset) : json(nullptr);
  if (rep.has_common_cut) {
    r.data["ranges"] = {doc.vertex_label(o.cut, rep.ranges_at_witness->first),
                        doc.vertex_label(o.cut, rep.ranges_at_witness->second)};
    r.text << "common " << o.cut << "-cut at offset " << *rep.witness_offset << '\n';
  } else {
    r.text << "no common " << o.cut << "-cut on the window\n";
  }
  return kOk;
}

json infection_json(const DiagramDocument& doc, const InfectionReport& inf) {
  json gaps = json::array();
  for (const auto& g : inf.sorted_gaps)
    gaps.push_back({{"vertex", doc.vertex_label(inf.j, g.vertex)}, {"gap", g.gap ? json(*g.gap) : json(nullptr)}});
  json j = {{"i0", inf.i0},
            {"j", inf.j},
            {"K", inf.K},
            {"required", inf.required},
            {"points", inf.points_checked},
            {"window", window_json(inf.window)},
            {"sufficient_witnesses", inf.sufficient_witnesses},
            {"distinct", inf.distinct},
            {"pairwise_compatible", inf.pairwise_compatible},
            {"pairwise_separated", inf.pairwise_separated},
            {"no_common_cuts", inf.no_common_cuts},
            {"valid_family", inf.valid_family},
            {"depth", inf.depth},
            {"common_cut", inf.common_cut},
            {"sorted_gaps", gaps},
            {"caps", inf.caps}};
  if (inf.first_exceedance) {
    const auto& e = *inf.first_exceedance;
    j["first_exceedance"] = {{"offset", e.offset},
                             {"vertex", doc.vertex_label(inf.j, e.vertex)},
                             {"order", e.order},
                             {"occupancy", e.occupancy},
                             {"cap", e.cap}};
  } else {
    j["first_exceedance"] = nullptr;
  }
  j["image_periodic"] = inf.image_periodic;
  j["image_period"] = inf.image_period ? json(*inf.image_period) : json(nullptr);
  j["conclusion_consistent"] = inf.conclusion_consistent;
  j["flags"] = inf.flags;
  return j;
}

int cmd_lv(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  const auto [n, v] = parse_vertex(doc, o.vertex);
  std::vector<PointApprox> pts;
  if (!o.search_from.empty()) {
    if (!o.infection) throw ContractError("--search-from needs --infection");
    if (n == 0) throw ContractError("the gap level must be at least 1");
    const PointApprox& templ = named_point(doc, o.search_from);
    const std::size_t size = o.family_size ? o.family_size : infection_bound(d.vertex_count(n));
    const Window w = o.window.empty() ? default_window(d, std::vector<PointApprox>{templ}) : parse_window(o.window);
    pts = search_witness_family(d, n - 1, templ, size, w, o.seed);
    r.data["searched"] = {{"template", o.search_from}, {"seed", o.seed}, {"found", pts.size()}};
  } else {
    pts = named_points(doc, o.points);
  }
  if (pts.empty()) throw ContractError("no points given");
  const Window w = window_or_default(o, d, pts);
  r.data["vertex"] = {{"level", n}, {"name", doc.vertex_label(n, v)}};
  r.data["window"] = window_json(w);
  if (o.infection) {
    if (n == 0) throw ContractError("the gap level must be at least 1");
    const InfectionReport inf = verify_infection_argument(d, n - 1, pts, w);
    r.data["infection"] = infection_json(doc, inf);
    r.text << "K: " << inf.K << ", required " << inf.required << ", points " << inf.points_checked << '\n';
    r.text << "valid family: " << (inf.valid_family ? "yes" : "no") << '\n';
    for (const auto& g : inf.sorted_gaps)
      r.text << "l_" << doc.vertex_label(inf.j, g.vertex) << ": " << (g.gap ? std::to_string(*g.gap) : "-") << '\n';
    if (inf.first_exceedance)
      r.text << "cap exceeded at offset " << inf.first_exceedance->offset << ": "
             << doc.vertex_label(inf.j, inf.first_exceedance->vertex) << " holds " << inf.first_exceedance->occupancy
             << " > " << inf.first_exceedance->cap << '\n';
    else
      r.text << "no cap exceeded on the window\n";
    r.text << "image periodic: "
           << (inf.image_periodic ? "yes, period " + std::to_string(*inf.image_period) : std::string("no")) << '\n';
    for (const auto& f : inf.flags) r.text << "flag: " << f << '\n';
    return kOk;
  }
  const auto gap = min_ordinal_gap(d, pts, n, v, w);
  r.data["l_v"] = gap ? json(*gap) : json(nullptr);
  r.text << "l_v: " << (gap ? std::to_string(*gap) : std::string("none")) << '\n';
  if (o.law && gap) {
    const std::size_t k = n - 1;
    std::vector<std::uint32_t> word;
    if (k > 0) word = encode(Alphabet(d, k), orbit_window(d, pts[0], k, w.lo, w.hi));
    else word.assign(w.size(), 0);
    const std::int64_t to = w.hi - static_cast<std::int64_t>(*gap);
    const auto holds = to >= w.lo ? periodicity_law_check(word, w.lo, *gap, w.lo, to) : std::vector<std::int64_t>{};
    r.data["law"] = {{"from", w.lo}, {"to", to}, {"holds_at", holds}};
    r.text << "law holds at " << holds.size() << " of " << (to >= w.lo ? to - w.lo + 1 : 0) << " coordinates\n";
  }
  return kOk;
}

int cmd_reduce_rank(const Options& o, const DiagramDocument& doc, Report& r) {
  const auto& d = doc.diagram;
  require_valid(d);
  std::vector<PointApprox> pts;
  if (!o.search_from.empty()) {
    const PointApprox& x = named_point(doc, o.search_from);
    const std::optional<Window> w = o.window.empty() ? std::nullopt : std::optional<Window>(parse_window(o.window));
    const auto y = search_surgery_partner(d, o.level, x, w, o.seed);
    if (!y) throw ContractError("no surgery partner found for '" + o.search_from + "'");
    pts = {x, *y};
    r.data["searched"] = {{"template", o.search_from}, {"seed", o.seed}, {"partner", point_text(doc, *y)}};
  } else {
    pts = named_points(doc, o.points);
    if (pts.size() != 2) throw ContractError("--points takes exactly two names");
  }
  const Window w = window_or_default(o, d, pts);
  const ReduceResult res = reduce_rank_once(d, o.level, pts[0], pts[1], w, o.budget);
  json plans = json::array();
  for (const auto& p : res.plans) plans.push_back({{"kind", to_string(p.kind)}, {"v", p.v}, {"w", p.w}});
  r.data["status"] = to_string(res.status);
  r.data["window"] = window_json(w);
  r.data["plans"] = plans;
  r.data["edge_counts"] = res.edge_counts;
  r.data["reduced_level"] = res.reduced_level;
  r.data["original_cuts"] = res.original_cuts;
  r.data["reason"] = res.reason;
  const std::string text = serialize_diagram(res.diagram);
  r.data["document"] = text;
  if (!o.out_file.empty()) save_document(o.out_file, parse_document(text));
  r.text << to_string(res.status);
  if (res.status == ReduceResult::Status::Reduced) r.text << " at level " << res.reduced_level;
  r.text << '\n';
  for (const auto& p : res.plans) r.text << to_string(p.kind) << ' ' << p.v << ' ' << p.w << '\n';
  std::vector<std::size_t> counts(res.edge_counts.begin(), res.edge_counts.end());
  r.text << "edge counts: " << join(counts) << '\n';
  r.text << "original cuts: " << join(res.original_cuts) << '\n';
  if (!res.reason.empty()) r.text << res.reason << '\n';
  if (o.out_file.empty()) r.text << text;
  return kOk;
}

int cmd_bound(const Options& o, Report& r) {
  const Count ib = infection_bound(o.rank);
  r.data["rank"] = o.rank;
  r.data["infection_bound"] = ib;
  r.text << "infection_bound: " << ib << '\n';
  try {
    const Count dm = dm_bound(o.rank);
    r.data["dm_bound"] = dm;
    r.text << "dm_bound: " << dm << '\n';
  } catch (const std::overflow_error&) {
    r.data["dm_bound"] = nullptr;
    r.text << "dm_bound: exceeds 64 bits\n";
  }
  r.data["caps"] = infection_caps(o.rank);
  return kOk;
}

int cmd_export_dot(const Options& o, const DiagramDocument& doc, Report& r) {
  require_valid(doc.diagram);
  const std::string dot = export_dot(doc, DotOptions{o.dot_max_level, !o.no_ordinals});
  r.data["dot"] = dot;
  r.text << dot;
  return kOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ordered Bratteli diagrams and Vershik maps", "bvd"};
  app.require_subcommand(1);
  Options o;

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "diagram document")->required();
    sub->add_flag("--json", o.as_json, "machine-readable report");
    return sub;
  };
  auto* validate = with_file(app.add_subcommand("validate", "check structure and profile rank, ERS and simplicity"));
  validate->add_option("--horizon", o.horizon, "levels scanned for simplicity");

  auto* info = with_file(app.add_subcommand("info", "tower heights, incidence matrices, proper ordering"));
  info->add_option("--levels", o.levels, "last level shown");
  info->add_option("--rank", o.rank_path, "tower rank of a path, e.g. a:1,v:5");
  info->add_option("--unrank", o.unrank, "path at level:vertex:position");

  auto* tele = with_file(app.add_subcommand("telescope", "telescope to the given levels"));
  tele->add_option("--cuts", o.cuts, "increasing levels starting at 0")->required();
  tele->add_option("--out", o.out_file, "write the result to a file");

  auto* succ = with_file(app.add_subcommand("successor", "Vershik successor of a path or point"));
  succ->add_option("--path", o.path, "edges vertex:ordinal from level 1");
  succ->add_option("--point", o.point, "named point");
  succ->add_flag("--back", o.back, "predecessor instead");
  succ->add_option("--steps", o.steps, "number of steps for --point");

  auto* orbit = with_file(app.add_subcommand("orbit", "level-k truncations along an orbit window"));
  orbit->add_option("--point", o.point)->required();
  orbit->add_option("--level", o.level)->required();
  orbit->add_option("--window", o.window, "lo:hi");

  auto* tw = with_file(app.add_subcommand("tower-word", "tower word of a vertex over level-k paths"));
  tw->add_option("--vertex", o.vertex, "level:vertex")->required();
  tw->add_option("--level", o.level, "alphabet level k")->required();

  auto* lang = with_file(app.add_subcommand("language", "factors of the level-k subshift"));
  lang->add_option("--level", o.level, "alphabet level k")->required();
  lang->add_option("--length", o.length, "factor length (maximum length with --period)")->required();
  lang->add_option("--depth", o.depth, "tower level the factors are read from")->required();
  lang->add_flag("--period", o.period, "detect a complexity plateau");

  auto* cls = with_file(app.add_subcommand("classify", "odometer or expansive-likely on budgets"));
  cls->add_option("--levels", o.classify_levels, "alphabet levels 1..K");
  cls->add_option("--length", o.classify_length, "factor length budget");

  auto* dep = with_file(app.add_subcommand("depth", "depth of compatibility of two points"));
  dep->add_option("--points", o.points, "x,y")->required();
  dep->add_option("--max-level", o.max_level)->required();
  dep->add_option("--window", o.window, "lo:hi");

  auto* cs = with_file(app.add_subcommand("cut-scan", "common cuts and minimal-cut witnesses"));
  cs->add_option("--points", o.points, "x,y")->required();
  cs->add_option("--cut", o.cut, "cut level j");
  cs->add_option("--witness", o.witness, "look for a witness of depth i instead");
  cs->add_option("--window", o.window, "lo:hi");

  auto* lv = with_file(app.add_subcommand("lv", "ordinal gap l_v, periodicity law and infection check"));
  lv->add_option("--vertex", o.vertex, "level:vertex")->required();
  lv->add_option("--points", o.points, "comma-separated point names");
  lv->add_option("--window", o.window, "lo:hi");
  lv->add_flag("--law", o.law, "check the l_v periodicity law on the image");
  lv->add_flag("--infection", o.infection, "verify the pigeonhole argument at the vertex level");
  lv->add_option("--search-from", o.search_from, "search a witness family from this point's tower");
  lv->add_option("--size", o.family_size, "family size for --search-from");
  lv->add_option("--seed", o.seed, "search seed");

  auto* rr = with_file(app.add_subcommand("reduce-rank", "split/merge surgery below level i"));
  rr->add_option("--level", o.level, "level i")->required();
  rr->add_option("--points", o.points, "x,y");
  rr->add_option("--search-from", o.search_from, "search a partner in this point's tower");
  rr->add_option("--seed", o.seed, "search seed");
  rr->add_option("--window", o.window, "lo:hi");
  rr->add_option("--budget", o.budget, "maximum split stages");
  rr->add_option("--out", o.out_file, "write the result to a file");

  auto* bnd = app.add_subcommand("bound", "infection bound and the earlier bound");
  bnd->add_option("--rank", o.rank, "K")->required()->check(CLI::PositiveNumber);
  bnd->add_flag("--json", o.as_json, "machine-readable report");

  auto* dot = with_file(app.add_subcommand("export-dot", "Graphviz rendering"));
  dot->add_option("--max-level", o.dot_max_level);
  dot->add_flag("--no-ordinals", o.no_ordinals, "omit edge labels");

  std::vector<const char*> argv{"bvd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "bvd: " << e.what() << '\n';
    return kContract;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Report r;
  r.data["schema"] = kReportSchema;
  r.data["command"] = name;
  int code = kOk;
  try {
    if (sub == bnd) {
      code = cmd_bound(o, r);
    } else {
      const DiagramDocument doc = load_document(o.file);
      if (sub == validate) code = cmd_validate(o, doc, r);
      else if (sub == info) code = cmd_info(o, doc, r);
      else if (sub == tele) code = cmd_telescope(o, doc, r);
      else if (sub == succ) code = cmd_successor(o, doc, r);
      else if (sub == orbit) code = cmd_orbit(o, doc, r);
      else if (sub == tw) code = cmd_tower_word(o, doc, r);
      else if (sub == lang) code = cmd_language(o, doc, r);
      else if (sub == cls) code = cmd_classify(o, doc, r);
      else if (sub == dep) code = cmd_depth(o, doc, r);
      else if (sub == cs) code = cmd_cut_scan(o, doc, r);
      else if (sub == lv) code = cmd_lv(o, doc, r);
      else if (sub == rr) code = cmd_reduce_rank(o, doc, r);
      else if (sub == dot) code = cmd_export_dot(o, doc, r);
    }
  } catch (const IoError& e) {
    err << "bvd " << name << ": " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "bvd " << name << ": " << o.file << ':' << e.what() << '\n';
    return kContract;
  } catch (const std::exception& e) {
    err << "bvd " << name << ": " << e.what() << '\n';
    return kContract;
  }
  if (o.as_json)
    out << r.data.dump(2) << '\n';
  else
    out << r.text.str();
  return code;
}

}  // namespace bvd::cli
