#include "bvd/document.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bvd/errors.hpp"

namespace bvd {

namespace {

struct Token {
  std::string_view text;
  std::size_t column = 0;
};

struct Line {
  std::size_t number = 0;
  std::vector<Token> tokens;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '.' || c == '-';
}

bool is_index(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_name(std::string_view s) {
  if (s.empty() || is_index(s) || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), is_name_char);
}

// Punctuation `|`, `(`, `)`, `=` and `<-` are tokens of their own.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find('\n', start), text.size());
    std::string_view raw = text.substr(start, end - start);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '|' || c == '(' || c == ')' || c == '=') {
        line.tokens.push_back({raw.substr(i, 1), i + 1});
        ++i;
      } else if (c == '<' && i + 1 < raw.size() && raw[i + 1] == '-') {
        line.tokens.push_back({raw.substr(i, 2), i + 1});
        i += 2;
      } else {
        const std::size_t j0 = i;
        while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) && raw[i] != '|' && raw[i] != '(' &&
               raw[i] != ')' && raw[i] != '=' && !(raw[i] == '<' && i + 1 < raw.size() && raw[i + 1] == '-'))
          ++i;
        line.tokens.push_back({raw.substr(j0, i - j0), j0 + 1});
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::size_t parse_number(const Line& line, const Token& t, const char* what) {
  std::size_t value = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError(line.number, t.column, std::string("expected ") + what);
  return value;
}

void expect(const Line& line, std::size_t index, std::string_view text) {
  if (index >= line.tokens.size()) {
    const std::size_t col = line.tokens.empty() ? 1 : line.tokens.back().column + line.tokens.back().text.size();
    throw ParseError(line.number, col, "expected '" + std::string(text) + "'");
  }
  if (line.tokens[index].text != text)
    throw ParseError(line.number, line.tokens[index].column,
                     "expected '" + std::string(text) + "', found '" + std::string(line.tokens[index].text) + "'");
}

std::size_t stored_index(const OrderedDiagram& d, std::size_t n) {
  if (n < d.stored_levels().size() || !d.repeat() || d.repeat()->period == 0) return n;
  const std::size_t from = d.repeat()->from_level;
  return from + (n - from) % d.repeat()->period;
}

struct PendingPoint {
  Line line;
  std::size_t name_index = 0;
};

Edge parse_edge(const DiagramDocument& doc, const Line& line, const Token& t, std::size_t level) {
  const auto colon = t.text.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == t.text.size())
    throw ParseError(line.number, t.column, "expected an edge written vertex:ordinal");
  const Token vertex{t.text.substr(0, colon), t.column};
  const Token ordinal{t.text.substr(colon + 1), t.column + colon + 1};
  if (level > 0 && !doc.diagram.has_level(level))
    throw ParseError(line.number, t.column, "edge at level " + std::to_string(level) + " is beyond the diagram");
  const auto v = doc.find_vertex(level, vertex.text);
  if (!v)
    throw ParseError(line.number, vertex.column,
                     "unknown vertex '" + std::string(vertex.text) + "' at level " + std::to_string(level));
  const std::size_t o = parse_number(line, ordinal, "an ordinal");
  if (o == 0) throw ParseError(line.number, ordinal.column, "ordinals are 1-based");
  return Edge{*v, static_cast<Ordinal>(o)};
}

PointApprox parse_point(const DiagramDocument& doc, const Line& line, std::size_t first) {
  PointApprox x;
  std::size_t level = 1;
  std::size_t i = first;
  const auto& toks = line.tokens;
  for (; i < toks.size() && toks[i].text != "|"; ++i) x.base.edges.push_back(parse_edge(doc, line, toks[i], level++));
  if (i == toks.size()) return x;
  ++i;
  x.tail.kind = Tail::Kind::Explicit;
  for (; i < toks.size() && toks[i].text != "("; ++i) {
    if (toks[i].text == ")" || toks[i].text == "|") throw ParseError(line.number, toks[i].column, "unexpected token");
    x.tail.lead.push_back(parse_edge(doc, line, toks[i], level++));
  }
  if (i == toks.size()) return x;
  x.tail.kind = Tail::Kind::Repeating;
  const std::size_t open = i++;
  for (; i < toks.size() && toks[i].text != ")"; ++i) {
    if (toks[i].text == "(" || toks[i].text == "|") throw ParseError(line.number, toks[i].column, "unexpected token");
    x.tail.cycle.push_back(parse_edge(doc, line, toks[i], level++));
  }
  if (i == toks.size()) throw ParseError(line.number, toks[open].column, "unclosed cycle");
  if (x.tail.cycle.empty()) throw ParseError(line.number, toks[open].column, "empty cycle");
  if (i + 1 != toks.size()) throw ParseError(line.number, toks[i + 1].column, "trailing tokens after the cycle");
  return x;
}

void write_edges(std::ostringstream& out, const DiagramDocument& doc, const std::vector<Edge>& edges,
                 std::size_t& level) {
  for (const auto& e : edges) out << ' ' << doc.vertex_label(level++, e.range) << ':' << e.ordinal;
}

}  // namespace

std::optional<VertexId> DiagramDocument::find_vertex(std::size_t n, std::string_view token) const {
  if (n > 0 && !diagram.has_level(n)) return std::nullopt;
  const std::size_t s = stored_index(diagram, n);
  if (s < names.size()) {
    const auto& level = names[s];
    if (const auto it = std::find(level.begin(), level.end(), token); it != level.end() && !token.empty())
      return static_cast<VertexId>(it - level.begin());
  }
  if (is_index(token)) {
    VertexId v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec == std::errc() && ptr == token.data() + token.size()) return v;
  }
  return std::nullopt;
}

std::string DiagramDocument::vertex_label(std::size_t n, VertexId v) const {
  if (n == 0) return "root";
  const std::size_t s = stored_index(diagram, n);
  if (s < names.size() && v < names[s].size() && !names[s][v].empty()) return names[s][v];
  return std::to_string(v);
}

const PointApprox* DiagramDocument::find_point(std::string_view name) const {
  for (const auto& p : points)
    if (p.name == name) return &p.point;
  return nullptr;
}

DiagramDocument make_document(OrderedDiagram diagram) {
  DiagramDocument doc;
  doc.names.resize(diagram.stored_levels().size());
  doc.names[0] = {"root"};
  for (std::size_t n = 1; n < doc.names.size(); ++n) doc.names[n].assign(diagram.vertex_count(n), "");
  doc.diagram = std::move(diagram);
  return doc;
}

DiagramDocument parse_document(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty document");
  const Line& header = lines.front();
  expect(header, 0, "bvd");
  if (header.tokens.size() != 2) throw ParseError(header.number, header.tokens[0].column, "expected 'bvd VERSION'");
  const std::size_t version = parse_number(header, header.tokens[1], "a format version");
  if (version != kDocumentVersion)
    throw ParseError(header.number, header.tokens[1].column, "unsupported format version " + std::to_string(version));

  DiagramDocument doc;
  doc.version = static_cast<int>(version);
  std::vector<Level> levels{Level{{{}}}};
  doc.names = {{"root"}};
  std::optional<RepeatSpec> repeat;
  std::vector<PendingPoint> pending;
  std::vector<Line> vertex_lines;

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const auto& head = line.tokens[0];
    if (head.text == "level") {
      if (repeat || !pending.empty()) throw ParseError(line.number, head.column, "levels must precede repeat and points");
      if (line.tokens.size() != 2) throw ParseError(line.number, head.column, "expected 'level N'");
      const std::size_t n = parse_number(line, line.tokens[1], "a level number");
      if (n != levels.size())
        throw ParseError(line.number, line.tokens[1].column, "expected level " + std::to_string(levels.size()));
      levels.emplace_back();
      doc.names.emplace_back();
    } else if (head.text == "repeat") {
      if (repeat) throw ParseError(line.number, head.column, "duplicate repeat block");
      if (line.tokens.size() != 5) throw ParseError(line.number, head.column, "expected 'repeat from F period P'");
      expect(line, 1, "from");
      expect(line, 3, "period");
      repeat = RepeatSpec{parse_number(line, line.tokens[2], "a level number"),
                          parse_number(line, line.tokens[4], "a period")};
    } else if (head.text == "point") {
      if (line.tokens.size() < 3) throw ParseError(line.number, head.column, "expected 'point NAME = edges'");
      const auto& name = line.tokens[1];
      if (!is_name(name.text) || name.text == "_")
        throw ParseError(line.number, name.column, "invalid point name '" + std::string(name.text) + "'");
      for (const auto& p : pending)
        if (p.line.tokens[1].text == name.text)
          throw ParseError(line.number, name.column, "duplicate point '" + std::string(name.text) + "'");
      expect(line, 2, "=");
      pending.push_back({line, 1});
    } else if (line.tokens.size() >= 2 && line.tokens[1].text == "<-") {
      if (levels.size() == 1) throw ParseError(line.number, head.column, "vertex outside a level block");
      if (repeat || !pending.empty()) throw ParseError(line.number, head.column, "vertices must precede repeat and points");
      std::string name;
      if (head.text != "_") {
        if (!is_name(head.text) || head.text == "root")
          throw ParseError(line.number, head.column, "invalid vertex name '" + std::string(head.text) + "'");
        name = head.text;
        const auto& level_names = doc.names.back();
        if (std::find(level_names.begin(), level_names.end(), name) != level_names.end())
          throw ParseError(line.number, head.column, "duplicate vertex '" + name + "' in this level");
      }
      const std::size_t n = levels.size() - 1;
      std::vector<VertexId> sources;
      for (std::size_t t = 2; t < line.tokens.size(); ++t) {
        const auto& tok = line.tokens[t];
        std::optional<VertexId> s;
        if (n == 1 && tok.text == "root") s = 0;
        const auto& prev = doc.names[n - 1];
        if (!s && n > 1)
          if (const auto it = std::find(prev.begin(), prev.end(), tok.text); it != prev.end())
            s = static_cast<VertexId>(it - prev.begin());
        if (!s && is_index(tok.text)) s = static_cast<VertexId>(parse_number(line, tok, "a vertex index"));
        if (!s) throw ParseError(line.number, tok.column, "unknown source '" + std::string(tok.text) + "'");
        sources.push_back(*s);
      }
      levels.back().sources.push_back(std::move(sources));
      doc.names.back().push_back(std::move(name));
    } else {
      throw ParseError(line.number, head.column, "unexpected '" + std::string(head.text) + "'");
    }
  }

  doc.diagram = OrderedDiagram(std::move(levels), repeat);
  for (const auto& p : pending)
    doc.points.push_back({std::string(p.line.tokens[1].text), parse_point(doc, p.line, 3)});
  return doc;
}

std::string serialize_document(const DiagramDocument& doc) {
  std::ostringstream out;
  out << "bvd " << doc.version << '\n';
  const auto& levels = doc.diagram.stored_levels();
  for (std::size_t n = 1; n < levels.size(); ++n) {
    out << "level " << n << '\n';
    for (VertexId v = 0; v < levels[n].vertex_count(); ++v) {
      const bool named = n < doc.names.size() && v < doc.names[n].size() && !doc.names[n][v].empty();
      out << "  " << (named ? doc.names[n][v] : "_") << " <-";
      for (VertexId s : levels[n].sources[v]) out << ' ' << doc.vertex_label(n - 1, s);
      out << '\n';
    }
  }
  if (const auto& r = doc.diagram.repeat()) out << "repeat from " << r->from_level << " period " << r->period << '\n';
  for (const auto& p : doc.points) {
    out << "point " << p.name << " =";
    std::size_t level = 1;
    write_edges(out, doc, p.point.base.edges, level);
    if (p.point.tail.kind != Tail::Kind::None) {
      out << " |";
      write_edges(out, doc, p.point.tail.lead, level);
      if (p.point.tail.kind == Tail::Kind::Repeating) {
        out << " (";
        std::size_t first = level;
        for (const auto& e : p.point.tail.cycle) {
          if (level != first) out << ' ';
          out << doc.vertex_label(level++, e.range) << ':' << e.ordinal;
        }
        out << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string serialize_diagram(const OrderedDiagram& diagram) { return serialize_document(make_document(diagram)); }

DiagramDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return parse_document(buf.str());
}

void save_document(const std::filesystem::path& path, const DiagramDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << serialize_document(doc);
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace bvd
