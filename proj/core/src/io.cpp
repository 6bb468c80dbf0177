#include "spdi/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "spdi/error.hpp"

namespace spdi {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Non-blank lines with comments stripped.
std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    auto tokens = split_ws(raw);
    if (!tokens.empty()) out.push_back({number, std::move(tokens)});
    pos = nl + 1;
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, "invalid number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) throw ParseError(line, "non-finite number '" + std::string(tok) + "'");
  return v;
}

std::int64_t parse_int(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "invalid integer '" + std::string(tok) + "'");
  }
  return v;
}

void expect_header(const std::vector<Line>& lines, std::string_view kind) {
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != kind ||
      lines[0].tokens[1] != "v1") {
    throw ParseError(lines.empty() ? 1 : lines[0].number,
                     "expected header '" + std::string(kind) + " v1'");
  }
  if (lines[0].number != 1) {
    throw ParseError(1, "expected header '" + std::string(kind) + " v1'");
  }
}

EdgeId resolve_edge(const Spdi& spdi, std::string_view name, std::size_t line) {
  auto e = spdi.find_edge(std::string(name));
  if (!e) throw ParseError(line, "unknown edge '" + std::string(name) + "'");
  return *e;
}

// "[lo,hi]"
Interval parse_bracket(std::string_view tok, std::size_t line) {
  if (tok.size() < 5 || tok.front() != '[' || tok.back() != ']') {
    throw ParseError(line, "expected [lo,hi], got '" + std::string(tok) + "'");
  }
  std::string_view body = tok.substr(1, tok.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) throw ParseError(line, "expected [lo,hi]");
  Interval iv{parse_double(body.substr(0, comma), line), parse_double(body.substr(comma + 1), line)};
  if (iv.lo > iv.hi) throw ParseError(line, "interval with lo > hi");
  if (iv.lo < 0.0 || iv.hi > 1.0) throw ParseError(line, "interval outside [0,1]");
  return iv;
}

std::string bracket(const Interval& iv) {
  return "[" + format_number(iv.lo) + "," + format_number(iv.hi) + "]";
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Spdi parse_spdi(std::string_view text) {
  auto lines = lex(text);
  expect_header(lines, "spdi");
  std::vector<Vertex> vertices;
  std::map<VertexId, Point2> by_id;
  std::vector<Region> regions;
  std::set<RegionId> region_ids;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    const auto& t = ln.tokens;
    if (t[0] == "vertex") {
      if (t.size() != 4) throw ParseError(ln.number, "expected 'vertex <id> <x> <y>'");
      Vertex v{parse_int(t[1], ln.number), {parse_double(t[2], ln.number), parse_double(t[3], ln.number)}};
      if (!by_id.emplace(v.id, v.p).second) {
        throw ParseError(ln.number, "duplicate vertex id " + std::to_string(v.id));
      }
      vertices.push_back(v);
    } else if (t[0] == "region") {
      // region <id> vertices v... l lx ly r rx ry
      if (t.size() < 12 || t[2] != "vertices") {
        throw ParseError(ln.number, "expected 'region <id> vertices <v...> l <x> <y> r <x> <y>'");
      }
      const std::size_t n = t.size();
      if (t[n - 6] != "l" || t[n - 3] != "r") {
        throw ParseError(ln.number, "expected 'l <x> <y> r <x> <y>' at end of region");
      }
      Region r;
      r.id = parse_int(t[1], ln.number);
      if (!region_ids.insert(r.id).second) {
        throw ParseError(ln.number, "duplicate region id " + std::to_string(r.id));
      }
      Polygon poly;
      for (std::size_t k = 3; k < n - 6; ++k) {
        VertexId vid = parse_int(t[k], ln.number);
        auto it = by_id.find(vid);
        if (it == by_id.end()) {
          throw ParseError(ln.number, "region " + std::to_string(r.id) + " references unknown vertex " +
                                          std::to_string(vid));
        }
        r.vertex_ids.push_back(vid);
        poly.push_back(it->second);
      }
      if (r.vertex_ids.size() < 3) {
        throw ParseError(ln.number, "region " + std::to_string(r.id) + " needs at least 3 vertices");
      }
      if (!(signed_area(poly) > 0.0)) {
        throw ParseError(ln.number, "region " + std::to_string(r.id) + " is not counterclockwise");
      }
      r.dyn_l = {parse_double(t[n - 5], ln.number), parse_double(t[n - 4], ln.number)};
      r.dyn_r = {parse_double(t[n - 2], ln.number), parse_double(t[n - 1], ln.number)};
      regions.push_back(std::move(r));
    } else {
      throw ParseError(ln.number, "unknown directive '" + std::string(t[0]) + "'");
    }
  }
  if (regions.empty()) throw ParseError(lines.back().number, "no regions");
  try {
    return Spdi::build(std::move(vertices), std::move(regions));
  } catch (const ValidationError& e) {
    throw ParseError(lines.back().number, e.what());
  }
}

std::string write_spdi(const Spdi& spdi) {
  std::ostringstream out;
  out << "spdi v1\n";
  for (const Vertex& v : spdi.vertices()) {
    out << "vertex " << v.id << ' ' << format_number(v.p.x) << ' ' << format_number(v.p.y) << '\n';
  }
  for (const Region& r : spdi.regions()) {
    out << "region " << r.id << " vertices";
    for (VertexId vid : r.vertex_ids) out << ' ' << vid;
    out << " l " << format_number(r.dyn_l.dx) << ' ' << format_number(r.dyn_l.dy) << " r "
        << format_number(r.dyn_r.dx) << ' ' << format_number(r.dyn_r.dy) << '\n';
  }
  return out.str();
}

ReachTask parse_task(std::string_view text, const Spdi& spdi) {
  auto lines = lex(text);
  expect_header(lines, "task");
  ReachTask task;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& ln = lines[i];
    const auto& t = ln.tokens;
    if (t[0] != "start" && t[0] != "final") {
      throw ParseError(ln.number, "unknown directive '" + std::string(t[0]) + "'");
    }
    if (t.size() != 4) throw ParseError(ln.number, "expected '" + std::string(t[0]) + " <edge> <lo> <hi>'");
    EdgeInterval ei{resolve_edge(spdi, t[1], ln.number), parse_double(t[2], ln.number),
                    parse_double(t[3], ln.number)};
    if (ei.lo >= ei.hi) throw ParseError(ln.number, "interval needs lo < hi");
    if (ei.lo < 0.0 || ei.hi > 1.0) throw ParseError(ln.number, "interval outside [0,1]");
    (t[0] == "start" ? task.start : task.final).push_back(ei);
  }
  const std::size_t last = lines.empty() ? 1 : lines.back().number;
  if (task.start.empty()) throw ParseError(last, "task has no start line");
  if (task.final.empty()) throw ParseError(last, "task has no final line");
  return task;
}

std::string write_task(const Spdi& spdi, const ReachTask& task) {
  std::ostringstream out;
  out << "task v1\n";
  auto emit = [&](const char* kind, const EdgeInterval& ei) {
    out << kind << ' ' << spdi.edge(ei.edge).name << ' ' << format_number(ei.lo) << ' '
        << format_number(ei.hi) << '\n';
  };
  for (const EdgeInterval& s : task.start) emit("start", s);
  for (const EdgeInterval& f : task.final) emit("final", f);
  return out.str();
}

std::string write_witness(const Spdi& spdi, const ReachResult& result) {
  if (result.verdict != Verdict::kReachable || !result.witness) {
    throw Error("witness requested for a result that is not REACHABLE");
  }
  return write_witness(spdi, *result.witness);
}

std::string write_witness(const Spdi& spdi, const Witness& w) {
  std::ostringstream out;
  for (const WitnessItem& item : w.items) {
    if (const auto* e = std::get_if<WitnessEdge>(&item)) {
      out << "edge " << spdi.edge(e->edge).name << ' ' << bracket(e->interval) << '\n';
    } else {
      const auto& c = std::get<WitnessCycle>(item);
      out << "cycle{\n";
      for (const WitnessEdge& ce : c.edges) {
        out << "  edge " << spdi.edge(ce.edge).name << ' ' << bracket(ce.interval) << '\n';
      }
      out << "  type=" << to_string(c.type) << "\n}\n";
    }
  }
  out << "hit " << spdi.edge(w.hit_edge).name << ' ' << bracket(w.hit) << '\n';
  return out.str();
}

Witness parse_witness(std::string_view text, const Spdi& spdi) {
  auto lines = lex(text);
  Witness w;
  std::optional<WitnessCycle> open;
  bool open_typed = false;
  bool done = false;
  for (const Line& ln : lines) {
    const auto& t = ln.tokens;
    if (done) throw ParseError(ln.number, "content after 'hit'");
    if (t[0] == "edge") {
      if (t.size() != 3) throw ParseError(ln.number, "expected 'edge <id> [lo,hi]'");
      if (open && open_typed) throw ParseError(ln.number, "edge after cycle type");
      WitnessEdge e{resolve_edge(spdi, t[1], ln.number), parse_bracket(t[2], ln.number)};
      if (open) {
        open->edges.push_back(e);
      } else {
        w.items.push_back(e);
      }
    } else if (t[0] == "cycle{") {
      if (t.size() != 1 || open) throw ParseError(ln.number, "unexpected 'cycle{'");
      open.emplace();
      open_typed = false;
    } else if (t[0].substr(0, 5) == "type=") {
      if (!open || open_typed || t.size() != 1) throw ParseError(ln.number, "unexpected cycle type");
      auto type = parse_cycle_type(t[0].substr(5));
      if (!type) throw ParseError(ln.number, "unknown cycle type '" + std::string(t[0].substr(5)) + "'");
      open->type = *type;
      open_typed = true;
    } else if (t[0] == "}") {
      if (!open || !open_typed || open->edges.empty() || t.size() != 1) {
        throw ParseError(ln.number, "unexpected '}'");
      }
      w.items.push_back(std::move(*open));
      open.reset();
    } else if (t[0] == "hit") {
      if (open) throw ParseError(ln.number, "'hit' inside a cycle block");
      if (t.size() != 3) throw ParseError(ln.number, "expected 'hit <id> [lo,hi]'");
      w.hit_edge = resolve_edge(spdi, t[1], ln.number);
      w.hit = parse_bracket(t[2], ln.number);
      done = true;
    } else {
      throw ParseError(ln.number, "unknown directive '" + std::string(t[0]) + "'");
    }
  }
  if (!done) throw ParseError(lines.empty() ? 1 : lines.back().number, "witness has no 'hit' line");
  return w;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("cannot write '" + path + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace spdi
