#include "capplan/sndlib.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "capplan/error.hpp"

namespace capplan {
namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : line) {
    if (c == '#') break;
    if (c == '(' || c == ')') {
      flush();
      tokens.emplace_back(1, c);
    } else if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
      flush();
    } else {
      current.push_back(c);
    }
  }
  flush();
  return tokens;
}

std::optional<double> to_number(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

double number_or_throw(const std::string& token, int line,
                       const std::string& what) {
  auto v = to_number(token);
  if (!v) throw ParseError(line, what + ": '" + token + "' is not a number");
  return *v;
}

// Parses "id ( x y )" and returns the index just past the group.
struct Endpoints {
  std::string id;
  std::string first;
  std::string second;
  std::size_t next = 0;
};

Endpoints parse_pair_entry(const std::vector<std::string>& tok, int line,
                           const std::string& kind) {
  if (tok.size() < 5 || tok[1] != "(" || tok[4] != ")") {
    throw ParseError(line, "malformed " + kind + " entry" +
                               (tok.empty() ? "" : " '" + tok[0] + "'"));
  }
  return Endpoints{tok[0], tok[2], tok[3], 5};
}

enum class Section { kNone, kNodes, kLinks, kDemands, kSkipped };

struct PendingDemand {
  int line;
  std::string id;
  std::string source;
  std::string target;
  double volume;
};

}  // namespace

Network parse_sndlib(std::istream& in) {
  Topology topology;
  std::vector<PendingDemand> demands;
  std::set<std::string> demand_ids;

  Section section = Section::kNone;
  int skip_depth = 0;
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.front() == '?') continue;
    std::vector<std::string> tok = tokenize(raw);
    if (tok.empty()) continue;

    if (section == Section::kSkipped) {
      for (const auto& t : tok) {
        if (t == "(") ++skip_depth;
        if (t == ")") --skip_depth;
      }
      if (skip_depth <= 0) section = Section::kNone;
      continue;
    }

    if (section == Section::kNone) {
      if (tok.size() >= 2 && tok[1] == "(") {
        const std::string& name = tok[0];
        if (name == "NODES") {
          section = Section::kNodes;
        } else if (name == "LINKS") {
          section = Section::kLinks;
        } else if (name == "DEMANDS") {
          section = Section::kDemands;
        } else {
          section = Section::kSkipped;
          skip_depth = 0;
          for (const auto& t : tok) {
            if (t == "(") ++skip_depth;
            if (t == ")") --skip_depth;
          }
          if (skip_depth <= 0) section = Section::kNone;
          continue;
        }
        if (tok.size() > 2) {
          throw ParseError(line_no, "unexpected content after section header '" + name + "'");
        }
        continue;
      }
      throw ParseError(line_no, "malformed section header near '" + tok[0] + "'");
    }

    if (tok.size() == 1 && tok[0] == ")") {
      section = Section::kNone;
      continue;
    }

    try {
      if (section == Section::kNodes) {
        Node node;
        node.id = tok[0];
        node.name = tok[0];
        if (tok.size() > 1) {
          if (tok.size() != 5 || tok[1] != "(" || tok[4] != ")") {
            throw ParseError(line_no, "malformed node entry '" + tok[0] + "'");
          }
          node.coords = Coordinates{
              number_or_throw(tok[2], line_no, "node '" + tok[0] + "' longitude"),
              number_or_throw(tok[3], line_no, "node '" + tok[0] + "' latitude")};
        }
        topology.add_node(std::move(node));
      } else if (section == Section::kLinks) {
        Endpoints e = parse_pair_entry(tok, line_no, "link");
        std::vector<double> fields;
        std::size_t i = e.next;
        for (; i < tok.size() && tok[i] != "("; ++i) {
          fields.push_back(number_or_throw(tok[i], line_no, "link '" + e.id + "'"));
        }
        if (i < tok.size()) {
          // Module list: must close on the same line.
          std::size_t close = i + 1;
          while (close < tok.size() && tok[close] != ")") {
            number_or_throw(tok[close], line_no, "link '" + e.id + "' module");
            ++close;
          }
          if (close >= tok.size() || close + 1 != tok.size()) {
            throw ParseError(line_no, "malformed module list on link '" + e.id + "'");
          }
        }
        if (fields.size() > 4) {
          throw ParseError(line_no, "too many fields on link '" + e.id + "'");
        }
        const double capacity = fields.size() >= 1 ? fields[0] : 0.0;
        const double routing_cost = fields.size() >= 3 ? fields[2] : 0.0;
        const double metric = routing_cost > 0.0 ? routing_cost : 1.0;
        if (capacity < 0.0) {
          throw ParseError(line_no, "link '" + e.id + "' has negative capacity");
        }
        topology.add_link(e.id, e.first, e.second, metric, capacity);
      } else if (section == Section::kDemands) {
        Endpoints e = parse_pair_entry(tok, line_no, "demand");
        if (tok.size() < e.next + 2) {
          throw ParseError(line_no, "demand '" + e.id + "' lacks a value");
        }
        const double volume =
            number_or_throw(tok[e.next + 1], line_no, "demand '" + e.id + "'");
        if (!demand_ids.insert(e.id).second) {
          throw ParseError(line_no, "duplicate demand id '" + e.id + "'");
        }
        demands.push_back({line_no, e.id, e.first, e.second, volume});
      }
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& err) {
      throw ParseError(line_no, err.what());
    }
  }
  if (section != Section::kNone) {
    throw ParseError(line_no, "unterminated section at end of input");
  }

  DemandMatrix matrix(topology.node_count());
  for (const auto& d : demands) {
    auto s = topology.find_node(d.source);
    auto t = topology.find_node(d.target);
    if (!s || !t) {
      throw ParseError(d.line, "demand '" + d.id + "' references unknown node '" +
                                   (!s ? d.source : d.target) + "'");
    }
    if (*s == *t) throw ParseError(d.line, "demand '" + d.id + "' is a self-demand");
    if (d.volume < 0.0) throw ParseError(d.line, "demand '" + d.id + "' is negative");
    matrix.add(*s, *t, d.volume);
  }
  return Network{std::move(topology), std::move(matrix)};
}

Network parse_sndlib(const std::string& text) {
  std::istringstream in(text);
  return parse_sndlib(in);
}

Network load_sndlib(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return parse_sndlib(in);
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string serialize_sndlib(const Topology& topology,
                             const DemandMatrix& demands,
                             const std::string& network_name) {
  std::ostringstream out;
  out << "?SNDlib native format; type: network; version: 1.0\n";
  out << "# network " << network_name << "\n\n";
  out << "NODES (\n";
  for (const Node& node : topology.nodes()) {
    out << "  " << node.id;
    if (node.coords) {
      out << " ( " << format_number(node.coords->x) << " "
          << format_number(node.coords->y) << " )";
    }
    out << "\n";
  }
  out << ")\n\nLINKS (\n";
  for (const Link& link : topology.links()) {
    out << "  " << link.id << " ( " << topology.node(link.a).id << " "
        << topology.node(link.b).id << " ) " << format_number(link.capacity)
        << " 0 " << format_number(link.metric) << " 0 ( )\n";
  }
  out << ")\n\nDEMANDS (\n";
  const auto n = static_cast<NodeIndex>(topology.node_count());
  for (NodeIndex s = 0; s < n; ++s) {
    for (NodeIndex t = 0; t < n; ++t) {
      const double v = demands.at(s, t);
      if (v == 0.0) continue;
      const std::string& sid = topology.node(s).id;
      const std::string& tid = topology.node(t).id;
      out << "  " << sid << "_" << tid << " ( " << sid << " " << tid << " ) 1 "
          << format_number(v) << " UNLIMITED\n";
    }
  }
  out << ")\n";
  return out.str();
}

}  // namespace capplan
