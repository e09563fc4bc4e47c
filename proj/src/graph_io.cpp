/*******************************************************************************
 * @file:   graph_io.cpp
 ******************************************************************************/
#include "ilprefine/graph_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

#include "ilprefine/log.h"

namespace ilprefine {

namespace {

struct Entry {
  NodeID target;
  EdgeWeight weight;
};

std::string at_line(const std::size_t line) {
  return "line " + std::to_string(line) + ": ";
}

class Tokenizer {
public:
  explicit Tokenizer(const std::string_view line) : _line(line) {}

  bool next(std::string_view &token) {
    while (_pos < _line.size() && is_space(_line[_pos])) {
      ++_pos;
    }
    if (_pos >= _line.size()) {
      return false;
    }
    const std::size_t begin = _pos;
    while (_pos < _line.size() && !is_space(_line[_pos])) {
      ++_pos;
    }
    token = _line.substr(begin, _pos - begin);
    return true;
  }

private:
  static bool is_space(const char c) {
    return c == ' ' || c == '\t' || c == '\r';
  }

  std::string_view _line;
  std::size_t _pos = 0;
};

template <typename T> bool parse_token(const std::string_view token, T &value) {
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool is_comment(const std::string &line) {
  return !line.empty() && line[0] == '%';
}

} // namespace

Graph load_graph(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open graph file '" + path + "'");
  }
  return parse_metis(in);
}

Graph parse_metis(std::istream &in) {
  std::string line;
  std::size_t line_no = 0;

  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment(line)) {
      have_header = true;
      break;
    }
  }
  if (!have_header) {
    throw Error(ErrorCode::MalformedHeader, at_line(line_no) + "missing header");
  }

  std::vector<std::string_view> header;
  {
    Tokenizer tok(line);
    std::string_view token;
    while (tok.next(token)) {
      header.push_back(token);
    }
  }
  if (header.size() < 2 || header.size() > 4) {
    throw Error(ErrorCode::MalformedHeader, at_line(line_no) + "expected 'n m [fmt [ncon]]'");
  }
  std::uint64_t n64 = 0;
  std::uint64_t m = 0;
  if (!parse_token(header[0], n64) || !parse_token(header[1], m)) {
    throw Error(ErrorCode::MalformedHeader, at_line(line_no) + "n and m must be non-negative integers");
  }
  if (n64 >= kInvalidNode) {
    throw Error(ErrorCode::MalformedHeader, at_line(line_no) + "too many vertices");
  }
  const auto n = static_cast<NodeID>(n64);

  bool has_sizes = false;
  bool has_vertex_weights = false;
  bool has_edge_weights = false;
  if (header.size() >= 3) {
    const std::string_view fmt = header[2];
    if (fmt.empty() || fmt.size() > 3 ||
        !std::all_of(fmt.begin(), fmt.end(), [](const char c) { return c == '0' || c == '1'; })) {
      throw Error(ErrorCode::MalformedHeader, at_line(line_no) + "invalid format code '" +
                                                  std::string(fmt) + "'");
    }
    const std::string padded = std::string(3 - fmt.size(), '0') + std::string(fmt);
    has_sizes = padded[0] == '1';
    has_vertex_weights = padded[1] == '1';
    has_edge_weights = padded[2] == '1';
  }
  if (header.size() == 4) {
    unsigned ncon = 0;
    if (!parse_token(header[3], ncon) || ncon != 1) {
      throw Error(ErrorCode::MalformedHeader,
                  at_line(line_no) + "only a single vertex weight per vertex is supported");
    }
  }

  std::vector<NodeWeight> vertex_weights(n, 1.0);
  std::vector<std::vector<Entry>> adjacency(n);
  std::vector<std::size_t> vertex_line(n, 0);
  std::size_t raw_entries = 0;
  std::vector<WeightedEdge> self_loops;

  NodeID u = 0;
  while (u < n && std::getline(in, line)) {
    ++line_no;
    if (is_comment(line)) {
      continue;
    }
    vertex_line[u] = line_no;
    Tokenizer tok(line);
    std::string_view token;

    if (has_sizes) {
      double size = 0;
      if (!tok.next(token) || !parse_token(token, size)) {
        throw Error(ErrorCode::MalformedLine, at_line(line_no) + "missing vertex size");
      }
    }
    if (has_vertex_weights) {
      double weight = 0;
      if (!tok.next(token) || !parse_token(token, weight) || weight < 0) {
        throw Error(ErrorCode::MalformedLine, at_line(line_no) + "missing or negative vertex weight");
      }
      vertex_weights[u] = weight;
    }
    while (tok.next(token)) {
      std::uint64_t target = 0;
      if (!parse_token(token, target)) {
        throw Error(ErrorCode::MalformedLine, at_line(line_no) + "invalid neighbor '" +
                                                  std::string(token) + "'");
      }
      if (target < 1 || target > n) {
        throw Error(ErrorCode::VertexOutOfRange, at_line(line_no) + "neighbor " +
                                                     std::to_string(target) + " not in [1, " +
                                                     std::to_string(n) + "]");
      }
      EdgeWeight weight = 1.0;
      if (has_edge_weights) {
        if (!tok.next(token) || !parse_token(token, weight) || weight < 0) {
          throw Error(ErrorCode::MalformedLine, at_line(line_no) + "missing or negative edge weight");
        }
      }
      const auto v = static_cast<NodeID>(target - 1);
      if (v == u) {
        self_loops.push_back({u, u, weight});
        continue;
      }
      ++raw_entries;
      adjacency[u].push_back({v, weight});
    }
    ++u;
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!is_comment(line) && line.find_first_not_of(" \t\r") != std::string::npos) {
      throw Error(ErrorCode::MalformedLine, at_line(line_no) + "more vertex lines than declared n = " +
                                                std::to_string(n));
    }
  }

  for (auto &entries : adjacency) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry &a, const Entry &b) { return a.target < b.target; });
    std::vector<Entry> merged;
    for (const Entry &e : entries) {
      if (!merged.empty() && merged.back().target == e.target) {
        merged.back().weight += e.weight;
      } else {
        merged.push_back(e);
      }
    }
    entries = std::move(merged);
  }

  std::vector<WeightedEdge> edges;
  for (NodeID a = 0; a < n; ++a) {
    for (const Entry &e : adjacency[a]) {
      const auto &back = adjacency[e.target];
      const auto it = std::lower_bound(back.begin(), back.end(), a,
                                       [](const Entry &x, const NodeID t) { return x.target < t; });
      if (it == back.end() || it->target != a || it->weight != e.weight) {
        throw Error(ErrorCode::AsymmetricAdjacency,
                    at_line(vertex_line[a]) + "edge " + std::to_string(a + 1) + " -> " +
                        std::to_string(e.target + 1) + " has no matching reverse entry");
      }
      if (a < e.target) {
        edges.push_back({a, e.target, e.weight});
      }
    }
  }

  if (!self_loops.empty()) {
    notice("dropped " + std::to_string(self_loops.size()) + " self-loop entries");
  }
  edges.insert(edges.end(), self_loops.begin(), self_loops.end());
  if (raw_entries != 2 * m && edges.size() != m) {
    notice("header declares m = " + std::to_string(m) + " but the adjacency lists contain " +
           std::to_string(edges.size()) + " edges");
  }
  return Graph::from_edges(n, edges, std::move(vertex_weights));
}

std::string format_number(const double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_metis(const Graph &graph, std::ostream &out) {
  const bool vertex_weighted = std::any_of(graph.vertex_weights().begin(), graph.vertex_weights().end(),
                                           [](const NodeWeight w) { return w != 1.0; });
  bool edge_weighted = false;
  for (NodeID v = 0; v < graph.n() && !edge_weighted; ++v) {
    for (const EdgeWeight w : graph.neighbor_weights(v)) {
      edge_weighted |= w != 1.0;
    }
  }

  out << graph.n() << ' ' << graph.m();
  if (vertex_weighted || edge_weighted) {
    out << ' ' << (vertex_weighted ? '1' : '0') << (edge_weighted ? '1' : '0');
  }
  out << '\n';
  for (NodeID v = 0; v < graph.n(); ++v) {
    bool first = true;
    auto sep = [&] {
      if (!first) {
        out << ' ';
      }
      first = false;
    };
    if (vertex_weighted) {
      sep();
      out << format_number(graph.vertex_weight(v));
    }
    const auto targets = graph.neighbors(v);
    const auto weights = graph.neighbor_weights(v);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      sep();
      out << targets[i] + 1;
      if (edge_weighted) {
        out << ' ' << format_number(weights[i]);
      }
    }
    out << '\n';
  }
}

void write_metis(const Graph &graph, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  }
  write_metis(graph, out);
}

std::vector<PartitionID> read_partition(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::Io, "cannot open partition file '" + path + "'");
  }
  return parse_partition(in);
}

std::vector<PartitionID> parse_partition(std::istream &in) {
  std::vector<PartitionID> assignment;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Tokenizer tok(line);
    std::string_view token;
    if (!tok.next(token)) {
      continue;
    }
    PartitionID block = 0;
    if (!parse_token(token, block) || block == kInvalidBlock) {
      throw Error(ErrorCode::MalformedLine, at_line(line_no) + "invalid block id '" +
                                                std::string(token) + "'");
    }
    std::string_view extra;
    if (tok.next(extra)) {
      throw Error(ErrorCode::MalformedLine, at_line(line_no) + "expected a single block id");
    }
    assignment.push_back(block);
  }
  return assignment;
}

void write_partition(std::span<const PartitionID> assignment, std::ostream &out) {
  for (const PartitionID b : assignment) {
    out << b << '\n';
  }
}

void write_partition(std::span<const PartitionID> assignment, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::Io, "cannot write '" + path + "'");
  }
  write_partition(assignment, out);
}

} // namespace ilprefine
