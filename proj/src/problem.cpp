#include "qjump/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qjump/errors.hpp"

namespace qjump {

double Graph::total_weight() const {
  double w = 0.0;
  for (const auto& e : edges) w += e.weight;
  return w;
}

namespace {

// Content up to the first '#'; parse errors reference 1-based line numbers.
std::string strip_comment(std::string_view line) {
  const auto pos = line.find('#');
  return std::string(line.substr(0, pos == std::string_view::npos ? line.size() : pos));
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;

  int n = -1, m = -1;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || (header >> extra)) {
      throw ParseError(line_no, "expected header \"n m\"");
    }
    if (n < 1) throw ParseError(line_no, "vertex count must be >= 1");
    if (m < 0) throw ParseError(line_no, "edge count must be >= 0");
    break;
  }
  if (n < 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing header \"n m\"");

  Graph g;
  g.n_vertices = n;
  std::set<std::pair<int, int>> seen;
  int parsed = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_comment(raw);
    if (blank(line)) continue;
    if (parsed == m) throw ParseError(line_no, "more than " + std::to_string(m) + " edge lines");
    std::istringstream es(line);
    int u, v;
    double w = 1.0;
    if (!(es >> u >> v)) throw ParseError(line_no, "expected edge \"u v\" or \"u v w\"");
    if (!es.eof()) {
      if (!(es >> w)) throw ParseError(line_no, "malformed edge weight");
      std::string extra;
      if (es >> extra) throw ParseError(line_no, "trailing tokens after edge");
    }
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ParseError(line_no, "vertex index out of range [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw ParseError(line_no, "self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw ParseError(line_no, "duplicate edge (" + std::to_string(u) + ", " +
                                    std::to_string(v) + ")");
    }
    g.edges.push_back({u, v, w});
    ++parsed;
  }
  if (parsed != m) {
    throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " +
                                  std::to_string(parsed));
  }
  return g;
}

Graph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open graph file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_graph(buf.str());
}

DiagonalHamiltonian maxcut_hamiltonian(const Graph& g) {
  if (g.n_vertices < 1 || g.n_vertices > kMaxQubits) {
    throw CapacityError("graph with " + std::to_string(g.n_vertices) +
                        " vertices outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  DiagonalHamiltonian h;
  h.n_qubits = g.n_vertices;
  h.source_edges = g.edges;
  const std::int64_t dim = std::int64_t{1} << g.n_vertices;
  h.energies = Eigen::VectorXd::Zero(dim);
  // w·(z_u z_v − 1)/2 is −w when the endpoint bits differ, else 0.
  for (const auto& e : g.edges) {
    const std::uint64_t bu = std::uint64_t{1} << e.u;
    const std::uint64_t bv = std::uint64_t{1} << e.v;
    for (std::int64_t x = 0; x < dim; ++x) {
      const bool differ = ((x & bu) == 0) != ((x & bv) == 0);
      if (differ) h.energies[x] -= e.weight;
    }
  }
  return h;
}

double cut_value(const Graph& g, std::uint64_t x) {
  double cut = 0.0;
  for (const auto& e : g.edges) {
    if (((x >> e.u) & 1U) != ((x >> e.v) & 1U)) cut += e.weight;
  }
  return cut;
}

GroundTruth brute_force_ground(const DiagonalHamiltonian& h) {
  GroundTruth gt;
  gt.energy = h.energies.minCoeff();
  const std::int64_t dim = std::int64_t{1} << h.n_qubits;
  for (std::int64_t x = 0; x < dim; ++x) {
    if (h.energies[x] == gt.energy) gt.optimal_bitstrings.push_back(static_cast<std::uint64_t>(x));
  }
  return gt;
}

}  // namespace qjump
