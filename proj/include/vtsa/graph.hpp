#pragma once

// Graphs and vertex-transitive graph/group pairs: Cayley digraphs, orbital
// graphs, lexicographic products, the distance-<=2 graph on a bipartition
// half, invariant queries, and pair validation.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "vtsa/error.hpp"
#include "vtsa/group.hpp"
#include "vtsa/normal.hpp"
#include "vtsa/perm.hpp"

namespace vtsa {

// Finite simple graph or digraph; adjacency lists are the out-neighbours,
// always sorted and duplicate-free, never containing the vertex itself.
struct Graph {
  std::size_t vertex_count = 0;
  std::vector<std::vector<Point>> adjacency;
  bool directed = false;

  bool operator==(const Graph&) const = default;
};

inline Graph make_graph(std::size_t n,
                        const std::vector<std::pair<Point, Point>>& edges,
                        bool directed) {
  if (n == 0) throw InputError("make_graph: empty vertex set");
  if (n > config().max_points)
    throw CapError("make_graph: vertex count exceeds the point cap");
  Graph g;
  g.vertex_count = n;
  g.directed = directed;
  g.adjacency.assign(n, {});
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("make_graph: vertex out of range");
    if (u == v) throw InputError("make_graph: loops are not allowed");
    g.adjacency[u].push_back(v);
    if (!directed) g.adjacency[v].push_back(u);
  }
  for (auto& nb : g.adjacency) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw InputError("make_graph: repeated edge");
  }
  return g;
}

inline std::size_t valency_min(const Graph& g) {
  std::size_t m = g.adjacency.empty() ? 0 : g.adjacency[0].size();
  for (const auto& nb : g.adjacency) m = std::min(m, nb.size());
  return m;
}

inline std::size_t valency_max(const Graph& g) {
  std::size_t m = 0;
  for (const auto& nb : g.adjacency) m = std::max(m, nb.size());
  return m;
}

inline bool is_regular(const Graph& g) { return valency_min(g) == valency_max(g); }

// Distances from src following edges in both directions for digraphs
// (i.e. weak connectivity distances); -1 for unreachable.
inline std::vector<std::int64_t> bfs_distances(const Graph& g, Point src,
                                               bool respect_direction = false) {
  std::vector<std::vector<Point>> extra;
  const std::vector<std::vector<Point>>* in = nullptr;
  if (g.directed && !respect_direction) {
    extra.assign(g.vertex_count, {});
    for (Point u = 0; u < g.vertex_count; ++u)
      for (Point v : g.adjacency[u]) extra[v].push_back(u);
    in = &extra;
  }
  std::vector<std::int64_t> dist(g.vertex_count, -1);
  std::queue<Point> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    Point u = q.front();
    q.pop();
    auto visit = [&](Point v) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
    };
    for (Point v : g.adjacency[u]) visit(v);
    if (in)
      for (Point v : (*in)[u]) visit(v);
  }
  return dist;
}

// Number of connected components (weak components for digraphs).
inline std::size_t component_count(const Graph& g) {
  UnionFind uf(g.vertex_count);
  std::size_t cells = g.vertex_count;
  for (Point u = 0; u < g.vertex_count; ++u)
    for (Point v : g.adjacency[u])
      if (uf.unite(u, v)) --cells;
  return cells;
}

inline bool is_connected(const Graph& g) { return component_count(g) == 1; }

struct GraphInvariants {
  bool connected = false;
  std::size_t valency_min = 0;
  std::size_t valency_max = 0;
  // Present when connected and the all-pairs sweep is affordable.
  std::optional<std::size_t> diameter;
};

inline GraphInvariants graph_invariants(const Graph& g) {
  GraphInvariants out;
  out.connected = is_connected(g);
  out.valency_min = valency_min(g);
  out.valency_max = valency_max(g);
  static constexpr std::size_t kDiameterVertexCap = 5000;
  if (out.connected && g.vertex_count <= kDiameterVertexCap) {
    std::size_t diam = 0;
    for (Point v = 0; v < g.vertex_count; ++v)
      for (std::int64_t d : bfs_distances(g, v))
        diam = std::max(diam, static_cast<std::size_t>(d));
    out.diameter = diam;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cayley digraph on an explicit element list: arc (n, n') iff n * n'^-1 is a
// connection-set member.  Vertices are the elements in sorted order, so the
// numbering is independent of the input listing.
inline Graph cayley_digraph(std::vector<Perm> elements, const std::vector<Perm>& s) {
  if (elements.empty()) throw InputError("cayley_digraph: empty group");
  std::size_t deg = elements[0].degree();
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto index_of = [&](const Perm& p) -> std::size_t {
    auto it = std::lower_bound(elements.begin(), elements.end(), p);
    if (it == elements.end() || *it != p)
      throw InputError("cayley_digraph: group element list is not closed");
    return static_cast<std::size_t>(it - elements.begin());
  };
  std::vector<Perm> conn;
  std::unordered_set<std::string> conn_keys;
  for (const Perm& g : s) {
    if (g.is_identity())
      throw InputError("cayley_digraph: connection set contains the identity");
    if (g.degree() != deg) throw InputError("cayley_digraph: degree mismatch");
    index_of(g);  // membership check: S must lie inside N
    if (conn_keys.insert(element_key(g)).second) conn.push_back(g);
  }
  bool symmetric = true;
  for (const Perm& g : conn)
    if (!conn_keys.count(element_key(g.inverse()))) {
      symmetric = false;
      break;
    }

  Graph out;
  out.vertex_count = elements.size();
  out.directed = !symmetric;
  out.adjacency.assign(elements.size(), {});
  for (std::size_t i = 0; i < elements.size(); ++i) {
    // n * n'^-1 = g  <=>  n' = g^-1 * n.
    for (const Perm& g : conn)
      out.adjacency[i].push_back(static_cast<Point>(index_of(g.inverse() * elements[i])));
    std::sort(out.adjacency[i].begin(), out.adjacency[i].end());
  }

  // The weak components are the cosets of <S>, so their number is the index.
  mpz_class sub = PermGroup(deg, conn).order();
  mpz_class expect = mpz_class(static_cast<unsigned long>(elements.size())) / sub;
  if (mpz_class(static_cast<unsigned long>(component_count(out))) != expect)
    throw Error("cayley_digraph: component count does not equal the subgroup index");
  return out;
}

inline Graph cayley_digraph(const PermGroup& n, const std::vector<Perm>& s) {
  n.require_enumerable("cayley_digraph");
  return cayley_digraph(n.elements(), s);
}

// ---------------------------------------------------------------------------
// Orbital graph: the G-orbit of one arc.  The orbit is closed under reversal
// exactly when the orbital is self-paired; the result is stored undirected in
// that case (or when symmetrize requests the union with the reversed orbit).
inline Graph orbital_graph(const PermGroup& g, Point alpha, Point beta,
                           bool symmetrize, bool* self_paired_out = nullptr) {
  if (!g.is_transitive()) throw InputError("orbital_graph: group must be transitive");
  if (alpha == beta) throw InputError("orbital_graph: arc endpoints must differ");
  std::size_t n = g.degree();
  auto pack = [n](Point a, Point b) {
    return static_cast<std::uint64_t>(a) * n + b;
  };
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::pair<Point, Point>> arcs{{alpha, beta}};
  seen.insert(pack(alpha, beta));
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (const Perm& h : g.generators()) {
      Point a = h[arcs[i].first], b = h[arcs[i].second];
      if (seen.insert(pack(a, b)).second) arcs.push_back({a, b});
    }
  bool self_paired = seen.count(pack(beta, alpha)) > 0;
  if (self_paired_out) *self_paired_out = self_paired;

  Graph out;
  out.vertex_count = n;
  out.adjacency.assign(n, {});
  out.directed = !(self_paired || symmetrize);
  for (auto [a, b] : arcs) {
    out.adjacency[a].push_back(b);
    if (!self_paired && symmetrize) out.adjacency[b].push_back(a);
  }
  for (auto& nb : out.adjacency) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lexicographic product X[Y]: vertices VX x VY numbered x*|VY|+y, with
// (x,y) ~ (x',y') iff x ~ x' in X, or x = x' and y ~ y' in Y.
inline Graph lexicographic_product(const Graph& x, const Graph& y) {
  if (x.directed || y.directed)
    throw InputError("lexicographic_product: inputs must be undirected");
  std::size_t nx = x.vertex_count, ny = y.vertex_count, n = nx * ny;
  if (n > config().max_points)
    throw CapError("lexicographic_product: vertex count exceeds the point cap");
  Graph out;
  out.vertex_count = n;
  out.adjacency.assign(n, {});
  for (std::size_t xv = 0; xv < nx; ++xv)
    for (std::size_t yv = 0; yv < ny; ++yv) {
      auto& nb = out.adjacency[xv * ny + yv];
      for (Point y2 : y.adjacency[yv]) nb.push_back(static_cast<Point>(xv * ny + y2));
      for (Point x2 : x.adjacency[xv])
        for (std::size_t y2 = 0; y2 < ny; ++y2)
          nb.push_back(static_cast<Point>(x2 * ny + y2));
      std::sort(nb.begin(), nb.end());
    }
  if (is_regular(x) && is_regular(y) && nx && ny) {
    std::size_t want = valency_max(y) + valency_max(x) * ny;
    if (valency_max(out) != want || valency_min(out) != want)
      throw Error("lexicographic_product: valency formula violated");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distance-<=2 graph on one half of a bipartition of the vertices: vertices
// are the members of `half` (in sorted order), adjacent when their distance
// in the source graph is 1 or 2.  When `cross_edges_only` certifies that
// every source edge joins the two halves, the certificate is verified and
// the valency bound d(d-1) is asserted.
inline Graph delta_graph(const Graph& g, const std::vector<Point>& half_in,
                         const std::vector<Point>& other_in,
                         bool cross_edges_only = false) {
  if (g.directed) throw InputError("delta_graph: input must be undirected");
  std::vector<char> side(g.vertex_count, -1);
  if (half_in.empty() || other_in.empty())
    throw InputError("delta_graph: both halves must be nonempty");
  for (Point p : half_in) {
    if (p >= g.vertex_count || side[p] != -1)
      throw InputError("delta_graph: halves are not a partition");
    side[p] = 0;
  }
  for (Point p : other_in) {
    if (p >= g.vertex_count || side[p] != -1)
      throw InputError("delta_graph: halves are not a partition");
    side[p] = 1;
  }
  for (Point p = 0; p < g.vertex_count; ++p)
    if (side[p] == -1) throw InputError("delta_graph: halves are not a partition");
  if (cross_edges_only)
    for (Point u = 0; u < g.vertex_count; ++u)
      for (Point v : g.adjacency[u])
        if (side[u] == side[v])
          throw InputError("delta_graph: cross-edge certificate is false "
                           "(edge inside one half)");

  std::vector<Point> half = half_in;
  std::sort(half.begin(), half.end());
  std::vector<std::int32_t> pos(g.vertex_count, -1);
  for (std::size_t i = 0; i < half.size(); ++i) pos[half[i]] = static_cast<std::int32_t>(i);

  Graph out;
  out.vertex_count = half.size();
  out.adjacency.assign(half.size(), {});
  for (std::size_t i = 0; i < half.size(); ++i) {
    std::unordered_set<Point> near;
    for (Point v : g.adjacency[half[i]]) {
      near.insert(v);
      for (Point w : g.adjacency[v]) near.insert(w);
    }
    for (Point v : near)
      if (pos[v] >= 0 && v != half[i])
        out.adjacency[i].push_back(static_cast<Point>(pos[v]));
    std::sort(out.adjacency[i].begin(), out.adjacency[i].end());
  }
  if (cross_edges_only) {
    std::size_t d = valency_max(g);
    if (valency_max(out) > d * (d - 1))
      throw Error("delta_graph: valency bound d(d-1) violated despite certificate");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vertex-transitive pair: a connected undirected graph together with a
// vertex-transitive automorphism group and a valency bound.
struct VTPair {
  Graph graph;
  PermGroup group;
  std::size_t d = 0;  // valency bound; equals the common valency when certified
};

enum class PairDiagnosis {
  Valid,
  DegreeMismatch,
  Directed,
  NotConnected,
  NotInvariant,
  NotTransitive,
  ValencyExceedsBound,
};

inline const char* to_string(PairDiagnosis d) {
  switch (d) {
    case PairDiagnosis::Valid: return "valid";
    case PairDiagnosis::DegreeMismatch: return "group degree differs from vertex count";
    case PairDiagnosis::Directed: return "graph is directed";
    case PairDiagnosis::NotConnected: return "graph is not connected";
    case PairDiagnosis::NotInvariant: return "a generator does not preserve the edge set";
    case PairDiagnosis::NotTransitive: return "group is not vertex-transitive";
    case PairDiagnosis::ValencyExceedsBound: return "valency exceeds the declared bound";
  }
  return "?";
}

struct PairValidation {
  PairDiagnosis diagnosis = PairDiagnosis::Valid;
  std::optional<VTPair> pair;  // populated only when valid
  bool ok() const { return diagnosis == PairDiagnosis::Valid; }
};

inline bool generator_preserves_edges(const Graph& g, const Perm& h) {
  for (Point u = 0; u < g.vertex_count; ++u) {
    std::vector<Point> mapped;
    mapped.reserve(g.adjacency[u].size());
    for (Point v : g.adjacency[u]) mapped.push_back(h[v]);
    std::sort(mapped.begin(), mapped.end());
    if (mapped != g.adjacency[h[u]]) return false;
  }
  return true;
}

inline PairValidation validate_pair(const Graph& graph, const PermGroup& group,
                                    std::size_t d) {
  PairValidation out;
  if (group.degree() != graph.vertex_count) {
    out.diagnosis = PairDiagnosis::DegreeMismatch;
    return out;
  }
  if (graph.directed) {
    out.diagnosis = PairDiagnosis::Directed;
    return out;
  }
  if (!is_connected(graph)) {
    out.diagnosis = PairDiagnosis::NotConnected;
    return out;
  }
  for (const Perm& h : group.generators())
    if (!generator_preserves_edges(graph, h)) {
      out.diagnosis = PairDiagnosis::NotInvariant;
      return out;
    }
  if (!group.is_transitive()) {
    out.diagnosis = PairDiagnosis::NotTransitive;
    return out;
  }
  if (valency_max(graph) > d || valency_min(graph) != valency_max(graph)) {
    out.diagnosis = PairDiagnosis::ValencyExceedsBound;
    return out;
  }
  out.pair = VTPair{graph, group, d};
  return out;
}

}  // namespace vtsa
