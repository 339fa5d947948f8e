#pragma once

// Shared named constructions for the test suites.

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "vtsa/graph.hpp"
#include "vtsa/group.hpp"
#include "vtsa/perm.hpp"

namespace corpus {

using vtsa::Perm;
using vtsa::PermGroup;
using vtsa::Point;

inline Perm cyc(std::size_t degree, const std::vector<std::vector<Point>>& cycles) {
  return Perm::from_cycles(degree, cycles);
}

inline PermGroup cyclic(std::size_t n) {
  std::vector<Point> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>(i);
  return PermGroup(n, {cyc(n, {c})});
}

inline PermGroup dihedral(std::size_t n) {  // order 2n on n points
  std::vector<Point> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>(i);
  std::vector<Point> refl(n);
  for (std::size_t i = 0; i < n; ++i) refl[i] = static_cast<Point>((n - i) % n);
  return PermGroup(n, {cyc(n, {c}), Perm(refl)});
}

inline PermGroup symmetric(std::size_t n) {
  if (n < 2) return PermGroup(n, {});
  std::vector<Point> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<Point>(i);
  return PermGroup(n, {cyc(n, {{0, 1}}), cyc(n, {c})});
}

inline PermGroup alternating(std::size_t n) {
  if (n < 3) return PermGroup(n, {});
  if (n == 3) return PermGroup(3, {cyc(3, {{0, 1, 2}})});
  std::vector<Point> c;
  if (n % 2 == 1) {
    for (std::size_t i = 0; i < n; ++i) c.push_back(static_cast<Point>(i));
  } else {
    for (std::size_t i = 1; i < n; ++i) c.push_back(static_cast<Point>(i));
  }
  return PermGroup(n, {cyc(n, {{0, 1, 2}}), cyc(n, {c})});
}

inline PermGroup klein_on_c4() {
  return PermGroup(4, {cyc(4, {{0, 1}, {2, 3}}), cyc(4, {{0, 2}, {1, 3}})});
}

// C2^k : Sym(k) acting on the k-cube's 2^k vertices (bitmask coordinates).
inline PermGroup hypercube_group(unsigned k) {
  std::size_t n = std::size_t{1} << k;
  std::vector<Perm> gens;
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Point> img(n);
    for (std::size_t v = 0; v < n; ++v) img[v] = static_cast<Point>(v ^ (1u << i));
    gens.emplace_back(img);
  }
  auto bitperm = [&](const std::vector<unsigned>& to) {
    std::vector<Point> img(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t w = 0;
      for (unsigned b = 0; b < k; ++b)
        if (v >> b & 1) w |= std::size_t{1} << to[b];
      img[v] = static_cast<Point>(w);
    }
    return Perm(img);
  };
  if (k >= 2) {
    std::vector<unsigned> swap01(k);
    for (unsigned b = 0; b < k; ++b) swap01[b] = b;
    swap01[0] = 1;
    swap01[1] = 0;
    gens.push_back(bitperm(swap01));
  }
  if (k >= 3) {
    std::vector<unsigned> rot(k);
    for (unsigned b = 0; b < k; ++b) rot[b] = (b + 1) % k;
    gens.push_back(bitperm(rot));
  }
  return PermGroup(n, gens);
}

// Translations C2^k of the k-cube.
inline PermGroup hypercube_translations(unsigned k) {
  std::size_t n = std::size_t{1} << k;
  std::vector<Perm> gens;
  for (unsigned i = 0; i < k; ++i) {
    std::vector<Point> img(n);
    for (std::size_t v = 0; v < n; ++v) img[v] = static_cast<Point>(v ^ (1u << i));
    gens.emplace_back(img);
  }
  return PermGroup(n, gens);
}

// Vertex numbering of the lexicographic product X[Y]: (x, y) -> x * |VY| + y.
// Automorphisms of C_n[K_2]: per-fibre swaps (base group C2^n) extended by the
// dihedral group of the cycle.
inline PermGroup lex_cycle_k2_group(std::size_t n) {
  std::size_t deg = 2 * n;
  std::vector<Perm> gens;
  gens.push_back(cyc(deg, {{0, 1}}));  // swap within fibre 0
  std::vector<Point> rot(deg), refl(deg);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < 2; ++y) {
      rot[2 * x + y] = static_cast<Point>(2 * ((x + 1) % n) + y);
      refl[2 * x + y] = static_cast<Point>(2 * ((n - x) % n) + y);
    }
  gens.emplace_back(rot);
  gens.emplace_back(refl);
  return PermGroup(deg, gens);
}

inline PermGroup lex_cycle_k2_base(std::size_t n) {
  std::size_t deg = 2 * n;
  std::vector<Perm> gens;
  for (std::size_t x = 0; x < n; ++x)
    gens.push_back(cyc(deg, {{static_cast<Point>(2 * x), static_cast<Point>(2 * x + 1)}}));
  return PermGroup(deg, gens);
}

// H x H on an m x m grid ((r, c) -> r * m + c), first factor on rows, second
// on columns; with_swap adds the coordinate transposition (product action of
// the wreath product H wr Sym(2)).
inline PermGroup grid_group(const PermGroup& h, bool with_swap) {
  std::size_t m = h.degree(), n = m * m;
  std::vector<Perm> gens;
  for (const Perm& g : h.generators()) {
    std::vector<Point> a(n), b(n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) {
        a[r * m + c] = static_cast<Point>(g[static_cast<Point>(r)] * m + c);
        b[r * m + c] = static_cast<Point>(r * m + g[static_cast<Point>(c)]);
      }
    gens.emplace_back(a);
    gens.emplace_back(b);
  }
  if (with_swap) {
    std::vector<Point> s(n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) s[r * m + c] = static_cast<Point>(c * m + r);
    gens.emplace_back(s);
  }
  return PermGroup(n, gens);
}

// Sym(5) acting on the ten 2-subsets of {0..4}; subsets indexed in
// lexicographic order {0,1} < {0,2} < ... < {3,4}.
inline std::vector<std::pair<Point, Point>> two_subsets_of_5() {
  std::vector<std::pair<Point, Point>> subs;
  for (Point i = 0; i < 5; ++i)
    for (Point j = i + 1; j < 5; ++j) subs.push_back({i, j});
  return subs;
}

inline PermGroup sym5_on_2subsets(bool alternating_only = false) {
  auto subs = two_subsets_of_5();
  auto index_of = [&](Point a, Point b) {
    if (a > b) std::swap(a, b);
    for (std::size_t k = 0; k < subs.size(); ++k)
      if (subs[k].first == a && subs[k].second == b) return static_cast<Point>(k);
    throw std::logic_error("subset index");
  };
  PermGroup s5 = alternating_only ? alternating(5) : symmetric(5);
  std::vector<Perm> gens;
  for (const Perm& g : s5.generators()) {
    std::vector<Point> img(subs.size());
    for (std::size_t k = 0; k < subs.size(); ++k)
      img[k] = index_of(g[subs[k].first], g[subs[k].second]);
    gens.emplace_back(img);
  }
  return PermGroup(subs.size(), gens);
}

inline vtsa::Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<Point, Point>> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({static_cast<Point>(i), static_cast<Point>((i + 1) % n)});
  return vtsa::make_graph(n, edges, false);
}

inline vtsa::Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Point, Point>> edges;
  for (Point i = 0; i < n; ++i)
    for (Point j = i + 1; j < n; ++j) edges.push_back({i, j});
  return vtsa::make_graph(n, edges, false);
}

inline vtsa::Graph edgeless_graph(std::size_t n) { return vtsa::make_graph(n, {}, false); }

// Parts {0..a-1} and {a..a+b-1}.
inline vtsa::Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<std::pair<Point, Point>> edges;
  for (Point i = 0; i < a; ++i)
    for (Point j = 0; j < b; ++j) edges.push_back({i, static_cast<Point>(a + j)});
  return vtsa::make_graph(a + b, edges, false);
}

inline vtsa::Graph petersen_graph() {
  return vtsa::orbital_graph(sym5_on_2subsets(), 0, 9, false);  // {0,1} -> {3,4}
}

// Automorphisms of K_{3,3} preserving-or-swapping the parts, order 72.
inline PermGroup k33_group() {
  return PermGroup(6, {cyc(6, {{0, 1, 2}}), cyc(6, {{0, 1}}), cyc(6, {{3, 4, 5}}),
                       cyc(6, {{3, 4}}), cyc(6, {{0, 3}, {1, 4}, {2, 5}})});
}

// k-cube graph on bitmask vertices; edges flip a single coordinate.
inline vtsa::Graph cube_graph(unsigned k) {
  std::size_t n = std::size_t{1} << k;
  std::vector<std::pair<Point, Point>> edges;
  for (Point v = 0; v < n; ++v)
    for (unsigned b = 0; b < k; ++b)
      if (!(v & (Point{1} << b))) edges.push_back({v, static_cast<Point>(v | (Point{1} << b))});
  return vtsa::make_graph(n, edges, false);
}

// Translation of the k-cube by a fixed mask.
inline Perm hypercube_translation(unsigned k, Point mask) {
  std::size_t n = std::size_t{1} << k;
  std::vector<Point> im(n);
  for (Point v = 0; v < n; ++v) im[v] = v ^ mask;
  return Perm(im);
}

// Rook's graph K_m x K_m on the m x m grid ((r, c) -> r * m + c): vertices
// adjacent when they share exactly one coordinate.
inline vtsa::Graph rook_graph(std::size_t m) {
  std::vector<std::pair<Point, Point>> edges;
  for (Point r = 0; r < m; ++r)
    for (Point c = 0; c < m; ++c) {
      Point v = static_cast<Point>(r * m + c);
      for (Point c2 = c + 1; c2 < m; ++c2)
        edges.push_back({v, static_cast<Point>(r * m + c2)});
      for (Point r2 = r + 1; r2 < m; ++r2)
        edges.push_back({v, static_cast<Point>(r2 * m + c)});
    }
  return vtsa::make_graph(m * m, edges, false);
}

// Embed a degree-m permutation into the m x m grid, acting on the row
// coordinate (on_rows) or the column coordinate.
inline Perm grid_embed(const Perm& s, bool on_rows) {
  std::size_t m = s.degree();
  std::vector<Point> im(m * m);
  for (Point r = 0; r < m; ++r)
    for (Point c = 0; c < m; ++c)
      im[r * m + c] = on_rows ? static_cast<Point>(s[r] * m + c)
                              : static_cast<Point>(r * m + s[c]);
  return Perm(im);
}

// Validated vertex-transitive pair; throws on any diagnosis.
inline vtsa::VTPair checked_pair(const vtsa::Graph& g, const PermGroup& grp,
                                 std::size_t d) {
  auto pv = vtsa::validate_pair(g, grp, d);
  if (!pv.ok())
    throw vtsa::Error(std::string("corpus pair rejected: ") + vtsa::to_string(pv.diagnosis));
  return *pv.pair;
}

// C_n[K_2] with its full automorphism group (order 2^n * 2n), valency 5.
inline vtsa::VTPair lex_cycle_k2_pair(std::size_t n) {
  return checked_pair(vtsa::lexicographic_product(cycle_graph(n), complete_graph(2)),
                      lex_cycle_k2_group(n), 5);
}

// Twisted double of the natural Alt(5) action: halves {0..4} and {5..9},
// diagonal embedding a -> (a, a^t) for the transposition t = (0 1), plus the
// half swap; order 120.  The graph joins i to 5+j unless j = i^t, so each
// vertex misses exactly one far vertex (valency 4).  The group acts
// biquasiprimitively and a vertex stabiliser (Alt(4) diagonally) is
// intransitive on the far half.
inline Perm a5_twist(const Perm& a) {
  auto tau = [](Point p) -> Point { return p == 0 ? 1 : p == 1 ? Point{0} : p; };
  std::vector<Point> img(5);
  for (Point i = 0; i < 5; ++i) img[i] = tau(a[tau(i)]);
  return Perm(img);
}

inline PermGroup a5_twisted_double_group() {
  const PermGroup a5 = alternating(5);
  std::vector<Perm> gens;
  for (const Perm& a : a5.generators()) {
    Perm b = a5_twist(a);
    std::vector<Point> img(10);
    for (Point i = 0; i < 5; ++i) {
      img[i] = a[i];
      img[5 + i] = static_cast<Point>(5 + b[i]);
    }
    gens.emplace_back(img);
  }
  std::vector<Point> sw(10);
  for (Point i = 0; i < 5; ++i) {
    sw[i] = static_cast<Point>(5 + i);
    sw[5 + i] = i;
  }
  gens.emplace_back(sw);
  return PermGroup(10, gens);
}

inline vtsa::Graph a5_twisted_double_graph() {
  auto tau = [](Point p) -> Point { return p == 0 ? 1 : p == 1 ? Point{0} : p; };
  std::vector<std::pair<Point, Point>> edges;
  for (Point i = 0; i < 5; ++i)
    for (Point j = 0; j < 5; ++j)
      if (j != tau(i)) edges.push_back({i, static_cast<Point>(5 + j)});
  return vtsa::make_graph(10, edges, false);
}

inline vtsa::VTPair a5_twisted_double_pair() {
  return checked_pair(a5_twisted_double_graph(), a5_twisted_double_group(), 4);
}

// Twisted double of the 5x5 coordinate action of Alt(5) x Alt(5): the two
// halves carry the grid with the factor roles exchanged (the half swap
// conjugates one coordinate factor onto the other), and (i,j) on the first
// half joins (k,m) on the second exactly when one cross pairing matches:
// i = m xor j = k (valency 8).  Order 7200; the induced half group
// Alt(5) x Alt(5) is not quasiprimitive on the grid.
inline PermGroup grid_twisted_double_group() {
  const PermGroup a5 = alternating(5);
  std::vector<Perm> gens;
  for (const Perm& a : a5.generators()) {
    std::vector<Point> e1(50), e2(50);
    for (Point i = 0; i < 5; ++i)
      for (Point j = 0; j < 5; ++j) {
        const std::size_t v = 5u * i + j;
        e1[v] = static_cast<Point>(5 * a[i] + j);
        e1[25 + v] = static_cast<Point>(25 + 5 * i + a[j]);
        e2[v] = static_cast<Point>(5 * i + a[j]);
        e2[25 + v] = static_cast<Point>(25 + 5 * a[i] + j);
      }
    gens.emplace_back(e1);
    gens.emplace_back(e2);
  }
  std::vector<Point> sw(50);
  for (Point v = 0; v < 25; ++v) {
    sw[v] = static_cast<Point>(25 + v);
    sw[25 + v] = v;
  }
  gens.emplace_back(sw);
  return PermGroup(50, gens);
}

inline vtsa::Graph grid_twisted_double_graph() {
  std::vector<std::pair<Point, Point>> edges;
  for (Point i = 0; i < 5; ++i)
    for (Point j = 0; j < 5; ++j)
      for (Point k = 0; k < 5; ++k)
        for (Point m = 0; m < 5; ++m)
          if ((i == m) != (j == k))
            edges.push_back({static_cast<Point>(5 * i + j),
                             static_cast<Point>(25 + 5 * k + m)});
  return vtsa::make_graph(50, edges, false);
}

inline vtsa::VTPair grid_twisted_double_pair() {
  return checked_pair(grid_twisted_double_graph(), grid_twisted_double_group(), 8);
}

// Alt(5) x Alt(5) extended by inversion, acting on the 60 elements of
// Alt(5) by left and right translation (order 7200).  The socle is the
// translation product; neither translation factor is normal in the full
// group, and each factor alone is regular on the vertices.
inline std::vector<Perm> a5_sorted_elements() {
  std::vector<Perm> elems = alternating(5).elements();
  std::sort(elems.begin(), elems.end());
  return elems;
}

inline PermGroup a5_diag_square_group() {
  const std::vector<Perm> elems = a5_sorted_elements();
  const PermGroup a5 = alternating(5);
  std::map<Perm, Point> idx;
  for (std::size_t i = 0; i < elems.size(); ++i) idx[elems[i]] = static_cast<Point>(i);
  std::vector<Perm> gens;
  for (const Perm& a : a5.generators()) {
    std::vector<Point> left(60), right(60);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      left[i] = idx.at(a * elems[i]);
      right[i] = idx.at(elems[i] * a);
    }
    gens.emplace_back(left);
    gens.emplace_back(right);
  }
  std::vector<Point> inv(60);
  for (std::size_t i = 0; i < elems.size(); ++i) inv[i] = idx.at(elems[i].inverse());
  gens.emplace_back(inv);
  return PermGroup(60, gens);
}

// Edges join x to y when x^{-1} y is an involution; valency 15 (the number
// of involutions of Alt(5)), connected since the involutions generate.
inline vtsa::Graph a5_involution_cayley_graph() {
  const std::vector<Perm> elems = a5_sorted_elements();
  std::vector<std::pair<Point, Point>> edges;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const Perm q = elems[i].inverse() * elems[j];
      if (!q.is_identity() && (q * q).is_identity())
        edges.push_back({static_cast<Point>(i), static_cast<Point>(j)});
    }
  return vtsa::make_graph(60, edges, false);
}

inline vtsa::VTPair a5_diag_square_pair() {
  return checked_pair(a5_involution_cayley_graph(), a5_diag_square_group(), 15);
}

}  // namespace corpus
