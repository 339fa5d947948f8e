#pragma once

// Executable forms of the stabiliser-bounding results: certified comparison
// of a concrete vertex-stabiliser against a symbolic bound, the constructive
// witness behind the main bound (connected transversal, connection set,
// pointwise stabiliser, and the chain of inequalities tying them together),
// and the auxiliary product-decomposition bound for powers of a nonabelian
// simple group.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vtsa/bound_expr.hpp"
#include "vtsa/error.hpp"
#include "vtsa/graph.hpp"
#include "vtsa/group.hpp"
#include "vtsa/normal.hpp"

namespace vtsa {

// ---------------------------------------------------------------------------
// check_bounded: certify |G_alpha| <= bound for a vertex-transitive pair.

struct BoundednessCertificate {
  BoundCmp result = BoundCmp::Undecided;
  mpz_class stabiliser_order;
  bool bounded() const { return result == BoundCmp::LeCertain; }
};

inline BoundednessCertificate check_bounded(const VTPair& pair, const BoundExpr& bound) {
  BoundednessCertificate cert;
  cert.stabiliser_order = pair.group.point_stabiliser(0).order();
  cert.result = cmp_bound(bound, cert.stabiliser_order);
  return cert;
}

// ---------------------------------------------------------------------------
// theorem1_construct: for connected Gamma, vertex-transitive G <= Aut(Gamma)
// and a normal subgroup N with t orbits, build the objects the bound
//   |G_alpha| <= d^{t-1} (d t^2 f2)!     (f2 = max |N_beta|)
// is extracted from, and verify every intermediate inequality exactly:
//   * a transversal beta_1..beta_t of the N-orbits whose induced subgraph is
//     connected (beta_{i+1} adjacent to an earlier beta_j),
//   * the connection set S = { n in N : beta_i^n in Gamma(beta_j) for some
//     i, j }, with |S| <= d t^2 f2,
//   * H = G_{beta_1} cap ... cap G_{beta_t}, with |H| <= |S|! and
//     |G_alpha| <= d^{t-1} |H|.

struct Theorem1Witness {
  std::vector<Point> transversal;     // beta_1..beta_t, greedy least-first
  std::size_t t = 0;                  // number of N-orbits (the f1 value)
  std::size_t d = 0;                  // valency
  mpz_class f2 = 1;                   // max |N_beta| over the transversal
  std::vector<Perm> connection_set;   // S, sorted
  mpz_class s_bound;                  // d t^2 f2
  mpz_class h_order = 1;              // |H|
  mpz_class stabiliser_order = 1;     // |G_alpha|
  BoundExpr bound = BoundExpr::lit(1ul);  // d^{t-1} (d t^2 f2)!
  BoundCmp bound_cmp = BoundCmp::Undecided;  // stabiliser_order vs bound
  bool transversal_connected = false;
  bool s_generates_orbits = false;    // <S>-orbits coincide with N-orbits
  bool s_size_ok = false;             // |S| <= d t^2 f2
  bool h_le_s_factorial = false;      // |H| <= |S|!
  bool stabiliser_le_chain = false;   // |G_alpha| <= d^{t-1} |H|

  bool all_ok() const {
    return transversal_connected && s_generates_orbits && s_size_ok &&
           h_le_s_factorial && stabiliser_le_chain &&
           bound_cmp == BoundCmp::LeCertain;
  }
};

namespace detail {

// Canonical form of a partition of {0..n-1}: vertex -> least cell member.
inline std::vector<Point> partition_key(std::size_t n, const std::vector<std::vector<Point>>& cells) {
  std::vector<Point> key(n, 0);
  for (const auto& cell : cells) {
    Point least = *std::min_element(cell.begin(), cell.end());
    for (Point p : cell) key[p] = least;
  }
  return key;
}

}  // namespace detail

inline Theorem1Witness theorem1_construct(const Graph& gamma, const PermGroup& n,
                                          const PermGroup& g) {
  if (gamma.directed) throw InputError("theorem1_construct: graph must be undirected");
  if (!is_connected(gamma)) throw InputError("theorem1_construct: graph must be connected");
  if (g.degree() != gamma.vertex_count || n.degree() != gamma.vertex_count)
    throw InputError("theorem1_construct: group degree differs from vertex count");
  for (const Perm& h : g.generators())
    if (!generator_preserves_edges(gamma, h))
      throw InputError("theorem1_construct: G is not a group of automorphisms");
  if (!g.is_transitive())
    throw InputError("theorem1_construct: G must be vertex-transitive");
  if (!n.subgroup_of(g)) throw InputError("theorem1_construct: N is not a subgroup of G");
  for (const Perm& x : n.generators())
    for (const Perm& h : g.generators())
      if (!n.contains(x.conjugated_by(h)))
        throw InputError("theorem1_construct: N is not normal in G");

  Theorem1Witness w;
  w.d = valency_max(gamma);

  // N-orbits and the greedy connected transversal: start at vertex 0 and
  // repeatedly adjoin the least vertex adjacent to the chosen set whose
  // orbit is not yet represented.
  std::vector<std::vector<Point>> orbits = n.orbits();
  w.t = orbits.size();
  std::vector<std::size_t> orbit_of(gamma.vertex_count, 0);
  for (std::size_t i = 0; i < orbits.size(); ++i)
    for (Point p : orbits[i]) orbit_of[p] = i;

  std::vector<char> represented(w.t, 0);
  w.transversal.push_back(0);
  represented[orbit_of[0]] = 1;
  while (w.transversal.size() < w.t) {
    std::optional<Point> next;
    for (Point b : w.transversal)
      for (Point v : gamma.adjacency[b])
        if (!represented[orbit_of[v]] && (!next || v < *next)) next = v;
    if (!next)
      throw Error("theorem1_construct: transversal growth stalled with " +
                  std::to_string(w.transversal.size()) + " of " + std::to_string(w.t) +
                  " orbits represented (violates connectivity)");
    w.transversal.push_back(*next);
    represented[orbit_of[*next]] = 1;
  }

  // Connectivity of the induced subgraph on the transversal.
  {
    std::set<Point> in_t(w.transversal.begin(), w.transversal.end());
    std::set<Point> seen{w.transversal[0]};
    std::vector<Point> queue{w.transversal[0]};
    while (!queue.empty()) {
      Point u = queue.back();
      queue.pop_back();
      for (Point v : gamma.adjacency[u])
        if (in_t.count(v) && !seen.count(v)) {
          seen.insert(v);
          queue.push_back(v);
        }
    }
    w.transversal_connected = seen.size() == w.t;
  }

  // A = union of the transversal neighbourhoods; f2 = max |N_beta|.
  std::set<Point> a_set;
  for (Point b : w.transversal)
    for (Point v : gamma.adjacency[b]) a_set.insert(v);
  std::vector<PermGroup> beta_stabs;
  beta_stabs.reserve(w.t);
  for (Point b : w.transversal) {
    beta_stabs.push_back(n.point_stabiliser(b));
    if (beta_stabs.back().order() > w.f2) w.f2 = beta_stabs.back().order();
  }

  // S as a union of stabiliser cosets: for gamma0 in A lying in the orbit of
  // beta_i, every n with beta_i^n = gamma0 has the form h * u (apply h, then
  // u) with h in N_{beta_i} and u a fixed transversal element.
  std::set<Perm> s_set;
  for (std::size_t i = 0; i < w.t; ++i) {
    StabChain chain(n.degree(), n.generators(), {w.transversal[i]}, n.order());
    for (Point gamma0 : a_set) {
      if (orbit_of[gamma0] != orbit_of[w.transversal[i]]) continue;
      Perm u = chain.transversal(0, gamma0);
      beta_stabs[i].for_each_element([&](const Perm& h) {
        s_set.insert(h * u);
        return true;
      });
    }
  }
  w.connection_set.assign(s_set.begin(), s_set.end());

  // <S> must have exactly the N-orbits (this is what makes the local Cayley
  // picture connected on each orbit).
  w.s_generates_orbits =
      detail::partition_key(gamma.vertex_count,
                            PermGroup(n.degree(), w.connection_set).orbits()) ==
      detail::partition_key(gamma.vertex_count, orbits);

  // The three exact inequalities.
  w.s_bound = mpz_class(static_cast<unsigned long>(w.d)) *
              mpz_class(static_cast<unsigned long>(w.t)) *
              mpz_class(static_cast<unsigned long>(w.t)) * w.f2;
  w.s_size_ok = mpz_class(static_cast<unsigned long>(w.connection_set.size())) <= w.s_bound;

  PermGroup h_grp = g.pointwise_stabiliser(w.transversal);
  w.h_order = h_grp.order();
  mpz_class s_fact;
  mpz_fac_ui(s_fact.get_mpz_t(), static_cast<unsigned long>(w.connection_set.size()));
  w.h_le_s_factorial = w.h_order <= s_fact;

  w.stabiliser_order = g.point_stabiliser(0).order();
  mpz_class chain_bound;
  mpz_ui_pow_ui(chain_bound.get_mpz_t(), static_cast<unsigned long>(w.d),
                static_cast<unsigned long>(w.t - 1));
  chain_bound *= w.h_order;
  w.stabiliser_le_chain = w.stabiliser_order <= chain_bound;

  w.bound = f3(FuncTable::constant(static_cast<unsigned long>(w.t)),
               FuncTable::constant(w.f2), static_cast<unsigned long>(w.d));
  w.bound_cmp = cmp_bound(w.bound, w.stabiliser_order);
  return w;
}

// ---------------------------------------------------------------------------
// lemma_aux_check: T nonabelian simple, R < T proper, and k vectors
// m^(1)..m^(k) in T^l, each with at most c distinct entries.  If vectors
// n^(i) = y^(i) m^(i) z^(i) (entries of y, z in R) satisfy
// T^l = <n^(1)..n^(k)> R^l, then l <= c^k |R|^{2k}.  The hypothesis is
// decided exactly through the product order |U| |R^l| / |U cap R^l|.

struct LemmaAuxData {
  std::vector<std::vector<Perm>> m;  // k vectors of length l, entries in T
  std::vector<std::vector<Perm>> y;  // same shape, entries in R
  std::vector<std::vector<Perm>> z;  // same shape, entries in R
};

struct LemmaAuxReport {
  std::size_t l = 0;          // coordinates
  std::size_t k = 0;          // number of vectors
  std::size_t c = 0;          // distinct-entry cap (defaults to k)
  mpz_class product_order;    // |<n^(i)> R^l|
  mpz_class full_order;       // |T|^l
  bool hypothesis = false;    // product covers T^l
  mpz_class bound;            // c^k |R|^{2k}
  bool conclusion = false;    // l <= bound
  bool implication_ok = false;
};

namespace detail {

inline Perm embed_block(const Perm& p, std::size_t block, std::size_t block_count) {
  std::size_t deg = p.degree();
  std::vector<Point> img(deg * block_count);
  for (std::size_t j = 0; j < block_count; ++j)
    for (Point x = 0; x < deg; ++x)
      img[j * deg + x] = static_cast<Point>(j * deg + (j == block ? p[x] : x));
  return Perm(std::move(img));
}

inline Perm embed_vector(const std::vector<Perm>& row) {
  std::size_t deg = row[0].degree();
  std::vector<Point> img(deg * row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    for (Point x = 0; x < deg; ++x)
      img[j * deg + x] = static_cast<Point>(j * deg + row[j][x]);
  return Perm(std::move(img));
}

}  // namespace detail

inline constexpr unsigned long kLemmaSimpleOrderCap = 360;

inline LemmaAuxReport lemma_aux_check(const PermGroup& t_grp, const PermGroup& r_grp,
                                      const LemmaAuxData& data,
                                      std::optional<std::size_t> entry_cap = std::nullopt) {
  if (t_grp.order() > kLemmaSimpleOrderCap)
    throw CapError("lemma_aux_check: |T| exceeds the scale cap " +
                   std::to_string(kLemmaSimpleOrderCap));
  if (is_abelian(t_grp) || !is_simple(t_grp))
    throw InputError("lemma_aux_check: T must be nonabelian simple");
  if (r_grp.degree() != t_grp.degree() || !r_grp.subgroup_of(t_grp) ||
      r_grp.order() >= t_grp.order())
    throw InputError("lemma_aux_check: R must be a proper subgroup of T");

  LemmaAuxReport rep;
  rep.k = data.m.size();
  if (rep.k == 0) throw InputError("lemma_aux_check: need at least one vector");
  rep.l = data.m[0].size();
  if (rep.l == 0) throw InputError("lemma_aux_check: vectors must have length >= 1");
  if (data.y.size() != rep.k || data.z.size() != rep.k)
    throw InputError("lemma_aux_check: m, y, z must have the same number of vectors");
  rep.c = entry_cap.value_or(rep.k);
  if (rep.c == 0) throw InputError("lemma_aux_check: entry cap must be >= 1");

  for (std::size_t i = 0; i < rep.k; ++i) {
    if (data.m[i].size() != rep.l || data.y[i].size() != rep.l || data.z[i].size() != rep.l)
      throw InputError("lemma_aux_check: all vectors must have length " + std::to_string(rep.l));
    std::set<Perm> distinct(data.m[i].begin(), data.m[i].end());
    if (distinct.size() > rep.c)
      throw InputError("lemma_aux_check: m^(" + std::to_string(i + 1) + ") has " +
                       std::to_string(distinct.size()) + " distinct entries, cap is " +
                       std::to_string(rep.c));
    for (const Perm& p : data.m[i])
      if (!t_grp.contains(p))
        throw InputError("lemma_aux_check: an entry of m lies outside T");
    for (const Perm& p : data.y[i])
      if (!r_grp.contains(p))
        throw InputError("lemma_aux_check: an entry of y lies outside R");
    for (const Perm& p : data.z[i])
      if (!r_grp.contains(p))
        throw InputError("lemma_aux_check: an entry of z lies outside R");
  }

  // n^(i) = y^(i) m^(i) z^(i) componentwise; embed T^l on l * deg(T) points.
  std::vector<Perm> u_gens;
  for (std::size_t i = 0; i < rep.k; ++i) {
    std::vector<Perm> row;
    row.reserve(rep.l);
    for (std::size_t j = 0; j < rep.l; ++j)
      row.push_back(data.y[i][j] * data.m[i][j] * data.z[i][j]);
    u_gens.push_back(detail::embed_vector(row));
  }
  std::size_t big_degree = rep.l * t_grp.degree();
  PermGroup u_grp(big_degree, u_gens);

  std::vector<Perm> rl_gens;
  for (std::size_t j = 0; j < rep.l; ++j)
    for (const Perm& h : r_grp.generators())
      rl_gens.push_back(detail::embed_block(h, j, rep.l));
  PermGroup rl_grp(big_degree, rl_gens);

  rl_grp.require_enumerable("lemma_aux_check");
  unsigned long inter = 0;
  rl_grp.for_each_element([&](const Perm& p) {
    if (u_grp.contains(p)) ++inter;
    return true;
  });
  if (inter == 0) throw Error("lemma_aux_check: intersection lost the identity");

  rep.product_order = u_grp.order() * rl_grp.order();
  if (!mpz_divisible_ui_p(rep.product_order.get_mpz_t(), inter))
    throw Error("lemma_aux_check: intersection order does not divide the product");
  rep.product_order /= mpz_class(inter);
  mpz_pow_ui(rep.full_order.get_mpz_t(), t_grp.order().get_mpz_t(),
             static_cast<unsigned long>(rep.l));
  rep.hypothesis = rep.product_order == rep.full_order;

  mpz_class c_pow, r_pow;
  mpz_ui_pow_ui(c_pow.get_mpz_t(), static_cast<unsigned long>(rep.c),
                static_cast<unsigned long>(rep.k));
  mpz_pow_ui(r_pow.get_mpz_t(), r_grp.order().get_mpz_t(),
             static_cast<unsigned long>(2 * rep.k));
  rep.bound = c_pow * r_pow;
  rep.conclusion = mpz_class(static_cast<unsigned long>(rep.l)) <= rep.bound;
  rep.implication_ok = !rep.hypothesis || rep.conclusion;
  return rep;
}

}  // namespace vtsa
