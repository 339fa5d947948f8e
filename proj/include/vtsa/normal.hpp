#pragma once

// Normal structure of permutation groups: normal closures, conjugacy
// classes, minimal normal subgroups, socle decomposition, 1-closure,
// actions induced on invariant partitions, and the primitivity /
// quasiprimitivity predicates.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vtsa/error.hpp"
#include "vtsa/group.hpp"
#include "vtsa/perm.hpp"

namespace vtsa {

// Compact byte key for an image vector (map/set keys during enumeration).
inline std::string element_key(const Perm& p) {
  const auto& im = p.images();
  std::string s;
  if (p.degree() <= 256) {
    s.resize(im.size());
    for (std::size_t i = 0; i < im.size(); ++i) s[i] = static_cast<char>(im[i]);
  } else {
    s.resize(4 * im.size());
    for (std::size_t i = 0; i < im.size(); ++i)
      for (int b = 0; b < 4; ++b) s[4 * i + b] = static_cast<char>(im[i] >> (8 * b));
  }
  return s;
}

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<Point>(i);
  }
  Point find(Point x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(Point a, Point b) {  // true if two classes merged
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep least point as representative
    parent_[b] = a;
    return true;
  }

private:
  std::vector<Point> parent_;
};

// Orbits of the normal closure of `seeds` in G, computed without building
// the subgroup: the finest G-invariant partition in which every point lies
// in the same cell as its seed-images.  (Each forced merge is propagated
// through every generator, so the result is G-invariant; conversely every
// performed merge is implied by closure-invariance, so it is the finest.)
inline std::vector<std::vector<Point>> closure_orbits(const PermGroup& g,
                                                      const std::vector<Perm>& seeds) {
  std::size_t n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> work;
  auto unite = [&](Point a, Point b) {
    if (uf.unite(a, b)) work.push_back({a, b});
  };
  for (const Perm& s : seeds) {
    if (s.degree() != n) throw InputError("closure_orbits: seed degree mismatch");
    for (Point p = 0; p < n; ++p) unite(p, s[p]);
  }
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (const Perm& h : g.generators()) unite(h[x], h[y]);
  }
  std::vector<std::vector<Point>> cells(n);
  for (Point p = 0; p < n; ++p) cells[uf.find(p)].push_back(p);
  cells.erase(std::remove_if(cells.begin(), cells.end(),
                             [](const auto& c) { return c.empty(); }),
              cells.end());
  sort_cells(cells);
  return cells;
}

inline std::size_t closure_orbit_count(const PermGroup& g, const Perm& seed) {
  std::size_t n = g.degree();
  UnionFind uf(n);
  std::size_t cells = n;
  std::vector<std::pair<Point, Point>> work;
  auto unite = [&](Point a, Point b) {
    if (uf.unite(a, b)) {
      work.push_back({a, b});
      --cells;
    }
  };
  for (Point p = 0; p < n; ++p) unite(p, seed[p]);
  while (!work.empty() && cells > 1) {
    auto [x, y] = work.back();
    work.pop_back();
    for (const Perm& h : g.generators()) unite(h[x], h[y]);
  }
  return cells;
}

// Smallest normal subgroup of G containing the seeds.
inline PermGroup normal_closure(const PermGroup& g, const std::vector<Perm>& seeds) {
  std::size_t n = g.degree();
  std::vector<Perm> cl;
  for (const Perm& s : seeds) {
    if (!g.contains(s))
      throw InputError("normal_closure: seed is not a member of the group");
    if (!s.is_identity()) cl.push_back(s);
  }
  if (cl.empty()) return PermGroup(n, {});
  for (;;) {
    StabChain chain(n, cl, {}, std::nullopt);
    std::vector<Perm> missing;
    auto consider = [&](const Perm& t) {
      if (!chain.contains(t)) {
        for (const Perm& m : missing)
          if (m == t) return;
        missing.push_back(t);
      }
    };
    for (const Perm& c : cl)
      for (const Perm& h : g.generators()) consider(c.conjugated_by(h));
    if (missing.empty())
      return PermGroup(n, std::move(cl), chain.order());
    for (Perm& m : missing) cl.push_back(std::move(m));
  }
}

// Representatives of the nonidentity conjugacy classes: the lexicographically
// least element of each class, listed in increasing order.  Enumerates the
// group, so it is gated by the element budget.
inline std::vector<Perm> nonidentity_class_reps(const PermGroup& g) {
  g.require_enumerable("conjugacy class enumeration");
  std::vector<Perm> elems = g.elements();
  std::unordered_map<std::string, std::size_t> index;
  index.reserve(elems.size() * 2);
  for (std::size_t i = 0; i < elems.size(); ++i) index[element_key(elems[i])] = i;
  std::vector<char> seen(elems.size(), 0);
  std::vector<Perm> reps;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (seen[i] || elems[i].is_identity()) continue;
    std::size_t best = i;
    std::vector<std::size_t> queue{i};
    seen[i] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Perm& x = elems[queue[qi]];
      for (const Perm& h : g.generators()) {
        std::size_t j = index.at(element_key(x.conjugated_by(h)));
        if (!seen[j]) {
          seen[j] = 1;
          if (elems[j] < elems[best]) best = j;
          queue.push_back(j);
        }
      }
    }
    reps.push_back(elems[best]);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

inline bool is_abelian(const PermGroup& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (gens[i] * gens[j] != gens[j] * gens[i]) return false;
  return true;
}

// A group is simple iff the normal closure of every nonidentity element is
// the whole group; testing one element per conjugacy class suffices because
// conjugate elements have equal closures.
inline bool is_simple(const PermGroup& g) {
  if (g.is_trivial()) return false;
  for (const Perm& r : nonidentity_class_reps(g))
    if (normal_closure(g, {r}).order() != g.order()) return false;
  return true;
}

// Deterministic sort key for subgroup lists: (order, generator images).
inline void sort_subgroups(std::vector<PermGroup>& gs) {
  auto key = [](const PermGroup& g) {
    std::vector<std::vector<Point>> imgs;
    for (const Perm& p : g.generators()) imgs.push_back(p.images());
    return imgs;
  };
  std::stable_sort(gs.begin(), gs.end(), [&](const PermGroup& a, const PermGroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return key(a) < key(b);
  });
}

// Minimal normal subgroups: the minimal-by-inclusion members of the set of
// normal closures of single nonidentity class representatives.  (Every
// nontrivial normal subgroup contains such a closure, and a minimal normal
// subgroup is the closure of each of its nonidentity elements, so this set
// of minimal members is exactly the set of minimal normal subgroups.)
inline std::vector<PermGroup> minimal_normal_subgroups(const PermGroup& g) {
  std::vector<PermGroup> closures;
  for (const Perm& r : nonidentity_class_reps(g)) {
    PermGroup n = normal_closure(g, {r});
    bool dup = false;
    for (const PermGroup& m : closures)
      if (m.order() == n.order() && n.subgroup_of(m)) {
        dup = true;
        break;
      }
    if (!dup) closures.push_back(std::move(n));
  }
  std::vector<PermGroup> minimal;
  for (const PermGroup& n : closures) {
    bool has_smaller = false;
    for (const PermGroup& m : closures)
      if (m.order() < n.order() && m.subgroup_of(n)) {
        has_smaller = true;
        break;
      }
    if (!has_smaller) minimal.push_back(n);
  }
  sort_subgroups(minimal);
  return minimal;
}

struct SocleDecomposition {
  PermGroup socle;
  std::vector<PermGroup> factors;  // simple direct factors T_1..T_l
  mpz_class socle_factor_order;    // |T|
  std::size_t l = 0;
  bool abelian = false;
};

namespace detail {

// order == p^k for prime p?  Orders here are tiny (abelian socles at desk
// scale), so trial division is plenty.
inline std::optional<std::pair<unsigned long, unsigned>> prime_power(mpz_class v) {
  if (v < 2) return std::nullopt;
  unsigned long p = 2;
  while (mpz_class(p) * p <= v) {
    if (v % p == 0) break;
    ++p;
  }
  if (v % p != 0) p = static_cast<unsigned long>(v.get_ui());  // v itself prime
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  if (v != 1) return std::nullopt;
  return std::make_pair(p, k);
}

// Greedy basis of an elementary abelian p-group given as a PermGroup.
inline std::vector<Perm> elementary_basis(const PermGroup& s, unsigned long p) {
  std::vector<Perm> basis;
  std::vector<Perm> span{Perm(s.degree())};
  std::map<std::string, char> in_span{{element_key(span[0]), 1}};
  for (const Perm& e : s.elements()) {
    if (in_span.count(element_key(e))) continue;
    basis.push_back(e);
    std::vector<Perm> grown = span;
    Perm power = e;
    for (unsigned long j = 1; j < p; ++j) {
      for (const Perm& x : span) {
        Perm y = x * power;
        grown.push_back(y);
        in_span[element_key(y)] = 1;
      }
      power = power * e;
    }
    span = std::move(grown);
  }
  return basis;
}

}  // namespace detail

// Socle = product of the minimal normal subgroups; factors are a direct
// decomposition into simple groups (the minimal normal subgroups of the
// socle in the nonabelian case, a greedy elementary-abelian basis in the
// abelian case).  A socle whose simple factors do not all have the same
// order is reported as an input error; it cannot arise for the transitive
// group classes this toolkit analyses.
inline SocleDecomposition socle(const PermGroup& g) {
  SocleDecomposition out;
  std::vector<PermGroup> mins = minimal_normal_subgroups(g);
  if (mins.empty()) {  // trivial group; degenerate but well-defined
    out.socle = PermGroup(g.degree(), {});
    out.socle_factor_order = 1;
    out.abelian = true;
    return out;
  }
  std::vector<Perm> gens;
  for (const PermGroup& n : mins)
    for (const Perm& p : n.generators()) gens.push_back(p);
  out.socle = PermGroup(g.degree(), std::move(gens));

  bool all_abelian = true, any_abelian = false;
  for (const PermGroup& n : mins) {
    bool ab = is_abelian(n);
    all_abelian = all_abelian && ab;
    any_abelian = any_abelian || ab;
  }
  if (any_abelian && !all_abelian)
    throw InputError("socle: mixed abelian and nonabelian minimal normal subgroups "
                     "(non-homogeneous socle)");

  if (all_abelian) {
    auto pk = detail::prime_power(out.socle.order());
    if (!pk)
      throw InputError("socle: abelian socle is not a p-group (non-homogeneous socle)");
    unsigned long p = pk->first;
    for (const Perm& b : detail::elementary_basis(out.socle, p))
      out.factors.emplace_back(g.degree(), std::vector<Perm>{b}, mpz_class(p));
    out.abelian = true;
    out.socle_factor_order = p;
    out.l = out.factors.size();
  } else {
    out.factors = minimal_normal_subgroups(out.socle);
    out.abelian = false;
    out.socle_factor_order = out.factors.front().order();
    out.l = out.factors.size();
    mpz_class prod = 1;
    for (const PermGroup& t : out.factors) {
      if (t.order() != out.socle_factor_order)
        throw InputError("socle: simple factors of unequal order (non-homogeneous socle)");
      if (!is_simple(t))
        throw InputError("socle: factor failed the simplicity check");
      prod *= t.order();
    }
    if (prod != out.socle.order())
      throw InputError("socle: factors do not decompose the socle directly");
    // Factors of a direct decomposition must commute elementwise.
    for (std::size_t i = 0; i < out.factors.size(); ++i)
      for (std::size_t j = i + 1; j < out.factors.size(); ++j)
        for (const Perm& x : out.factors[i].generators())
          for (const Perm& y : out.factors[j].generators())
            if (x * y != y * x)
              throw InputError("socle: factors do not commute elementwise");
  }
  return out;
}

struct InducedAction {
  PermGroup image;   // action on block indices
  PermGroup kernel;  // elements fixing every block setwise
};

// Action induced by G on an invariant partition, with its exact kernel.
// The kernel is extracted from a chain over the extended domain
// points + block symbols whose base starts with the block symbols.
inline InducedAction induced_action(const PermGroup& g,
                                    const std::vector<std::vector<Point>>& blocks) {
  std::size_t n = g.degree(), m = blocks.size();
  std::vector<std::int32_t> bid(n, -1);
  for (std::size_t b = 0; b < m; ++b) {
    if (blocks[b].empty()) throw InputError("induced_action: empty block");
    for (Point p : blocks[b]) {
      if (p >= n || bid[p] >= 0)
        throw InputError("induced_action: blocks are not a partition of the domain");
      bid[p] = static_cast<std::int32_t>(b);
    }
  }
  for (Point p = 0; p < n; ++p)
    if (bid[p] < 0) throw InputError("induced_action: blocks are not a partition of the domain");

  // Invariance + the induced block permutation of every generator.
  std::vector<Perm> image_gens;
  for (const Perm& h : g.generators()) {
    std::vector<Point> ih(m);
    std::vector<char> hit(m, 0);
    for (std::size_t b = 0; b < m; ++b) {
      Point target = static_cast<Point>(bid[h[blocks[b][0]]]);
      for (Point p : blocks[b])
        if (static_cast<Point>(bid[h[p]]) != target)
          throw InputError("induced_action: partition is not invariant under the group");
      ih[b] = target;
      hit[target] = 1;
    }
    for (std::size_t b = 0; b < m; ++b)
      if (!hit[b]) throw InputError("induced_action: partition is not invariant under the group");
    image_gens.emplace_back(ih);
  }

  // Extended domain: original points, then one symbol per block.
  std::vector<Perm> ext_gens;
  const auto& gens = g.generators();
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<Point> img(n + m);
    for (Point p = 0; p < n; ++p) img[p] = gens[gi][p];
    for (std::size_t b = 0; b < m; ++b)
      img[n + b] = static_cast<Point>(n + image_gens[gi][static_cast<Point>(b)]);
    ext_gens.emplace_back(img);
  }
  std::vector<Point> prefix(m);
  for (std::size_t b = 0; b < m; ++b) prefix[b] = static_cast<Point>(n + b);
  StabChain ext(n + m, ext_gens, prefix, g.order());

  mpz_class kernel_order = 1;
  for (std::size_t j = m; j < ext.levels().size(); ++j)
    kernel_order *= static_cast<unsigned long>(ext.levels()[j].orbit.size());
  std::vector<Perm> kernel_gens;
  for (const Perm& s : ext.strong_generators_from(m)) {
    std::vector<Point> img(s.images().begin(), s.images().begin() + n);
    kernel_gens.emplace_back(img);
  }

  InducedAction out{PermGroup(m, std::move(image_gens), g.order() / kernel_order),
                    PermGroup(n, std::move(kernel_gens), kernel_order)};
  if (out.image.order() * out.kernel.order() != g.order())
    throw Error("induced_action: internal order factorisation failed");
  return out;
}

// Largest subgroup of G with the same orbits as the normal subgroup N:
// the kernel of the G-action on the N-orbit partition.
inline PermGroup one_closure(const PermGroup& n, const PermGroup& g) {
  if (n.degree() != g.degree()) throw InputError("one_closure: degree mismatch");
  if (!n.subgroup_of(g)) throw InputError("one_closure: N is not a subgroup of G");
  for (const Perm& x : n.generators())
    for (const Perm& h : g.generators())
      if (!n.contains(x.conjugated_by(h)))
        throw InputError("one_closure: N is not normal in G");
  return induced_action(g, n.orbits()).kernel;
}

struct PrimitivityProfile {
  bool primitive = false;
  bool two_transitive = false;
  // First nontrivial proper invariant partition found (blocks of
  // imprimitivity), absent when primitive.
  std::optional<std::vector<std::vector<Point>>> witness_blocks;
};

// Finest G-invariant partition fusing points a and b (one seeded merge, then
// propagation through the generators).
inline std::vector<std::vector<Point>> finest_congruence(const PermGroup& g, Point a,
                                                         Point b) {
  std::size_t n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> work;
  auto unite = [&](Point x, Point y) {
    if (uf.unite(x, y)) work.push_back({x, y});
  };
  unite(a, b);
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (const Perm& h : g.generators()) unite(h[x], h[y]);
  }
  std::vector<std::vector<Point>> cells(n);
  for (Point p = 0; p < n; ++p) cells[uf.find(p)].push_back(p);
  cells.erase(std::remove_if(cells.begin(), cells.end(),
                             [](const auto& c) { return c.empty(); }),
              cells.end());
  sort_cells(cells);
  return cells;
}

inline PrimitivityProfile primitivity_profile(const PermGroup& g) {
  if (!g.is_transitive())
    throw InputError("primitivity_profile: group must be transitive");
  PrimitivityProfile out;
  std::size_t n = g.degree();
  out.primitive = true;
  for (Point b = 1; b < n && out.primitive; ++b) {
    auto cells = finest_congruence(g, 0, b);
    if (cells.size() > 1 && cells.size() < n) {
      out.primitive = false;
      out.witness_blocks = std::move(cells);
    }
  }
  if (n <= 1) {
    out.two_transitive = true;
  } else {
    auto cells = g.point_stabiliser(0).orbits();
    out.two_transitive = cells.size() == 2;  // {0} plus one orbit on the rest
  }
  return out;
}

struct QpProfile {
  bool quasiprimitive = false;
  bool biquasiprimitive = false;
  bool semiprimitive = false;
};

// Closure-based tests of the transitivity hierarchy.  Every nontrivial
// normal subgroup contains the normal closure of one of its nonidentity
// elements and closures are constant on conjugacy classes, so quantifying
// over class representatives is exact:
//   quasiprimitive  <=>  every closure is transitive;
//   biquasiprimitive <=> not qp, every closure has <= 2 orbits, and some
//                        normal subgroup has exactly 2;
//   semiprimitive   <=>  every closure of an element with a fixed point is
//                        transitive (closures of fixed-point-free elements
//                        that are intransitive are still semiregular-safe).
inline QpProfile qp_profile(const PermGroup& g) {
  if (!g.is_transitive()) throw InputError("qp_profile: group must be transitive");
  QpProfile out;
  out.quasiprimitive = true;
  out.semiprimitive = true;
  bool all_le2 = true, some_eq2 = false;
  for (const Perm& r : nonidentity_class_reps(g)) {
    std::size_t cells = closure_orbit_count(g, r);
    if (cells > 1) out.quasiprimitive = false;
    if (cells > 2) all_le2 = false;
    if (cells == 2) some_eq2 = true;
    if (cells > 1 && r.has_fixed_point()) out.semiprimitive = false;
  }
  out.biquasiprimitive = !out.quasiprimitive && all_le2 && some_eq2;
  return out;
}

}  // namespace vtsa
