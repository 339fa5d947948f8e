#pragma once

// Brute-force reference implementations used to validate the chain-based
// algorithms.  Everything here works on explicit element sets built by
// multiplication closure, with no stabiliser-chain machinery involved.

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "vtsa/perm.hpp"

namespace oracle {

using vtsa::Perm;
using vtsa::Point;

// All elements of <gens> by breadth-first multiplication closure.
inline std::vector<Perm> elements(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<std::vector<Point>> seen;
  std::vector<Perm> out{Perm(degree)};
  seen.insert(out[0].images());
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const Perm& g : gens) {
      Perm h = out[i] * g;
      if (seen.insert(h.images()).second) out.push_back(std::move(h));
    }
  return out;
}

inline std::vector<Perm> stabiliser(const std::vector<Perm>& elems, Point a) {
  std::vector<Perm> out;
  for (const Perm& g : elems)
    if (g[a] == a) out.push_back(g);
  return out;
}

inline std::vector<Point> orbit(const std::vector<Perm>& elems, Point a) {
  std::set<Point> s;
  for (const Perm& g : elems) s.insert(g[a]);
  return {s.begin(), s.end()};
}

// Orbit partition of an explicit element set, cells by least element.
inline std::vector<std::vector<Point>> orbits(std::size_t degree,
                                              const std::vector<Perm>& elems) {
  std::vector<char> done(degree, 0);
  std::vector<std::vector<Point>> cells;
  for (std::size_t p = 0; p < degree; ++p) {
    if (done[p]) continue;
    auto cell = orbit(elems, static_cast<Point>(p));
    for (Point q : cell) done[q] = 1;
    cells.push_back(cell);
  }
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return cells;
}

// Normal closure of `seed` in the group given by explicit `elems`:
// conjugates of seed under all elements, then multiplication closure.
inline std::vector<Perm> normal_closure(std::size_t degree,
                                        const std::vector<Perm>& elems,
                                        const std::vector<Perm>& seed) {
  std::vector<Perm> conj;
  std::set<std::vector<Point>> cs;
  for (const Perm& s : seed)
    for (const Perm& g : elems) {
      Perm h = s.conjugated_by(g);
      if (cs.insert(h.images()).second) conj.push_back(std::move(h));
    }
  return elements(degree, conj);
}

// Every normal subgroup of the group with explicit element set `elems`,
// as sorted element-image sets.  Normal subgroups are exactly the joins of
// normal closures of single elements, so we close the closure set under
// pairwise joins.
inline std::set<std::set<std::vector<Point>>> normal_subgroups(
    std::size_t degree, const std::vector<Perm>& elems) {
  auto key_of = [](const std::vector<Perm>& v) {
    std::set<std::vector<Point>> k;
    for (const Perm& p : v) k.insert(p.images());
    return k;
  };
  std::set<std::set<std::vector<Point>>> found;
  found.insert(key_of({Perm(degree)}));
  std::vector<std::vector<Perm>> work;
  // single-element closures, deduplicated by conjugacy class
  std::set<std::vector<Point>> classed;
  for (const Perm& g : elems) {
    if (g.is_identity() || classed.count(g.images())) continue;
    for (const Perm& h : elems) classed.insert(g.conjugated_by(h).images());
    auto cl = normal_closure(degree, elems, {g});
    if (found.insert(key_of(cl)).second) work.push_back(cl);
  }
  // pairwise joins until fixpoint
  for (std::size_t i = 0; i < work.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Perm> gens = work[i];
      gens.insert(gens.end(), work[j].begin(), work[j].end());
      auto join = elements(degree, gens);
      if (found.insert(key_of(join)).second) work.push_back(join);
    }
  return found;
}

}  // namespace oracle
