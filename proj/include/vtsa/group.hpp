#pragma once

// Permutation groups via base-and-strong-generating-set stabiliser chains.
//
// Chains are built deterministically (classic Schreier-Sims) at small degree.
// When the group order is known in advance (coset actions, product
// constructions, derived stabilisers) a randomized fill is used instead and
// certified by the order: the product of fundamental orbit lengths of a
// partial chain never exceeds the true order and reaches it exactly when the
// chain is complete, so the certificate pass is deterministic.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "vtsa/error.hpp"
#include "vtsa/perm.hpp"

namespace vtsa {

struct Config {
  // Largest group that element-enumerating operations will traverse.
  unsigned long element_budget = 10'000'000UL;
  // Largest domain constructions will materialize.
  std::size_t max_points = 200'000;
  // Largest group order constructions will accept.
  mpz_class max_order = mpz_class(1'000'000'000);
  // Seed for internal randomized algorithms; never affects output values.
  std::uint64_t seed = 0x5eed5eedULL;
};

inline Config& config() {
  static Config c;
  return c;
}

// ---------------------------------------------------------------------------
// Orbit helpers (no chain required).

inline std::vector<Point> orbit_of(Point start, const std::vector<Perm>& gens,
                                   std::size_t degree) {
  std::vector<char> seen(degree, 0);
  std::vector<Point> orb{start};
  seen[start] = 1;
  for (std::size_t i = 0; i < orb.size(); ++i)
    for (const Perm& g : gens) {
      Point q = g[orb[i]];
      if (!seen[q]) {
        seen[q] = 1;
        orb.push_back(q);
      }
    }
  std::sort(orb.begin(), orb.end());
  return orb;
}

// Raw orbit partition; cells sorted internally, listed by least element.
inline std::vector<std::vector<Point>> orbit_cells(const std::vector<Perm>& gens,
                                                   std::size_t degree) {
  std::vector<char> seen(degree, 0);
  std::vector<std::vector<Point>> cells;
  for (std::size_t s = 0; s < degree; ++s) {
    if (seen[s]) continue;
    std::vector<Point> orb{static_cast<Point>(s)};
    seen[s] = 1;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const Perm& g : gens) {
        Point q = g[orb[i]];
        if (!seen[q]) {
          seen[q] = 1;
          orb.push_back(q);
        }
      }
    std::sort(orb.begin(), orb.end());
    cells.push_back(std::move(orb));
  }
  return cells;
}

// Canonical listing order for orbit/block collections: by (size, least element).
inline void sort_cells(std::vector<std::vector<Point>>& cells) {
  std::sort(cells.begin(), cells.end(),
            [](const std::vector<Point>& a, const std::vector<Point>& b) {
              if (a.size() != b.size()) return a.size() < b.size();
              return a < b;
            });
}

// ---------------------------------------------------------------------------

class StabChain {
public:
  struct Level {
    Point base;
    std::vector<Point> orbit;           // BFS order, orbit[0] == base
    std::vector<std::int32_t> pos;      // degree-sized; -1 if absent
    std::vector<Point> parent;          // Schreier tree parent point
    std::vector<std::int32_t> label;    // generator index applied at parent
    std::vector<Perm> gens;             // strong generators active at level
    std::vector<Perm> inv_gens;
  };

  StabChain(std::size_t degree, std::vector<Perm> gens,
            std::vector<Point> base_prefix,
            const std::optional<mpz_class>& known_order)
      : degree_(degree) {
    for (Point b : base_prefix) push_level(b);
    for (const Perm& g : gens)
      if (!g.is_identity()) insert_generator(g);
    static constexpr std::size_t kDeterministicDegreeCap = 4096;
    if (known_order && degree_ > kDeterministicDegreeCap) {
      randomized_fill(gens, *known_order);
      if (order() != *known_order) {
        close();  // fall back; certifies or refutes the claimed order
      }
    } else {
      close();
    }
    if (known_order && order() != *known_order)
      throw InputError("StabChain: generated group order " + order().get_str() +
                       " does not match declared order " + known_order->get_str());
  }

  std::size_t degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }

  mpz_class order() const {
    mpz_class o = 1;
    for (const Level& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
    return o;
  }

  bool contains(const Perm& g) const {
    Perm r = g;
    std::size_t lvl = 0;
    return sift(r, lvl);
  }

  // Strong generators fixing the first `k` base points.
  std::vector<Perm> strong_generators_from(std::size_t k) const {
    if (k >= levels_.size()) return {};
    return levels_[k].gens;
  }

  // Transversal element u with base(level)^u == p.
  Perm transversal(std::size_t level, Point p) const {
    const Level& l = levels_[level];
    if (l.pos[p] < 0) throw InputError("StabChain: point not in orbit");
    std::vector<Point> path;
    Point q = p;
    while (q != l.base) {
      path.push_back(q);
      q = l.parent[q];
    }
    Perm u(degree_);
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      u = u * l.gens[l.label[*it]];
    return u;
  }

  // Depth-first enumeration of all elements, deterministic order.
  // Calls fn for each element; fn returning false stops early (returns false).
  bool for_each_element(const std::function<bool(const Perm&)>& fn) const {
    std::size_t table = 0;
    for (const Level& l : levels_) table += l.orbit.size() * degree_;
    if (table > (std::size_t{1} << 28))
      throw CapError("element enumeration: transversal tables too large at this degree");
    std::vector<std::vector<Perm>> trans(levels_.size());
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      trans[j].reserve(levels_[j].orbit.size());
      for (Point p : levels_[j].orbit) trans[j].push_back(transversal(j, p));
    }
    Perm id(degree_);
    return enum_rec(static_cast<int>(levels_.size()) - 1, id, trans, fn);
  }

private:
  std::size_t degree_;
  std::vector<Level> levels_;

  bool enum_rec(int j, const Perm& acc,
                const std::vector<std::vector<Perm>>& trans,
                const std::function<bool(const Perm&)>& fn) const {
    if (j < 0) return fn(acc);
    for (const Perm& u : trans[j])
      if (!enum_rec(j - 1, acc * u, trans, fn)) return false;
    return true;
  }

  void push_level(Point base) {
    Level l;
    l.base = base;
    l.pos.assign(degree_, -1);
    l.parent.assign(degree_, 0);
    l.label.assign(degree_, -1);
    l.orbit = {base};
    l.pos[base] = 0;
    levels_.push_back(std::move(l));
  }

  void recompute_orbit(std::size_t j) {
    Level& l = levels_[j];
    std::fill(l.pos.begin(), l.pos.end(), -1);
    l.orbit.assign(1, l.base);
    l.pos[l.base] = 0;
    for (std::size_t i = 0; i < l.orbit.size(); ++i) {
      Point p = l.orbit[i];
      for (std::size_t gi = 0; gi < l.gens.size(); ++gi) {
        Point q = l.gens[gi][p];
        if (l.pos[q] < 0) {
          l.pos[q] = static_cast<std::int32_t>(l.orbit.size());
          l.parent[q] = p;
          l.label[q] = static_cast<std::int32_t>(gi);
          l.orbit.push_back(q);
        }
      }
    }
  }

  // Multiply r on the right by the inverse transversal of p at level j,
  // so that afterwards base(j)^r == base(j).
  void apply_inverse_transversal(Perm& r, std::size_t j, Point p) const {
    const Level& l = levels_[j];
    Point q = p;
    while (q != l.base) {
      r = r * l.inv_gens[l.label[q]];
      q = l.parent[q];
    }
  }

  // Sift r through levels starting at `lvl`; on success returns true with r
  // the identity.  On failure returns false with r the residue and lvl the
  // level at which it must be inserted.
  bool sift(Perm& r, std::size_t& lvl) const {
    for (std::size_t j = lvl; j < levels_.size(); ++j) {
      Point q = r[levels_[j].base];
      if (levels_[j].pos[q] < 0) {
        lvl = j;
        return false;
      }
      apply_inverse_transversal(r, j, q);
    }
    lvl = levels_.size();
    return r.is_identity();
  }

  // Insert a nontrivial element known to lie in the group: sift, then add the
  // residue as a strong generator at its drop level.  Returns true if the
  // chain changed.
  bool insert_generator(const Perm& g) {
    Perm r = g;
    std::size_t lvl = 0;
    if (sift(r, lvl)) return false;
    if (lvl == levels_.size()) push_level(r.first_moved());
    // r fixes all bases before lvl, so it is a strong generator for every
    // level up to and including lvl.
    for (std::size_t j = 0; j <= lvl && j < levels_.size(); ++j) {
      levels_[j].gens.push_back(r);
      levels_[j].inv_gens.push_back(r.inverse());
      recompute_orbit(j);
    }
    return true;
  }

  // Deterministic closure: process Schreier generators until every one sifts.
  // Index-based access only: insert_generator may reallocate levels_.
  void close() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < levels_.size() && !changed; ++j) {
        for (std::size_t oi = 0; oi < levels_[j].orbit.size() && !changed; ++oi) {
          Point p = levels_[j].orbit[oi];
          Perm u_p = transversal(j, p);
          for (std::size_t gi = 0; gi < levels_[j].gens.size(); ++gi) {
            Perm s = u_p * levels_[j].gens[gi];
            apply_inverse_transversal(s, j, s[levels_[j].base]);
            if (s.is_identity()) continue;
            // s fixes bases 0..j by construction.
            if (insert_generator(s)) {
              changed = true;
              break;
            }
          }
        }
      }
    }
  }

  // Random fill toward a known order (product-replacement sampler).
  void randomized_fill(const std::vector<Perm>& gens, const mpz_class& target) {
    std::vector<Perm> nontrivial;
    for (const Perm& g : gens)
      if (!g.is_identity()) nontrivial.push_back(g);
    if (nontrivial.empty()) return;
    std::mt19937_64 rng(config().seed);
    std::vector<Perm> slots;
    while (slots.size() < 10)
      slots.push_back(nontrivial[slots.size() % nontrivial.size()]);
    Perm acc(degree_);
    auto stir = [&] {
      std::size_t i = rng() % slots.size(), j = rng() % slots.size();
      while (j == i) j = rng() % slots.size();
      if (rng() & 1)
        slots[i] = slots[i] * slots[j];
      else
        slots[i] = slots[i] * slots[j].inverse();
      acc = acc * slots[i];
    };
    for (int k = 0; k < 60; ++k) stir();
    const int max_draws = 512;
    for (int draws = 0; draws < max_draws && order() != target; ++draws) {
      stir();
      insert_generator(acc);
    }
  }
};

// ---------------------------------------------------------------------------

struct TransitivityProfile {
  bool transitive = false;
  bool semiregular = false;
  bool regular = false;
  std::size_t orbit_count = 0;
  std::vector<std::vector<Point>> orbits;  // sorted by (size, least element)
};

class PermGroup {
public:
  PermGroup() : PermGroup(1, {}) {}

  PermGroup(std::size_t degree, std::vector<Perm> gens,
            std::optional<mpz_class> known_order = std::nullopt,
            std::vector<Point> base_hint = {})
      : data_(std::make_shared<Data>()) {
    data_->degree = degree;
    for (Perm& g : gens) {
      if (g.degree() != degree)
        throw InputError("PermGroup: generator degree mismatch");
      if (!g.is_identity()) data_->gens.push_back(std::move(g));
    }
    std::sort(data_->gens.begin(), data_->gens.end());
    data_->gens.erase(std::unique(data_->gens.begin(), data_->gens.end()),
                      data_->gens.end());
    data_->known_order = std::move(known_order);
    data_->base_hint = std::move(base_hint);
  }

  std::size_t degree() const { return data_->degree; }
  const std::vector<Perm>& generators() const { return data_->gens; }
  bool is_trivial() const { return data_->gens.empty(); }

  const StabChain& chain() const {
    std::call_once(data_->built, [&] {
      data_->chain = std::make_unique<StabChain>(
          data_->degree, data_->gens, data_->base_hint, data_->known_order);
    });
    return *data_->chain;
  }

  // Always answered by the chain: when an order was declared, building the
  // chain is what certifies the declaration (a mismatch throws there).
  mpz_class order() const { return chain().order(); }

  bool contains(const Perm& g) const {
    if (g.degree() != degree())
      throw InputError("contains: permutation degree " + std::to_string(g.degree()) +
                       " does not match group degree " + std::to_string(degree()));
    if (g.is_identity()) return true;
    return chain().contains(g);
  }

  bool same_group(const PermGroup& other) const {
    if (degree() != other.degree() || order() != other.order()) return false;
    for (const Perm& g : other.generators())
      if (!contains(g)) return false;
    return true;
  }

  bool subgroup_of(const PermGroup& other) const {
    if (degree() != other.degree()) return false;
    for (const Perm& g : generators())
      if (!other.contains(g)) return false;
    return true;
  }

  std::vector<std::vector<Point>> orbits() const {
    auto cells = orbit_cells(data_->gens, data_->degree);
    sort_cells(cells);
    return cells;
  }

  std::vector<Point> orbit(Point p) const {
    return orbit_of(p, data_->gens, data_->degree);
  }

  bool is_transitive() const {
    return orbit(0).size() == degree();
  }

  TransitivityProfile transitivity_profile() const {
    TransitivityProfile t;
    t.orbits = orbits();
    t.orbit_count = t.orbits.size();
    t.transitive = t.orbit_count == 1;
    mpz_class o = order();
    t.semiregular = true;
    for (const auto& cell : t.orbits)
      if (mpz_class(static_cast<unsigned long>(cell.size())) != o) {
        t.semiregular = false;
        break;
      }
    t.regular = t.transitive && t.semiregular;
    return t;
  }

  // Stabiliser of a point, with derived order |G| / |orbit| so large-degree
  // chains can be certified.
  PermGroup point_stabiliser(Point a) const {
    if (a >= degree()) throw InputError("point_stabiliser: point out of range");
    mpz_class target = order();
    StabChain c(degree(), data_->gens, {a}, target);
    std::vector<Perm> sg = c.strong_generators_from(1);
    mpz_class stab_order = target / static_cast<unsigned long>(c.levels()[0].orbit.size());
    return PermGroup(degree(), std::move(sg), stab_order);
  }

  // Pointwise stabiliser of a list of points (iterated point stabilisers, so
  // every step carries a certified order).
  PermGroup pointwise_stabiliser(const std::vector<Point>& pts) const {
    PermGroup g = *this;
    for (Point p : pts) g = g.point_stabiliser(p);
    return g;
  }

  // Enumerate all elements (including the identity) in deterministic order.
  // Throws CapError if the order exceeds the element budget.
  void for_each_element(const std::function<void(const Perm&)>& fn) const {
    require_enumerable("element enumeration");
    chain().for_each_element([&](const Perm& p) {
      fn(p);
      return true;
    });
  }

  std::vector<Perm> elements() const {
    std::vector<Perm> out;
    for_each_element([&](const Perm& p) { out.push_back(p); });
    return out;
  }

  void require_enumerable(const char* what) const {
    if (order() > mpz_class(config().element_budget))
      throw CapError(std::string(what) + ": group order " + order().get_str() +
                     " exceeds element budget " +
                     std::to_string(config().element_budget));
  }

private:
  struct Data {
    std::size_t degree = 1;
    std::vector<Perm> gens;
    std::optional<mpz_class> known_order;
    std::vector<Point> base_hint;
    mutable std::once_flag built;
    mutable std::unique_ptr<StabChain> chain;
  };
  std::shared_ptr<Data> data_;
};

}  // namespace vtsa
