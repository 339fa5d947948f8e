#pragma once

// Quotients of a vertex-transitive pair: normal quotients (blocks are the
// orbits of an intransitive normal subgroup), block quotients over an
// arbitrary invariant partition, and the locally-P preservation check for
// a 1-closed normal subgroup that is maximal subject to having more than
// two orbits.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vtsa/error.hpp"
#include "vtsa/graph.hpp"
#include "vtsa/group.hpp"
#include "vtsa/local.hpp"
#include "vtsa/normal.hpp"
#include "vtsa/perm.hpp"

namespace vtsa {

struct QuotientResult {
  Graph quotient_graph;
  std::vector<Point> block_map;            // vertex -> block index
  std::vector<std::vector<Point>> blocks;  // ordered by least element
  PermGroup image_group;                   // action on block indices
  PermGroup kernel;                        // elements fixing every block setwise
  std::size_t d = 0;        // valency of the input graph
  std::size_t d_prime = 0;  // valency of the quotient graph
};

namespace detail {

// Shared construction: canonicalize the block order, induce the group
// action, and collapse edges between distinct blocks.
inline QuotientResult quotient_over_blocks(const VTPair& pair,
                                           std::vector<std::vector<Point>> blocks) {
  const Graph& gr = pair.graph;
  if (gr.directed) throw InputError("quotient: graph must be undirected");

  for (auto& b : blocks) std::sort(b.begin(), b.end());
  // Disjoint sorted cells compare lexicographically in least-element order.
  std::sort(blocks.begin(), blocks.end());

  // Validates the partition and computes the exact image and kernel.
  InducedAction act = induced_action(pair.group, blocks);

  std::vector<Point> bmap(gr.vertex_count);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (Point v : blocks[i]) bmap[v] = static_cast<Point>(i);

  std::vector<std::pair<Point, Point>> edges;
  for (Point u = 0; u < gr.vertex_count; ++u)
    for (Point v : gr.adjacency[u]) {
      Point bu = bmap[u], bv = bmap[v];
      if (bu < bv) edges.emplace_back(bu, bv);
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  QuotientResult res;
  res.quotient_graph = make_graph(blocks.size(), edges, false);
  res.block_map = std::move(bmap);
  res.blocks = std::move(blocks);
  res.image_group = std::move(act.image);
  res.kernel = std::move(act.kernel);
  res.d = valency_max(gr);
  res.d_prime = valency_max(res.quotient_graph);
  return res;
}

}  // namespace detail

// Quotient over the orbits of an intransitive normal subgroup N.  The
// kernel is the 1-closure of N in G, the image is G modulo that kernel,
// and the quotient valency never exceeds the input valency.  With at
// least three orbits the quotient pair is itself a valid vertex-transitive
// pair at the same valency bound, which is re-verified.
inline QuotientResult normal_quotient(const VTPair& pair, const PermGroup& n) {
  const PermGroup& g = pair.group;
  if (n.degree() != g.degree())
    throw InputError("normal_quotient: subgroup degree mismatch");
  for (const Perm& x : n.generators())
    if (!g.contains(x))
      throw InputError("normal_quotient: N is not a subgroup of G");
  for (const Perm& x : n.generators())
    for (const Perm& h : g.generators())
      if (!n.contains(x.conjugated_by(h)))
        throw InputError("normal_quotient: N is not normal in G");
  if (n.degree() > 0 && n.orbit(0).size() == n.degree())
    throw InputError("normal_quotient: N is transitive, the quotient is trivial");

  QuotientResult res = detail::quotient_over_blocks(pair, n.orbits());

  // kernel = one_closure(N, G): the kernel of the action on the N-orbits.
  for (const Perm& x : n.generators())
    if (!res.kernel.contains(x))
      throw Error("normal_quotient: kernel does not contain N");
  if (res.d_prime > res.d)
    throw Error("normal_quotient: quotient valency " + std::to_string(res.d_prime) +
                " exceeds input valency " + std::to_string(res.d));
  if (res.blocks.size() >= 3) {
    PairValidation pv = validate_pair(res.quotient_graph, res.image_group, pair.d);
    if (!pv.ok())
      throw Error(std::string("normal_quotient: quotient pair invalid: ") +
                  to_string(pv.diagnosis));
  }
  return res;
}

// Quotient over an arbitrary G-invariant partition.  No valency bound
// holds in general, so none is asserted.
inline QuotientResult block_quotient(const VTPair& pair,
                                     const std::vector<std::vector<Point>>& sigma) {
  return detail::quotient_over_blocks(pair, sigma);
}

enum class LocalProperty { TwoTransitive, Primitive, Quasiprimitive };

inline const char* to_string(LocalProperty p) {
  switch (p) {
    case LocalProperty::TwoTransitive: return "2-transitive";
    case LocalProperty::Primitive: return "primitive";
    case LocalProperty::Quasiprimitive: return "quasiprimitive";
  }
  return "?";
}

enum class MaximalityStatus { Unverified, VerifiedAgainstList, FailedAgainstList };

inline const char* to_string(MaximalityStatus m) {
  switch (m) {
    case MaximalityStatus::Unverified: return "maximality unverified";
    case MaximalityStatus::VerifiedAgainstList: return "maximality verified against list";
    case MaximalityStatus::FailedAgainstList: return "maximality failed against list";
  }
  return "?";
}

struct PropositionReport {
  LocalProperty property = LocalProperty::Quasiprimitive;

  // Hypotheses, each tested independently.
  bool locally_property = false;  // the pair is locally-P
  bool normal_in_g = false;       // N is a normal subgroup of G
  bool one_closed = false;        // N equals its 1-closure in G
  bool enough_orbits = false;     // N has more than two orbits
  MaximalityStatus maximality = MaximalityStatus::Unverified;
  bool hypotheses_met = false;

  // Conclusions, tested whenever computable (the quotient requires N to
  // be normal and intransitive).
  std::optional<bool> quotient_locally_property;
  std::optional<bool> image_qp_or_biqp;
  std::optional<bool> stabilisers_trivial;  // N_alpha = 1 for every alpha
  mpz_class stabiliser_order = 0;           // |N_alpha| at alpha = 0

  std::optional<QuotientResult> quotient;
  std::vector<std::string> diagnoses;  // hypothesis failures, human readable

  bool conclusions_hold() const {
    return quotient_locally_property.value_or(false) &&
           image_qp_or_biqp.value_or(false) && stabilisers_trivial.value_or(false);
  }
};

// Check the locally-P quotient reduction for a candidate normal subgroup:
// hypotheses are that the pair is locally-P and that N is normal, 1-closed
// and maximal subject to having more than two orbits; the conclusions are
// that the quotient pair is locally-P, that the image group is
// quasiprimitive or biquasiprimitive on the blocks, and that N acts
// semiregularly (trivial vertex stabilisers).  Hypothesis failures are
// reported as diagnoses, not exceptions.  Maximality is only verified
// against an explicit list of candidate overgroups; with an empty list it
// is flagged unverified.
inline PropositionReport proposition_local_check(
    const VTPair& pair, const PermGroup& n, LocalProperty property,
    const std::vector<PermGroup>& overgroups = {}) {
  const PermGroup& g = pair.group;
  if (n.degree() != g.degree())
    throw InputError("proposition_local_check: subgroup degree mismatch");

  PropositionReport rep;
  rep.property = property;

  LocalActionReport local = classify_pair_locally(pair);
  switch (property) {
    case LocalProperty::TwoTransitive: rep.locally_property = local.flags.two_transitive; break;
    case LocalProperty::Primitive: rep.locally_property = local.flags.primitive; break;
    case LocalProperty::Quasiprimitive: rep.locally_property = local.flags.quasiprimitive; break;
  }
  if (!rep.locally_property)
    rep.diagnoses.push_back(std::string("hypothesis not met: pair is not locally ") +
                            to_string(property));

  bool subgroup = true;
  for (const Perm& x : n.generators())
    if (!g.contains(x)) { subgroup = false; break; }
  bool normal = subgroup;
  if (normal)
    for (const Perm& x : n.generators()) {
      for (const Perm& h : g.generators())
        if (!n.contains(x.conjugated_by(h))) { normal = false; break; }
      if (!normal) break;
    }
  rep.normal_in_g = normal;
  if (!normal)
    rep.diagnoses.push_back(subgroup ? "hypothesis not met: N is not normal in G"
                                     : "hypothesis not met: N is not a subgroup of G");

  std::size_t orbit_count = n.orbits().size();
  rep.enough_orbits = orbit_count > 2;
  if (!rep.enough_orbits)
    rep.diagnoses.push_back("hypothesis not met: N has " + std::to_string(orbit_count) +
                            " orbit(s), more than two are required");

  if (normal) {
    PermGroup closure = one_closure(n, g);
    rep.one_closed = closure.order() == n.order();
    if (!rep.one_closed)
      rep.diagnoses.push_back("hypothesis not met: N is not 1-closed in G (closure has order " +
                              closure.order().get_str() + ", N has order " +
                              n.order().get_str() + ")");

    rep.maximality = MaximalityStatus::Unverified;
    if (!overgroups.empty()) {
      rep.maximality = MaximalityStatus::VerifiedAgainstList;
      for (const PermGroup& m : overgroups) {
        if (m.degree() != g.degree())
          throw InputError("proposition_local_check: overgroup degree mismatch");
        if (!(n.subgroup_of(m) && m.order() > n.order())) continue;
        bool m_normal = m.subgroup_of(g);
        if (m_normal)
          for (const Perm& x : m.generators()) {
            for (const Perm& h : g.generators())
              if (!m.contains(x.conjugated_by(h))) { m_normal = false; break; }
            if (!m_normal) break;
          }
        if (m_normal && m.orbits().size() > 2) {
          rep.maximality = MaximalityStatus::FailedAgainstList;
          rep.diagnoses.push_back(
              "hypothesis not met: a strictly larger normal subgroup of order " +
              m.order().get_str() + " still has more than two orbits");
          break;
        }
      }
    }

    // Conclusion (iii): N_alpha = 1 for every alpha, i.e. N is semiregular.
    TransitivityProfile tp = n.transitivity_profile();
    rep.stabilisers_trivial = tp.semiregular;
    rep.stabiliser_order = n.point_stabiliser(0).order();
    if (!*rep.stabilisers_trivial)
      rep.diagnoses.push_back("hypothesis not met: N_alpha != 1 (order " +
                              rep.stabiliser_order.get_str() + " at vertex 0)");

    // Conclusions (i) and (ii) need the quotient, hence an intransitive N.
    if (orbit_count >= 2) {
      rep.quotient = normal_quotient(pair, n);
      VTPair qpair{rep.quotient->quotient_graph, rep.quotient->image_group, pair.d};
      LocalActionReport qlocal = classify_pair_locally(qpair);
      switch (property) {
        case LocalProperty::TwoTransitive:
          rep.quotient_locally_property = qlocal.flags.two_transitive;
          break;
        case LocalProperty::Primitive:
          rep.quotient_locally_property = qlocal.flags.primitive;
          break;
        case LocalProperty::Quasiprimitive:
          rep.quotient_locally_property = qlocal.flags.quasiprimitive;
          break;
      }
      QpProfile qp = qp_profile(rep.quotient->image_group);
      rep.image_qp_or_biqp = qp.quasiprimitive || qp.biquasiprimitive;
    }
  }

  rep.hypotheses_met = rep.locally_property && rep.normal_in_g && rep.one_closed &&
                       rep.enough_orbits &&
                       rep.maximality != MaximalityStatus::FailedAgainstList;
  return rep;
}

}  // namespace vtsa
