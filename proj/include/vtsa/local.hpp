#pragma once

// Local action at a vertex: the permutation group induced by a vertex
// stabiliser on the neighbourhood, together with classification flags for
// the transitivity hierarchy (transitive, 2-transitive, primitive,
// quasiprimitive, semiprimitive).

#include <algorithm>
#include <string>
#include <vector>

#include "vtsa/error.hpp"
#include "vtsa/graph.hpp"
#include "vtsa/group.hpp"
#include "vtsa/normal.hpp"
#include "vtsa/perm.hpp"

namespace vtsa {

struct LocalFlags {
  bool transitive = false;
  bool two_transitive = false;
  bool primitive = false;
  bool quasiprimitive = false;
  bool semiprimitive = false;
};

struct LocalActionReport {
  Point vertex = 0;
  std::size_t neighbourhood_size = 0;
  PermGroup induced_group;  // acts on indices into the sorted neighbour list
  mpz_class stabiliser_order = 1;
  mpz_class kernel_order = 1;
  LocalFlags flags;
  // Populated when the hierarchy flags are forced false without being
  // tested, e.g. "local action intransitive".
  std::string reason;
};

// The permutation group induced by the stabiliser of alpha on the sorted
// neighbour list of alpha.  Kernel order is recovered from the exact orders
// of the stabiliser and its image.  Primitivity and the quasiprimitivity
// flags presuppose transitivity; on an intransitive local action they are
// reported false with a reason rather than being tested.
inline LocalActionReport local_action(const VTPair& pair, Point alpha) {
  const Graph& gr = pair.graph;
  if (alpha >= gr.vertex_count) throw InputError("local_action: vertex out of range");
  const std::vector<Point>& nb = gr.adjacency[alpha];

  LocalActionReport rep;
  rep.vertex = alpha;
  rep.neighbourhood_size = nb.size();

  PermGroup stab = pair.group.point_stabiliser(alpha);
  rep.stabiliser_order = stab.order();
  if (nb.empty()) {
    rep.induced_group = PermGroup(0, {});
    rep.kernel_order = rep.stabiliser_order;
    rep.reason = "empty neighbourhood";
    return rep;
  }

  std::vector<Perm> gens;
  gens.reserve(stab.generators().size());
  for (const Perm& h : stab.generators()) {
    std::vector<Point> img(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      Point t = h[nb[i]];
      auto it = std::lower_bound(nb.begin(), nb.end(), t);
      if (it == nb.end() || *it != t)
        throw InputError("local_action: stabiliser does not preserve the neighbourhood");
      img[i] = static_cast<Point>(it - nb.begin());
    }
    gens.emplace_back(std::move(img));
  }
  rep.induced_group = PermGroup(nb.size(), std::move(gens));

  mpz_class io = rep.induced_group.order();
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rep.stabiliser_order.get_mpz_t(),
              io.get_mpz_t());
  if (r != 0)
    throw Error("local_action: induced order does not divide the stabiliser order");
  rep.kernel_order = q;

  rep.flags.transitive = rep.induced_group.is_transitive();
  if (rep.flags.transitive) {
    PrimitivityProfile pp = primitivity_profile(rep.induced_group);
    rep.flags.primitive = pp.primitive;
    rep.flags.two_transitive = pp.two_transitive;
    QpProfile qp = qp_profile(rep.induced_group);
    rep.flags.quasiprimitive = qp.quasiprimitive;
    rep.flags.semiprimitive = qp.semiprimitive;
  } else {
    rep.reason = "local action intransitive";
  }
  return rep;
}

// Report at the canonical base vertex 0; vertex-transitivity makes one
// vertex representative, which is spot-checked against one other vertex
// (order and flag equality).
inline LocalActionReport classify_pair_locally(const VTPair& pair) {
  LocalActionReport rep = local_action(pair, 0);
  if (pair.graph.vertex_count > 1) {
    Point other = static_cast<Point>(pair.graph.vertex_count - 1);
    LocalActionReport check = local_action(pair, other);
    bool agree = check.neighbourhood_size == rep.neighbourhood_size &&
                 check.induced_group.order() == rep.induced_group.order() &&
                 check.kernel_order == rep.kernel_order &&
                 check.flags.transitive == rep.flags.transitive &&
                 check.flags.two_transitive == rep.flags.two_transitive &&
                 check.flags.primitive == rep.flags.primitive &&
                 check.flags.quasiprimitive == rep.flags.quasiprimitive &&
                 check.flags.semiprimitive == rep.flags.semiprimitive;
    if (!agree)
      throw Error("classify_pair_locally: local reports differ between vertices; "
                  "the pair is not vertex-transitive");
  }
  return rep;
}

}  // namespace vtsa
