#pragma once

// Reduction engines for vertex-transitive pairs.
//
// The quasiprimitive side classifies a pair by the normal-subgroup structure
// of its group -- a regular normal subgroup, a regular co-product of the
// socle factors, a simple socle, or a product action -- and either certifies
// an explicit stabiliser bound or reduces to a quotient pair whose group is
// simple.  The biquasiprimitive side splits the vertex set into the two
// halves preserved by an index-2 subgroup, forms the distance-at-most-2 pair
// on one half (whose valency is at most d(d-1)), and routes the half pair
// through the same machinery, yielding a bound or one or two reduced pairs.
//
// Every routine records the assertions it checks as a trace of pass/fail
// steps; a Bounded / ReducedQP / ReducedBiQP outcome is only emitted when
// all of its prerequisite steps passed.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "bound_expr.hpp"
#include "bounds.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "group.hpp"
#include "normal.hpp"
#include "quotient.hpp"

namespace vtsa {

namespace detail {

// ---------------------------------------------------------------------------
// Partition helpers.

// Cell id per point; throws unless `cells` partitions the domain [0, degree).
inline std::vector<std::int32_t> cell_ids(std::size_t degree,
                                          const std::vector<std::vector<Point>>& cells,
                                          const char* who) {
  std::vector<std::int32_t> cid(degree, -1);
  for (std::size_t b = 0; b < cells.size(); ++b) {
    if (cells[b].empty()) throw InputError(std::string(who) + ": empty cell");
    for (Point p : cells[b]) {
      if (p >= degree || cid[p] >= 0)
        throw InputError(std::string(who) + ": cells are not a partition of the domain");
      cid[p] = static_cast<std::int32_t>(b);
    }
  }
  for (Point p = 0; p < degree; ++p)
    if (cid[p] < 0)
      throw InputError(std::string(who) + ": cells are not a partition of the domain");
  return cid;
}

// Permutation induced on the cells by each generator, in generator order;
// throws unless the partition is invariant under the group.
inline std::vector<Perm> cell_images(const PermGroup& g,
                                     const std::vector<std::vector<Point>>& cells,
                                     const char* who) {
  const auto cid = cell_ids(g.degree(), cells, who);
  const std::size_t m = cells.size();
  std::vector<Perm> out;
  out.reserve(g.generators().size());
  for (const Perm& h : g.generators()) {
    std::vector<Point> ih(m);
    std::vector<char> hit(m, 0);
    for (std::size_t b = 0; b < m; ++b) {
      const Point target = static_cast<Point>(cid[h[cells[b][0]]]);
      for (Point p : cells[b])
        if (static_cast<Point>(cid[h[p]]) != target)
          throw InputError(std::string(who) + ": partition is not invariant under the group");
      ih[b] = target;
      hit[target] = 1;
    }
    for (std::size_t b = 0; b < m; ++b)
      if (!hit[b])
        throw InputError(std::string(who) + ": partition is not invariant under the group");
    out.emplace_back(std::move(ih));
  }
  return out;
}

// The group extended by one symbol per cell (points first, then symbols).
// The extension is faithful on the original points, so the order carries
// over and is re-certified by the chain construction.
inline PermGroup extend_by_cells(const PermGroup& g,
                                 const std::vector<std::vector<Point>>& cells,
                                 const std::vector<Perm>& images) {
  const std::size_t n = g.degree(), m = cells.size();
  const auto& gens = g.generators();
  std::vector<Perm> ext;
  ext.reserve(gens.size());
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<Point> img(n + m);
    for (Point p = 0; p < n; ++p) img[p] = gens[gi][p];
    for (std::size_t b = 0; b < m; ++b)
      img[n + b] = static_cast<Point>(n + images[gi][static_cast<Point>(b)]);
    ext.emplace_back(std::move(img));
  }
  return PermGroup(n + m, std::move(ext), g.order());
}

// Restriction of an extended group back to its first n points.  Valid only
// when the extension was determined by the point action (then restriction
// is faithful and the order is preserved).
inline PermGroup restrict_extended(const PermGroup& ext, std::size_t n) {
  std::vector<Perm> gens;
  gens.reserve(ext.generators().size());
  for (const Perm& s : ext.generators()) {
    std::vector<Point> img(s.images().begin(), s.images().begin() + n);
    gens.emplace_back(std::move(img));
  }
  return PermGroup(n, std::move(gens), ext.order());
}

// Setwise stabiliser of one cell of a G-invariant partition, computed as a
// point stabiliser in the cell-extended action.
inline PermGroup cell_stabiliser(const PermGroup& g,
                                 const std::vector<std::vector<Point>>& cells,
                                 std::size_t which) {
  if (which >= cells.size())
    throw InputError("cell_stabiliser: cell index out of range");
  const auto images = cell_images(g, cells, "cell_stabiliser");
  PermGroup ext = extend_by_cells(g, cells, images);
  PermGroup stab = ext.point_stabiliser(static_cast<Point>(g.degree() + which));
  return restrict_extended(stab, g.degree());
}

// Action induced on an invariant subset of the points.  The restriction
// need not be faithful, so the image order is recomputed.
inline PermGroup restrict_to_support(const PermGroup& g, const std::vector<Point>& support_in) {
  std::vector<Point> sup = support_in;
  std::sort(sup.begin(), sup.end());
  std::vector<std::int32_t> pos(g.degree(), -1);
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (sup[i] >= g.degree() || (i > 0 && sup[i] == sup[i - 1]))
      throw InputError("restrict_to_support: invalid support set");
    pos[sup[i]] = static_cast<std::int32_t>(i);
  }
  std::vector<Perm> gens;
  gens.reserve(g.generators().size());
  for (const Perm& h : g.generators()) {
    std::vector<Point> img(sup.size());
    for (std::size_t i = 0; i < sup.size(); ++i) {
      const Point q = h[sup[i]];
      if (pos[q] < 0)
        throw InputError("restrict_to_support: set is not invariant under the group");
      img[i] = static_cast<Point>(pos[q]);
    }
    gens.emplace_back(std::move(img));
  }
  return PermGroup(sup.size(), std::move(gens));
}

// Subgroup generated by the named members of a verified direct
// decomposition.  The product order is declared up front, so the chain
// construction certifies that the chosen factors really generate a group
// of that order (i.e. that the product is direct).
inline PermGroup direct_subproduct(std::size_t degree,
                                   const std::vector<PermGroup>& factors,
                                   const std::vector<std::size_t>& which) {
  std::vector<Perm> gens;
  mpz_class order = 1;
  for (std::size_t i : which) {
    for (const Perm& p : factors[i].generators()) gens.push_back(p);
    order *= factors[i].order();
  }
  return PermGroup(degree, std::move(gens), order);
}

// Component in `factor` of an element of the internal direct product
// factor x cofactor: the unique t in the factor with t^{-1} x in the
// cofactor.  Requires the factor to be enumerable.
inline Perm component_in_factor(const Perm& x, const PermGroup& factor,
                                const PermGroup& cofactor) {
  factor.require_enumerable("direct-factor component search");
  Perm comp(x.degree());
  bool found = false;
  factor.chain().for_each_element([&](const Perm& t) {
    if (cofactor.contains(t.inverse() * x)) {
      comp = t;
      found = true;
      return false;
    }
    return true;
  });
  if (!found)
    throw InputError("component_in_factor: element does not lie in the product of the factors");
  return comp;
}

// Projection of a subgroup of the internal direct product onto one factor:
// the group generated by the factor components of its generators.
inline PermGroup factor_projection(const PermGroup& k, const PermGroup& factor,
                                   const PermGroup& cofactor) {
  std::vector<Perm> imgs;
  imgs.reserve(k.generators().size());
  for (const Perm& x : k.generators())
    imgs.push_back(component_in_factor(x, factor, cofactor));
  return PermGroup(k.degree(), std::move(imgs));
}

// Conjugation action of the group on a list of socle factors; throws when a
// generator fails to permute the factors among themselves.
inline std::vector<Perm> factor_action(const PermGroup& g,
                                       const std::vector<PermGroup>& factors) {
  const std::size_t l = factors.size();
  std::vector<Perm> out;
  out.reserve(g.generators().size());
  for (const Perm& h : g.generators()) {
    std::vector<Point> img(l);
    std::vector<char> hit(l, 0);
    for (std::size_t j = 0; j < l; ++j) {
      const Perm probe = factors[j].generators().front().conjugated_by(h);
      std::size_t target = l;
      for (std::size_t k = 0; k < l; ++k)
        if (factors[k].contains(probe)) {
          target = k;
          break;
        }
      if (target == l)
        throw InputError("factor_action: conjugation does not permute the factors");
      for (const Perm& x : factors[j].generators())
        if (!factors[target].contains(x.conjugated_by(h)))
          throw InputError("factor_action: conjugation does not permute the factors");
      img[j] = static_cast<Point>(target);
      hit[target] = 1;
    }
    for (std::size_t j = 0; j < l; ++j)
      if (!hit[j])
        throw InputError("factor_action: conjugation does not permute the factors");
    out.emplace_back(std::move(img));
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Regular normal subgroups.

// Search for a normal subgroup that is regular on the vertices among the
// products of minimal normal subgroups, smallest first: single subgroups in
// increasing order, then pairs, and so on.  A miss is a statement about this
// enumerated lattice only -- normal subgroups that are not products of
// minimal ones (for instance the full rotation subgroup of a dihedral group)
// are out of scope by design.
inline std::optional<PermGroup> find_regular_normal(const VTPair& pair) {
  const PermGroup& g = pair.group;
  const mpz_class n(static_cast<unsigned long>(pair.graph.vertex_count));
  std::vector<PermGroup> mins = minimal_normal_subgroups(g);
  const std::size_t k = mins.size();
  if (k == 0) return std::nullopt;
  if (k > 16)
    throw CapError("find_regular_normal: too many minimal normal subgroups (" +
                   std::to_string(k) + ") to enumerate products");
  std::vector<unsigned> masks;
  for (unsigned m = 1; m < (1u << k); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (unsigned m : masks) {
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < k; ++i)
      if (m & (1u << i))
        for (const Perm& p : mins[i].generators()) gens.push_back(p);
    // Products of minimal normal subgroups may overlap, so the order is
    // computed rather than declared.
    PermGroup prod(g.degree(), std::move(gens));
    if (prod.order() == n && prod.is_transitive()) return prod;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Quasiprimitive case split.

enum class QpKind {
  RegularNormal,         // some product of minimal normal subgroups is regular
  SocleCofactorRegular,  // a proper co-product of the socle factors is regular
  AlmostSimple,          // the socle is simple
  ProductAction,         // socle T^l, l >= 2, nonabelian, compatible stabiliser projections
  Unclassified,
};

inline const char* to_string(QpKind k) {
  switch (k) {
    case QpKind::RegularNormal: return "regular-normal";
    case QpKind::SocleCofactorRegular: return "socle-cofactor-regular";
    case QpKind::AlmostSimple: return "almost-simple";
    case QpKind::ProductAction: return "product-action";
    case QpKind::Unclassified: return "unclassified";
  }
  return "?";
}

struct QpCase {
  QpKind kind = QpKind::Unclassified;
  std::optional<PermGroup> witness;              // the regular subgroup, for the first two kinds
  std::optional<SocleDecomposition> socle_data;  // for the simple-socle and product-action kinds
  std::size_t l = 0;                             // product action: number of simple factors
  mpz_class factor_order = 0;                    // product action: order of one simple factor
  bool subdirect_checked = false;  // product action: stabiliser projections nontrivial, equal orders
  std::string reason;              // unclassified: why
};

// Classify a quasiprimitive pair.  Precedence: a regular product of minimal
// normal subgroups wins; then a regular proper co-product of the socle
// factors; then a simple socle; then a product action whose socle-stabiliser
// projections onto the simple factors are nontrivial of a common order.
// Enumeration caps surface as an Unclassified outcome with the cap message.
inline QpCase classify_qp_case(const VTPair& pair) {
  const PermGroup& g = pair.group;
  if (!qp_profile(g).quasiprimitive)
    throw InputError("classify_qp_case: group is not quasiprimitive on the vertices");
  QpCase out;
  try {
    if (auto reg = find_regular_normal(pair)) {
      out.kind = QpKind::RegularNormal;
      out.witness = std::move(*reg);
      return out;
    }
    SocleDecomposition soc = socle(g);
    const mpz_class n(static_cast<unsigned long>(pair.graph.vertex_count));
    if (soc.l >= 2) {
      if (soc.l > 16)
        throw CapError("classify_qp_case: too many socle factors to enumerate co-products");
      std::vector<unsigned> masks;  // proper nonempty subsets, smallest first
      for (unsigned m = 1; m + 1 < (1u << soc.l); ++m) masks.push_back(m);
      std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
        return std::popcount(a) < std::popcount(b);
      });
      for (unsigned m : masks) {
        mpz_class expect = 1;
        std::vector<std::size_t> which;
        for (std::size_t i = 0; i < soc.l; ++i)
          if (m & (1u << i)) {
            which.push_back(i);
            expect *= soc.factors[i].order();
          }
        if (expect != n) continue;
        PermGroup prod = detail::direct_subproduct(g.degree(), soc.factors, which);
        if (prod.is_transitive()) {
          out.kind = QpKind::SocleCofactorRegular;
          out.witness = std::move(prod);
          out.socle_data = std::move(soc);
          return out;
        }
      }
    }
    if (!soc.abelian && soc.l == 1) {
      out.kind = QpKind::AlmostSimple;
      out.socle_data = std::move(soc);
      return out;
    }
    if (!soc.abelian && soc.l >= 2) {
      PermGroup n_alpha = soc.socle.point_stabiliser(0);
      std::optional<mpz_class> common;
      bool okproj = true;
      for (std::size_t i = 0; i < soc.l && okproj; ++i) {
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < soc.l; ++j)
          if (j != i) rest.push_back(j);
        PermGroup cof = detail::direct_subproduct(g.degree(), soc.factors, rest);
        const mpz_class po =
            detail::factor_projection(n_alpha, soc.factors[i], cof).order();
        if (po == 1)
          okproj = false;
        else if (!common)
          common = po;
        else if (*common != po)
          okproj = false;
      }
      if (okproj) {
        out.kind = QpKind::ProductAction;
        out.l = soc.l;
        out.factor_order = soc.socle_factor_order;
        out.socle_data = std::move(soc);
        out.subdirect_checked = true;
      } else {
        out.kind = QpKind::Unclassified;
        out.reason = "socle stabiliser projections are trivial or of unequal orders";
      }
      return out;
    }
    out.kind = QpKind::Unclassified;
    out.reason = "abelian socle without a regular normal subgroup in the enumerated lattice";
  } catch (const CapError& e) {
    out = QpCase{};
    out.kind = QpKind::Unclassified;
    out.reason = e.what();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reduction results and tracing.

struct TraceStep {
  std::string what;
  bool pass = false;
};

// Called once per completed trace step, in order.  Returning false cancels
// the reduction between steps (an Error is thrown); all working state is
// local to the call, so cancellation leaves nothing shared behind.
using ProgressFn = std::function<bool(const TraceStep&)>;

enum class Outcome { Bounded, ReducedQP, ReducedBiQP, Unclassified };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Bounded: return "bounded";
    case Outcome::ReducedQP: return "reduced-qp";
    case Outcome::ReducedBiQP: return "reduced-biqp";
    case Outcome::Unclassified: return "unclassified";
  }
  return "?";
}

struct ReductionResult {
  Outcome outcome = Outcome::Unclassified;
  std::vector<TraceStep> trace;
  std::optional<BoundExpr> bound;                     // Bounded: the certified expression
  std::optional<BoundednessCertificate> certificate;  // Bounded: the exact comparison
  std::optional<VTPair> lambda1;                      // ReducedQP / ReducedBiQP
  std::optional<VTPair> lambda2;                      // ReducedBiQP only
  mpz_class stabiliser1 = 0;                          // vertex-stabiliser order in lambda1
  mpz_class stabiliser2 = 0;                          // vertex-stabiliser order in lambda2
  std::string reason;                                 // Unclassified: the failed assertion

  bool all_steps_pass() const {
    for (const TraceStep& s : trace)
      if (!s.pass) return false;
    return true;
  }
};

namespace detail {

struct Tracer {
  explicit Tracer(const ProgressFn& fn) : progress(fn) {}
  std::vector<TraceStep> steps;
  const ProgressFn& progress;

  bool note(std::string what, bool pass) {
    steps.push_back({std::move(what), pass});
    if (progress && !progress(steps.back()))
      throw Error("reduction cancelled by the progress callback");
    return pass;
  }

  // Unclassified result whose reason is the most recent (failed) step.
  ReductionResult failed() const {
    ReductionResult r;
    r.outcome = Outcome::Unclassified;
    r.trace = steps;
    r.reason = steps.empty() ? std::string() : steps.back().what;
    return r;
  }

  void append(const std::vector<TraceStep>& more) {
    steps.insert(steps.end(), more.begin(), more.end());
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Product-action reduction.

namespace detail {

inline ReductionResult pa_reduce_impl(const VTPair& pair, const QpCase& qc, Tracer& tr) {
  const SocleDecomposition& soc = *qc.socle_data;
  const PermGroup& nsoc = soc.socle;
  const std::size_t d = pair.d;
  const std::size_t l = soc.l;

  if (!tr.note("socle is a direct product of at least two nonabelian simple factors",
               !soc.abelian && l >= 2))
    return tr.failed();
  if (!tr.note("socle is transitive on the vertices", nsoc.is_transitive()))
    return tr.failed();

  std::vector<std::size_t> rest;
  for (std::size_t i = 1; i < l; ++i) rest.push_back(i);
  PermGroup m1 = direct_subproduct(nsoc.degree(), soc.factors, rest);
  if (!tr.note("co-product of all simple factors but the first is intransitive",
               !m1.is_transitive()))
    return tr.failed();
  PermGroup closure = one_closure(m1, nsoc);
  if (!tr.note("co-product equals the kernel of the socle action on its orbit partition",
               closure.order() == m1.order()))
    return tr.failed();

  PairValidation npv = validate_pair(pair.graph, nsoc, d);
  if (!tr.note("graph with the socle alone is a valid vertex-transitive pair", npv.ok()))
    return tr.failed();
  QuotientResult q = normal_quotient(*npv.pair, m1);
  if (!tr.note("quotient image group is simple", is_simple(q.image_group)))
    return tr.failed();
  if (!tr.note("quotient image group is transitive on the quotient vertices",
               q.image_group.is_transitive()))
    return tr.failed();
  PairValidation qpv = validate_pair(q.quotient_graph, q.image_group, d);
  if (!tr.note("quotient pair is valid at the same valency bound", qpv.ok()))
    return tr.failed();

  const mpz_class t_delta = q.image_group.point_stabiliser(q.block_map[0]).order();
  const mpz_class n_alpha = nsoc.point_stabiliser(0).order();
  mpz_class upper;
  mpz_pow_ui(upper.get_mpz_t(), t_delta.get_mpz_t(), static_cast<unsigned long>(l));
  if (!tr.note("socle vertex stabiliser lies between the quotient stabiliser order and its l-th power",
               t_delta <= n_alpha && n_alpha <= upper))
    return tr.failed();

  BoundExpr lbound = BoundExpr::prod(
      {BoundExpr::pow(BoundExpr::lit(static_cast<unsigned long>(d)),
                      BoundExpr::lit(static_cast<unsigned long>(d))),
       BoundExpr::pow(BoundExpr::lit(t_delta),
                      BoundExpr::lit(static_cast<unsigned long>(2 * d)))});
  if (!tr.note("number of simple factors is at most d^d * t^(2d)",
               cmp_bound(lbound, mpz_class(static_cast<unsigned long>(l))) ==
                   BoundCmp::LeCertain))
    return tr.failed();

  ReductionResult r;
  r.outcome = Outcome::ReducedQP;
  r.trace = tr.steps;
  r.lambda1 = *qpv.pair;
  r.stabiliser1 = t_delta;
  return r;
}

}  // namespace detail

// Reduce a product-action pair: quotient the socle pair by the co-product of
// all simple factors but the first.  The image is a valid pair with a simple
// transitive group; its vertex-stabiliser order t sandwiches the socle
// stabiliser between t and t^l, and the factor count l is certified against
// d^d * t^(2d).  Throws InputError when the pair classifies otherwise.
inline ReductionResult pa_reduce(const VTPair& pair, const ProgressFn& progress = nullptr) {
  QpCase qc = classify_qp_case(pair);
  if (qc.kind != QpKind::ProductAction)
    throw InputError(std::string("pa_reduce: pair classifies as ") + to_string(qc.kind) +
                     ", not product-action");
  detail::Tracer tr(progress);
  tr.note("pair classifies as a product action with socle T^l", true);
  return detail::pa_reduce_impl(pair, qc, tr);
}

// ---------------------------------------------------------------------------
// Quasiprimitive reduction.

// Route a quasiprimitive pair by its case: a regular normal subgroup bounds
// the stabiliser by d!; a regular co-product of socle factors bounds it by
// (d * d!)!; a simple socle reduces to the socle pair itself; a product
// action reduces through pa_reduce.  Bounds are certified by exact
// comparison against the actual stabiliser order.
inline ReductionResult theorem_mainqp(const VTPair& pair, const ProgressFn& progress = nullptr) {
  detail::Tracer tr(progress);
  QpCase qc = classify_qp_case(pair);  // throws InputError when not quasiprimitive
  tr.note("group is quasiprimitive on the vertices", true);
  const std::size_t d = pair.d;

  auto bounded = [&](const BoundExpr& b, const BoundednessCertificate& c) {
    ReductionResult r;
    r.outcome = Outcome::Bounded;
    r.trace = tr.steps;
    r.bound = b;
    r.certificate = c;
    return r;
  };

  switch (qc.kind) {
    case QpKind::RegularNormal: {
      tr.note("a regular normal subgroup exists in the enumerated lattice", true);
      BoundExpr b = BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(d)));
      BoundednessCertificate c = check_bounded(pair, b);
      if (!tr.note("vertex-stabiliser order is certified at most d!",
                   c.result == BoundCmp::LeCertain))
        return tr.failed();
      return bounded(b, c);
    }
    case QpKind::SocleCofactorRegular: {
      tr.note("a proper co-product of the socle factors is regular on the vertices", true);
      BoundExpr b = BoundExpr::fact(BoundExpr::prod(
          {BoundExpr::lit(static_cast<unsigned long>(d)),
           BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(d)))}));
      BoundednessCertificate c = check_bounded(pair, b);
      if (!tr.note("vertex-stabiliser order is certified at most (d * d!)!",
                   c.result == BoundCmp::LeCertain))
        return tr.failed();
      return bounded(b, c);
    }
    case QpKind::AlmostSimple: {
      tr.note("socle is simple: the socle pair is the reduced pair", true);
      const PermGroup& t = qc.socle_data->socle;
      if (!tr.note("socle passes the simplicity criterion", is_simple(t)))
        return tr.failed();
      PairValidation pv = validate_pair(pair.graph, t, d);
      if (!tr.note("graph with the socle alone is a valid vertex-transitive pair", pv.ok()))
        return tr.failed();
      ReductionResult r;
      r.outcome = Outcome::ReducedQP;
      r.trace = tr.steps;
      r.lambda1 = *pv.pair;
      r.stabiliser1 = t.point_stabiliser(0).order();
      return r;
    }
    case QpKind::ProductAction: {
      tr.note("pair classifies as a product action with socle T^l", true);
      return detail::pa_reduce_impl(pair, qc, tr);
    }
    case QpKind::Unclassified:
      break;
  }
  tr.note("classification is inconclusive: " + qc.reason, false);
  return tr.failed();
}

// ---------------------------------------------------------------------------
// Block-orbit counting.

struct NrOrbitsReport {
  std::size_t block_count = 0;
  std::size_t base_block = 0;      // block containing vertex 0 (after canonical sorting)
  bool partition_invariant = false;
  bool n_normal = false;           // N is a normal subgroup of the group
  bool blocks_transitive = false;  // each block's setwise stabiliser in N is transitive on it
  std::size_t neighbour_count = 0; // neighbours of the base block in the quotient graph
  std::size_t orbit_count = 0;     // orbits of the base block's stabiliser in N on those neighbours
  std::size_t d = 0;
  bool bound_ok = false;           // orbit_count <= d
  std::vector<std::string> diagnoses;

  bool hypotheses_ok() const { return partition_invariant && n_normal && blocks_transitive; }
  bool ok() const { return hypotheses_ok() && bound_ok; }
};

// Count the orbits of a block's setwise stabiliser in N on the quotient
// neighbours of that block.  When N is normal and its block stabilisers act
// transitively within every block, the count is at most the valency bound d.
// Hypothesis failures are diagnosed rather than thrown.
inline NrOrbitsReport verify_nrorbits(const VTPair& pair,
                                      std::vector<std::vector<Point>> sigma,
                                      const PermGroup& n) {
  NrOrbitsReport rep;
  rep.d = pair.d;
  for (auto& c : sigma) std::sort(c.begin(), c.end());
  std::sort(sigma.begin(), sigma.end());
  rep.block_count = sigma.size();

  const PermGroup& g = pair.group;
  if (n.degree() != g.degree()) {
    rep.diagnoses.push_back("subgroup degree differs from the group degree");
    return rep;
  }
  bool sub = true;
  for (const Perm& x : n.generators()) sub = sub && g.contains(x);
  if (!sub) rep.diagnoses.push_back("N is not a subgroup of the group");
  bool nrm = sub;
  if (sub) {
    for (const Perm& x : n.generators())
      for (const Perm& h : g.generators()) nrm = nrm && n.contains(x.conjugated_by(h));
    if (!nrm) rep.diagnoses.push_back("N is not normal in the group");
  }
  rep.n_normal = nrm;

  try {
    detail::cell_images(g, sigma, "verify_nrorbits");
    rep.partition_invariant = true;
  } catch (const InputError& e) {
    rep.diagnoses.push_back(e.what());
    return rep;
  }
  if (!rep.n_normal) return rep;

  bool all_trans = true;
  for (std::size_t b = 0; b < sigma.size(); ++b) {
    PermGroup nb = detail::cell_stabiliser(n, sigma, b);
    if (nb.orbit(sigma[b][0]) != sigma[b]) {
      all_trans = false;
      rep.diagnoses.push_back("the stabiliser of block " + std::to_string(b) +
                              " in N is not transitive on the block");
      break;
    }
  }
  rep.blocks_transitive = all_trans;
  if (!all_trans) return rep;

  QuotientResult q = block_quotient(pair, sigma);
  rep.base_block = q.block_map[0];
  const std::vector<Point>& nbrs = q.quotient_graph.adjacency[rep.base_block];
  rep.neighbour_count = nbrs.size();

  PermGroup ns = detail::cell_stabiliser(n, sigma, rep.base_block);
  PermGroup on_blocks(sigma.size(), detail::cell_images(ns, sigma, "verify_nrorbits"));
  std::vector<std::int32_t> orbit_of_block(sigma.size(), -1);
  {
    const auto cells = on_blocks.orbits();
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (Point p : cells[c]) orbit_of_block[p] = static_cast<std::int32_t>(c);
  }
  std::vector<char> seen(sigma.size(), 0);
  for (Point b : nbrs) {
    const auto id = static_cast<std::size_t>(orbit_of_block[b]);
    if (!seen[id]) {
      seen[id] = 1;
      ++rep.orbit_count;
    }
  }
  rep.bound_ok = rep.orbit_count <= rep.d;
  return rep;
}

// ---------------------------------------------------------------------------
// Product-structure recovery and stabiliser projections.

struct PaContext {
  SocleDecomposition socle_data;
  // Per socle factor: the orbit partition of the co-product of the other
  // factors (the "coordinate cells" of that factor).
  std::vector<std::vector<std::vector<Point>>> coordinate_cells;
  std::vector<std::vector<Point>> sigma;  // common refinement of the coordinate partitions
  std::size_t base_block = 0;             // sigma cell containing vertex 0
  bool faithful = false;                  // group acts faithfully on sigma
  bool recovered = false;
  std::string failure;                    // first recovery step that failed
};

// Recover the product structure carried by the socle factors: coordinate i
// has one cell per orbit of the co-product of all factors except i, and the
// block system sigma is the common refinement of these coordinate
// partitions.  Failures set a flag instead of throwing, so callers can
// report why recovery was incomplete.
inline PaContext assemble_pa_context(const VTPair& pair, const SocleDecomposition& soc) {
  PaContext ctx;
  ctx.socle_data = soc;
  auto fallback = [&](std::string why) {
    ctx.failure = std::move(why);
    ctx.recovered = false;
    return ctx;
  };
  if (soc.abelian || soc.l == 0) return fallback("socle is abelian or trivial");
  const std::size_t l = soc.l;
  const std::size_t n = pair.graph.vertex_count;
  std::size_t b = 0;
  for (std::size_t i = 0; i < l; ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < l; ++j)
      if (j != i) rest.push_back(j);
    PermGroup cof = detail::direct_subproduct(pair.group.degree(), soc.factors, rest);
    auto cells = cof.orbits();
    if (i == 0)
      b = cells.size();
    else if (cells.size() != b)
      return fallback("coordinate partitions have different cell counts");
    ctx.coordinate_cells.push_back(std::move(cells));
  }
  if (b < 2) return fallback("a coordinate partition is trivial");

  std::vector<std::vector<std::int32_t>> cid;
  for (std::size_t i = 0; i < l; ++i)
    cid.push_back(detail::cell_ids(n, ctx.coordinate_cells[i], "assemble_pa_context"));
  std::map<std::vector<std::int32_t>, std::vector<Point>> buckets;
  for (Point v = 0; v < n; ++v) {
    std::vector<std::int32_t> key(l);
    for (std::size_t i = 0; i < l; ++i) key[i] = cid[i][v];
    buckets[key].push_back(v);
  }
  for (auto& [key, cell] : buckets) ctx.sigma.push_back(cell);
  std::sort(ctx.sigma.begin(), ctx.sigma.end());

  mpz_class expect;
  mpz_ui_pow_ui(expect.get_mpz_t(), static_cast<unsigned long>(b),
                static_cast<unsigned long>(l));
  if (mpz_class(static_cast<unsigned long>(ctx.sigma.size())) != expect)
    return fallback("block system does not have the full product size");
  for (std::size_t c = 0; c < ctx.sigma.size(); ++c)
    if (std::binary_search(ctx.sigma[c].begin(), ctx.sigma[c].end(), Point{0}))
      ctx.base_block = c;

  try {
    InducedAction act = induced_action(pair.group, ctx.sigma);
    ctx.faithful = act.kernel.order() == 1;
  } catch (const InputError&) {
    return fallback("block system is not invariant under the group");
  }
  if (!ctx.faithful) return fallback("group is not faithful on the block system");
  ctx.recovered = true;
  return ctx;
}

inline PaContext assemble_pa_context(const VTPair& pair) {
  QpCase qc = classify_qp_case(pair);
  if (qc.kind != QpKind::ProductAction && qc.kind != QpKind::AlmostSimple)
    throw InputError(std::string("assemble_pa_context: pair classifies as ") +
                     to_string(qc.kind) + ", which carries no product structure");
  return assemble_pa_context(pair, *qc.socle_data);
}

struct LemmaProjReport {
  std::size_t factor = 0;
  mpz_class alpha_projection_order = 0;  // image on the coordinate cells of G_i meet a vertex stabiliser
  mpz_class block_projection_order = 0;  // image on the coordinate cells of G_i meet the block stabiliser
  mpz_class point_component_order = 0;   // stabiliser of the base coordinate cell in the full component
  bool equal = false;                    // all three coincide (containment plus order)

  bool ok() const { return equal; }
};

// For the normaliser G_i of socle factor i, compare three subgroups of the
// component induced on the coordinate-i cells: the image of G_i meet the
// stabiliser of vertex 0, the image of G_i meet the setwise stabiliser of
// the block of vertex 0, and the point stabiliser of the base cell in the
// full component.  All three must coincide; equality is established by
// containment plus equal orders.
inline LemmaProjReport verify_lemma_proj(const VTPair& pair, const PaContext& ctx,
                                         std::size_t i) {
  if (!ctx.recovered)
    throw InputError("verify_lemma_proj: product structure was not recovered: " + ctx.failure);
  if (i >= ctx.socle_data.l)
    throw InputError("verify_lemma_proj: factor index out of range");
  const PermGroup& g = pair.group;
  const std::size_t n = g.degree();
  const std::size_t l = ctx.socle_data.l;

  const std::vector<Perm> on_factors = detail::factor_action(g, ctx.socle_data.factors);
  std::vector<Perm> ext;
  const auto& gens = g.generators();
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<Point> img(n + l);
    for (Point p = 0; p < n; ++p) img[p] = gens[gi][p];
    for (std::size_t k = 0; k < l; ++k)
      img[n + k] = static_cast<Point>(n + on_factors[gi][static_cast<Point>(k)]);
    ext.emplace_back(std::move(img));
  }
  PermGroup extended(n + l, std::move(ext), g.order());
  PermGroup g_i = detail::restrict_extended(
      extended.point_stabiliser(static_cast<Point>(n + i)), n);

  const auto& cells = ctx.coordinate_cells[i];
  PermGroup component = induced_action(g_i, cells).image;
  std::size_t delta = 0;
  for (std::size_t c = 0; c < cells.size(); ++c)
    if (std::find(cells[c].begin(), cells[c].end(), Point{0}) != cells[c].end()) delta = c;
  PermGroup h_delta = component.point_stabiliser(static_cast<Point>(delta));
  PermGroup pa = induced_action(g_i.point_stabiliser(0), cells).image;
  PermGroup pb =
      induced_action(detail::cell_stabiliser(g_i, ctx.sigma, ctx.base_block), cells).image;

  LemmaProjReport rep;
  rep.factor = i;
  rep.alpha_projection_order = pa.order();
  rep.block_projection_order = pb.order();
  rep.point_component_order = h_delta.order();
  rep.equal = pa.subgroup_of(pb) && pb.subgroup_of(h_delta) &&
              pa.order() == pb.order() && pb.order() == h_delta.order();
  return rep;
}

// ---------------------------------------------------------------------------
// Biquasiprimitive bipartition.

struct BipartiteSplit {
  // Four vertices with the regular Klein group: the bipartition is not
  // unique, every choice gives a trivial stabiliser, and callers should
  // bound directly instead of recursing.
  bool short_circuit = false;
  std::vector<Point> half1, half2;  // sorted halves; half1 contains vertex 0
  PermGroup g_plus;                 // setwise stabiliser of the halves (index 2)
  PermGroup h;                      // action induced by g_plus on half1
  VTPair delta_pair;                // distance-<=2 pair on half1, valency bound d(d-1)
  bool cross_edges_only = false;    // every input edge joins the two halves
};

// Split a biquasiprimitive pair along the orbit bipartition of an
// intransitive minimal normal subgroup.  All two-orbit minimal normal
// subgroups must agree on the bipartition (the four-vertex Klein action is
// the lone exception, flagged as a short circuit).  The index-2 half
// stabiliser, its faithful action on the first half, and the validated
// distance-<=2 pair at valency bound d(d-1) are returned.
inline BipartiteSplit biqp_split(const VTPair& pair) {
  const PermGroup& g = pair.group;
  if (!qp_profile(g).biquasiprimitive)
    throw InputError("biqp_split: group is not biquasiprimitive on the vertices");

  std::vector<std::vector<std::vector<Point>>> parts;
  for (const PermGroup& m : minimal_normal_subgroups(g)) {
    auto cells = m.orbits();
    if (cells.size() == 2) parts.push_back(std::move(cells));
  }
  if (parts.empty())
    throw Error("biqp_split: no two-orbit minimal normal subgroup despite biquasiprimitivity");
  std::sort(parts.begin(), parts.end());
  const bool unique_halves =
      std::adjacent_find(parts.begin(), parts.end(), std::not_equal_to<>()) == parts.end();

  BipartiteSplit out;
  if (!unique_halves) {
    bool klein = g.degree() == 4 && g.order() == 4;
    if (klein)
      for (const Perm& x : g.generators()) klein = klein && (x * x).is_identity();
    if (!klein)
      throw Error("biqp_split: conflicting bipartitions outside the four-vertex Klein case");
    out.short_circuit = true;
  }
  // Halves have equal size, so the cell containing vertex 0 sorts first.
  out.half1 = parts.front()[0];
  out.half2 = parts.front()[1];

  InducedAction act = induced_action(g, {out.half1, out.half2});
  out.g_plus = act.kernel;
  if (out.g_plus.order() * 2 != g.order())
    throw Error("biqp_split: the half stabiliser does not have index 2");
  {
    auto cells = out.g_plus.orbits();
    if (!(cells.size() == 2 && cells[0] == out.half1 && cells[1] == out.half2))
      throw Error("biqp_split: the half stabiliser is not transitive on each half");
  }
  out.h = detail::restrict_to_support(out.g_plus, out.half1);

  bool cross = true;
  std::vector<char> side(g.degree(), 0);
  for (Point p : out.half2) side[p] = 1;
  for (Point u = 0; u < pair.graph.vertex_count && cross; ++u)
    for (Point v : pair.graph.adjacency[u])
      if (side[u] == side[v]) {
        cross = false;
        break;
      }
  out.cross_edges_only = cross;

  Graph dg = delta_graph(pair.graph, out.half1, out.half2, cross);
  const std::size_t d0 = pair.d * (pair.d - 1);
  PairValidation pv = validate_pair(dg, out.h, d0);
  if (!pv.ok())
    throw Error(std::string("biqp_split: induced half pair is invalid: ") +
                to_string(pv.diagnosis));
  out.delta_pair = *pv.pair;
  return out;
}

// ---------------------------------------------------------------------------
// Transitive-cross-action bound.

struct SillyBound {
  BoundExpr bound;                     // d! (d-1)!
  BoundednessCertificate certificate;  // exact comparison at vertex 0
};

// When the stabiliser of a vertex in the first half is transitive on the
// second half, the far half lies inside that vertex's neighbourhood, so the
// halves have at most d vertices each and the stabiliser order is at most
// d!(d-1)!.  Returns nothing when the cross action is intransitive.
inline std::optional<SillyBound> lemma_silly_check(const VTPair& pair,
                                                   const BipartiteSplit& split) {
  PermGroup ga = pair.group.point_stabiliser(split.half1.front());
  if (ga.orbit(split.half2.front()) != split.half2) return std::nullopt;
  const std::size_t d = pair.d;
  BoundExpr b = BoundExpr::prod(
      {BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(d))),
       BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(d - 1)))});
  return SillyBound{b, check_bounded(pair, b)};
}

// ---------------------------------------------------------------------------
// Wreath components.

// The permutation group induced on the cells of factor partition j by the
// subgroup mapping partition j to itself, for a group whose generators
// permute the supplied factor partitions among themselves.  Throws
// InputError when a generator moves some partition outside the list.
inline PermGroup wreath_component(
    const PermGroup& g,
    const std::vector<std::vector<std::vector<Point>>>& factor_partitions,
    std::size_t j) {
  const std::size_t l = factor_partitions.size();
  if (l == 0) throw InputError("wreath_component: no factor partitions supplied");
  if (j >= l) throw InputError("wreath_component: factor index out of range");

  auto canon = [](std::vector<std::vector<Point>> cells) {
    for (auto& c : cells) std::sort(c.begin(), c.end());
    std::sort(cells.begin(), cells.end());
    return cells;
  };
  std::map<std::vector<std::vector<Point>>, std::size_t> index;
  std::vector<std::vector<std::vector<Point>>> parts;
  for (std::size_t k = 0; k < l; ++k) {
    auto c = canon(factor_partitions[k]);
    detail::cell_ids(g.degree(), c, "wreath_component");
    if (!index.emplace(c, k).second)
      throw InputError("wreath_component: duplicate factor partitions");
    parts.push_back(std::move(c));
  }

  std::vector<Perm> on_parts;
  for (const Perm& h : g.generators()) {
    std::vector<Point> img(l);
    for (std::size_t k = 0; k < l; ++k) {
      std::vector<std::vector<Point>> moved;
      moved.reserve(parts[k].size());
      for (const auto& cell : parts[k]) {
        std::vector<Point> mc;
        mc.reserve(cell.size());
        for (Point p : cell) mc.push_back(h[p]);
        std::sort(mc.begin(), mc.end());
        moved.push_back(std::move(mc));
      }
      std::sort(moved.begin(), moved.end());
      const auto it = index.find(moved);
      if (it == index.end())
        throw InputError("wreath_component: a generator does not preserve the factor partitions");
      img[k] = static_cast<Point>(it->second);
    }
    on_parts.emplace_back(std::move(img));
  }

  const std::size_t n = g.degree();
  std::vector<Perm> ext;
  const auto& gens = g.generators();
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<Point> img(n + l);
    for (Point p = 0; p < n; ++p) img[p] = gens[gi][p];
    for (std::size_t k = 0; k < l; ++k)
      img[n + k] = static_cast<Point>(n + on_parts[gi][static_cast<Point>(k)]);
    ext.emplace_back(std::move(img));
  }
  PermGroup extended(n + l, std::move(ext), g.order());
  PermGroup stab = detail::restrict_extended(
      extended.point_stabiliser(static_cast<Point>(n + j)), n);
  return induced_action(stab, parts[j]).image;
}

// ---------------------------------------------------------------------------
// Biquasiprimitive reduction.

namespace detail {

inline std::string branch_summary(const ReductionResult& r) {
  std::string s = to_string(r.outcome);
  if (r.bound) s += "|" + r.bound->to_string();
  if (r.lambda1)
    s += "|1:" + std::to_string(r.lambda1->graph.vertex_count) + ":" +
         r.lambda1->group.order().get_str() + ":" + r.stabiliser1.get_str();
  if (r.lambda2)
    s += "|2:" + std::to_string(r.lambda2->graph.vertex_count) + ":" +
         r.lambda2->group.order().get_str() + ":" + r.stabiliser2.get_str();
  return s;
}

// Process one candidate pairing (R, S) of minimal normal subgroups of the
// half action whose direct product is transitive on the half.  Outcomes: an
// abelian factor or a surjective stabiliser projection certifies an explicit
// bound on the original pair's stabiliser; otherwise the half pair is
// quotiented by the two one-sided co-products, giving two reduced pairs.
inline ReductionResult biqp_type_b_branch(const VTPair& pair, const VTPair& dp,
                                          const PermGroup& r_grp, const PermGroup& s_grp,
                                          Tracer& tr) {
  const std::size_t d = pair.d;
  const mpz_class d0(static_cast<unsigned long>(dp.d));  // valency bound d(d-1) of the half pair

  auto bounded = [&](const BoundExpr& b) -> ReductionResult {
    BoundednessCertificate c = check_bounded(pair, b);
    if (!tr.note("vertex-stabiliser order is certified against the bound",
                 c.result == BoundCmp::LeCertain))
      return tr.failed();
    ReductionResult r;
    r.outcome = Outcome::Bounded;
    r.trace = tr.steps;
    r.bound = b;
    r.certificate = c;
    return r;
  };

  if (is_abelian(r_grp) || is_abelian(s_grp)) {
    tr.note("one of the paired minimal normal subgroups is abelian: bound (d(d-1))!", true);
    return bounded(BoundExpr::fact(BoundExpr::lit(d0)));
  }
  tr.note("both paired minimal normal subgroups are nonabelian", true);

  std::vector<PermGroup> fr = minimal_normal_subgroups(r_grp);
  std::vector<PermGroup> fs = minimal_normal_subgroups(s_grp);
  bool matching = fr.size() == fs.size() && !fr.empty();
  const mpz_class tord = matching ? fr[0].order() : mpz_class(0);
  if (matching) {
    mpz_class pr = 1, ps = 1;
    for (const auto& f : fr) {
      matching = matching && f.order() == tord;
      pr *= f.order();
    }
    for (const auto& f : fs) {
      matching = matching && f.order() == tord;
      ps *= f.order();
    }
    matching = matching && pr == r_grp.order() && ps == s_grp.order();
  }
  if (!tr.note("the paired subgroups decompose into equally many simple factors of one order",
               matching))
    return tr.failed();
  const std::size_t l = fr.size();

  std::vector<PermGroup> all;
  for (const auto& f : fr) all.push_back(f);
  for (const auto& f : fs) all.push_back(f);
  std::vector<std::size_t> everything;
  for (std::size_t t = 0; t < all.size(); ++t) everything.push_back(t);
  PermGroup m = direct_subproduct(dp.group.degree(), all, everything);
  if (!tr.note("direct product of the paired subgroups is transitive on the half",
               m.is_transitive()))
    return tr.failed();
  PermGroup m_alpha = m.point_stabiliser(0);

  bool any_surjective = false;
  for (std::size_t k = 0; k < all.size() && !any_surjective; ++k) {
    std::vector<std::size_t> rest;
    for (std::size_t t = 0; t < all.size(); ++t)
      if (t != k) rest.push_back(t);
    PermGroup cof = direct_subproduct(m.degree(), all, rest);
    any_surjective = factor_projection(m_alpha, all[k], cof).order() == tord;
  }
  if (any_surjective) {
    tr.note("a half-stabiliser projection onto a simple factor is surjective: "
            "bound (d^2 ((d(d-1))!)^2)!",
            true);
    return bounded(BoundExpr::fact(BoundExpr::prod(
        {BoundExpr::pow(BoundExpr::lit(static_cast<unsigned long>(d)), BoundExpr::lit(2ul)),
         BoundExpr::pow(BoundExpr::fact(BoundExpr::lit(d0)), BoundExpr::lit(2ul))})));
  }
  tr.note("every half-stabiliser projection onto a simple factor is proper", true);

  PairValidation mpv = validate_pair(dp.graph, m, dp.d);
  if (!tr.note("half graph with the paired product is a valid vertex-transitive pair",
               mpv.ok()))
    return tr.failed();

  auto reduce_side = [&](std::size_t skip, const char* which)
      -> std::optional<std::pair<VTPair, mpz_class>> {
    std::vector<std::size_t> rest;
    for (std::size_t t = 0; t < all.size(); ++t)
      if (t != skip) rest.push_back(t);
    PermGroup cof = direct_subproduct(m.degree(), all, rest);
    if (!tr.note(std::string("co-product for the ") + which + " side is intransitive",
                 !cof.is_transitive()))
      return std::nullopt;
    if (!tr.note(std::string("co-product for the ") + which +
                     " side equals the kernel of the action on its orbit partition",
                 one_closure(cof, m).order() == cof.order()))
      return std::nullopt;
    QuotientResult q = normal_quotient(*mpv.pair, cof);
    if (!tr.note(std::string("quotient image for the ") + which + " side is simple and transitive",
                 is_simple(q.image_group) && q.image_group.is_transitive()))
      return std::nullopt;
    PairValidation qpv = validate_pair(q.quotient_graph, q.image_group, dp.d);
    if (!tr.note(std::string("quotient pair for the ") + which + " side is valid", qpv.ok()))
      return std::nullopt;
    const mpz_class st = q.image_group.point_stabiliser(q.block_map[0]).order();
    return std::make_pair(*qpv.pair, st);
  };
  auto left = reduce_side(0, "first");
  if (!left) return tr.failed();
  auto right = reduce_side(l, "second");
  if (!right) return tr.failed();

  const mpz_class least = std::min(left->second, right->second);
  BoundExpr lbound = BoundExpr::prod(
      {BoundExpr::pow(BoundExpr::lit(d0), BoundExpr::lit(d0)),
       BoundExpr::pow(BoundExpr::lit(least), BoundExpr::lit(mpz_class(2 * d0)))});
  if (!tr.note("number of simple factors is at most (d(d-1))^(d(d-1)) * min(t1,t2)^(2d(d-1))",
               cmp_bound(lbound, mpz_class(static_cast<unsigned long>(l))) ==
                   BoundCmp::LeCertain))
    return tr.failed();

  ReductionResult out;
  out.outcome = Outcome::ReducedBiQP;
  out.trace = tr.steps;
  out.lambda1 = left->first;
  out.lambda2 = right->first;
  out.stabiliser1 = left->second;
  out.stabiliser2 = right->second;
  return out;
}

}  // namespace detail

// Route a biquasiprimitive pair.  The four-vertex Klein action is bounded
// directly.  A vertex stabiliser transitive on the far half gives the
// d!(d-1)! bound.  Otherwise the distance-<=2 half pair is formed: when its
// group is quasiprimitive the quasiprimitive reduction applies (a half bound
// lifts verbatim because the half's valency bound is d(d-1) and the
// stabiliser orders agree; a half reduction yields both reduced pairs
// equal); when it is not, a regular normal subgroup of the half action, an
// abelian paired factor, or a surjective stabiliser projection each certify
// an explicit bound, and in the remaining case quotients by the two
// one-sided co-products yield the two reduced pairs.  When several pairings
// of minimal normal subgroups are available, all are processed and any
// disagreement in outcome is reported as Unclassified.
inline ReductionResult theorem_mainbiqp(const VTPair& pair,
                                        const ProgressFn& progress = nullptr) {
  detail::Tracer tr(progress);
  BipartiteSplit split = biqp_split(pair);  // throws InputError when not biquasiprimitive
  tr.note("group is biquasiprimitive with a verified bipartition of the vertices", true);
  const std::size_t d = pair.d;
  BoundExpr silly = BoundExpr::prod(
      {BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(d))),
       BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(d - 1)))});

  auto bounded = [&](const BoundExpr& b, const BoundednessCertificate& c) {
    ReductionResult r;
    r.outcome = Outcome::Bounded;
    r.trace = tr.steps;
    r.bound = b;
    r.certificate = c;
    return r;
  };

  if (split.short_circuit) {
    tr.note("four vertices with the regular Klein group: bounding directly", true);
    BoundednessCertificate c = check_bounded(pair, silly);
    if (!tr.note("vertex-stabiliser order is certified at most d!(d-1)!",
                 c.result == BoundCmp::LeCertain))
      return tr.failed();
    return bounded(silly, c);
  }
  tr.note("bipartition agrees across every two-orbit minimal normal subgroup", true);

  if (auto s = lemma_silly_check(pair, split)) {
    tr.note("a vertex stabiliser is transitive on the far half", true);
    if (!tr.note("vertex-stabiliser order is certified at most d!(d-1)!",
                 s->certificate.result == BoundCmp::LeCertain))
      return tr.failed();
    return bounded(s->bound, s->certificate);
  }
  tr.note("vertex stabilisers are intransitive on the far half", true);

  const VTPair& dp = split.delta_pair;
  if (qp_profile(dp.group).quasiprimitive) {
    tr.note("induced half group is quasiprimitive: reducing the distance-<=2 half pair", true);
    ReductionResult sub = theorem_mainqp(dp, progress);
    tr.append(sub.trace);
    switch (sub.outcome) {
      case Outcome::Bounded: {
        BoundednessCertificate c = check_bounded(pair, *sub.bound);
        if (!tr.note("half bound lifts to the original pair", c.result == BoundCmp::LeCertain))
          return tr.failed();
        return bounded(*sub.bound, c);
      }
      case Outcome::ReducedQP: {
        tr.note("half reduction produced a simple transitive pair; both reduced pairs coincide",
                true);
        ReductionResult r;
        r.outcome = Outcome::ReducedBiQP;
        r.trace = tr.steps;
        r.lambda1 = sub.lambda1;
        r.lambda2 = sub.lambda1;
        r.stabiliser1 = sub.stabiliser1;
        r.stabiliser2 = sub.stabiliser1;
        return r;
      }
      default: {
        tr.note("half reduction is inconclusive: " + sub.reason, false);
        return tr.failed();
      }
    }
  }
  tr.note("induced half group is not quasiprimitive: pairing its minimal normal subgroups",
          true);

  if (find_regular_normal(dp)) {
    tr.note("half action has a regular normal subgroup: bound (d(d-1))!", true);
    BoundExpr b = BoundExpr::fact(BoundExpr::lit(static_cast<unsigned long>(dp.d)));
    BoundednessCertificate c = check_bounded(pair, b);
    if (!tr.note("vertex-stabiliser order is certified at most (d(d-1))!",
                 c.result == BoundCmp::LeCertain))
      return tr.failed();
    return bounded(b, c);
  }
  tr.note("half action has no regular normal subgroup in the enumerated lattice", true);

  std::vector<PermGroup> mins = minimal_normal_subgroups(dp.group);
  std::vector<std::pair<std::size_t, std::size_t>> cands;
  for (std::size_t i = 0; i < mins.size(); ++i)
    for (std::size_t j = i + 1; j < mins.size(); ++j) {
      std::vector<Perm> gens;
      for (const Perm& p : mins[i].generators()) gens.push_back(p);
      for (const Perm& p : mins[j].generators()) gens.push_back(p);
      PermGroup prod(dp.group.degree(), std::move(gens));
      if (prod.order() == mins[i].order() * mins[j].order() && prod.is_transitive())
        cands.push_back({i, j});
    }
  if (!tr.note("two minimal normal subgroups of the half action have a transitive direct product",
               !cands.empty()))
    return tr.failed();

  // The first pairing carries the progress stream; any further pairings run
  // silently and must agree with it in outcome.
  const ProgressFn none = nullptr;
  std::optional<ReductionResult> first;
  std::string first_summary;
  bool agree = true;
  for (std::size_t c = 0; c < cands.size(); ++c) {
    detail::Tracer btr(c == 0 ? tr.progress : none);
    ReductionResult br = detail::biqp_type_b_branch(pair, dp, mins[cands[c].first],
                                                    mins[cands[c].second], btr);
    const std::string summary = detail::branch_summary(br);
    if (c == 0) {
      first = std::move(br);
      first_summary = summary;
    } else {
      agree = agree && summary == first_summary;
    }
  }
  tr.append(first->trace);
  if (cands.size() > 1 &&
      !tr.note("every candidate pairing of minimal normal subgroups yields the same outcome",
               agree))
    return tr.failed();
  ReductionResult out = std::move(*first);
  out.trace = tr.steps;
  return out;
}

}  // namespace vtsa
