#include <gtest/gtest.h>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "vtsa/normal.hpp"
#include "vtsa/structure.hpp"

namespace {

using namespace vtsa;

VTPair k4_pair() {
  return corpus::checked_pair(corpus::complete_graph(4), corpus::symmetric(4), 3);
}

VTPair petersen_pair() {
  return corpus::checked_pair(corpus::petersen_graph(), corpus::sym5_on_2subsets(true), 3);
}

VTPair hamming_pair() {
  return corpus::checked_pair(corpus::rook_graph(5),
                              corpus::grid_group(corpus::symmetric(5), true), 8);
}

VTPair hamming_alt_pair() {
  return corpus::checked_pair(corpus::rook_graph(5),
                              corpus::grid_group(corpus::alternating(5), true), 8);
}

VTPair grid_noswap_pair() {
  return corpus::checked_pair(corpus::rook_graph(5),
                              corpus::grid_group(corpus::symmetric(5), false), 8);
}

VTPair cube_pair() {
  return corpus::checked_pair(corpus::cube_graph(3), corpus::hypercube_group(3), 3);
}

VTPair k33_pair() {
  return corpus::checked_pair(corpus::complete_bipartite(3, 3), corpus::k33_group(), 3);
}

VTPair c4_klein_pair() {
  return corpus::checked_pair(corpus::cycle_graph(4), corpus::klein_on_c4(), 2);
}

VTPair c8_dihedral_pair() {
  return corpus::checked_pair(corpus::cycle_graph(8), corpus::dihedral(8), 2);
}

std::vector<std::vector<Point>> grid_rows() {
  std::vector<std::vector<Point>> rows;
  for (Point r = 0; r < 5; ++r) {
    std::vector<Point> cell;
    for (Point c = 0; c < 5; ++c) cell.push_back(static_cast<Point>(5 * r + c));
    rows.push_back(cell);
  }
  return rows;
}

std::vector<std::vector<Point>> grid_cols() {
  std::vector<std::vector<Point>> cols;
  for (Point c = 0; c < 5; ++c) {
    std::vector<Point> cell;
    for (Point r = 0; r < 5; ++r) cell.push_back(static_cast<Point>(5 * r + c));
    cols.push_back(cell);
  }
  return cols;
}

// --------------------------------------------------------------------------
// find_regular_normal

TEST(FindRegularNormal, HypercubeTranslations) {
  auto reg = find_regular_normal(cube_pair());
  ASSERT_TRUE(reg.has_value());
  EXPECT_EQ(reg->order(), 8);
  EXPECT_TRUE(reg->is_transitive());
  EXPECT_TRUE(reg->same_group(corpus::hypercube_translations(3)));
}

TEST(FindRegularNormal, PetersenHasNone) {
  VTPair pair = corpus::checked_pair(corpus::petersen_graph(), corpus::sym5_on_2subsets(), 3);
  EXPECT_FALSE(find_regular_normal(pair).has_value());
}

TEST(FindRegularNormal, KleinRegularRepresentation) {
  auto reg = find_regular_normal(c4_klein_pair());
  ASSERT_TRUE(reg.has_value());
  EXPECT_TRUE(reg->same_group(corpus::klein_on_c4()));
}

// The rotation subgroup of the dihedral group is regular and normal, but it
// is not a product of minimal normal subgroups (the only minimal normal
// subgroup is the half-turn), so the lattice search must report a miss.
TEST(FindRegularNormal, DihedralRotationsOutsideLattice) {
  VTPair pair = c8_dihedral_pair();
  auto mins = minimal_normal_subgroups(pair.group);
  ASSERT_EQ(mins.size(), 1u);
  EXPECT_EQ(mins[0].order(), 2);
  EXPECT_FALSE(find_regular_normal(pair).has_value());
}

// --------------------------------------------------------------------------
// classify_qp_case

TEST(ClassifyQpCase, CompleteGraphRegularNormal) {
  QpCase qc = classify_qp_case(k4_pair());
  EXPECT_EQ(qc.kind, QpKind::RegularNormal);
  ASSERT_TRUE(qc.witness.has_value());
  EXPECT_EQ(qc.witness->order(), 4);
  EXPECT_TRUE(qc.witness->is_transitive());
}

// The full hypercube group is not quasiprimitive (the central antipodal
// involution generates a normal subgroup with four orbits), so the
// classification must reject it even though a regular normal subgroup exists.
TEST(ClassifyQpCase, HypercubePairIsNotQuasiprimitive) {
  EXPECT_FALSE(qp_profile(cube_pair().group).quasiprimitive);
  EXPECT_THROW(classify_qp_case(cube_pair()), InputError);
}

TEST(ClassifyQpCase, PetersenAlmostSimple) {
  QpCase qc = classify_qp_case(petersen_pair());
  EXPECT_EQ(qc.kind, QpKind::AlmostSimple);
  ASSERT_TRUE(qc.socle_data.has_value());
  EXPECT_EQ(qc.socle_data->l, 1u);
  EXPECT_EQ(qc.socle_data->socle.order(), 60);
}

TEST(ClassifyQpCase, HammingProductAction) {
  QpCase qc = classify_qp_case(hamming_pair());
  EXPECT_EQ(qc.kind, QpKind::ProductAction);
  EXPECT_EQ(qc.l, 2u);
  EXPECT_EQ(qc.factor_order, 60);
  EXPECT_TRUE(qc.subdirect_checked);
}

TEST(ClassifyQpCase, DiagonalSquareSocleCofactorRegular) {
  VTPair pair = corpus::a5_diag_square_pair();
  EXPECT_EQ(pair.group.order(), 7200);
  QpCase qc = classify_qp_case(pair);
  EXPECT_EQ(qc.kind, QpKind::SocleCofactorRegular);
  ASSERT_TRUE(qc.witness.has_value());
  EXPECT_EQ(qc.witness->order(), 60);
  EXPECT_TRUE(qc.witness->is_transitive());
  ASSERT_TRUE(qc.socle_data.has_value());
  EXPECT_EQ(qc.socle_data->l, 2u);
  EXPECT_EQ(qc.socle_data->socle.order(), 3600);
}

TEST(ClassifyQpCase, RejectsNonQuasiprimitive) {
  EXPECT_THROW(classify_qp_case(c8_dihedral_pair()), InputError);
}

// --------------------------------------------------------------------------
// pa_reduce

TEST(PaReduce, HammingReducesToCompleteFive) {
  ReductionResult res = pa_reduce(hamming_pair());
  ASSERT_EQ(res.outcome, Outcome::ReducedQP);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.lambda1.has_value());
  EXPECT_EQ(res.lambda1->graph, corpus::complete_graph(5));
  EXPECT_EQ(res.lambda1->group.order(), 60);
  EXPECT_TRUE(is_simple(res.lambda1->group));
  EXPECT_EQ(res.stabiliser1, 12);
  EXPECT_FALSE(res.trace.empty());
}

TEST(PaReduce, AlternatingGridReducesTheSame) {
  ReductionResult res = pa_reduce(hamming_alt_pair());
  ASSERT_EQ(res.outcome, Outcome::ReducedQP);
  EXPECT_TRUE(res.all_steps_pass());
  EXPECT_EQ(res.lambda1->graph, corpus::complete_graph(5));
  EXPECT_EQ(res.stabiliser1, 12);
}

// Quotienting the socle pair by either one of the two simple factors gives
// the same quotient graph, so the reduction does not depend on the choice.
TEST(PaReduce, QuotientsByEitherCofactorAgree) {
  VTPair pair = hamming_pair();
  SocleDecomposition soc = socle(pair.group);
  ASSERT_EQ(soc.l, 2u);
  auto npv = validate_pair(pair.graph, soc.socle, pair.d);
  ASSERT_TRUE(npv.ok());
  QuotientResult q0 = normal_quotient(*npv.pair, soc.factors[1]);
  QuotientResult q1 = normal_quotient(*npv.pair, soc.factors[0]);
  EXPECT_EQ(q0.quotient_graph, q1.quotient_graph);
  EXPECT_EQ(q0.quotient_graph, corpus::complete_graph(5));
  EXPECT_EQ(q0.image_group.order(), q1.image_group.order());
}

TEST(PaReduce, RejectsAlmostSimpleInput) {
  EXPECT_THROW(pa_reduce(petersen_pair()), InputError);
}

TEST(PaReduce, SandwichIsExactForHamming) {
  VTPair pair = hamming_pair();
  SocleDecomposition soc = socle(pair.group);
  mpz_class n_alpha = soc.socle.point_stabiliser(0).order();
  EXPECT_EQ(n_alpha, 144);
  ReductionResult res = pa_reduce(pair);
  ASSERT_EQ(res.outcome, Outcome::ReducedQP);
  EXPECT_EQ(res.stabiliser1, 12);
  EXPECT_LE(res.stabiliser1, n_alpha);
  EXPECT_EQ(n_alpha, res.stabiliser1 * res.stabiliser1);  // exactly t^l with l = 2
}

// --------------------------------------------------------------------------
// verify_nrorbits

TEST(VerifyNrOrbits, RowBlocksUnderProductGroup) {
  VTPair pair = grid_noswap_pair();
  PermGroup n = socle(pair.group).socle;
  EXPECT_EQ(n.order(), 3600);
  NrOrbitsReport rep = verify_nrorbits(pair, grid_rows(), n);
  EXPECT_TRUE(rep.hypotheses_ok());
  EXPECT_EQ(rep.block_count, 5u);
  EXPECT_EQ(rep.neighbour_count, 4u);  // the block quotient is a complete graph
  EXPECT_EQ(rep.orbit_count, 1u);
  EXPECT_TRUE(rep.bound_ok);
  EXPECT_TRUE(rep.ok());
}

TEST(VerifyNrOrbits, SwappedGridRowsNotInvariant) {
  VTPair pair = hamming_pair();  // includes the coordinate swap
  PermGroup n = socle(pair.group).socle;
  NrOrbitsReport rep = verify_nrorbits(pair, grid_rows(), n);
  EXPECT_FALSE(rep.partition_invariant);
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.diagnoses.empty());
}

TEST(VerifyNrOrbits, SingletonBlocksCountStabiliserOrbits) {
  VTPair pair = petersen_pair();
  std::vector<std::vector<Point>> singletons;
  for (Point v = 0; v < 10; ++v) singletons.push_back({v});
  NrOrbitsReport rep = verify_nrorbits(pair, singletons, pair.group);
  EXPECT_TRUE(rep.hypotheses_ok());
  EXPECT_EQ(rep.neighbour_count, 3u);
  EXPECT_EQ(rep.orbit_count, 1u);  // the vertex stabiliser is transitive on the neighbours
  EXPECT_TRUE(rep.ok());
}

TEST(VerifyNrOrbits, LexFibresGiveTwoOrbits) {
  VTPair pair = corpus::lex_cycle_k2_pair(6);
  std::vector<std::vector<Point>> fibres;
  for (Point i = 0; i < 6; ++i)
    fibres.push_back({static_cast<Point>(2 * i), static_cast<Point>(2 * i + 1)});
  std::vector<Perm> gens = corpus::lex_cycle_k2_base(6).generators();
  std::vector<Point> rot(12);
  for (Point c = 0; c < 6; ++c)
    for (Point t = 0; t < 2; ++t)
      rot[2 * c + t] = static_cast<Point>(2 * ((c + 1) % 6) + t);
  gens.emplace_back(rot);
  PermGroup n(12, gens);
  EXPECT_EQ(n.order() * 2, pair.group.order());
  NrOrbitsReport rep = verify_nrorbits(pair, fibres, n);
  EXPECT_TRUE(rep.hypotheses_ok());
  EXPECT_EQ(rep.neighbour_count, 2u);
  // The fibre stabiliser in N is the flip subgroup, which fixes every block,
  // so the two quotient neighbours form two orbits.
  EXPECT_EQ(rep.orbit_count, 2u);
  EXPECT_TRUE(rep.bound_ok);
}

TEST(VerifyNrOrbits, NonNormalSubgroupDiagnosed) {
  VTPair pair = grid_noswap_pair();
  PermGroup n(25, {corpus::grid_embed(corpus::cyc(5, {{0, 1}}), true)});
  NrOrbitsReport rep = verify_nrorbits(pair, grid_rows(), n);
  EXPECT_FALSE(rep.n_normal);
  EXPECT_FALSE(rep.ok());
  bool mentioned = false;
  for (const std::string& s : rep.diagnoses) mentioned = mentioned || s.find("normal") != std::string::npos;
  EXPECT_TRUE(mentioned);
}

// --------------------------------------------------------------------------
// assemble_pa_context / verify_lemma_proj

TEST(LemmaProj, HammingContextRecovers) {
  PaContext ctx = assemble_pa_context(hamming_pair());
  ASSERT_TRUE(ctx.recovered) << ctx.failure;
  EXPECT_TRUE(ctx.faithful);
  ASSERT_EQ(ctx.coordinate_cells.size(), 2u);
  EXPECT_EQ(ctx.coordinate_cells[0].size(), 5u);
  EXPECT_EQ(ctx.coordinate_cells[1].size(), 5u);
  EXPECT_EQ(ctx.sigma.size(), 25u);  // the common refinement is the singleton partition
  EXPECT_EQ(ctx.base_block, 0u);
}

TEST(LemmaProj, HammingProjectionsAgree) {
  VTPair pair = hamming_pair();
  PaContext ctx = assemble_pa_context(pair);
  ASSERT_TRUE(ctx.recovered) << ctx.failure;
  for (std::size_t i = 0; i < 2; ++i) {
    LemmaProjReport rep = verify_lemma_proj(pair, ctx, i);
    EXPECT_TRUE(rep.equal) << "factor " << i;
    // The factor normaliser is the coordinate product; it meets the vertex
    // stabiliser in Sym(4) x Sym(4), whose coordinate image is Sym(4).
    EXPECT_EQ(rep.alpha_projection_order, 24);
    EXPECT_EQ(rep.block_projection_order, 24);
    EXPECT_EQ(rep.point_component_order, 24);
  }
}

TEST(LemmaProj, DegenerateSingleFactor) {
  VTPair pair = petersen_pair();
  PaContext ctx = assemble_pa_context(pair);
  ASSERT_TRUE(ctx.recovered) << ctx.failure;
  EXPECT_EQ(ctx.sigma.size(), 10u);
  LemmaProjReport rep = verify_lemma_proj(pair, ctx, 0);
  EXPECT_TRUE(rep.equal);
  EXPECT_EQ(rep.point_component_order, 6);
  EXPECT_EQ(rep.alpha_projection_order, 6);
}

TEST(LemmaProj, RelabelledHammingStillAgrees) {
  std::mt19937 rng(20260815u);
  VTPair base = hamming_pair();
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Point> img(25);
    std::iota(img.begin(), img.end(), Point{0});
    std::shuffle(img.begin(), img.end(), rng);
    Perm rho(img);
    std::vector<std::pair<Point, Point>> edges;
    for (Point u = 0; u < 25; ++u)
      for (Point v : base.graph.adjacency[u])
        if (u < v) edges.push_back({rho[u], rho[v]});
    std::vector<Perm> gens;
    for (const Perm& h : base.group.generators()) gens.push_back(h.conjugated_by(rho));
    VTPair pair = corpus::checked_pair(make_graph(25, edges, false), PermGroup(25, gens), 8);
    PaContext ctx = assemble_pa_context(pair);
    ASSERT_TRUE(ctx.recovered) << ctx.failure;
    for (std::size_t i = 0; i < 2; ++i) {
      LemmaProjReport rep = verify_lemma_proj(pair, ctx, i);
      EXPECT_TRUE(rep.equal) << "trial " << trial << " factor " << i;
      EXPECT_EQ(rep.point_component_order, 24);
    }
  }
}

TEST(LemmaProj, UnrecoveredContextThrows) {
  PaContext ctx;
  ctx.recovered = false;
  ctx.failure = "synthetic";
  EXPECT_THROW(verify_lemma_proj(hamming_pair(), ctx, 0), InputError);
  PaContext good = assemble_pa_context(hamming_pair());
  EXPECT_THROW(verify_lemma_proj(hamming_pair(), good, 5), InputError);
}

// --------------------------------------------------------------------------
// theorem_mainqp

TEST(MainQp, CompleteGraphBoundedByFactorial) {
  ReductionResult res = theorem_mainqp(k4_pair());
  ASSERT_EQ(res.outcome, Outcome::Bounded);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.bound.has_value());
  ASSERT_TRUE(res.bound->exact().has_value());
  EXPECT_EQ(*res.bound->exact(), 6);  // d! with d = 3
  ASSERT_TRUE(res.certificate.has_value());
  EXPECT_EQ(res.certificate->stabiliser_order, 6);
  EXPECT_EQ(res.certificate->result, BoundCmp::LeCertain);
}

TEST(MainQp, DiagonalSquareBoundedByCofactorRoute) {
  ReductionResult res = theorem_mainqp(corpus::a5_diag_square_pair());
  ASSERT_EQ(res.outcome, Outcome::Bounded);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.bound.has_value());
  EXPECT_EQ(res.bound->to_string(), "(fact (mul 15 (fact 15)))");
  // (15 * 15!)! is far beyond exact evaluation; the certificate must come
  // from the interval path.
  EXPECT_FALSE(res.bound->exact().has_value());
  ASSERT_TRUE(res.certificate.has_value());
  EXPECT_EQ(res.certificate->stabiliser_order, 120);
  EXPECT_EQ(res.certificate->result, BoundCmp::LeCertain);
}

TEST(MainQp, PetersenReducesToItself) {
  ReductionResult res = theorem_mainqp(petersen_pair());
  ASSERT_EQ(res.outcome, Outcome::ReducedQP);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.lambda1.has_value());
  EXPECT_EQ(res.lambda1->graph, corpus::petersen_graph());
  EXPECT_TRUE(res.lambda1->group.same_group(corpus::sym5_on_2subsets(true)));
  EXPECT_EQ(res.stabiliser1, 6);
}

TEST(MainQp, HammingRoutesThroughProductAction) {
  ReductionResult res = theorem_mainqp(hamming_pair());
  ASSERT_EQ(res.outcome, Outcome::ReducedQP);
  EXPECT_TRUE(res.all_steps_pass());
  EXPECT_EQ(res.lambda1->graph, corpus::complete_graph(5));
  EXPECT_EQ(res.stabiliser1, 12);
}

TEST(MainQp, RejectsNonQuasiprimitive) {
  EXPECT_THROW(theorem_mainqp(c8_dihedral_pair()), InputError);
}

TEST(MainQp, ProgressStreamsEveryStepInOrder) {
  std::vector<TraceStep> seen;
  ReductionResult res = theorem_mainqp(hamming_pair(), [&](const TraceStep& s) {
    seen.push_back(s);
    return true;
  });
  ASSERT_EQ(seen.size(), res.trace.size());
  for (std::size_t i = 0; i < seen.size(); ++i) {
    EXPECT_EQ(seen[i].what, res.trace[i].what);
    EXPECT_EQ(seen[i].pass, res.trace[i].pass);
  }
}

TEST(MainQp, CancellationThrowsBetweenSteps) {
  int steps = 0;
  EXPECT_THROW(theorem_mainqp(hamming_pair(),
                              [&](const TraceStep&) { return ++steps < 3; }),
               Error);
  EXPECT_EQ(steps, 3);
}

// --------------------------------------------------------------------------
// biqp_split

TEST(BiqpSplit, CompleteBipartite) {
  BipartiteSplit split = biqp_split(k33_pair());
  EXPECT_FALSE(split.short_circuit);
  EXPECT_EQ(split.half1, (std::vector<Point>{0, 1, 2}));
  EXPECT_EQ(split.half2, (std::vector<Point>{3, 4, 5}));
  EXPECT_EQ(split.g_plus.order(), 36);
  EXPECT_EQ(split.h.order(), 6);
  EXPECT_TRUE(split.cross_edges_only);
  EXPECT_EQ(split.delta_pair.graph, corpus::complete_graph(3));
  EXPECT_EQ(split.delta_pair.d, 6u);  // d(d-1) with d = 3
}

TEST(BiqpSplit, KleinShortCircuit) {
  BipartiteSplit split = biqp_split(c4_klein_pair());
  EXPECT_TRUE(split.short_circuit);
  EXPECT_EQ(split.half1, (std::vector<Point>{0, 1}));
  EXPECT_EQ(split.half2, (std::vector<Point>{2, 3}));
  EXPECT_EQ(split.g_plus.order(), 2);
  EXPECT_FALSE(split.cross_edges_only);  // the cycle edge {0,1} stays inside a half
  EXPECT_EQ(split.delta_pair.graph, corpus::complete_graph(2));
}

TEST(BiqpSplit, RejectsNonBiquasiprimitive) {
  EXPECT_THROW(biqp_split(cube_pair()), InputError);
  EXPECT_THROW(biqp_split(petersen_pair()), InputError);
}

TEST(BiqpSplit, TwistedDouble) {
  VTPair pair = corpus::a5_twisted_double_pair();
  EXPECT_EQ(pair.group.order(), 120);
  BipartiteSplit split = biqp_split(pair);
  EXPECT_FALSE(split.short_circuit);
  EXPECT_EQ(split.half1, (std::vector<Point>{0, 1, 2, 3, 4}));
  EXPECT_EQ(split.g_plus.order(), 60);
  EXPECT_TRUE(split.h.same_group(corpus::alternating(5)));
  EXPECT_TRUE(split.cross_edges_only);
  EXPECT_EQ(split.delta_pair.graph, corpus::complete_graph(5));
  EXPECT_EQ(split.delta_pair.d, 12u);  // d(d-1) with d = 4
}

TEST(BiqpSplit, GridTwistedDouble) {
  VTPair pair = corpus::grid_twisted_double_pair();
  EXPECT_EQ(pair.group.order(), 7200);
  BipartiteSplit split = biqp_split(pair);
  EXPECT_FALSE(split.short_circuit);
  EXPECT_EQ(split.half1.size(), 25u);
  EXPECT_EQ(split.g_plus.order(), 3600);
  EXPECT_EQ(split.h.order(), 3600);
  EXPECT_TRUE(split.cross_edges_only);
  // Any two grid points on one half share a cross neighbour, so the
  // distance-<=2 graph is complete.
  EXPECT_EQ(split.delta_pair.graph, corpus::complete_graph(25));
  EXPECT_EQ(split.delta_pair.d, 56u);  // d(d-1) with d = 8
}

// --------------------------------------------------------------------------
// lemma_silly_check

TEST(LemmaSilly, CompleteBipartiteMeetsBoundWithEquality) {
  VTPair pair = k33_pair();
  BipartiteSplit split = biqp_split(pair);
  auto silly = lemma_silly_check(pair, split);
  ASSERT_TRUE(silly.has_value());
  ASSERT_TRUE(silly->bound.exact().has_value());
  EXPECT_EQ(*silly->bound.exact(), 12);  // 3! * 2!
  EXPECT_EQ(silly->certificate.stabiliser_order, 12);
  EXPECT_EQ(silly->certificate.result, BoundCmp::LeCertain);
}

TEST(LemmaSilly, KleinStabiliserIsIntransitive) {
  VTPair pair = c4_klein_pair();
  BipartiteSplit split = biqp_split(pair);
  EXPECT_FALSE(lemma_silly_check(pair, split).has_value());
}

TEST(LemmaSilly, TwistedDoubleCrossActionIntransitive) {
  VTPair pair = corpus::a5_twisted_double_pair();
  BipartiteSplit split = biqp_split(pair);
  // The vertex stabiliser fixes the unique non-neighbour on the far half.
  EXPECT_FALSE(lemma_silly_check(pair, split).has_value());
}

// --------------------------------------------------------------------------
// wreath_component

TEST(WreathComponent, ProductActionCoordinates) {
  PermGroup g = corpus::grid_group(corpus::symmetric(5), true);
  std::vector<std::vector<std::vector<Point>>> factors{grid_rows(), grid_cols()};
  PermGroup c0 = wreath_component(g, factors, 0);
  PermGroup c1 = wreath_component(g, factors, 1);
  EXPECT_TRUE(c0.same_group(corpus::symmetric(5)));
  EXPECT_TRUE(c1.same_group(corpus::symmetric(5)));
}

TEST(WreathComponent, DirectProductSecondFactor) {
  // C4 x S3 acting coordinatewise on 4 x 3 points (vertex = 3i + j).
  std::vector<Point> shift(12), swap01(12), rot3(12);
  for (Point i = 0; i < 4; ++i)
    for (Point j = 0; j < 3; ++j) {
      const Point v = static_cast<Point>(3 * i + j);
      shift[v] = static_cast<Point>(3 * ((i + 1) % 4) + j);
      swap01[v] = static_cast<Point>(3 * i + (j == 0 ? 1 : j == 1 ? Point{0} : j));
      rot3[v] = static_cast<Point>(3 * i + (j + 1) % 3);
    }
  PermGroup g(12, {Perm(shift), Perm(swap01), Perm(rot3)});
  EXPECT_EQ(g.order(), 24);
  std::vector<std::vector<std::vector<Point>>> factors(2);
  for (Point i = 0; i < 4; ++i) {
    std::vector<Point> cell;
    for (Point j = 0; j < 3; ++j) cell.push_back(static_cast<Point>(3 * i + j));
    factors[0].push_back(cell);
  }
  for (Point j = 0; j < 3; ++j) {
    std::vector<Point> cell;
    for (Point i = 0; i < 4; ++i) cell.push_back(static_cast<Point>(3 * i + j));
    factors[1].push_back(cell);
  }
  EXPECT_TRUE(wreath_component(g, factors, 1).same_group(corpus::symmetric(3)));
  EXPECT_EQ(wreath_component(g, factors, 0).order(), 4);
}

TEST(WreathComponent, HammingSocleComponent) {
  PermGroup soc = socle(corpus::grid_group(corpus::symmetric(5), true)).socle;
  std::vector<std::vector<std::vector<Point>>> factors{grid_rows(), grid_cols()};
  EXPECT_TRUE(wreath_component(soc, factors, 0).same_group(corpus::alternating(5)));
}

TEST(WreathComponent, RejectsUnpreservedStructure) {
  PermGroup g = corpus::grid_group(corpus::symmetric(5), true);
  // The coordinate swap maps the row partition to the column partition,
  // which is missing from the supplied list.
  EXPECT_THROW(wreath_component(g, {grid_rows()}, 0), InputError);
  EXPECT_THROW(wreath_component(g, {grid_rows(), grid_rows()}, 0), InputError);
  EXPECT_THROW(wreath_component(g, {grid_rows(), grid_cols()}, 2), InputError);
}

// --------------------------------------------------------------------------
// theorem_mainbiqp

TEST(MainBiqp, CompleteBipartiteBoundedDirectly) {
  ReductionResult res = theorem_mainbiqp(k33_pair());
  ASSERT_EQ(res.outcome, Outcome::Bounded);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.bound.has_value());
  ASSERT_TRUE(res.bound->exact().has_value());
  EXPECT_EQ(*res.bound->exact(), 12);  // d!(d-1)! with d = 3, met with equality
  EXPECT_EQ(res.certificate->stabiliser_order, 12);
  EXPECT_EQ(res.certificate->result, BoundCmp::LeCertain);
}

TEST(MainBiqp, KleinShortCircuitBounded) {
  ReductionResult res = theorem_mainbiqp(c4_klein_pair());
  ASSERT_EQ(res.outcome, Outcome::Bounded);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.bound->exact().has_value());
  EXPECT_EQ(*res.bound->exact(), 2);  // d!(d-1)! with d = 2
  EXPECT_EQ(res.certificate->stabiliser_order, 1);
}

TEST(MainBiqp, TwistedDoubleReducesThroughQuasiprimitiveHalf) {
  ReductionResult res = theorem_mainbiqp(corpus::a5_twisted_double_pair());
  ASSERT_EQ(res.outcome, Outcome::ReducedBiQP);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.lambda1.has_value());
  ASSERT_TRUE(res.lambda2.has_value());
  EXPECT_EQ(res.lambda1->graph, corpus::complete_graph(5));
  EXPECT_EQ(res.lambda2->graph, res.lambda1->graph);
  EXPECT_EQ(res.lambda1->group.order(), 60);
  EXPECT_EQ(res.stabiliser1, 12);
  EXPECT_EQ(res.stabiliser2, 12);
  bool via_half = false;
  for (const TraceStep& s : res.trace)
    via_half = via_half || s.what.find("half group is quasiprimitive") != std::string::npos;
  EXPECT_TRUE(via_half);
}

TEST(MainBiqp, GridTwistedReducesBothSides) {
  ReductionResult res = theorem_mainbiqp(corpus::grid_twisted_double_pair());
  ASSERT_EQ(res.outcome, Outcome::ReducedBiQP);
  EXPECT_TRUE(res.all_steps_pass());
  ASSERT_TRUE(res.lambda1.has_value());
  ASSERT_TRUE(res.lambda2.has_value());
  EXPECT_EQ(res.lambda1->graph, corpus::complete_graph(5));
  EXPECT_EQ(res.lambda2->graph, corpus::complete_graph(5));
  EXPECT_EQ(res.lambda1->group.order(), 60);
  EXPECT_EQ(res.lambda2->group.order(), 60);
  EXPECT_EQ(res.stabiliser1, 12);
  EXPECT_EQ(res.stabiliser2, 12);
  bool paired = false;
  for (const TraceStep& s : res.trace)
    paired = paired || s.what.find("pairing its minimal normal subgroups") != std::string::npos;
  EXPECT_TRUE(paired);
}

TEST(MainBiqp, RejectsQuasiprimitiveInput) {
  EXPECT_THROW(theorem_mainbiqp(petersen_pair()), InputError);
}

TEST(MainBiqp, ProgressStreamMatchesTrace) {
  std::vector<std::string> seen;
  ReductionResult res = theorem_mainbiqp(corpus::grid_twisted_double_pair(),
                                         [&](const TraceStep& s) {
                                           seen.push_back(s.what);
                                           return true;
                                         });
  ASSERT_EQ(seen.size(), res.trace.size());
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], res.trace[i].what);
}

TEST(MainBiqp, CancellationThrowsBetweenSteps) {
  int steps = 0;
  EXPECT_THROW(theorem_mainbiqp(corpus::a5_twisted_double_pair(),
                                [&](const TraceStep&) { return ++steps < 2; }),
               Error);
  EXPECT_EQ(steps, 2);
}

// --------------------------------------------------------------------------
// corpus-wide invariants

TEST(ReductionInvariants, CorpusOutcomesAreCleanAndCertified) {
  std::vector<ReductionResult> results;
  results.push_back(theorem_mainqp(k4_pair()));
  results.push_back(theorem_mainqp(petersen_pair()));
  results.push_back(theorem_mainqp(hamming_pair()));
  results.push_back(theorem_mainqp(corpus::a5_diag_square_pair()));
  results.push_back(theorem_mainbiqp(k33_pair()));
  results.push_back(theorem_mainbiqp(c4_klein_pair()));
  results.push_back(theorem_mainbiqp(corpus::a5_twisted_double_pair()));
  results.push_back(theorem_mainbiqp(corpus::grid_twisted_double_pair()));
  for (std::size_t i = 0; i < results.size(); ++i) {
    const ReductionResult& r = results[i];
    EXPECT_NE(r.outcome, Outcome::Unclassified) << "case " << i << ": " << r.reason;
    EXPECT_TRUE(r.all_steps_pass()) << "case " << i;
    if (r.outcome == Outcome::Bounded) {
      ASSERT_TRUE(r.bound.has_value() && r.certificate.has_value()) << "case " << i;
      EXPECT_EQ(r.certificate->result, BoundCmp::LeCertain) << "case " << i;
      EXPECT_EQ(cmp_bound(*r.bound, r.certificate->stabiliser_order), BoundCmp::LeCertain)
          << "case " << i;
    }
    if (r.outcome == Outcome::ReducedQP || r.outcome == Outcome::ReducedBiQP) {
      ASSERT_TRUE(r.lambda1.has_value()) << "case " << i;
      EXPECT_TRUE(is_simple(r.lambda1->group)) << "case " << i;
      EXPECT_TRUE(r.lambda1->group.is_transitive()) << "case " << i;
      EXPECT_EQ(r.lambda1->group.point_stabiliser(0).order(), r.stabiliser1) << "case " << i;
    }
    if (r.outcome == Outcome::ReducedBiQP) {
      ASSERT_TRUE(r.lambda2.has_value()) << "case " << i;
      EXPECT_TRUE(is_simple(r.lambda2->group)) << "case " << i;
      EXPECT_TRUE(r.lambda2->group.is_transitive()) << "case " << i;
      EXPECT_EQ(r.lambda2->group.point_stabiliser(0).order(), r.stabiliser2) << "case " << i;
    }
  }
}

}  // namespace
