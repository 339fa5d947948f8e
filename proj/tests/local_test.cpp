#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "corpus.hpp"
#include "oracle.hpp"
#include "vtsa/local.hpp"

namespace {

using namespace vtsa;

// Brute-force reference: enumerate the full group, keep the elements fixing
// alpha, restrict them to the sorted neighbour list, and collect the set of
// distinct restrictions.
std::set<std::vector<Point>> brute_local_images(const VTPair& pair, Point alpha) {
  std::vector<Perm> elems =
      oracle::elements(pair.group.degree(), pair.group.generators());
  const std::vector<Point>& nb = pair.graph.adjacency[alpha];
  std::set<std::vector<Point>> images;
  for (const Perm& e : elems) {
    if (e[alpha] != alpha) continue;
    std::vector<Point> img(nb.size());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      auto it = std::lower_bound(nb.begin(), nb.end(), e[nb[i]]);
      EXPECT_TRUE(it != nb.end() && *it == e[nb[i]]) << "neighbourhood not preserved";
      img[i] = static_cast<Point>(it - nb.begin());
    }
    images.insert(img);
  }
  return images;
}

TEST(LocalAction, CycleWithDihedralGroup) {
  VTPair pair = corpus::checked_pair(corpus::cycle_graph(4), corpus::dihedral(4), 2);
  LocalActionReport rep = local_action(pair, 0);
  EXPECT_EQ(rep.vertex, 0u);
  EXPECT_EQ(rep.neighbourhood_size, 2u);
  EXPECT_EQ(rep.stabiliser_order, 2);
  EXPECT_EQ(rep.induced_group.order(), 2);
  EXPECT_EQ(rep.kernel_order, 1);
  EXPECT_TRUE(rep.flags.transitive);
  EXPECT_TRUE(rep.flags.two_transitive);
  EXPECT_TRUE(rep.flags.primitive);
  EXPECT_TRUE(rep.flags.quasiprimitive);
  EXPECT_TRUE(rep.flags.semiprimitive);
  EXPECT_TRUE(rep.reason.empty());
}

TEST(LocalAction, PetersenWithSym5) {
  VTPair pair = corpus::checked_pair(corpus::petersen_graph(), corpus::sym5_on_2subsets(), 3);
  LocalActionReport rep = local_action(pair, 7);  // arbitrary vertex
  EXPECT_EQ(rep.neighbourhood_size, 3u);
  EXPECT_EQ(rep.stabiliser_order, 12);
  EXPECT_EQ(rep.induced_group.order(), 6);
  EXPECT_EQ(rep.kernel_order, 2);
  EXPECT_TRUE(rep.flags.transitive);
  EXPECT_TRUE(rep.flags.two_transitive);
  EXPECT_TRUE(rep.flags.primitive);
  EXPECT_TRUE(rep.flags.quasiprimitive);
  EXPECT_TRUE(rep.flags.semiprimitive);
}

TEST(LocalAction, LexCycleIntransitive) {
  // One co-fibre neighbour is fixed by the whole vertex stabiliser while the
  // four cross-fibre neighbours are not, so the local action splits.
  VTPair pair = corpus::lex_cycle_k2_pair(8);
  LocalActionReport rep = local_action(pair, 0);
  EXPECT_EQ(rep.neighbourhood_size, 5u);
  EXPECT_EQ(rep.stabiliser_order, 256);
  EXPECT_EQ(rep.induced_group.order(), 8);
  EXPECT_EQ(rep.kernel_order, 32);
  EXPECT_FALSE(rep.flags.transitive);
  EXPECT_FALSE(rep.flags.two_transitive);
  EXPECT_FALSE(rep.flags.primitive);
  EXPECT_FALSE(rep.flags.quasiprimitive);
  EXPECT_FALSE(rep.flags.semiprimitive);
  EXPECT_EQ(rep.reason, "local action intransitive");
}

TEST(LocalAction, CompleteBipartiteTwoTransitive) {
  VTPair pair = corpus::checked_pair(corpus::complete_bipartite(3, 3), corpus::k33_group(), 3);
  LocalActionReport rep = classify_pair_locally(pair);
  EXPECT_EQ(rep.neighbourhood_size, 3u);
  EXPECT_EQ(rep.stabiliser_order, 12);
  EXPECT_EQ(rep.induced_group.order(), 6);
  EXPECT_EQ(rep.kernel_order, 2);
  EXPECT_TRUE(rep.flags.two_transitive);
}

TEST(LocalAction, CubeFaithfulTwoTransitive) {
  VTPair pair = corpus::checked_pair(corpus::cube_graph(3), corpus::hypercube_group(3), 3);
  LocalActionReport rep = classify_pair_locally(pair);
  EXPECT_EQ(rep.neighbourhood_size, 3u);
  EXPECT_EQ(rep.stabiliser_order, 6);
  EXPECT_EQ(rep.induced_group.order(), 6);
  EXPECT_EQ(rep.kernel_order, 1);
  EXPECT_TRUE(rep.flags.two_transitive);
  EXPECT_TRUE(rep.flags.primitive);
}

TEST(LocalAction, RookWreathImprimitiveTransitive) {
  // The coordinate swap fuses the two 4-point suborbits, giving a transitive
  // but imprimitive local action (row-mates and column-mates form blocks)
  // that is neither quasiprimitive nor semiprimitive.
  VTPair pair = corpus::checked_pair(corpus::rook_graph(5),
                                     corpus::grid_group(corpus::symmetric(5), true), 8);
  LocalActionReport rep = local_action(pair, 0);
  EXPECT_EQ(rep.neighbourhood_size, 8u);
  EXPECT_EQ(rep.stabiliser_order, 1152);
  EXPECT_EQ(rep.induced_group.order(), 1152);
  EXPECT_EQ(rep.kernel_order, 1);
  EXPECT_TRUE(rep.flags.transitive);
  EXPECT_FALSE(rep.flags.two_transitive);
  EXPECT_FALSE(rep.flags.primitive);
  EXPECT_FALSE(rep.flags.quasiprimitive);
  EXPECT_FALSE(rep.flags.semiprimitive);
}

TEST(LocalAction, RookProductIntransitive) {
  // Without the coordinate swap the row-mates and column-mates are separate
  // stabiliser orbits.
  VTPair pair = corpus::checked_pair(corpus::rook_graph(5),
                                     corpus::grid_group(corpus::symmetric(5), false), 8);
  LocalActionReport rep = local_action(pair, 0);
  EXPECT_EQ(rep.stabiliser_order, 576);
  EXPECT_EQ(rep.induced_group.order(), 576);
  EXPECT_EQ(rep.kernel_order, 1);
  EXPECT_FALSE(rep.flags.transitive);
  EXPECT_EQ(rep.reason, "local action intransitive");
}

TEST(LocalAction, VertexOutOfRange) {
  VTPair pair = corpus::checked_pair(corpus::cycle_graph(4), corpus::dihedral(4), 2);
  EXPECT_THROW(local_action(pair, 4), InputError);
}

TEST(LocalAction, BruteForceAgreement) {
  std::vector<VTPair> pairs;
  pairs.push_back(corpus::checked_pair(corpus::cycle_graph(4), corpus::dihedral(4), 2));
  pairs.push_back(corpus::checked_pair(corpus::cycle_graph(7), corpus::dihedral(7), 2));
  pairs.push_back(corpus::checked_pair(corpus::complete_bipartite(3, 3), corpus::k33_group(), 3));
  pairs.push_back(corpus::checked_pair(corpus::cube_graph(3), corpus::hypercube_group(3), 3));
  pairs.push_back(corpus::checked_pair(corpus::petersen_graph(), corpus::sym5_on_2subsets(), 3));
  pairs.push_back(corpus::checked_pair(corpus::complete_graph(6), corpus::symmetric(6), 5));
  for (const VTPair& pair : pairs) {
    for (Point alpha : {Point{0}, static_cast<Point>(pair.graph.vertex_count - 1)}) {
      LocalActionReport rep = local_action(pair, alpha);
      std::set<std::vector<Point>> brute = brute_local_images(pair, alpha);
      EXPECT_EQ(rep.induced_group.order(), mpz_class(static_cast<unsigned long>(brute.size())));
      // Every restricted generator image appears in the brute-force set.
      for (const Perm& g : rep.induced_group.generators())
        EXPECT_TRUE(brute.count(g.images()) == 1);
    }
  }
}

TEST(ClassifyPairLocally, OrderFactorisationAndImplicationChain) {
  std::vector<VTPair> pairs;
  pairs.push_back(corpus::checked_pair(corpus::cycle_graph(4), corpus::dihedral(4), 2));
  pairs.push_back(corpus::checked_pair(corpus::cycle_graph(9), corpus::dihedral(9), 2));
  pairs.push_back(corpus::lex_cycle_k2_pair(8));
  pairs.push_back(corpus::checked_pair(corpus::complete_bipartite(3, 3), corpus::k33_group(), 3));
  pairs.push_back(corpus::checked_pair(corpus::cube_graph(3), corpus::hypercube_group(3), 3));
  pairs.push_back(corpus::checked_pair(corpus::petersen_graph(), corpus::sym5_on_2subsets(), 3));
  pairs.push_back(corpus::checked_pair(corpus::rook_graph(5),
                                       corpus::grid_group(corpus::symmetric(5), true), 8));
  pairs.push_back(corpus::checked_pair(corpus::rook_graph(4),
                                       corpus::grid_group(corpus::symmetric(4), false), 6));
  pairs.push_back(corpus::checked_pair(corpus::complete_graph(7), corpus::symmetric(7), 6));
  for (const VTPair& pair : pairs) {
    LocalActionReport rep = classify_pair_locally(pair);
    EXPECT_EQ(rep.vertex, 0u);
    EXPECT_EQ(rep.neighbourhood_size, pair.graph.adjacency[0].size());
    EXPECT_EQ(rep.induced_group.degree(), rep.neighbourhood_size);
    // |G_alpha| = |induced| * kernel_order, and |G| = n * |G_alpha|.
    EXPECT_EQ(rep.induced_group.order() * rep.kernel_order, rep.stabiliser_order);
    EXPECT_EQ(rep.stabiliser_order * static_cast<unsigned long>(pair.graph.vertex_count),
              pair.group.order());
    // two-transitive => primitive => quasiprimitive => semiprimitive.
    if (rep.flags.two_transitive) EXPECT_TRUE(rep.flags.primitive);
    if (rep.flags.primitive) EXPECT_TRUE(rep.flags.quasiprimitive);
    if (rep.flags.quasiprimitive) EXPECT_TRUE(rep.flags.semiprimitive);
    if (!rep.flags.transitive) {
      EXPECT_FALSE(rep.flags.primitive);
      EXPECT_FALSE(rep.flags.quasiprimitive);
      EXPECT_FALSE(rep.flags.semiprimitive);
      EXPECT_EQ(rep.reason, "local action intransitive");
    }
  }
}

TEST(ClassifyPairLocally, ArcTransitivePairsAreLocallyTransitive) {
  // Arc-transitive examples: the stabiliser is transitive on the
  // neighbourhood.
  std::vector<VTPair> pairs;
  pairs.push_back(corpus::checked_pair(corpus::petersen_graph(), corpus::sym5_on_2subsets(), 3));
  pairs.push_back(corpus::checked_pair(corpus::cube_graph(3), corpus::hypercube_group(3), 3));
  pairs.push_back(corpus::checked_pair(corpus::complete_graph(5), corpus::symmetric(5), 4));
  for (const VTPair& pair : pairs)
    EXPECT_TRUE(classify_pair_locally(pair).flags.transitive);
}

}  // namespace
