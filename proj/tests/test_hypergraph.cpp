#include <gtest/gtest.h>

#include "spgemm_hg/error.hpp"
#include "spgemm_hg/hypergraph.hpp"
#include "spgemm_hg/models.hpp"
#include "support.hpp"

using namespace spgemm_hg;
using namespace testing_support;

namespace {

Hypergraph triangle() {
  HypergraphBuilder hb;
  hb.add_vertex(Label::coarse("v", {0}), 1, 0);
  hb.add_vertex(Label::coarse("v", {1}), 2, 1);
  hb.add_vertex(Label::coarse("v", {2}), 0, 3);
  hb.add_net(Label::coarse("n", {0}), 1, {0, 1});
  hb.add_net(Label::coarse("n", {1}), 4, {1, 2, 0});
  return std::move(hb).build();
}

}  // namespace

TEST(Label, TextRoundTrip) {
  for (const Label& l : {Label::mult(1, 2, 3), Label::nz_a(0, 4), Label::nz_b(2, 0), Label::nz_c(7, 7),
                         Label::coarse("row", {5}), Label::coarse("afib", {1, 2})}) {
    EXPECT_EQ(Label::parse(l.to_string()), l) << l.to_string();
  }
  EXPECT_EQ(Label::mult(0, 2, 1).to_string(), "m 0 2 1");
  EXPECT_EQ(Label::coarse("brow", {3}).to_string(), "x.brow 3");
  EXPECT_THROW(Label::parse("m 1 2"), InputError);
  EXPECT_THROW(Label::parse("q 1 2"), InputError);
}

TEST(Hypergraph, BuilderAndIncidence) {
  const Hypergraph h = triangle();
  EXPECT_EQ(h.num_vertices(), 3u);
  EXPECT_EQ(h.num_nets(), 2u);
  EXPECT_EQ(h.num_pins(), 5u);
  EXPECT_EQ(h.total_comp(), 3);
  EXPECT_EQ(h.total_mem(), 4);
  EXPECT_EQ(h.total_cost(), 5);
  auto inc = h.incident_nets(0);
  EXPECT_EQ(std::vector<NetId>(inc.begin(), inc.end()), (std::vector<NetId>{0, 1}));
  EXPECT_TRUE(validate(h).empty());
}

TEST(Hypergraph, ValidateReportsViolations) {
  HypergraphBuilder hb;
  hb.add_vertex(Label::coarse("v", {0}), -1, 0);
  hb.add_vertex(Label::coarse("v", {0}), 1, 0);
  hb.add_net(Label::coarse("n", {0}), 0, {0, 0});
  hb.add_net(Label::coarse("n", {1}), 1, {5});
  hb.add_net(Label::coarse("n", {2}), 1, std::span<const VertexId>{});
  const auto v = validate(std::move(hb).build());
  auto has = [&](const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.what.find(needle) != std::string::npos; });
  };
  EXPECT_TRUE(has("negative"));
  EXPECT_TRUE(has("duplicate label"));
  EXPECT_TRUE(has("cost"));
  EXPECT_TRUE(has("duplicate pin"));
  EXPECT_TRUE(has("out of range"));
  EXPECT_TRUE(has("no pins"));
}

TEST(HgrFormat, RoundTripPreservesEverything) {
  const Hypergraph h = build_fine_grained(example_a(), example_b());
  const Hypergraph back = read_hgr(write_hgr(h));
  EXPECT_EQ(back, h);
  const Hypergraph t = triangle();
  EXPECT_EQ(read_hgr(write_hgr(t)), t);
}

TEST(HgrFormat, DefaultLabelsAndComments) {
  const Hypergraph h = read_hgr("% plain file\n0 2 1 2 3\n3 0 1\n1 0\n1 0\n");
  EXPECT_EQ(h.vertex_label(1).to_string(), "x.v 1");
  EXPECT_EQ(h.net_cost(0), 3);
}

TEST(HgrFormat, Errors) {
  EXPECT_THROW(read_hgr("0 2 1 2\n1 0 1\n1 0\n1 0\n"), ParseError);
  EXPECT_THROW(read_hgr("0 2 1 2 3\n1 0 7\n1 0\n1 0\n"), ParseError);
  EXPECT_THROW(read_hgr("0 2 1 2 3\n1 0 1\n1 0\n"), ParseError);
  EXPECT_THROW(read_hgr("0 2 1 3 3\n1 0 1\n1 0\n1 0\n"), ParseError);
  EXPECT_THROW(read_hgr("0 2 1 2 3\n1 0 one\n1 0\n1 0\n"), ParseError);
  try {
    read_hgr("0 2 1 2 3\n1 0 1\n1 0\n1 0\n2 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 5u);
  }
}

TEST(StructuralEquivalence, IgnoresOrderButNotContent) {
  HypergraphBuilder x, y;
  x.add_vertex(Label::coarse("v", {0}), 1, 0);
  x.add_vertex(Label::coarse("v", {1}), 1, 0);
  x.add_net(Label::coarse("n", {0}), 2, {0, 1});
  y.add_vertex(Label::coarse("v", {1}), 1, 0);
  y.add_vertex(Label::coarse("v", {0}), 1, 0);
  y.add_net(Label::coarse("other", {0}), 2, {1, 0});
  const Hypergraph hx = std::move(x).build(), hy = std::move(y).build();
  EXPECT_TRUE(structurally_equivalent(hx, hy));

  HypergraphBuilder z;
  z.add_vertex(Label::coarse("v", {0}), 1, 0);
  z.add_vertex(Label::coarse("v", {1}), 1, 0);
  z.add_net(Label::coarse("n", {0}), 3, {0, 1});
  std::string why;
  EXPECT_FALSE(structurally_equivalent(hx, std::move(z).build(), &why));
  EXPECT_FALSE(why.empty());
}

TEST(PartitionFile, RoundTripAndChecks) {
  Partition p{3, {0, 2, 1, 1}};
  EXPECT_EQ(write_partition(p), "p 3\n0 0\n1 2\n2 1\n3 1\n");
  EXPECT_EQ(read_partition(write_partition(p)), p);
  EXPECT_THROW(read_partition("p 2\n0 0\n1 2\n"), ParseError);
  EXPECT_THROW(read_partition("0 0\n"), ParseError);
  EXPECT_THROW(read_partition("p 2\n1 0\n"), ParseError);
  const Hypergraph h = triangle();
  EXPECT_NO_THROW(check_partition(h, Partition{2, {0, 1, 1}}));
  EXPECT_THROW(check_partition(h, Partition{2, {0, 1}}), InputError);
  EXPECT_THROW(check_partition(h, Partition{2, {0, 1, 2}}), InputError);
}
