#include <gtest/gtest.h>

#include <set>

#include "probcf/desugar.hpp"
#include "probcf/parser.hpp"
#include "test_util.hpp"

namespace probcf {
namespace {

Pcfg obs_loop() { return compile(builtin_source("obsLoop(3,5)")); }

std::size_t guards(const StraightLineProgram& s) {
  std::size_t n = 0;
  for (const auto& st : s.steps) {
    if (auto* w = st.as_weight(); w && w->origin == WeightOrigin::Guard) ++n;
  }
  return n;
}

std::size_t deterministic_visits(const Pcfg& g, const ControlFlow& f) {
  std::size_t n = 0;
  for (LocId l : f.locs) n += g[l].kind == LocKind::Deterministic;
  return n;
}

TEST(Pcfg, ObsLoopLocations) {
  Pcfg g = obs_loop();
  ASSERT_EQ(g.size(), 7u);
  EXPECT_TRUE(validate(g).empty());
  std::vector<LocKind> expected = {LocKind::Deterministic, LocKind::DetAssign, LocKind::ProbAssign, LocKind::Weight,
                                   LocKind::DetAssign,     LocKind::Weight,    LocKind::Final};
  for (LocId i = 0; i < g.size(); ++i) EXPECT_EQ(g[i].kind, expected[i]) << i;
  EXPECT_EQ(g.init, 0u);
  EXPECT_EQ(g.final_loc, 6u);
  EXPECT_EQ(g[4].succ, std::vector<LocId>{0});  // back edge x := x + y -> guard
  EXPECT_EQ(g[0].succ, (std::vector<LocId>{1, 5}));
  EXPECT_EQ(describe_location(g, 0), "if (x < 3)");
}

TEST(Pcfg, CoinHasTwoBranchLocations) {
  Pcfg g = compile(builtin_source("coin(0.36)"));
  EXPECT_TRUE(validate(g).empty());
  std::size_t det = 0;
  for (const auto& l : g.locs) det += l.kind == LocKind::Deterministic;
  EXPECT_EQ(det, 2u);
  EXPECT_EQ(g.size(), 10u);
}

TEST(Pcfg, StraightLineSourceIsAChain) {
  Pcfg g = compile("double x ~ normal(0, 1); x := x + 1; weight(2); return x;");
  EXPECT_TRUE(validate(g).empty());
  for (const auto& l : g.locs) {
    EXPECT_NE(l.kind, LocKind::Deterministic);
    EXPECT_LE(l.succ.size(), 1u);
  }
}

TEST(Pcfg, RejectsSugar) {
  Program p = parse_program(builtin_source("coin(0.36)"));
  EXPECT_THROW(build_pcfg(p), std::invalid_argument);
}

TEST(Validate, DeterministicWithOneEdge) {
  Pcfg g = obs_loop();
  g.locs[0].succ.pop_back();
  auto v = validate(g);
  ASSERT_FALSE(v.empty());
  EXPECT_EQ(v[0].loc, 0u);
}

TEST(Validate, UnreachableLocation) {
  Pcfg g = obs_loop();
  Location orphan;
  orphan.kind = LocKind::DetAssign;
  orphan.var = 0;
  orphan.expr = make_const(1.0);
  orphan.succ = {g.final_loc};
  g.locs.push_back(orphan);
  auto v = validate(g);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].loc, 7u);
}

TEST(Validate, FinalWithSuccessor) {
  Pcfg g = obs_loop();
  g.locs[6].succ = {0};
  EXPECT_FALSE(validate(g).empty());
}

TEST(Flows, Figure3Order) {
  Pcfg g = obs_loop();
  auto flows = enumerate_flows(g, 11);
  ASSERT_EQ(flows.size(), 11u);
  for (std::size_t n = 0; n <= 10; ++n) {
    std::vector<LocId> expected = {0};
    for (std::size_t i = 0; i < n; ++i) expected.insert(expected.end(), {1, 2, 3, 4, 0});
    expected.insert(expected.end(), {5, 6});
    EXPECT_EQ(flows[n].locs, expected) << n;
    EXPECT_EQ(flows[n].size(), 3 + 5 * n);
    EXPECT_TRUE(flows[n].complete);
  }
}

TEST(Flows, ChainHasExactlyOneFlow) {
  Pcfg g = compile("double x ~ normal(0, 1); x := x + 1; return x;");
  FlowEnumerator e(g);
  auto r = e.next();
  ASSERT_EQ(r.status, FlowEnumerator::Status::Found);
  EXPECT_EQ(r.flow->size(), g.size());
  EXPECT_EQ(e.next().status, FlowEnumerator::Status::Exhausted);
}

TEST(Flows, CoinHasFourFlows) {
  Pcfg g = compile(builtin_source("coin(0.36)"));
  auto flows = enumerate_flows(g, 100);
  EXPECT_EQ(flows.size(), 4u);
  std::set<std::vector<LocId>> distinct;
  for (const auto& f : flows) distinct.insert(f.locs);
  EXPECT_EQ(distinct.size(), 4u);
}

TEST(Flows, OracleSkipsButCountsIds) {
  Pcfg g = obs_loop();
  FlowEnumerator e(g);
  auto skip_short = [](const ControlFlow&, std::size_t id) { return id < 3; };
  auto r = e.next(skip_short);
  ASSERT_EQ(r.status, FlowEnumerator::Status::Found);
  EXPECT_EQ(r.flow_id, 3u);
  EXPECT_EQ(e.flows_examined(), 4u);
  auto budget = e.next([](const ControlFlow&, std::size_t) { return true; }, 5);
  EXPECT_EQ(budget.status, FlowEnumerator::Status::BudgetSpent);
  EXPECT_EQ(e.flows_examined(), 9u);
}

TEST(Flows, MaxLengthTruncates) {
  Pcfg g = obs_loop();
  auto flows = enumerate_flows(g, 100, 14);
  EXPECT_EQ(flows.size(), 3u);  // 3, 8, 13 locations
}

TEST(StraightLine, Example22) {
  Pcfg g = obs_loop();
  auto s = test::flow_program(g, 1);
  std::string expected =
      "observe(x < 3);\n"
      "n := n + 1;\n"
      "y ~ normal(1, 1);\n"
      "observe(0 <= y && y <= 2);\n"
      "x := x + y;\n"
      "observe(!(x < 3));\n"
      "observe(n >= 5);\n"
      "return n;\n";
  EXPECT_EQ(print_slp(s), expected);
}

TEST(StraightLine, Figure4Column2) {
  Pcfg g = compile(builtin_source("condPropDemo"));
  auto s = test::flow_program(g, 3);
  std::string expected =
      "x ~ uniform(0, 20);\n"
      "observe(x < 10);\n"
      "y ~ beta(1, 1);\n"
      "x := x + y;\n"
      "observe(x < 10);\n"
      "y ~ beta(1, 1);\n"
      "x := x + y;\n"
      "observe(x < 10);\n"
      "y ~ beta(1, 1);\n"
      "x := x + y;\n"
      "observe(!(x < 10));\n"
      "return x;\n";
  EXPECT_EQ(print_slp(s), expected);
  EXPECT_EQ(s.steps.size(), 11u);
}

TEST(StraightLine, ChainFlowIsItself) {
  Pcfg g = compile("double x ~ normal(0, 1); x := x + 1; weight(2); return x;");
  auto s = test::flow_program(g, 0);
  EXPECT_EQ(s.steps.size(), g.size() - 1);
  EXPECT_EQ(guards(s), 0u);
}

TEST(StraightLine, ObservationCountEqualsBranchVisits) {
  for (const char* spec : {"obsLoop(3,5)", "coin(0.36)", "unifCd(10)", "mixed(0)", "geomIt(0.5,2)"}) {
    Pcfg g = compile(builtin_source(spec));
    for (const auto& f : enumerate_flows(g, 8)) {
      EXPECT_EQ(guards(straight_line(g, f)), deterministic_visits(g, f)) << spec;
    }
  }
}

}  // namespace
}  // namespace probcf
