#include <gtest/gtest.h>

#include "sim_helpers.hpp"

using namespace edcnc;
using simtest::Harness;

namespace {

std::size_t count_role(const Topology& t, Role r) { return t.with_role(r).size(); }

std::vector<std::string> incoming_names(const Topology& t, const TransmissionPlan& p, NodeId d) {
  std::vector<std::string> out;
  for (const auto& e : expected_streams(t, p, d)) out.push_back(e.name());
  return out;
}

// Same node-role counts and, per stream, the same number of destinations reached.
bool same_shape(const Topology& a, const Topology& b) {
  for (Role r : {Role::Source, Role::Relay, Role::Destination})
    if (count_role(a, r) != count_role(b, r)) return false;
  if (a.routes().size() != b.routes().size()) return false;
  std::multiset<std::size_t> fan_a, fan_b;
  for (const auto& [o, r] : a.routes()) fan_a.insert(r.links.size());
  for (const auto& [o, r] : b.routes()) fan_b.insert(r.links.size());
  return fan_a == fan_b;
}

}  // namespace

TEST(Topology, Fig3Shape) {
  const auto t = build_fig3();
  const auto plan = default_plan(2, 1);
  EXPECT_EQ(t.routes().size(), 4U);
  EXPECT_EQ(incoming_names(t, plan, 5), (std::vector<std::string>{"x1enc", "c1", "c2enc"}));
  EXPECT_EQ(incoming_names(t, plan, 6), (std::vector<std::string>{"x2enc", "c1", "c2enc"}));
  EXPECT_TRUE(t.find_link(1, 4).has_value());
  EXPECT_TRUE(t.find_link(7, 6).has_value());
  EXPECT_TRUE(t.find_link(2, 4).has_value());  // idle mesh link
}

TEST(Topology, Fig4Shape) {
  const auto t = build_fig4();
  const auto plan = default_plan(3, 1);
  EXPECT_EQ(t.routes().size(), 5U);
  EXPECT_EQ(incoming_names(t, plan, 6), (std::vector<std::string>{"x1enc", "c1", "c2", "c3enc"}));
  EXPECT_EQ(incoming_names(t, plan, 7), (std::vector<std::string>{"c1", "c2", "c3enc"}));
  EXPECT_EQ(incoming_names(t, plan, 8), (std::vector<std::string>{"x3enc", "c1", "c2", "c3enc"}));
}

TEST(Topology, GeneralBuildsMatchFigures) {
  EXPECT_TRUE(same_shape(build_general(2, 1, 2), build_fig3()));
  EXPECT_TRUE(same_shape(build_general(3, 1, 3), build_fig4()));
  const auto t = build_general(4, 1, 3);
  EXPECT_EQ(count_role(t, Role::Relay), 6U);
  EXPECT_EQ(t.routes().size(), 6U);
}

TEST(Topology, RejectsBadRoutes) {
  Topology t;
  t.add_node(1, Role::Source);
  t.add_node(2, Role::Destination);
  t.add_node(3, Role::Destination);
  EXPECT_THROW(t.add_route(StreamKind::Raw, 1, {{1, 3, 2}}), Error);
  EXPECT_THROW(t.add_route(StreamKind::Raw, 1, {{2, 1}}), Error);
  EXPECT_THROW((void)t.link_by_name("1-2"), Error);
}

TEST(Simulator, Fig3NoFailures) {
  Harness h(build_fig3(), 2, 1, 16, 1);
  const auto r = h.run();
  for (NodeId d : {5U, 6U}) {
    const auto& res = r.at(d);
    EXPECT_TRUE(res.recovered);
    EXPECT_EQ(*res.generation, h.generation);
    EXPECT_EQ(res.dec_stats.d_dec, 1U);
    EXPECT_EQ(res.dec_stats.case_label, RecoveryCase::A);
    EXPECT_EQ(res.extra_round_trips, 0U);
  }
}

TEST(Simulator, Fig3Relay4FailureForcesTwoDecryptions) {
  Harness h(build_fig3(), 2, 1, 16, 2);
  const auto r = h.run(h.fail_relay(4));
  for (NodeId d : {5U, 6U}) {
    EXPECT_TRUE(r.at(d).recovered);
    EXPECT_EQ(r.at(d).dec_stats.d_dec, 2U);
    EXPECT_EQ(r.at(d).dec_stats.case_label, RecoveryCase::C);
  }
}

TEST(Simulator, Fig4LinkToRelay2IsCaseBAtFap6) {
  Harness h(build_fig4(), 3, 1, 16, 3);
  const auto r = h.run(h.fail_link(1, 2));
  EXPECT_TRUE(r.at(6).recovered);
  EXPECT_EQ(r.at(6).dec_stats.case_label, RecoveryCase::B);
  EXPECT_EQ(r.at(6).dec_stats.d_dec, 1U);
  for (NodeId d : {7U, 8U}) {
    EXPECT_TRUE(r.at(d).recovered);
    EXPECT_EQ(r.at(d).dec_stats.case_label, RecoveryCase::A);
  }
}

TEST(Simulator, Fig4Relay4FailureStrandsFap7) {
  Harness h(build_fig4(), 3, 1, 16, 4);
  const auto r = h.run(h.fail_relay(4));
  EXPECT_TRUE(r.at(6).recovered);
  EXPECT_TRUE(r.at(8).recovered);
  EXPECT_EQ(r.at(6).dec_stats.case_label, RecoveryCase::C);
  EXPECT_FALSE(r.at(7).recovered);
  EXPECT_EQ(r.at(7).error, ErrorCode::Unrecoverable);
}

TEST(Simulator, ShortStreamsLetFap7RecoverFromTwoCodedStreams) {
  // c2 and c3 give 2L+7 equations for 3L unknowns; at L <= 7 the boundary
  // bits are enough.
  Harness h(build_fig4(), 3, 1, 4, 5);
  EXPECT_TRUE(h.run(h.fail_relay(4)).at(7).recovered);
}

TEST(Simulator, CorruptLinkIsDetectedAndTolerated) {
  Harness h(build_fig3(), 2, 1, 16, 6);
  FailureScenario f;
  f.corrupt_links.insert(*h.topology.find_link(4, 5));
  f.seed = 9;
  const auto r = h.run(f);
  EXPECT_TRUE(r.at(5).recovered);
  EXPECT_EQ(r.at(5).dec_stats.case_label, RecoveryCase::C);
  EXPECT_EQ(r.at(6).dec_stats.case_label, RecoveryCase::A);
}

TEST(Simulator, DeterministicTranscripts) {
  for (const auto& topo : {build_fig3(), build_fig4()}) {
    const std::size_t d = topo.routes().size() == 4 ? 2 : 3;
    Harness a(topo, d, 1, 12, 42), b(topo, d, 1, 12, 42);
    for (const auto& f : a.single_failures()) EXPECT_TRUE(a.run(f) == b.run(f));
  }
}

TEST(Simulator, RelaysForwardBytesUnchangedAndAreDeniedKeys) {
  Harness h(build_fig4(), 3, 1, 10, 7);
  for (const auto& f : h.single_failures()) {
    const auto r = h.run(f);
    EXPECT_TRUE(r.relays_opaque());
    EXPECT_EQ(r.relay_key_grants, 0U);
    EXPECT_EQ(r.relay_key_denials, f.failed_relays.empty() ? 5U : 4U);
  }
  for (const auto& rec : h.registry.audit_log()) {
    if (h.topology.role(rec.node) == Role::Relay) {
      EXPECT_FALSE(rec.granted);
    }
  }
}

TEST(Simulator, WiretapHasOneRecordPerTraversal) {
  Harness h(build_fig4(), 3, 1, 8, 8);
  std::size_t traversals = 0;
  for (const auto& [o, route] : h.topology.routes()) traversals += route.links.size();
  EXPECT_EQ(h.run().wiretap.records.size(), traversals);
  // Relay 9 down removes 1->9 and its three outgoing links.
  EXPECT_EQ(h.run(h.fail_relay(9)).wiretap.records.size(), traversals - 4);
}

TEST(Simulator, ConfigErrors) {
  Harness h(build_fig3(), 2, 1, 8, 1);
  auto bad_plan = default_plan(3, 1);
  std::mt19937_64 rng(1);
  const auto gen3 = random_generation(3, 8, rng);
  EXPECT_THROW(run_scenario(h.topology, gen3, bad_plan, {}, h.registry, h.group), Error);
  FailureScenario f;
  f.failed_relays.insert(5);
  EXPECT_THROW(h.run(f), Error);
}

TEST(ToleranceMap, Figures) {
  EXPECT_EQ(tolerance_map(build_fig3(), 2, default_plan(2, 1)), (std::map<NodeId, int>{{5, 1}, {6, 1}}));
  EXPECT_EQ(tolerance_map(build_fig4(), 3, default_plan(3, 1)), (std::map<NodeId, int>{{6, 1}, {7, 0}, {8, 1}}));
  const auto general = tolerance_map(build_general(4, 1, 3), 4, default_plan(4, 1), 16);
  const auto dests = build_general(4, 1, 3).with_role(Role::Destination);
  EXPECT_EQ(general.at(dests[0]), 1);
  EXPECT_EQ(general.at(dests[1]), 0);
  EXPECT_EQ(general.at(dests[2]), 1);
}

TEST(ToleranceMap, RecoveryHoldsWithinBound) {
  Harness h(build_fig4(), 3, 1, 12, 11);
  const auto tol = tolerance_map(h.topology, 3, h.plan, 12);
  for (const auto& f : h.single_failures()) {
    const auto r = h.run(f);
    for (const auto& d : r.destinations) {
      if (static_cast<int>(d.missing.size()) <= tol.at(d.node)) {
        ASSERT_TRUE(d.recovered) << d.node;
        EXPECT_EQ(*d.generation, h.generation);
      }
    }
  }
}
