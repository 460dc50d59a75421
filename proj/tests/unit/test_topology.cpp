#include <algorithm>
#include <numbers>

#include "doctest.h"

#include "doorkit/error.hpp"
#include "doorkit/topo/topology.hpp"

#include "../support/vote_logs.hpp"

using namespace doorkit::topo;
using doorkit::DoorStatus;
using doorkit::geometry::CellState;
using doorkit::geometry::GridMap;

namespace {

DoorRecord door(const std::string& id, double x, double y, std::string a = "A", std::string b = "B",
                DoorStatus s = DoorStatus::Open) {
  return {id, {x, y}, {std::move(a), std::move(b)}, s};
}

Observation votes(const std::string& image, std::vector<Vote> v) {
  Observation o;
  o.image_id = image;
  o.votes = std::move(v);
  return o;
}

std::vector<Vote> repeat(const std::string& id, DoorStatus s, int n) {
  return std::vector<Vote>(static_cast<std::size_t>(n), Vote{id, s});
}

Outcome outcome_of(const std::vector<DoorRecord>& doors, const std::vector<Observation>& obs) {
  return majority_vote(doors, obs).at(0).outcome;
}

}  // namespace

TEST_CASE("association on an open map") {
  GridMap g(10, 10, 1.0);
  const std::vector doors{door("ahead", 6.5, 5.5), door("behind", 0.5, 5.5)};
  const auto seen = associate(3.5, 5.5, 0.0, doors, g, {std::numbers::pi / 2, 5.0});
  CHECK(seen == std::vector<std::string>{"ahead"});
}

TEST_CASE("association respects range") {
  GridMap g(10, 10, 1.0);
  const std::vector doors{door("far", 9.5, 5.5)};
  CHECK(associate(0.5, 5.5, 0.0, doors, g, {std::numbers::pi / 2, 5.0}).empty());
  CHECK(associate(0.5, 5.5, 0.0, doors, g, {std::numbers::pi / 2, 9.5}).size() == 1);
}

TEST_CASE("a wall blocks the line of sight") {
  GridMap g(10, 10, 1.0);
  for (int r = 0; r < 10; ++r) g.set({r, 5}, CellState::Obstacle);
  const std::vector doors{door("hidden", 7.5, 5.5)};
  CHECK(associate(2.5, 5.5, 0.0, doors, g, {std::numbers::pi / 2, 8.0}).empty());
  // The door cell itself may be blocked: a door in a wall is still visible.
  const std::vector in_wall{door("in_wall", 5.5, 5.5)};
  CHECK(associate(2.5, 5.5, 0.0, in_wall, g, {std::numbers::pi / 2, 8.0}).size() == 1);
}

TEST_CASE("bearing wraps around pi") {
  GridMap g(10, 10, 1.0);
  const std::vector doors{door("west", 1.5, 5.5)};
  CHECK(associate(5.5, 5.5, std::numbers::pi, doors, g, {std::numbers::pi / 2, 5.0}).size() == 1);
  CHECK(associate(5.5, 5.5, -std::numbers::pi, doors, g, {std::numbers::pi / 2, 5.0}).size() == 1);
  CHECK(associate(5.5, 5.5, 0.0, doors, g, {std::numbers::pi / 2, 5.0}).empty());
}

TEST_CASE("majority vote outcomes") {
  const std::vector open_door{door("d", 0, 0, "A", "B", DoorStatus::Open)};
  const std::vector closed_door{door("d", 0, 0, "A", "B", DoorStatus::Closed)};
  auto v = repeat("d", DoorStatus::Open, 5);
  auto c2 = repeat("d", DoorStatus::Closed, 2);
  v.insert(v.end(), c2.begin(), c2.end());
  CHECK(outcome_of(open_door, {votes("1", v)}) == Outcome::CorrectOpen);

  auto tie = repeat("d", DoorStatus::Open, 3);
  auto c3 = repeat("d", DoorStatus::Closed, 3);
  tie.insert(tie.end(), c3.begin(), c3.end());
  CHECK(outcome_of(open_door, {votes("1", tie)}) == Outcome::Undecided);

  auto wrong = repeat("d", DoorStatus::Open, 4);
  wrong.push_back({"d", DoorStatus::Closed});
  CHECK(outcome_of(closed_door, {votes("1", wrong)}) == Outcome::WrongStatus);
  CHECK(outcome_of(closed_door, {votes("1", repeat("d", DoorStatus::Closed, 1))}) ==
        Outcome::CorrectClosed);

  Observation seen = votes("1", {});
  seen.in_view = {"d"};
  CHECK(outcome_of(open_door, {seen}) == Outcome::Undetected);
  CHECK(outcome_of(open_door, {votes("1", {})}) == Outcome::Unobserved);
}

TEST_CASE("votes for unknown doors are rejected by name") {
  const std::vector doors{door("d", 0, 0)};
  CHECK_THROWS_WITH_AS(majority_vote(doors, {votes("1", {{"ghost", DoorStatus::Open}})}),
                       doctest::Contains("ghost"), doorkit::Error);
}

TEST_CASE("recognition accuracy") {
  std::mt19937_64 rng(3);
  const auto qd = gen::vote_log({25, 1, 1, 1, 28}, rng);
  CHECK(recognition_accuracy(majority_vote(qd.doors, qd.observations)) ==
        doctest::Approx(100.0 * 25 / 28));
  const auto e2 = gen::vote_log({40, 1, 1, 0, 42}, rng);
  CHECK(recognition_accuracy(majority_vote(e2.doors, e2.observations)) ==
        doctest::Approx(95.238).epsilon(1e-4));
  const auto none = gen::vote_log({0, 3, 0, 0, 3}, rng);
  CHECK(recognition_accuracy(majority_vote(none.doors, none.observations)) == 0.0);
  CHECK_THROWS_AS(recognition_accuracy({}), doorkit::Error);
}

TEST_CASE("outcomes partition the doors and ignore observation order") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    gen::Tally t{static_cast<int>(rng() % 10), static_cast<int>(rng() % 5), static_cast<int>(rng() % 3),
                 static_cast<int>(rng() % 3), 0};
    t.total = t.correct + t.wrong + t.undecided + t.undetected + static_cast<int>(rng() % 3);
    if (t.total == 0) continue;
    auto log = gen::vote_log(t, rng);
    const auto verdicts = majority_vote(log.doors, log.observations);
    REQUIRE(verdicts.size() == log.doors.size());
    int counts[6] = {};
    for (const auto& v : verdicts) ++counts[static_cast<int>(v.outcome)];
    CHECK(counts[0] + counts[1] == t.correct);
    CHECK(counts[2] == t.wrong);
    CHECK(counts[3] == t.undecided);
    CHECK(counts[4] == t.undetected);
    CHECK(counts[5] == t.total - t.correct - t.wrong - t.undecided - t.undetected);
    const double ra = recognition_accuracy(verdicts);
    std::shuffle(log.observations.begin(), log.observations.end(), rng);
    CHECK(recognition_accuracy(majority_vote(log.doors, log.observations)) == ra);
  }
}

TEST_CASE("topology from verdicts") {
  const std::vector doors{door("d1", 0, 0, "A", "B", DoorStatus::Open),
                          door("d2", 1, 0, "A", "B", DoorStatus::Closed),
                          door("d3", 2, 0, "B", "C", DoorStatus::Closed)};
  SUBCASE("any open door joins its rooms") {
    const auto v = majority_vote(doors, {votes("1", {{"d1", DoorStatus::Open}, {"d2", DoorStatus::Closed}})});
    const auto g = build_topology(doors, v);
    CHECK(g.nodes == std::set<std::string>{"A", "B", "C"});
    CHECK(g.edges == std::set<std::pair<std::string, std::string>>{{"A", "B"}});
  }
  SUBCASE("all closed gives no edges") {
    const auto v = majority_vote(doors, {votes("1", {{"d1", DoorStatus::Closed}})});
    const auto g = build_topology(doors, v);
    CHECK(g.nodes.size() == 3);
    CHECK(g.edges.empty());
  }
  SUBCASE("doors without a majority use the fallback") {
    const auto v = majority_vote(doors, {});
    CHECK(build_topology(doors, v).edges.empty());
    CHECK(build_topology(doors, v, DoorStatus::Open).edges.size() == 2);
  }
  SUBCASE("a wrong open verdict still adds the edge") {
    const auto v = majority_vote(doors, {votes("1", {{"d3", DoorStatus::Open}})});
    CHECK(build_topology(doors, v).edges == std::set<std::pair<std::string, std::string>>{{"B", "C"}});
  }
}

TEST_CASE("an extra open verdict never removes an edge") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto log = gen::vote_log({6, 3, 1, 1, 12}, rng);
    const auto before = build_topology(log.doors, majority_vote(log.doors, log.observations));
    const auto& d = log.doors[rng() % log.doors.size()];
    log.observations.push_back(votes("extra", repeat(d.door_id, DoorStatus::Open, 50)));
    const auto after = build_topology(log.doors, majority_vote(log.doors, log.observations));
    CHECK(std::includes(after.edges.begin(), after.edges.end(), before.edges.begin(), before.edges.end()));
  }
}

TEST_CASE("comparing topologies") {
  TopologyGraph truth{{"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}}};
  CHECK(compare_topologies(truth, truth).edge_precision == 1.0);
  CHECK(compare_topologies(truth, truth).edge_recall == 1.0);

  TopologyGraph two{{"A", "B", "C"}, {{"A", "B"}, {"B", "C"}}};
  TopologyGraph one{{"A", "B", "C"}, {{"A", "B"}}};
  auto c = compare_topologies(one, two);
  CHECK(c.edge_recall == 0.5);
  CHECK(c.edge_precision == 1.0);
  CHECK(c.missing_edges.size() == 1);

  auto extra = truth;
  extra.edges.insert({"A", "D"});
  c = compare_topologies(extra, truth);
  CHECK(c.edge_precision == 0.75);
  CHECK(c.edge_recall == 1.0);
  CHECK(c.spurious_edges == std::vector<std::pair<std::string, std::string>>{{"A", "D"}});

  CHECK_THROWS_AS(compare_topologies(one, truth), doorkit::Error);
}

TEST_CASE("per-door diff carries the outcome") {
  const std::vector doors{door("d1", 0, 0, "A", "B", DoorStatus::Open),
                          door("d2", 1, 0, "B", "C", DoorStatus::Open)};
  const auto v = majority_vote(doors, {votes("1", {{"d1", DoorStatus::Open}})});
  const auto c = compare_topologies(build_topology(doors, v), true_topology(doors), doors, v);
  REQUIRE(c.doors.size() == 2);
  CHECK(c.doors[0].outcome == Outcome::CorrectOpen);
  CHECK(c.doors[1].outcome == Outcome::Unobserved);
  CHECK(c.doors[1].used_status == DoorStatus::Closed);
  CHECK(c.edge_recall == 0.5);
}

TEST_CASE("outcome names") {
  CHECK(to_string(Outcome::CorrectOpen) == "correct_open");
  CHECK(to_string(Outcome::Unobserved) == "unobserved");
}
