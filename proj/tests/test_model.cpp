#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "snic/errors.hpp"
#include "snic/model.hpp"
#include "support.hpp"

using namespace snic;

namespace {

NetworkInstance two_nodes() {
    NetworkInstance n;
    n.nodes = {"a", "b"};
    n.edges = {{"e", "a", "b", {2}}};
    n.sources = {{"X", "a", {2}, {"b"}}};
    return n;
}

NetworkInstance diamond() {
    NetworkInstance n;
    n.nodes = {"a", "b", "c", "d"};
    n.edges = {{"e4", "c", "d", {2}}, {"e3", "b", "d", {2}}, {"e2", "a", "c", {2}}, {"e1", "a", "b", {2}}};
    n.sources = {{"X", "a", {2}, {"d"}}};
    return n;
}

}  // namespace

TEST_CASE("minimal network validates") {
    auto r = validate_network(two_nodes());
    CHECK(r.ok());
    CHECK(r.to_string() == "ok");
    CHECK_NOTHROW(require_valid(two_nodes()));
}

TEST_CASE("cycle is reported") {
    auto n = two_nodes();
    n.edges.push_back({"back", "b", "a", {2}});
    auto r = validate_network(n);
    CHECK_FALSE(r.ok());
    CHECK(r.mentions("graph contains a cycle"));
    CHECK_THROWS_AS(require_valid(n), ValidationError);
    CHECK_THROWS_AS(topological_order(n), CycleError);
}

TEST_CASE("dangling tap is reported with its id") {
    auto n = two_nodes();
    n.eavesdroppers = {{"w", {"e9"}, {"X"}}};
    auto r = validate_network(n);
    CHECK(r.mentions("unknown edge e9"));
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].entity == "w");
}

TEST_CASE("network well-formedness rules") {
    SUBCASE("source destined for its origin") {
        auto n = two_nodes();
        n.sources[0].destinations.insert("a");
        CHECK(validate_network(n).mentions("source destined for its own origin"));
    }
    SUBCASE("self loop") {
        auto n = two_nodes();
        n.edges.push_back({"loop", "b", "b", {2}});
        CHECK(validate_network(n).mentions("self-loop at node b"));
    }
    SUBCASE("sink that nobody serves") {
        auto n = two_nodes();
        n.nodes.push_back("c");
        n.edges.push_back({"f", "a", "c", {2}});
        CHECK(validate_network(n).mentions("node without outgoing edges is not a destination"));
    }
    SUBCASE("root without a source") {
        auto n = two_nodes();
        n.nodes.push_back("c");
        n.edges.push_back({"f", "c", "b", {2}});
        CHECK(validate_network(n).mentions("node without incoming edges originates no source"));
    }
    SUBCASE("unknown target") {
        auto n = two_nodes();
        n.eavesdroppers = {{"w", {"e"}, {"Y"}}};
        CHECK(validate_network(n).mentions("unknown source Y"));
    }
    SUBCASE("zero alphabet") {
        auto n = two_nodes();
        n.edges[0].alphabet = {0};
        CHECK_FALSE(validate_network(n).ok());
    }
    SUBCASE("parallel edges are fine") {
        CHECK(validate_network(test::parallel_edges()).ok());
    }
}

TEST_CASE("index validation") {
    IndexInstance i;
    i.messages = {{"1", {2}}, {"2", {2}}};
    i.receivers = {{"r", {"1"}, {"2"}}};
    i.broadcast_alphabet = {2};
    CHECK(validate_index(i).ok());

    auto overlap = i;
    overlap.eavesdroppers = {{"w", {"1"}, {"1"}}};
    CHECK(validate_index(overlap).mentions("target overlaps side information"));

    auto greedy = i;
    greedy.receivers[0].has = {"1"};
    CHECK(validate_index(greedy).mentions("wants overlaps has"));

    auto dangling = i;
    dangling.receivers[0].wants = {"7"};
    CHECK(validate_index(dangling).mentions("unknown message 7"));
    CHECK_THROWS_AS(require_valid(dangling), ValidationError);
}

TEST_CASE("topological order examples") {
    NetworkInstance chain;
    chain.nodes = {"a", "b", "c"};
    chain.edges = {{"e2", "b", "c", {2}}, {"e1", "a", "b", {2}}};
    chain.sources = {{"X", "a", {2}, {"c"}}};
    CHECK(topological_order(chain) == std::vector<std::string>{"e1", "e2"});
    CHECK(topological_order(diamond()) == std::vector<std::string>{"e1", "e2", "e3", "e4"});
    CHECK(topological_order(two_nodes()) == std::vector<std::string>{"e"});
}

TEST_CASE("topological order is a permutation respecting precedence") {
    for (const auto& n : {diamond(), test::parallel_edges(), test::load_network("otp.net.json")}) {
        auto order = topological_order(n);
        REQUIRE(order.size() == n.edges.size());
        std::map<std::string, std::size_t> pos;
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        CHECK(pos.size() == n.edges.size());
        for (const auto& e : n.edges)
            for (const auto* in : n.in_edges(e.tail)) CHECK(pos.at(in->id) < pos.at(e.id));
    }
}

TEST_CASE("validation is a pure function of the value") {
    auto n = diamond();
    n.eavesdroppers = {{"w", {"e9", "e1"}, {"Q"}}};
    auto a = validate_network(n), b = validate_network(n);
    CHECK(a.violations == b.violations);
    CHECK(a.to_string() == b.to_string());
}

TEST_CASE("rates") {
    for (std::uint64_t size : {1u, 2u, 3u, 4u, 7u, 1024u})
        for (std::uint32_t n : {1u, 2u, 5u})
            CHECK(std::abs(Alphabet{size}.rate(n) - std::log2(double(size)) / n) < 1e-12);
}
