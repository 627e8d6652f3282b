#include "doctest.h"

#include <random>
#include <set>
#include <tuple>

#include "snic/errors.hpp"
#include "snic/transform.hpp"
#include "support.hpp"

using namespace snic;

namespace {

using EdgeSet = std::set<std::tuple<std::string, std::string, std::uint64_t>>;

EdgeSet edge_set(const NetworkInstance& n) {
    EdgeSet out;
    for (const auto& e : n.edges) out.insert({e.tail, e.head, e.alphabet.size});
    return out;
}

// The prescribed layout written out directly from the index instance.
EdgeSet expected_edges(const IndexInstance& i) {
    EdgeSet out;
    for (const auto& m : i.messages) {
        out.insert({"s:" + m.id, "1", m.alphabet.size});
        for (const auto& r : i.receivers)
            if (r.has.count(m.id)) out.insert({"s:" + m.id, "t:" + r.id, m.alphabet.size});
    }
    out.insert({"1", "2", i.broadcast_alphabet.size});
    for (const auto& r : i.receivers) out.insert({"2", "t:" + r.id, i.broadcast_alphabet.size});
    return out;
}

IndexInstance four_messages() {
    IndexInstance i;
    for (auto id : {"1", "2", "3", "4"}) i.messages.push_back({id, {2}});
    i.receivers = {{"a", {"1"}, {"2", "4"}}, {"b", {"2"}, {"3"}}, {"c", {"3"}, {"4"}}};
    i.eavesdroppers = {{"w", {"4"}, {"2"}}};
    i.broadcast_alphabet = {2};
    return i;
}

NetworkInstance chain3() {
    NetworkInstance n;
    n.nodes = {"u", "v", "w"};
    n.edges = {{"e1", "u", "v", {2}}, {"e2", "v", "w", {3}}};
    n.sources = {{"X1", "u", {2}, {"w"}}, {"X2", "u", {2}, {"w"}}, {"X3", "v", {2}, {"w"}}};
    return n;
}

}  // namespace

TEST_CASE("index to network: two messages, one receiver") {
    IndexInstance i;
    i.messages = {{"1", {2}}, {"2", {2}}};
    i.receivers = {{"r", {"1"}, {"2"}}};
    i.broadcast_alphabet = {2};
    auto [n, map] = index_to_network(i);
    CHECK(n.nodes.size() == 5);
    CHECK(edge_set(n) == EdgeSet{{"s:1", "1", 2}, {"s:2", "1", 2}, {"s:2", "t:r", 2}, {"1", "2", 2}, {"2", "t:r", 2}});
    CHECK(n.eavesdroppers.empty());
    CHECK(map.node_for_message.at("1") == "s:1");
    CHECK(map.receiver_node.at("r") == "t:r");
    CHECK(map.edge_roles.at(map.bottleneck_edge()) == EdgeRole::bottleneck);
    CHECK(map.edge_roles.at(map.fanout_edge("r")) == EdgeRole::fanout);
    CHECK(map.edge_roles.at(map.side_edge("2", "r")) == EdgeRole::source_to_receiver);
    CHECK(map.edge_roles.at(map.relay_edge("1")) == EdgeRole::source_to_relay);
    const Source* x1 = n.find_source("1");
    REQUIRE(x1);
    CHECK(x1->origin == "s:1");
    CHECK(x1->destinations == IdSet{"t:r"});
    CHECK(n.find_source("2")->destinations.empty());
}

TEST_CASE("index to network: eavesdropper taps bottleneck and side-information edges") {
    auto i = four_messages();
    auto [n, map] = index_to_network(i);
    REQUIRE(n.eavesdroppers.size() == 1);
    const auto& w = n.eavesdroppers[0];
    CHECK(w.target_sources == IdSet{"2"});
    IdSet expected{map.bottleneck_edge()};
    for (const auto* e : n.out_edges("s:4")) expected.insert(e->id);
    CHECK(expected.size() == 4);  // 1->2, s:4->1, s:4->t:a, s:4->t:c
    CHECK(w.tapped_edges == expected);
}

TEST_CASE("index to network: structure on the corpus") {
    for (const auto& name : test::index_corpus()) {
        CAPTURE(name);
        auto i = test::load_index(name);
        auto [n, map] = index_to_network(i);
        CHECK(validate_network(n).ok());
        CHECK(n.nodes.size() == i.messages.size() + i.receivers.size() + 2);
        CHECK(edge_set(n) == expected_edges(i));
        CHECK(map.edge_roles.size() == n.edges.size());
        for (const auto& e : n.edges) {
            auto role = map.edge_roles.at(e.id);
            if (role == EdgeRole::bottleneck || role == EdgeRole::fanout)
                CHECK(e.alphabet == i.broadcast_alphabet);
            CHECK(edge_role_from_string(to_string(role)) == role);
        }
    }
}

TEST_CASE("index to network rejects invalid input") {
    auto i = test::two_messages();
    i.receivers[0].has = {"a"};
    CHECK_THROWS_AS(index_to_network(i), ValidationError);
    auto idle = test::two_messages();
    idle.receivers[0].wants.clear();
    CHECK_THROWS_AS(index_to_network(idle), ValidationError);
}

TEST_CASE("augment examples") {
    NetworkInstance n;
    n.nodes = {"u", "v"};
    n.edges = {{"e", "u", "v", {4}}};
    n.sources = {{"X", "u", {2}, {"v"}}};
    n.eavesdroppers = {{"w", {"e"}, {"X"}}};
    auto [a, rec] = augment(n);
    CHECK(a.sources.size() == 3);
    CHECK(rec.key_source_ids.at("u") == "key:u");
    CHECK(rec.key_alphabets.at("u") == Alphabet{4});
    CHECK(rec.key_alphabets.at("v") == Alphabet{1});
    const Source* ku = a.find_source("key:u");
    REQUIRE(ku);
    CHECK(ku->origin == "u");
    CHECK(ku->alphabet == Alphabet{4});
    CHECK(ku->destinations.empty());
    CHECK(a.eavesdroppers == n.eavesdroppers);
    CHECK(a.edges == n.edges);
    CHECK(a.nodes == n.nodes);
    CHECK(validate_network(a).ok());
}

TEST_CASE("augment keys are products of out-edge alphabets") {
    auto [a, rec] = augment(test::load_network("otp.net.json"));
    CHECK(rec.key_alphabets.at("s") == Alphabet{4});
    CHECK(rec.key_alphabets.at("t") == Alphabet{1});
    CHECK(a.sources.size() == 3);
}

TEST_CASE("augment is idempotent on graph and eavesdroppers") {
    auto n = test::parallel_edges();
    auto [a1, r1] = augment(n);
    auto [a2, r2] = augment(a1);
    CHECK(a2.nodes == a1.nodes);
    CHECK(a2.edges == a1.edges);
    CHECK(a2.eavesdroppers == a1.eavesdroppers);
    CHECK(a2.sources.size() == a1.sources.size() + a1.nodes.size());
    for (const auto& [node, id] : r2.key_source_ids) {
        CHECK(id != r1.key_source_ids.at(node));
        CHECK(a1.find_source(id) == nullptr);
    }
}

TEST_CASE("network to index examples") {
    auto n = chain3();
    auto [i, map] = network_to_index(n);
    CHECK(i.messages.size() == 5);
    CHECK(i.receivers.size() == 3);
    CHECK(i.broadcast_alphabet == Alphabet{6});
    const Receiver* te = i.find_receiver(map.edge_receiver("e2"));
    REQUIRE(te);
    CHECK(te->has == IdSet{map.edge_message("e1"), "X3"});
    CHECK(te->wants == IdSet{map.edge_message("e2")});
    const Receiver* tw = i.find_receiver(map.node_receiver("w"));
    REQUIRE(tw);
    CHECK(tw->has == IdSet{map.edge_message("e2")});
    CHECK(tw->wants == IdSet{"X1", "X2", "X3"});
    CHECK(i.eavesdroppers.empty());
    CHECK(map.broadcast_edges == std::vector<std::string>{"e1", "e2"});
    CHECK(map.message_origin.at("edge:e1") == OriginRef{OriginKind::edge, "e1"});
    CHECK(map.receiver_origin.at("t:w") == OriginRef{OriginKind::node, "w"});
    CHECK(i.find_message("edge:e2")->alphabet == Alphabet{3});
}

TEST_CASE("network to index carries eavesdroppers over as edge messages") {
    auto [i, map] = network_to_index(test::parallel_edges());
    REQUIRE(i.eavesdroppers.size() == 1);
    CHECK(i.eavesdroppers[0].side_info == IdSet{"edge:e1"});
    CHECK(i.eavesdroppers[0].target_messages == IdSet{"X"});
}

TEST_CASE("network to index counts on random networks") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        auto n = test::random_network(rng, 5, 5, 3);
        if (trial % 2) n = augment(n).first;
        auto [i, map] = network_to_index(n);
        CHECK(validate_index(i).ok());
        CHECK(i.messages.size() == n.sources.size() + n.edges.size());
        CHECK(i.receivers.size() == n.destination_nodes().size() + n.edges.size());
        std::uint64_t product = 1;
        for (const auto& e : n.edges) product *= e.alphabet.size;
        CHECK(i.broadcast_alphabet.size == product);
        for (const auto& r : i.receivers)
            for (const auto& w : r.wants) CHECK_FALSE(r.has.count(w));
    }
}

TEST_CASE("composite mapping always yields a valid index instance") {
    for (const auto& name : test::index_corpus()) {
        CAPTURE(name);
        auto [n, m1] = index_to_network(test::load_index(name));
        auto [a, rec] = augment(n);
        auto [i, m2] = network_to_index(a);
        CHECK(validate_index(i).ok());
    }
}

TEST_CASE("identifier collisions are refused") {
    auto n = test::parallel_edges();
    n.sources.push_back({"edge:e1", "s", {2}, {"t"}});
    CHECK_THROWS_AS(network_to_index(n), ValidationError);
}
