#include "doctest.h"

#include <algorithm>

#include "snic/errors.hpp"
#include "snic/search.hpp"
#include "snic/verify.hpp"
#include "support.hpp"

using namespace snic;

namespace {

NetworkInstance tapped_single_edge() {
    NetworkInstance n;
    n.nodes = {"s", "t"};
    n.edges = {{"e", "s", "t", {2}}};
    n.sources = {{"X", "s", {2}, {"t"}}};
    n.eavesdroppers = {{"w", {"e"}, {"X"}}};
    return n;
}

// Concatenated binary tables, first entry most significant, counting upwards.
std::vector<std::vector<Symbol>> lex_binary(std::size_t entries) {
    std::vector<std::vector<Symbol>> out;
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << entries); ++t) {
        std::vector<Symbol> v(entries);
        for (std::size_t i = 0; i < entries; ++i) v[i] = (t >> (entries - 1 - i)) & 1;
        out.push_back(v);
    }
    return out;
}

std::vector<Symbol> slice(const std::vector<Symbol>& v, std::size_t from, std::size_t n) {
    return {v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n)};
}

}  // namespace

TEST_CASE("network search examples") {
    SUBCASE("decoder and eavesdropper share the only edge") {
        auto r = search_network_codes(tapped_single_edge(), {{"s", {2}}});
        CHECK(r.status == SearchStatus::infeasible);
        CHECK_FALSE(r.code);
    }
    SUBCASE("parallel edges admit a one-time pad") {
        auto n = test::parallel_edges();
        auto r = search_network_codes(n, {{"s", {2}}});
        REQUIRE(r.feasible());
        CHECK(check_network_decodable(n, *r.code));
        CHECK(check_network_secure(n, *r.code));
        CHECK(test::oracle_network_decodable(n, *r.code));
        CHECK(test::oracle_network_secure(n, *r.code));
    }
    SUBCASE("no eavesdropper: identity") {
        auto n = tapped_single_edge();
        n.eavesdroppers.clear();
        auto r = search_network_codes(n);
        REQUIRE(r.feasible());
        CHECK(r.code->edge_functions.at("e").table() == std::vector<Symbol>{0, 1});
        CHECK(r.code->node_decoders.at("t").table() == std::vector<Symbol>{0, 1});
    }
}

TEST_CASE("index search examples") {
    auto r = search_index_codes(test::two_messages());
    REQUIRE(r.feasible());
    CHECK(r.code->encoder.table() == std::vector<Symbol>{0, 1, 1, 0});
    CHECK(test::oracle_index_decodable(test::two_messages(), *r.code));
    CHECK(test::oracle_index_secure(test::two_messages(), *r.code));

    CHECK(search_index_codes(test::two_messages({"b"})).status == SearchStatus::infeasible);

    auto idle = test::two_messages();
    idle.receivers[0].wants.clear();
    auto c = search_index_codes(idle);
    REQUIRE(c.feasible());
    auto t = c.code->encoder.table();
    CHECK(std::all_of(t.begin(), t.end(), [&](Symbol s) { return s == t[0]; }));
}

TEST_CASE("index witness is the first secure code in table order") {
    auto i = test::two_messages();
    std::optional<std::vector<Symbol>> first;
    for (const auto& v : lex_binary(8)) {
        IndexCode c;
        c.encoder = FiniteFunction({{"a", {2}}, {"b", {2}}}, {2}, slice(v, 0, 4));
        c.decoders["r"] = FiniteFunction({{"broadcast", {2}}, {"b", {2}}}, {2}, slice(v, 4, 4));
        if (test::oracle_index_decodable(i, c) && test::oracle_index_secure(i, c)) {
            first = v;
            break;
        }
    }
    REQUIRE(first);
    for (bool early : {true, false}) {
        SearchOptions o;
        o.early_rejection = early;
        auto r = search_index_codes(i, Alphabet{1}, {}, o);
        REQUIRE(r.feasible());
        CHECK(r.code->encoder.table() == slice(*first, 0, 4));
        CHECK(r.code->decoders.at("r").table() == slice(*first, 4, 4));
    }
}

TEST_CASE("network witness is the first secure code in table order") {
    auto n = test::parallel_edges();
    std::optional<std::vector<Symbol>> first;
    for (const auto& v : lex_binary(12)) {
        NetworkCode c;
        c.key_alphabets["s"] = {2};
        std::vector<Slot> at_s{{"X", {2}}, {"key:s", {2}}};
        c.edge_functions["e1"] = FiniteFunction(at_s, {2}, slice(v, 0, 4));
        c.edge_functions["e2"] = FiniteFunction(at_s, {2}, slice(v, 4, 4));
        c.node_decoders["t"] = FiniteFunction({{"e1", {2}}, {"e2", {2}}}, {2}, slice(v, 8, 4));
        if (test::oracle_network_decodable(n, c) && test::oracle_network_secure(n, c)) {
            first = v;
            break;
        }
    }
    REQUIRE(first);
    auto r = search_network_codes(n, {{"s", {2}}});
    REQUIRE(r.feasible());
    CHECK(r.code->edge_functions.at("e1").table() == slice(*first, 0, 4));
    CHECK(r.code->edge_functions.at("e2").table() == slice(*first, 4, 4));
    CHECK(r.code->node_decoders.at("t").table() == slice(*first, 8, 4));
}

TEST_CASE("early rejection and symmetry pruning never change the outcome") {
    std::vector<std::pair<NetworkInstance, std::map<std::string, Alphabet>>> nets{
        {test::parallel_edges(), {{"s", {2}}}},
        {tapped_single_edge(), {{"s", {2}}}},
        {test::load_network("shared-edge.net.json"), {{"s", {2}}}},
    };
    nets.push_back({index_to_network(test::two_messages()).first, {}});
    for (const auto& [n, keys] : nets) {
        auto base = search_network_codes(n, keys);
        for (bool early : {true, false})
            for (bool sym : {false, true}) {
                SearchOptions o{early, sym};
                auto r = search_network_codes(n, keys, {}, o);
                CHECK(r.status == base.status);
                CHECK(r.code == base.code);
            }
    }
    for (const auto& name : test::index_corpus()) {
        CAPTURE(name);
        auto i = test::load_index(name);
        auto base = search_index_codes(i);
        // full enumeration only where it fits the default budget
        bool small = i.messages.size() <= 2 && i.broadcast_alphabet.size == 2;
        for (bool early : {true, false})
            for (bool sym : {false, true}) {
                if (!early && !small) continue;
                auto r = search_index_codes(i, Alphabet{1}, {}, SearchOptions{early, sym});
                CHECK(r.status == base.status);
                CHECK(r.code == base.code);
            }
    }
}

TEST_CASE("returned codes always pass the verifier") {
    for (const auto& name : test::index_corpus()) {
        CAPTURE(name);
        auto i = test::load_index(name);
        auto r = search_index_codes(i);
        if (!r.feasible()) continue;
        CHECK(check_index_decodable(i, *r.code));
        CHECK(check_index_secure(i, *r.code));
        CHECK(test::oracle_index_decodable(i, *r.code));
        CHECK(test::oracle_index_secure(i, *r.code));
    }
}

TEST_CASE("verdict does not depend on eavesdropper order") {
    for (const auto& name : {"threemsg.idx.json", "exchange-eve-both.idx.json", "twomsg.idx.json"}) {
        auto i = test::load_index(name);
        i.eavesdroppers.push_back({"extra", {}, {i.messages.back().id}});
        auto a = search_index_codes(i);
        std::reverse(i.eavesdroppers.begin(), i.eavesdroppers.end());
        auto b = search_index_codes(i);
        CHECK(a.status == b.status);
    }
    auto n = test::parallel_edges();
    n.eavesdroppers = {{"w2", {"e2"}, {"X"}}, {"w1", {"e1"}, {"X"}}};
    auto a = search_network_codes(n, {{"s", {2}}});
    std::reverse(n.eavesdroppers.begin(), n.eavesdroppers.end());
    auto b = search_network_codes(n, {{"s", {2}}});
    CHECK(a.status == b.status);
    CHECK(a.feasible());
}

TEST_CASE("budgets") {
    SearchBudget tiny{3, 1u << 20};
    CHECK(search_network_codes(test::parallel_edges(), {{"s", {2}}}, tiny).status == SearchStatus::budget_exceeded);
    CHECK(search_index_codes(test::two_messages(), Alphabet{1}, tiny).status == SearchStatus::budget_exceeded);
    SearchBudget narrow{1u << 22, 2};
    CHECK(search_index_codes(test::two_messages(), Alphabet{1}, narrow).status == SearchStatus::budget_exceeded);
    CHECK_THROWS_AS(feasibility_equivalence(test::two_messages(), tiny), BudgetExceededError);
    auto r = search_index_codes(test::two_messages());
    CHECK(r.candidates > 0);
    CHECK(to_string(SearchStatus::budget_exceeded) == "BudgetExceeded");
}

TEST_CASE("invalid instances are refused") {
    auto n = tapped_single_edge();
    n.edges.push_back({"b", "t", "s", {2}});
    CHECK_THROWS_AS(search_network_codes(n), ValidationError);
}

TEST_CASE("feasibility equivalence examples") {
    auto yes = feasibility_equivalence(test::two_messages());
    CHECK(yes.index_feasible);
    CHECK(yes.network_feasible);
    CHECK(yes.agree);
    REQUIRE(yes.augmented_feasible);
    CHECK(*yes.augmented_feasible);

    auto no = feasibility_equivalence(test::two_messages({"b"}));
    CHECK_FALSE(no.index_feasible);
    CHECK_FALSE(no.network_feasible);
    CHECK(no.agree);

    auto open = test::load_index("exchange.idx.json");
    REQUIRE(open.eavesdroppers.empty());
    auto r = feasibility_equivalence(open);
    CHECK(r.agree);
    CHECK(r.index_feasible);
}

TEST_CASE("feasibility equivalence with a sender key") {
    EquivalenceOptions o;
    o.key_alphabet = Alphabet{2};
    auto r = feasibility_equivalence(test::two_messages({}, 4), {}, o);
    CHECK(r.index_feasible);
    CHECK(r.network_feasible);
    CHECK(r.agree);
}
