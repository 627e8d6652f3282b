#pragma once

// Shared builders and brute-force oracles for the test binaries. The oracles
// run codes one input tuple at a time through FiniteFunction::evaluate, looking
// arguments up by slot name, and never touch the column machinery they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "snic/codes.hpp"
#include "snic/io.hpp"
#include "snic/model.hpp"

namespace snic::test {

inline std::filesystem::path corpus(const std::string& name) { return std::filesystem::path(SNIC_CORPUS_DIR) / name; }

inline NetworkInstance load_network(const std::string& name) {
    return io::parse_network_instance(io::read_file(corpus(name)));
}
inline IndexInstance load_index(const std::string& name) { return io::parse_index_instance(io::read_file(corpus(name))); }

inline std::vector<std::string> index_corpus() {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(SNIC_CORPUS_DIR)) {
        auto name = entry.path().filename().string();
        if (name.size() > 9 && name.ends_with(".idx.json")) names.push_back(name);
    }
    std::sort(names.begin(), names.end());
    return names;
}

// s --e1--> t and s --e2--> t, binary X at s wanted by t, eavesdropper taps e1.
inline NetworkInstance parallel_edges() {
    NetworkInstance n;
    n.nodes = {"s", "t"};
    n.edges = {{"e1", "s", "t", {2}}, {"e2", "s", "t", {2}}};
    n.sources = {{"X", "s", {2}, {"t"}}};
    n.eavesdroppers = {{"w", {"e1"}, {"X"}}};
    return n;
}

// e1 = Z, e2 = X xor Z, decoder e1 xor e2.
inline NetworkCode one_time_pad() {
    NetworkCode c;
    c.key_alphabets["s"] = Alphabet{2};
    std::vector<Slot> slots{{"X", {2}}, {"key:s", {2}}};
    c.edge_functions["e1"] = FiniteFunction(slots, {2}, {0, 0, 1, 1});
    c.edge_functions["e2"] = FiniteFunction(slots, {2}, {0, 1, 1, 0});
    c.node_decoders["t"] = FiniteFunction({{"e1", {2}}, {"e2", {2}}}, {2}, {0, 1, 1, 0});
    return c;
}

// Two binary messages, receiver r wants a and has b, eavesdropper targets a.
inline IndexInstance two_messages(IdSet side_info = {}, std::uint64_t broadcast = 2) {
    IndexInstance i;
    i.messages = {{"a", {2}}, {"b", {2}}};
    i.receivers = {{"r", {"a"}, {"b"}}};
    i.eavesdroppers = {{"w", std::move(side_info), {"a"}}};
    i.broadcast_alphabet = {broadcast};
    return i;
}

inline void for_each_tuple(const std::vector<std::uint64_t>& sizes,
                           const std::function<void(const std::vector<Symbol>&)>& fn) {
    std::vector<Symbol> t(sizes.size(), 0);
    for (auto s : sizes)
        if (s == 0) return;
    for (;;) {
        fn(t);
        std::size_t i = 0;
        while (i < t.size() && ++t[i] == sizes[i]) t[i++] = 0;
        if (i == t.size()) return;
    }
}

using Values = std::map<std::string, Symbol>;

inline Symbol call(const FiniteFunction& f, const Values& v) {
    std::vector<Symbol> args;
    for (const auto& s : f.slots()) args.push_back(v.at(s.name));
    return f.evaluate(args);
}

// Little-endian packing of `ids` read from `v`.
inline Symbol pack(const std::vector<std::pair<std::string, std::uint64_t>>& ids, const Values& v) {
    std::uint64_t out = 0, stride = 1;
    for (const auto& [id, size] : ids) {
        out += v.at(id) * stride;
        stride *= size;
    }
    return static_cast<Symbol>(out);
}

// Every (sources, keys) realisation with the edge symbols filled in hop by hop.
inline void simulate_network(const NetworkInstance& n, const NetworkCode& code,
                             const std::function<void(const Values&)>& fn) {
    std::vector<std::string> names;
    std::vector<std::uint64_t> sizes;
    for (const auto& s : n.sources) {
        names.push_back(s.id);
        sizes.push_back(s.alphabet.size);
    }
    for (const auto& [node, k] : code.key_alphabets) {
        if (k.size <= 1) continue;
        names.push_back("key:" + node);
        sizes.push_back(k.size);
    }
    for_each_tuple(sizes, [&](const std::vector<Symbol>& t) {
        Values v;
        for (std::size_t i = 0; i < t.size(); ++i) v[names[i]] = t[i];
        std::size_t done = 0;
        std::vector<bool> have(n.edges.size(), false);
        while (done < n.edges.size()) {
            for (std::size_t i = 0; i < n.edges.size(); ++i) {
                if (have[i]) continue;
                bool ready = true;
                for (std::size_t j = 0; j < n.edges.size(); ++j)
                    if (n.edges[j].head == n.edges[i].tail && !have[j]) ready = false;
                if (!ready) continue;
                v[n.edges[i].id] = call(code.edge_functions.at(n.edges[i].id), v);
                have[i] = true;
                ++done;
            }
        }
        fn(v);
    });
}

inline std::vector<std::pair<std::string, std::uint64_t>> required(const NetworkInstance& n, const std::string& node) {
    std::vector<std::pair<std::string, std::uint64_t>> out;
    for (const auto& s : n.sources)
        if (s.destinations.count(node)) out.emplace_back(s.id, s.alphabet.size);
    std::sort(out.begin(), out.end());
    return out;
}

inline bool oracle_network_decodable(const NetworkInstance& n, const NetworkCode& code) {
    bool ok = true;
    simulate_network(n, code, [&](const Values& v) {
        for (const auto& node : n.nodes) {
            auto want = required(n, node);
            if (want.empty()) continue;
            if (call(code.node_decoders.at(node), v) != pack(want, v)) ok = false;
        }
    });
    return ok;
}

inline std::vector<Symbol> random_table(std::uint64_t length, std::uint64_t output, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> d(0, output - 1);
    std::vector<Symbol> t(length);
    for (auto& x : t) x = static_cast<Symbol>(d(rng));
    return t;
}

inline FiniteFunction random_function(std::vector<Slot> slots, Alphabet output, std::mt19937_64& rng) {
    std::uint64_t length = 1;
    for (const auto& s : slots) length *= s.alphabet.size;
    auto table = random_table(length, output.size, rng);
    return FiniteFunction(std::move(slots), output, std::move(table));
}

inline NetworkCode random_network_code(const NetworkInstance& n, const std::map<std::string, Alphabet>& keys,
                                       std::mt19937_64& rng) {
    NetworkCode c;
    for (const auto& [node, k] : keys)
        if (k.size > 1) c.key_alphabets[node] = k;
    for (const auto& e : n.edges)
        c.edge_functions[e.id] = random_function(edge_slots(n, e, c.key_alphabet(e.tail)), e.alphabet, rng);
    for (const auto& node : n.destination_nodes())
        c.node_decoders[node] = random_function(decoder_slots(n, node), requirement_alphabet(n, node), rng);
    return c;
}

// A random valid DAG over at most `nodes` nodes: forward edges only, isolated
// nodes dropped, one source per root wanted by every sink.
inline NetworkInstance random_network(std::mt19937_64& rng, std::size_t nodes, std::size_t edges,
                                      std::uint64_t max_alphabet = 2) {
    std::uniform_int_distribution<std::uint64_t> size(2, max_alphabet);
    for (;;) {
        NetworkInstance n;
        for (std::size_t i = 0; i < nodes; ++i) n.nodes.push_back("n" + std::to_string(i));
        std::uniform_int_distribution<std::size_t> pick(0, nodes - 1);
        while (n.edges.size() < edges) {
            auto a = pick(rng), b = pick(rng);
            if (a >= b) continue;
            n.edges.push_back({"e" + std::to_string(n.edges.size()), n.nodes[a], n.nodes[b], {size(rng)}});
        }
        std::erase_if(n.nodes, [&](const std::string& v) { return n.in_edges(v).empty() && n.out_edges(v).empty(); });
        IdSet sinks;
        for (const auto& v : n.nodes)
            if (n.out_edges(v).empty()) sinks.insert(v);
        for (const auto& v : n.nodes)
            if (n.in_edges(v).empty() && !sinks.count(v))
                n.sources.push_back({"X" + v.substr(1), v, {size(rng)}, sinks});
        if (validate_network(n).ok()) return n;
    }
}

// Counting oracle for A independent of B over equiprobable rows.
inline bool independent_rows(const std::vector<std::vector<Symbol>>& rows, const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b) {
    std::map<std::vector<Symbol>, std::uint64_t> ca, cb;
    std::map<std::pair<std::vector<Symbol>, std::vector<Symbol>>, std::uint64_t> cab;
    auto pick = [](const std::vector<Symbol>& r, const std::vector<std::size_t>& idx) {
        std::vector<Symbol> out;
        for (auto i : idx) out.push_back(r[i]);
        return out;
    };
    for (const auto& r : rows) {
        auto x = pick(r, a), y = pick(r, b);
        ++ca[x];
        ++cb[y];
        ++cab[{x, y}];
    }
    for (const auto& [x, nx] : ca)
        for (const auto& [y, ny] : cb) {
            auto it = cab.find({x, y});
            std::uint64_t nxy = it == cab.end() ? 0 : it->second;
            if (nxy * rows.size() != nx * ny) return false;
        }
    return true;
}

// H(A | B) in bits over equiprobable rows, straight from the definition.
inline double entropy_rows(const std::vector<std::vector<Symbol>>& rows, const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b) {
    std::map<std::vector<Symbol>, double> pb, pab;
    for (const auto& r : rows) {
        std::vector<Symbol> y, xy;
        for (auto i : b) y.push_back(r[i]);
        xy = y;
        xy.push_back(0xffffffffu);
        for (auto i : a) xy.push_back(r[i]);
        pb[y] += 1.0;
        pab[xy] += 1.0;
    }
    double h = 0, total = static_cast<double>(rows.size());
    for (const auto& [xy, c] : pab) {
        std::vector<Symbol> y(xy.begin(), xy.begin() + static_cast<std::ptrdiff_t>(b.size()));
        h -= c / total * std::log2(c / pb[y]);
    }
    return h;
}

inline bool oracle_network_secure(const NetworkInstance& n, const NetworkCode& code) {
    for (const auto& eve : n.eavesdroppers) {
        std::vector<std::vector<Symbol>> rows;
        std::vector<std::size_t> a, b;
        for (std::size_t i = 0; i < eve.target_sources.size(); ++i) a.push_back(i);
        for (std::size_t i = 0; i < eve.tapped_edges.size(); ++i) b.push_back(a.size() + i);
        simulate_network(n, code, [&](const Values& v) {
            std::vector<Symbol> r;
            for (const auto& s : eve.target_sources) r.push_back(v.at(s));
            for (const auto& e : eve.tapped_edges) r.push_back(v.at(e));
            rows.push_back(r);
        });
        if (!independent_rows(rows, a, b)) return false;
    }
    return true;
}

inline void simulate_index(const IndexInstance& inst, const IndexCode& code,
                           const std::function<void(const Values&)>& fn) {
    std::vector<std::string> names;
    std::vector<std::uint64_t> sizes;
    for (const auto& m : inst.messages) {
        names.push_back(m.id);
        sizes.push_back(m.alphabet.size);
    }
    if (code.key_alphabet.size > 1) {
        names.push_back("key:sender");
        sizes.push_back(code.key_alphabet.size);
    }
    for_each_tuple(sizes, [&](const std::vector<Symbol>& t) {
        Values v;
        for (std::size_t i = 0; i < t.size(); ++i) v[names[i]] = t[i];
        v["broadcast"] = call(code.encoder, v);
        fn(v);
    });
}

inline bool oracle_index_decodable(const IndexInstance& inst, const IndexCode& code) {
    bool ok = true;
    simulate_index(inst, code, [&](const Values& v) {
        for (const auto& r : inst.receivers) {
            if (r.wants.empty()) continue;
            std::vector<std::pair<std::string, std::uint64_t>> want;
            for (const auto& id : r.wants) want.emplace_back(id, inst.find_message(id)->alphabet.size);
            if (call(code.decoders.at(r.id), v) != pack(want, v)) ok = false;
        }
    });
    return ok;
}

inline bool oracle_index_secure(const IndexInstance& inst, const IndexCode& code) {
    for (const auto& eve : inst.eavesdroppers) {
        std::vector<std::vector<Symbol>> rows;
        std::vector<std::size_t> a, b;
        for (std::size_t i = 0; i < eve.target_messages.size(); ++i) a.push_back(i);
        for (std::size_t i = 0; i <= eve.side_info.size(); ++i) b.push_back(a.size() + i);
        simulate_index(inst, code, [&](const Values& v) {
            std::vector<Symbol> r;
            for (const auto& m : eve.target_messages) r.push_back(v.at(m));
            r.push_back(v.at("broadcast"));
            for (const auto& m : eve.side_info) r.push_back(v.at(m));
            rows.push_back(r);
        });
        if (!independent_rows(rows, a, b)) return false;
    }
    return true;
}

}  // namespace snic::test
