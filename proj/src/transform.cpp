#include "snic/transform.hpp"

#include <algorithm>

#include "snic/errors.hpp"

namespace snic {

namespace {

std::string arrow(const std::string& tail, const std::string& head) { return tail + "->" + head; }
std::string message_node(const std::string& message) { return "s:" + message; }
std::string receiver_node_id(const std::string& receiver) { return "t:" + receiver; }

void require_output(const NetworkInstance& out, const std::string& what) {
    auto report = validate_network(out);
    if (!report.ok()) throw ValidationError(what + " produced an invalid network instance:\n" + report.to_string());
}

void require_output(const IndexInstance& out, const std::string& what) {
    auto report = validate_index(out);
    if (!report.ok()) throw ValidationError(what + " produced an invalid index instance:\n" + report.to_string());
}

}  // namespace

std::string_view to_string(EdgeRole role) noexcept {
    switch (role) {
        case EdgeRole::source_to_relay: return "source-to-relay";
        case EdgeRole::source_to_receiver: return "source-to-receiver";
        case EdgeRole::bottleneck: return "bottleneck";
        case EdgeRole::fanout: return "fanout";
    }
    return "?";
}

EdgeRole edge_role_from_string(std::string_view text) {
    for (auto role : {EdgeRole::source_to_relay, EdgeRole::source_to_receiver, EdgeRole::bottleneck, EdgeRole::fanout})
        if (to_string(role) == text) return role;
    throw FormatError("unknown edge role " + std::string(text));
}

std::string IndexToNetworkMapping::bottleneck_edge() const { return arrow(relay_nodes.first, relay_nodes.second); }

std::string IndexToNetworkMapping::fanout_edge(const std::string& receiver) const {
    return arrow(relay_nodes.second, receiver_node.at(receiver));
}

std::string IndexToNetworkMapping::side_edge(const std::string& message, const std::string& receiver) const {
    return arrow(node_for_message.at(message), receiver_node.at(receiver));
}

std::string IndexToNetworkMapping::relay_edge(const std::string& message) const {
    return arrow(node_for_message.at(message), relay_nodes.first);
}

std::pair<NetworkInstance, IndexToNetworkMapping> index_to_network(const IndexInstance& index) {
    require_valid(index);
    NetworkInstance net;
    net.block_size_n = index.block_size_n;
    IndexToNetworkMapping map;
    const auto& [relay_in, relay_out] = map.relay_nodes;

    auto add_edge = [&](const std::string& tail, const std::string& head, Alphabet a, EdgeRole role) {
        const std::string id = arrow(tail, head);
        net.edges.push_back({id, tail, head, a});
        map.edge_roles[id] = role;
    };

    for (const Message* m : index.sorted_messages()) {
        map.node_for_message[m->id] = message_node(m->id);
        net.nodes.push_back(message_node(m->id));
    }
    std::vector<const Receiver*> receivers;
    for (const auto& r : index.receivers) receivers.push_back(&r);
    std::sort(receivers.begin(), receivers.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (const Receiver* r : receivers) {
        map.receiver_node[r->id] = receiver_node_id(r->id);
        net.nodes.push_back(receiver_node_id(r->id));
    }
    net.nodes.push_back(relay_in);
    net.nodes.push_back(relay_out);

    for (const Message* m : index.sorted_messages()) {
        const std::string& s = map.node_for_message[m->id];
        add_edge(s, relay_in, m->alphabet, EdgeRole::source_to_relay);
        for (const Receiver* r : receivers)
            if (r->has.count(m->id)) add_edge(s, map.receiver_node[r->id], m->alphabet, EdgeRole::source_to_receiver);
    }
    add_edge(relay_in, relay_out, index.broadcast_alphabet, EdgeRole::bottleneck);
    for (const Receiver* r : receivers)
        add_edge(relay_out, map.receiver_node[r->id], index.broadcast_alphabet, EdgeRole::fanout);

    for (const Message* m : index.sorted_messages()) {
        Source src{m->id, map.node_for_message[m->id], m->alphabet, {}};
        for (const Receiver* r : receivers)
            if (r->wants.count(m->id)) src.destinations.insert(map.receiver_node[r->id]);
        net.sources.push_back(std::move(src));
    }

    for (const auto& eve : index.eavesdroppers) {
        NetworkEavesdropper out{eve.id, {map.bottleneck_edge()}, eve.target_messages};
        for (const auto& m : eve.side_info)
            for (const Edge* e : net.out_edges(map.node_for_message[m])) out.tapped_edges.insert(e->id);
        net.eavesdroppers.push_back(std::move(out));
    }

    require_output(net, "index-to-network mapping");
    return {std::move(net), std::move(map)};
}

std::pair<NetworkInstance, AugmentationRecord> augment(const NetworkInstance& instance) {
    require_valid(instance);
    NetworkInstance out = instance;
    AugmentationRecord record;
    IdSet taken;
    for (const auto& s : instance.sources) taken.insert(s.id);

    for (const auto& node : instance.nodes) {
        std::uint64_t size = 1;
        for (const Edge* e : instance.out_edges(node)) {
            if (size > kMaxAlphabetSize / e->alphabet.size)
                throw ValidationError("key alphabet of node " + node + " exceeds 2^32 symbols");
            size *= e->alphabet.size;
        }
        const std::string base = "key:" + node;
        std::string id = base;
        for (int k = 2; taken.count(id); ++k) id = base + "#" + std::to_string(k);
        taken.insert(id);
        record.key_source_ids[node] = id;
        record.key_alphabets[node] = Alphabet{size};
        out.sources.push_back({id, node, Alphabet{size}, {}});
    }
    require_output(out, "augmentation");
    return {std::move(out), std::move(record)};
}

std::string NetworkToIndexMapping::edge_message(const std::string& edge) const { return "edge:" + edge; }
std::string NetworkToIndexMapping::edge_receiver(const std::string& edge) const { return "t:edge:" + edge; }
std::string NetworkToIndexMapping::node_receiver(const std::string& node) const { return "t:" + node; }

std::pair<IndexInstance, NetworkToIndexMapping> network_to_index(const NetworkInstance& net) {
    require_valid(net);
    IndexInstance index;
    index.block_size_n = net.block_size_n;
    NetworkToIndexMapping map;

    auto claim = [](auto& registry, const std::string& id, OriginRef origin) {
        if (!registry.emplace(id, std::move(origin)).second)
            throw ValidationError("network-to-index mapping: identifier collision on " + id);
    };

    for (const Source* s : net.sorted_sources()) {
        claim(map.message_origin, s->id, {OriginKind::source, s->id});
        index.messages.push_back({s->id, s->alphabet});
    }
    std::uint64_t broadcast = 1;
    for (const Edge* e : net.sorted_edges()) {
        claim(map.message_origin, map.edge_message(e->id), {OriginKind::edge, e->id});
        index.messages.push_back({map.edge_message(e->id), e->alphabet});
        map.broadcast_edges.push_back(e->id);
        if (broadcast > kMaxAlphabetSize / e->alphabet.size)
            throw ValidationError("broadcast alphabet exceeds 2^32 symbols");
        broadcast *= e->alphabet.size;
    }
    index.broadcast_alphabet = Alphabet{broadcast};

    auto side_info_at = [&](const std::string& node) {
        IdSet has;
        for (const Edge* in : net.in_edges(node)) has.insert(map.edge_message(in->id));
        for (const Source* s : net.sources_at(node)) has.insert(s->id);
        return has;
    };

    for (const auto& node : net.destination_nodes()) {
        const std::string id = map.node_receiver(node);
        claim(map.receiver_origin, id, {OriginKind::node, node});
        Receiver r{id, {}, side_info_at(node)};
        for (const Source* s : net.required_sources(node)) r.wants.insert(s->id);
        index.receivers.push_back(std::move(r));
    }
    for (const Edge* e : net.sorted_edges()) {
        const std::string id = map.edge_receiver(e->id);
        claim(map.receiver_origin, id, {OriginKind::edge, e->id});
        index.receivers.push_back({id, {map.edge_message(e->id)}, side_info_at(e->tail)});
    }

    for (const auto& eve : net.eavesdroppers) {
        IndexEavesdropper out{eve.id, {}, eve.target_sources};
        for (const auto& e : eve.tapped_edges) out.side_info.insert(map.edge_message(e));
        index.eavesdroppers.push_back(std::move(out));
    }

    require_output(index, "network-to-index mapping");
    return {std::move(index), std::move(map)};
}

}  // namespace snic
