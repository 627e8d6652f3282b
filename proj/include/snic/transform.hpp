#pragma once

// Instance-level constructions between secure index coding and secure network
// coding.

#include <map>
#include <string_view>
#include <string>
#include <utility>
#include <vector>

#include "snic/model.hpp"

namespace snic {

enum class EdgeRole { source_to_relay, source_to_receiver, bottleneck, fanout };

std::string_view to_string(EdgeRole role) noexcept;
EdgeRole edge_role_from_string(std::string_view text);

/// How an index instance was laid out as a network: message i originates at
/// node "s:<i>", receiver j sits at node "t:<j>", and the broadcast passes
/// through the relay pair ("1", "2").
struct IndexToNetworkMapping {
    std::map<std::string, std::string> node_for_message;
    std::map<std::string, std::string> receiver_node;
    std::pair<std::string, std::string> relay_nodes{"1", "2"};
    std::map<std::string, EdgeRole> edge_roles;

    std::string bottleneck_edge() const;
    /// Edge from node "2" to the node of `receiver`.
    std::string fanout_edge(const std::string& receiver) const;
    /// Edge from the node of `message` to the node of `receiver`.
    std::string side_edge(const std::string& message, const std::string& receiver) const;
    std::string relay_edge(const std::string& message) const;

    friend bool operator==(const IndexToNetworkMapping&, const IndexToNetworkMapping&) = default;
};

/// Nodes s_i, t_j, 1, 2; edges s_i->1 and s_i->t_j (i in has_j) with the
/// message alphabet; 1->2 and 2->t_j with the broadcast alphabet. Each index
/// eavesdropper taps 1->2 plus every out-edge of s_i for i in its side
/// information. Throws ValidationError when the input is invalid or the result
/// would be (e.g. a receiver that wants nothing becomes an undemanding sink).
std::pair<NetworkInstance, IndexToNetworkMapping> index_to_network(const IndexInstance& instance);

struct AugmentationRecord {
    std::map<std::string, std::string> key_source_ids;
    std::map<std::string, Alphabet> key_alphabets;

    friend bool operator==(const AugmentationRecord&, const AugmentationRecord&) = default;
};

/// Adds, for every node v, a source "key:<v>" originating at v, demanded by
/// nobody, whose alphabet is the product of v's out-edge alphabets. Graph and
/// eavesdroppers are unchanged.
std::pair<NetworkInstance, AugmentationRecord> augment(const NetworkInstance& instance);

enum class OriginKind { source, edge, node };

struct OriginRef {
    OriginKind kind;
    std::string id;

    friend bool operator==(const OriginRef&, const OriginRef&) = default;
};

struct NetworkToIndexMapping {
    /// message id -> source or edge of the network
    std::map<std::string, OriginRef> message_origin;
    /// receiver id -> destination node or edge of the network
    std::map<std::string, OriginRef> receiver_origin;
    /// Edge ids in broadcast packing order (ascending id, first least significant).
    std::vector<std::string> broadcast_edges;

    std::string edge_message(const std::string& edge) const;
    std::string edge_receiver(const std::string& edge) const;
    std::string node_receiver(const std::string& node) const;

    friend bool operator==(const NetworkToIndexMapping&, const NetworkToIndexMapping&) = default;
};

/// One message per source and per edge ("edge:<e>"); one receiver per
/// destination node ("t:<v>") and per edge ("t:edge:<e>"); eavesdroppers keep
/// their targets and see the tapped edges' messages as side information; the
/// broadcast alphabet is the product of all edge alphabets.
std::pair<IndexInstance, NetworkToIndexMapping> network_to_index(const NetworkInstance& instance);

}  // namespace snic
