#pragma once

// Secure network-coding and secure index-coding instances.
//
// Identifiers are plain strings compared byte-wise; every tie-break and every
// canonical ordering in the library uses that order.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace snic {

using Symbol = std::uint32_t;
using IdSet = std::set<std::string>;

/// Largest alphabet a single variable may use (symbols are 32-bit).
inline constexpr std::uint64_t kMaxAlphabetSize = std::uint64_t{1} << 32;

struct Alphabet {
    std::uint64_t size = 1;

    /// log2(size) / n.
    double rate(std::uint32_t block_size_n) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

struct Edge {
    std::string id;
    std::string tail;
    std::string head;
    Alphabet alphabet;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Source {
    std::string id;
    std::string origin;
    Alphabet alphabet;
    IdSet destinations;

    friend bool operator==(const Source&, const Source&) = default;
};

struct NetworkEavesdropper {
    std::string id;
    IdSet tapped_edges;
    IdSet target_sources;

    friend bool operator==(const NetworkEavesdropper&, const NetworkEavesdropper&) = default;
};

struct NetworkInstance {
    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::vector<Source> sources;
    std::vector<NetworkEavesdropper> eavesdroppers;
    std::uint32_t block_size_n = 1;

    const Edge* find_edge(const std::string& id) const;
    const Source* find_source(const std::string& id) const;
    bool has_node(const std::string& id) const;

    // The following return entities sorted by id.
    std::vector<const Edge*> in_edges(const std::string& node) const;
    std::vector<const Edge*> out_edges(const std::string& node) const;
    std::vector<const Source*> sources_at(const std::string& node) const;
    std::vector<const Source*> required_sources(const std::string& node) const;
    std::vector<const Source*> sorted_sources() const;
    std::vector<const Edge*> sorted_edges() const;
    /// Nodes that are a destination of at least one source.
    IdSet destination_nodes() const;

    friend bool operator==(const NetworkInstance&, const NetworkInstance&) = default;
};

struct Message {
    std::string id;
    Alphabet alphabet;

    friend bool operator==(const Message&, const Message&) = default;
};

struct Receiver {
    std::string id;
    IdSet wants;
    IdSet has;

    friend bool operator==(const Receiver&, const Receiver&) = default;
};

struct IndexEavesdropper {
    std::string id;
    IdSet side_info;
    IdSet target_messages;

    friend bool operator==(const IndexEavesdropper&, const IndexEavesdropper&) = default;
};

struct IndexInstance {
    std::vector<Message> messages;
    std::vector<Receiver> receivers;
    std::vector<IndexEavesdropper> eavesdroppers;
    Alphabet broadcast_alphabet;
    std::uint32_t block_size_n = 1;

    const Message* find_message(const std::string& id) const;
    const Receiver* find_receiver(const std::string& id) const;
    std::vector<const Message*> sorted_messages() const;
    /// Product of the alphabets of `ids`, in id order.
    std::uint64_t product_size(const IdSet& ids) const;

    friend bool operator==(const IndexInstance&, const IndexInstance&) = default;
};

struct Violation {
    std::string entity;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool mentions(const std::string& text) const;
    std::string to_string() const;
};

ValidationReport validate_network(const NetworkInstance& instance);
ValidationReport validate_index(const IndexInstance& instance);

/// Throws ValidationError carrying the joined report when invalid.
void require_valid(const NetworkInstance& instance);
void require_valid(const IndexInstance& instance);

/// Edge ids ordered so that every edge follows all edges into its tail; ties
/// go to the smallest edge id. Throws CycleError on a cyclic graph.
std::vector<std::string> topological_order(const NetworkInstance& instance);

}  // namespace snic
