#include "snic/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

#include "snic/errors.hpp"

namespace snic {

double Alphabet::rate(std::uint32_t block_size_n) const {
    return std::log2(static_cast<double>(size)) / static_cast<double>(block_size_n);
}

namespace {

template <typename T>
std::vector<const T*> sorted_by_id(std::vector<const T*> items) {
    std::sort(items.begin(), items.end(), [](const T* a, const T* b) { return a->id < b->id; });
    return items;
}

bool alphabet_ok(const Alphabet& a) { return a.size >= 1 && a.size <= kMaxAlphabetSize; }

constexpr const char* kBadAlphabet = "alphabet size must be in [1, 2^32]";

}  // namespace

const Edge* NetworkInstance::find_edge(const std::string& id) const {
    for (const auto& e : edges)
        if (e.id == id) return &e;
    return nullptr;
}

const Source* NetworkInstance::find_source(const std::string& id) const {
    for (const auto& s : sources)
        if (s.id == id) return &s;
    return nullptr;
}

bool NetworkInstance::has_node(const std::string& id) const {
    return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
}

std::vector<const Edge*> NetworkInstance::in_edges(const std::string& node) const {
    std::vector<const Edge*> out;
    for (const auto& e : edges)
        if (e.head == node) out.push_back(&e);
    return sorted_by_id(std::move(out));
}

std::vector<const Edge*> NetworkInstance::out_edges(const std::string& node) const {
    std::vector<const Edge*> out;
    for (const auto& e : edges)
        if (e.tail == node) out.push_back(&e);
    return sorted_by_id(std::move(out));
}

std::vector<const Source*> NetworkInstance::sources_at(const std::string& node) const {
    std::vector<const Source*> out;
    for (const auto& s : sources)
        if (s.origin == node) out.push_back(&s);
    return sorted_by_id(std::move(out));
}

std::vector<const Source*> NetworkInstance::required_sources(const std::string& node) const {
    std::vector<const Source*> out;
    for (const auto& s : sources)
        if (s.destinations.count(node)) out.push_back(&s);
    return sorted_by_id(std::move(out));
}

std::vector<const Source*> NetworkInstance::sorted_sources() const {
    std::vector<const Source*> out;
    for (const auto& s : sources) out.push_back(&s);
    return sorted_by_id(std::move(out));
}

std::vector<const Edge*> NetworkInstance::sorted_edges() const {
    std::vector<const Edge*> out;
    for (const auto& e : edges) out.push_back(&e);
    return sorted_by_id(std::move(out));
}

IdSet NetworkInstance::destination_nodes() const {
    IdSet out;
    for (const auto& s : sources) out.insert(s.destinations.begin(), s.destinations.end());
    return out;
}

const Message* IndexInstance::find_message(const std::string& id) const {
    for (const auto& m : messages)
        if (m.id == id) return &m;
    return nullptr;
}

const Receiver* IndexInstance::find_receiver(const std::string& id) const {
    for (const auto& r : receivers)
        if (r.id == id) return &r;
    return nullptr;
}

std::vector<const Message*> IndexInstance::sorted_messages() const {
    std::vector<const Message*> out;
    for (const auto& m : messages) out.push_back(&m);
    return sorted_by_id(std::move(out));
}

std::uint64_t IndexInstance::product_size(const IdSet& ids) const {
    std::uint64_t p = 1;
    for (const auto& id : ids) {
        const Message* m = find_message(id);
        if (!m) throw ValidationError("unknown message " + id);
        p *= m->alphabet.size;
    }
    return p;
}

bool ValidationReport::mentions(const std::string& text) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.message.find(text) != std::string::npos; });
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << '\n';
        os << violations[i].entity << ": " << violations[i].message;
    }
    return os.str();
}

namespace {

// Kahn's algorithm over edges. Returns the order, or fewer edges than the
// instance has when the graph is cyclic.
std::vector<std::string> edge_order(const NetworkInstance& instance) {
    std::map<std::string, std::size_t> pending_in;
    std::map<std::string, std::vector<const Edge*>> out_of;
    for (const auto& n : instance.nodes) pending_in[n] = 0;
    for (const auto& e : instance.edges) {
        ++pending_in[e.head];
        pending_in.try_emplace(e.tail, 0);
        out_of[e.tail].push_back(&e);
    }

    std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
    for (const auto& [node, count] : pending_in)
        if (count == 0)
            for (const Edge* e : out_of[node]) ready.push(e->id);

    std::vector<std::string> order;
    order.reserve(instance.edges.size());
    while (!ready.empty()) {
        std::string id = ready.top();
        ready.pop();
        order.push_back(id);
        const Edge* e = instance.find_edge(id);
        if (--pending_in[e->head] == 0)
            for (const Edge* next : out_of[e->head]) ready.push(next->id);
    }
    return order;
}

}  // namespace

ValidationReport validate_network(const NetworkInstance& instance) {
    ValidationReport report;
    auto flag = [&](const std::string& entity, std::string message) {
        report.violations.push_back({entity, std::move(message)});
    };

    if (instance.block_size_n == 0) flag("block_size_n", "block size must be positive");

    IdSet nodes;
    for (const auto& n : instance.nodes)
        if (!nodes.insert(n).second) flag(n, "duplicate node " + n);

    IdSet edge_ids;
    bool endpoints_ok = true;
    for (const auto& e : instance.edges) {
        if (!edge_ids.insert(e.id).second) flag(e.id, "duplicate edge " + e.id);
        for (const auto* end : {&e.tail, &e.head})
            if (!nodes.count(*end)) {
                flag(e.id, "unknown node " + *end);
                endpoints_ok = false;
            }
        if (e.tail == e.head) flag(e.id, "self-loop at node " + e.tail);
        if (!alphabet_ok(e.alphabet)) flag(e.id, kBadAlphabet);
    }

    IdSet source_ids;
    for (const auto& s : instance.sources) {
        if (!source_ids.insert(s.id).second) flag(s.id, "duplicate source " + s.id);
        if (!nodes.count(s.origin)) flag(s.id, "unknown node " + s.origin);
        if (!alphabet_ok(s.alphabet)) flag(s.id, kBadAlphabet);
        for (const auto& d : s.destinations) {
            if (!nodes.count(d)) flag(s.id, "unknown node " + d);
            if (d == s.origin) flag(s.id, "source destined for its own origin");
        }
    }

    IdSet eve_ids;
    for (const auto& r : instance.eavesdroppers) {
        if (!eve_ids.insert(r.id).second) flag(r.id, "duplicate eavesdropper " + r.id);
        for (const auto& e : r.tapped_edges)
            if (!edge_ids.count(e)) flag(r.id, "unknown edge " + e);
        for (const auto& s : r.target_sources)
            if (!source_ids.count(s)) flag(r.id, "unknown source " + s);
    }

    if (endpoints_ok && edge_order(instance).size() != instance.edges.size())
        flag("graph", "graph contains a cycle");

    IdSet has_in, has_out, origins;
    for (const auto& e : instance.edges) {
        has_in.insert(e.head);
        has_out.insert(e.tail);
    }
    for (const auto& s : instance.sources) origins.insert(s.origin);
    const IdSet destinations = instance.destination_nodes();
    for (const auto& n : nodes) {
        if (!has_in.count(n) && !origins.count(n))
            flag(n, "node without incoming edges originates no source");
        if (!has_out.count(n) && !destinations.count(n))
            flag(n, "node without outgoing edges is not a destination");
    }
    return report;
}

ValidationReport validate_index(const IndexInstance& instance) {
    ValidationReport report;
    auto flag = [&](const std::string& entity, std::string message) {
        report.violations.push_back({entity, std::move(message)});
    };

    if (instance.block_size_n == 0) flag("block_size_n", "block size must be positive");
    if (!alphabet_ok(instance.broadcast_alphabet)) flag("broadcast", kBadAlphabet);

    IdSet ids;
    for (const auto& m : instance.messages) {
        if (!ids.insert(m.id).second) flag(m.id, "duplicate message " + m.id);
        if (!alphabet_ok(m.alphabet)) flag(m.id, kBadAlphabet);
    }
    auto check_refs = [&](const std::string& owner, const IdSet& refs) {
        for (const auto& id : refs)
            if (!ids.count(id)) flag(owner, "unknown message " + id);
    };
    auto overlaps = [](const IdSet& a, const IdSet& b) {
        return std::any_of(a.begin(), a.end(), [&](const std::string& x) { return b.count(x) > 0; });
    };

    IdSet receiver_ids;
    for (const auto& r : instance.receivers) {
        if (!receiver_ids.insert(r.id).second) flag(r.id, "duplicate receiver " + r.id);
        check_refs(r.id, r.wants);
        check_refs(r.id, r.has);
        if (overlaps(r.wants, r.has)) flag(r.id, "wants overlaps has");
    }

    IdSet eve_ids;
    for (const auto& r : instance.eavesdroppers) {
        if (!eve_ids.insert(r.id).second) flag(r.id, "duplicate eavesdropper " + r.id);
        check_refs(r.id, r.side_info);
        check_refs(r.id, r.target_messages);
        if (overlaps(r.target_messages, r.side_info)) flag(r.id, "target overlaps side information");
    }
    return report;
}

void require_valid(const NetworkInstance& instance) {
    auto report = validate_network(instance);
    if (!report.ok()) throw ValidationError(report.to_string());
}

void require_valid(const IndexInstance& instance) {
    auto report = validate_index(instance);
    if (!report.ok()) throw ValidationError(report.to_string());
}

std::vector<std::string> topological_order(const NetworkInstance& instance) {
    auto order = edge_order(instance);
    if (order.size() != instance.edges.size()) throw CycleError();
    return order;
}

}  // namespace snic
