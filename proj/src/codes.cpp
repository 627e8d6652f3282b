#include "snic/codes.hpp"

#include <algorithm>

#include "snic/errors.hpp"

namespace snic {

namespace {

Alphabet product_alphabet(const std::vector<std::uint64_t>& sizes) {
    std::uint64_t p = 1;
    for (auto s : sizes) {
        if (p > kMaxAlphabetSize / s) throw ValidationError("product alphabet exceeds 2^32 symbols");
        p *= s;
    }
    return {p};
}

std::string describe(const std::vector<Slot>& slots) {
    std::string out = "(";
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (i) out += ", ";
        out += slots[i].name + ":" + std::to_string(slots[i].alphabet.size);
    }
    return out + ")";
}

void expect_layout(const std::string& what, const FiniteFunction& f, const std::vector<Slot>& slots,
                   Alphabet output) {
    if (f.slots() != slots)
        throw CodeMismatchError(what + ": slots " + describe(f.slots()) + " but instance prescribes " +
                                describe(slots));
    if (f.output() != output)
        throw CodeMismatchError(what + ": output alphabet " + std::to_string(f.output().size) +
                                " but instance prescribes " + std::to_string(output.size));
}

}  // namespace

Alphabet NetworkCode::key_alphabet(const std::string& node) const {
    auto it = key_alphabets.find(node);
    return it == key_alphabets.end() ? Alphabet{1} : it->second;
}

bool NetworkCode::deterministic() const {
    return std::all_of(key_alphabets.begin(), key_alphabets.end(),
                       [](const auto& kv) { return kv.second.size == 1; });
}

std::vector<Slot> edge_slots(const NetworkInstance& instance, const Edge& edge, Alphabet tail_key) {
    std::vector<Slot> slots;
    for (const Edge* in : instance.in_edges(edge.tail)) slots.push_back({in->id, in->alphabet});
    for (const Source* s : instance.sources_at(edge.tail)) slots.push_back({s->id, s->alphabet});
    if (tail_key.size > 1) slots.push_back({key_slot_name(edge.tail), tail_key});
    return slots;
}

std::vector<Slot> decoder_slots(const NetworkInstance& instance, const std::string& node) {
    std::vector<Slot> slots;
    for (const Edge* in : instance.in_edges(node)) slots.push_back({in->id, in->alphabet});
    for (const Source* s : instance.sources_at(node)) slots.push_back({s->id, s->alphabet});
    return slots;
}

Alphabet requirement_alphabet(const NetworkInstance& instance, const std::string& node) {
    std::vector<std::uint64_t> sizes;
    for (const Source* s : instance.required_sources(node)) sizes.push_back(s->alphabet.size);
    return product_alphabet(sizes);
}

std::vector<Slot> encoder_slots(const IndexInstance& instance, Alphabet key) {
    std::vector<Slot> slots;
    for (const Message* m : instance.sorted_messages()) slots.push_back({m->id, m->alphabet});
    if (key.size > 1) slots.push_back({kSenderKeySlot, key});
    return slots;
}

std::vector<Slot> index_decoder_slots(const IndexInstance& instance, const Receiver& receiver) {
    std::vector<Slot> slots{{kBroadcastSlot, instance.broadcast_alphabet}};
    for (const auto& id : receiver.has) slots.push_back({id, instance.find_message(id)->alphabet});
    return slots;
}

Alphabet wants_alphabet(const IndexInstance& instance, const Receiver& receiver) {
    std::vector<std::uint64_t> sizes;
    for (const auto& id : receiver.wants) sizes.push_back(instance.find_message(id)->alphabet.size);
    return product_alphabet(sizes);
}

void check_code_matches(const NetworkInstance& instance, const NetworkCode& code) {
    for (const auto& [node, alphabet] : code.key_alphabets) {
        if (!instance.has_node(node)) throw CodeMismatchError("key alphabet for unknown node " + node);
        if (alphabet.size == 0 || alphabet.size > kMaxAlphabetSize)
            throw CodeMismatchError("key alphabet of node " + node + " out of range");
    }
    for (const auto& [id, f] : code.edge_functions)
        if (!instance.find_edge(id)) throw CodeMismatchError("function for unknown edge " + id);
    for (const auto& e : instance.edges) {
        auto it = code.edge_functions.find(e.id);
        if (it == code.edge_functions.end()) throw CodeMismatchError("no function for edge " + e.id);
        expect_layout("edge " + e.id, it->second, edge_slots(instance, e, code.key_alphabet(e.tail)), e.alphabet);
    }
    const IdSet destinations = instance.destination_nodes();
    for (const auto& [node, g] : code.node_decoders)
        if (!destinations.count(node)) throw CodeMismatchError("decoder for non-destination node " + node);
    for (const auto& node : destinations) {
        auto it = code.node_decoders.find(node);
        if (it == code.node_decoders.end()) throw CodeMismatchError("no decoder for destination " + node);
        expect_layout("decoder " + node, it->second, decoder_slots(instance, node),
                      requirement_alphabet(instance, node));
    }
}

void check_code_matches(const IndexInstance& instance, const IndexCode& code) {
    if (code.key_alphabet.size == 0 || code.key_alphabet.size > kMaxAlphabetSize)
        throw CodeMismatchError("sender key alphabet out of range");
    expect_layout("encoder", code.encoder, encoder_slots(instance, code.key_alphabet), instance.broadcast_alphabet);
    for (const auto& [id, g] : code.decoders) {
        const Receiver* r = instance.find_receiver(id);
        if (!r) throw CodeMismatchError("decoder for unknown receiver " + id);
        if (r->wants.empty()) throw CodeMismatchError("decoder for receiver " + id + " that wants nothing");
    }
    for (const auto& r : instance.receivers) {
        if (r.wants.empty()) continue;
        auto it = code.decoders.find(r.id);
        if (it == code.decoders.end()) throw CodeMismatchError("no decoder for receiver " + r.id);
        expect_layout("decoder " + r.id, it->second, index_decoder_slots(instance, r), wants_alphabet(instance, r));
    }
}

}  // namespace snic
