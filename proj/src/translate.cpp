#include "snic/translate.hpp"

#include <algorithm>
#include <limits>

#include "snic/detail/columns.hpp"
#include "snic/errors.hpp"
#include "snic/verify.hpp"

namespace snic {

namespace {

constexpr std::size_t kUnbound = std::numeric_limits<std::size_t>::max();

// How each argument of a function is fed: from an argument position
// (optionally reduced modulo `mod`) or held at a constant.
struct Feed {
    std::size_t pos = kUnbound;
    Symbol held = 0;
    std::uint64_t mod = 0;
};

struct Binding {
    const FiniteFunction* f;
    std::vector<Feed> feeds;

    Symbol operator()(std::span<const Symbol> args) const {
        const auto& strides = f->radix().strides;
        std::uint64_t idx = 0;
        for (std::size_t k = 0; k < feeds.size(); ++k) {
            const Feed& fd = feeds[k];
            Symbol v = fd.pos == kUnbound ? fd.held : args[fd.pos];
            if (fd.mod) v = static_cast<Symbol>(v % fd.mod);
            idx += v * strides[k];
        }
        return f->at(idx);
    }
};

std::size_t position(const std::vector<Slot>& slots, const std::string& name) {
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i].name == name) return i;
    return kUnbound;
}

// Binds every slot of `f` by name: `rename` maps a slot of f to a slot of
// `args`, `held` pins it to a constant; otherwise the same name is looked up.
Binding bind_slots(const FiniteFunction& f, const std::vector<Slot>& args,
             const std::map<std::string, std::string>& rename = {}, const std::map<std::string, Symbol>& held = {}) {
    Binding b{&f, {}};
    for (const auto& slot : f.slots()) {
        if (auto h = held.find(slot.name); h != held.end()) {
            b.feeds.push_back({kUnbound, h->second, 0});
            continue;
        }
        auto r = rename.find(slot.name);
        const std::size_t pos = position(args, r == rename.end() ? slot.name : r->second);
        if (pos == kUnbound) throw CodeMismatchError("no argument feeds slot " + slot.name);
        b.feeds.push_back({pos, 0, 0});
    }
    return b;
}

const NetworkInstance& checked(const std::pair<NetworkInstance, IndexToNetworkMapping>& made,
                               const IndexToNetworkMapping& mapping) {
    if (made.second != mapping) throw CodeMismatchError("mapping record does not belong to this index instance");
    return made.first;
}

const IndexInstance& checked(const std::pair<IndexInstance, NetworkToIndexMapping>& made,
                             const NetworkToIndexMapping& mapping) {
    if (made.second != mapping) throw CodeMismatchError("mapping record does not belong to this network instance");
    return made.first;
}

std::vector<const Receiver*> receivers_by_id(const IndexInstance& index) {
    std::vector<const Receiver*> out;
    for (const auto& r : index.receivers) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return out;
}

}  // namespace

NetworkCode randomized_to_augmented(const NetworkInstance& instance, const NetworkCode& code) {
    check_code_matches(instance, code);
    const auto [aug, record] = augment(instance);
    NetworkCode out;

    // Original layout: in-edges, sources, [key]; the augmented layout inserts
    // the key source among the sources by id.
    auto feeds_for = [&](const std::string& node, std::uint64_t key) {
        std::vector<Feed> feeds;
        const std::size_t in = instance.in_edges(node).size();
        for (std::size_t k = 0; k < in; ++k) feeds.push_back({k, 0, 0});
        const auto aug_sources = aug.sources_at(node);
        auto pos_of = [&](const std::string& id) {
            for (std::size_t q = 0; q < aug_sources.size(); ++q)
                if (aug_sources[q]->id == id) return in + q;
            return kUnbound;
        };
        for (const Source* s : instance.sources_at(node)) feeds.push_back({pos_of(s->id), 0, 0});
        if (key > 1) feeds.push_back({pos_of(record.key_source_ids.at(node)), 0, key});
        return feeds;
    };

    for (const auto& e : instance.edges) {
        const FiniteFunction& f = code.edge_functions.at(e.id);
        const std::uint64_t k = code.key_alphabet(e.tail).size;
        if (record.key_alphabets.at(e.tail).size % k != 0)
            throw PreconditionError("key alphabet does not divide the augmented key alphabet", e.tail);
        auto slots = edge_slots(aug, *aug.find_edge(e.id), Alphabet{1});
        Binding b{&f, feeds_for(e.tail, k)};
        out.edge_functions.emplace(e.id, FiniteFunction::tabulate(slots, f.output(), b));
    }
    for (const auto& [node, g] : code.node_decoders) {
        auto slots = decoder_slots(aug, node);
        Binding b{&g, feeds_for(node, 1)};
        out.node_decoders.emplace(node, FiniteFunction::tabulate(slots, g.output(), b));
    }
    return out;
}

NetworkCode augmented_to_randomized(const NetworkInstance& instance, const NetworkCode& code,
                                    const std::map<std::string, Alphabet>& key_alphabets) {
    const auto [aug, record] = augment(instance);
    check_code_matches(aug, code);
    if (!code.deterministic()) throw PreconditionError("code not deterministic");
    NetworkCode out;
    for (const auto& [node, a] : key_alphabets) {
        if (!instance.has_node(node)) throw PreconditionError("key alphabet for unknown node", node);
        if (record.key_alphabets.at(node).size % a.size != 0)
            throw PreconditionError("key alphabet does not divide the augmented key alphabet", node);
        if (a.size > 1) out.key_alphabets[node] = a;
    }

    for (const auto& e : instance.edges) {
        const FiniteFunction& f = code.edge_functions.at(e.id);
        const std::uint64_t k = out.key_alphabet(e.tail).size;
        const std::string& key_source = record.key_source_ids.at(e.tail);
        const std::size_t kpos = f.slot_index(key_source);
        const std::uint64_t stride = f.radix().strides[kpos];
        const std::uint64_t size = f.radix().sizes[kpos];
        for (std::uint64_t idx = 0; idx < f.table().size(); ++idx) {
            const std::uint64_t d = (idx / stride) % size;
            if (f.at(idx) != f.at(idx - (d - d % k) * stride))
                throw PreconditionError("edge function reads its key source beyond the key alphabet", e.id);
        }
        auto slots = edge_slots(instance, e, Alphabet{k});
        Binding b{&f, {}};
        if (k > 1) {
            b = bind_slots(f, slots, {{key_source, key_slot_name(e.tail)}});
            // Positional, in case a source shares the key slot's name.
            b.feeds[kpos] = {slots.size() - 1, 0, 0};
        } else {
            b = bind_slots(f, slots, {}, {{key_source, 0}});
        }
        out.edge_functions.emplace(e.id, FiniteFunction::tabulate(slots, f.output(), b));
    }
    for (const auto& [node, g] : code.node_decoders) {
        auto slots = decoder_slots(instance, node);
        Binding b = bind_slots(g, slots, {}, {{record.key_source_ids.at(node), 0}});
        out.node_decoders.emplace(node, FiniteFunction::tabulate(slots, g.output(), b));
    }
    return out;
}

NetworkCode t1_index_code_to_network_code(const IndexInstance& index, const IndexToNetworkMapping& mapping,
                                          const IndexCode& code) {
    check_code_matches(index, code);
    const auto made = index_to_network(index);
    const NetworkInstance& net = checked(made, mapping);
    const std::string& relay_in = mapping.relay_nodes.first;

    NetworkCode out;
    if (code.key_alphabet.size > 1) out.key_alphabets[relay_in] = code.key_alphabet;

    for (const auto& e : net.edges) {
        auto slots = edge_slots(net, e, out.key_alphabet(e.tail));
        if (mapping.edge_roles.at(e.id) == EdgeRole::bottleneck) {
            std::map<std::string, std::string> rename{{kSenderKeySlot, key_slot_name(relay_in)}};
            for (const auto& [m, node] : mapping.node_for_message) rename[m] = mapping.relay_edge(m);
            out.edge_functions.emplace(e.id,
                                       FiniteFunction::tabulate(slots, e.alphabet, bind_slots(code.encoder, slots, rename)));
        } else {
            // Source edges forward their message, fanout edges forward 1->2.
            out.edge_functions.emplace(
                e.id, FiniteFunction::tabulate(slots, e.alphabet, [](std::span<const Symbol> a) { return a[0]; }));
        }
    }
    for (const Receiver* r : receivers_by_id(index)) {
        if (r->wants.empty()) continue;
        const std::string& node = mapping.receiver_node.at(r->id);
        auto slots = decoder_slots(net, node);
        std::map<std::string, std::string> rename{{kBroadcastSlot, mapping.fanout_edge(r->id)}};
        for (const auto& h : r->has) rename[h] = mapping.side_edge(h, r->id);
        const FiniteFunction& g = code.decoders.at(r->id);
        out.node_decoders.emplace(node, FiniteFunction::tabulate(slots, g.output(), bind_slots(g, slots, rename)));
    }
    return out;
}

IndexCode t1_network_code_to_index_code(const IndexInstance& index, const IndexToNetworkMapping& mapping,
                                        const NetworkCode& code) {
    const auto made = index_to_network(index);
    const NetworkInstance& net = checked(made, mapping);
    check_code_matches(net, code);
    if (auto r = check_network_decodable(net, code); !r)
        throw DecodabilityPreconditionError("network code is not decodable", r.culprit);
    if (auto r = check_source_recoverable(net, code); !r) throw PreconditionError("source not recoverable", r.culprit);

    const std::string& relay_in = mapping.relay_nodes.first;
    const std::string& relay_out = mapping.relay_nodes.second;
    auto key_held = [&](const std::string& node) {
        std::map<std::string, Symbol> held;
        if (code.key_alphabet(node).size > 1) held[key_slot_name(node)] = 0;
        return held;
    };

    IndexCode out;
    out.key_alphabet = code.key_alphabet(relay_in);
    const auto enc_slots = encoder_slots(index, out.key_alphabet);

    // Symbols on s_m -> 1 with s_m's key at 0, then the bottleneck function.
    std::vector<Binding> relay_edges;
    const FiniteFunction& bottleneck = code.edge_functions.at(mapping.bottleneck_edge());
    std::vector<std::size_t> bottleneck_pos;
    for (const Edge* e : net.in_edges(relay_in)) {
        const FiniteFunction& f = code.edge_functions.at(e->id);
        relay_edges.push_back(bind_slots(f, enc_slots, {}, key_held(e->tail)));
    }
    const std::size_t key_pos = position(enc_slots, kSenderKeySlot);
    out.encoder = FiniteFunction::tabulate(enc_slots, index.broadcast_alphabet, [&](std::span<const Symbol> x) {
        std::vector<Symbol> args;
        for (const auto& b : relay_edges) args.push_back(b(x));
        if (key_pos != kUnbound) args.push_back(x[key_pos]);
        return bottleneck.evaluate(args);
    });

    for (const Receiver* r : receivers_by_id(index)) {
        if (r->wants.empty()) continue;
        const std::string& node = mapping.receiver_node.at(r->id);
        const auto slots = index_decoder_slots(index, *r);
        const FiniteFunction& g = code.node_decoders.at(node);

        // One binding per in-edge of t_j, in g's slot order.
        std::vector<Binding> inputs;
        for (const Edge* e : net.in_edges(node)) {
            const FiniteFunction& f = code.edge_functions.at(e->id);
            if (e->tail == relay_out)
                inputs.push_back(bind_slots(f, slots, {{mapping.bottleneck_edge(), kBroadcastSlot}}, key_held(relay_out)));
            else
                inputs.push_back(bind_slots(f, slots, {}, key_held(e->tail)));
        }
        out.decoders.emplace(r->id,
                             FiniteFunction::tabulate(slots, wants_alphabet(index, *r), [&](std::span<const Symbol> a) {
                                 std::vector<Symbol> args;
                                 for (const auto& b : inputs) args.push_back(b(a));
                                 return g.evaluate(args);
                             }));
    }
    return out;
}

IndexCode t2_network_code_to_index_code(const NetworkInstance& augmented, const NetworkToIndexMapping& mapping,
                                        const NetworkCode& code) {
    const auto made = network_to_index(augmented);
    const IndexInstance& index = checked(made, mapping);
    if (!code.deterministic()) throw PreconditionError("code not deterministic");
    check_code_matches(augmented, code);

    const auto cols = detail::evaluate_network(augmented, code, kMaxTableEntries);
    const Radix& global = cols.digits.radix();
    std::vector<std::uint64_t> edge_sizes;
    for (const auto& e : mapping.broadcast_edges) edge_sizes.push_back(augmented.find_edge(e)->alphabet.size);
    const Radix broadcast(edge_sizes);

    IndexCode out;
    out.key_alphabet = Alphabet{1};
    const auto enc_slots = encoder_slots(index, out.key_alphabet);
    std::vector<std::pair<std::size_t, std::uint64_t>> source_feed;  // encoder position, global stride
    for (const auto& [id, slot] : cols.space.source_slot)
        source_feed.push_back({position(enc_slots, id), global.strides[slot]});
    std::vector<std::size_t> edge_msg_pos;
    for (const auto& e : mapping.broadcast_edges) edge_msg_pos.push_back(position(enc_slots, mapping.edge_message(e)));

    out.encoder = FiniteFunction::tabulate(enc_slots, index.broadcast_alphabet, [&](std::span<const Symbol> x) {
        std::uint64_t row = 0;
        for (const auto& [pos, stride] : source_feed) row += x[pos] * stride;
        std::uint64_t b = 0;
        for (std::size_t k = 0; k < edge_sizes.size(); ++k) {
            const auto& column = cols.edge.at(mapping.broadcast_edges[k]);
            b += ((x[edge_msg_pos[k]] + column[row]) % edge_sizes[k]) * broadcast.strides[k];
        }
        return static_cast<Symbol>(b);
    });

    std::map<std::string, std::size_t> edge_digit;
    for (std::size_t k = 0; k < mapping.broadcast_edges.size(); ++k) edge_digit[mapping.broadcast_edges[k]] = k;

    // Arguments of a local function at `node`: in-edge symbols recovered from
    // the broadcast and the edge messages, then the sources at `node`.
    auto local_inputs = [&](const std::string& node, const std::vector<Slot>& slots) {
        struct In {
            std::size_t digit;
            std::uint64_t size;
            std::size_t msg_pos;
        };
        std::vector<In> edges;
        for (const Edge* e : augmented.in_edges(node))
            edges.push_back({edge_digit.at(e->id), e->alphabet.size, position(slots, mapping.edge_message(e->id))});
        std::vector<std::size_t> sources;
        for (const Source* s : augmented.sources_at(node)) sources.push_back(position(slots, s->id));
        return [&, edges, sources](std::span<const Symbol> a) {
            std::vector<Symbol> args;
            const std::uint64_t b = a[0];
            for (const auto& in : edges) {
                const std::uint64_t bd = broadcast.digit(b, in.digit);
                args.push_back(static_cast<Symbol>((bd + in.size - a[in.msg_pos]) % in.size));
            }
            for (auto p : sources) args.push_back(a[p]);
            return args;
        };
    };

    for (const auto& node : augmented.destination_nodes()) {
        const Receiver& r = *index.find_receiver(mapping.node_receiver(node));
        const auto slots = index_decoder_slots(index, r);
        const FiniteFunction& g = code.node_decoders.at(node);
        auto inputs = local_inputs(node, slots);
        out.decoders.emplace(r.id, FiniteFunction::tabulate(slots, wants_alphabet(index, r),
                                                            [&](std::span<const Symbol> a) { return g.evaluate(inputs(a)); }));
    }
    for (const Edge* e : augmented.sorted_edges()) {
        const Receiver& r = *index.find_receiver(mapping.edge_receiver(e->id));
        const auto slots = index_decoder_slots(index, r);
        const FiniteFunction& f = code.edge_functions.at(e->id);
        auto inputs = local_inputs(e->tail, slots);
        const std::size_t digit = edge_digit.at(e->id);
        const std::uint64_t size = e->alphabet.size;
        out.decoders.emplace(r.id, FiniteFunction::tabulate(slots, wants_alphabet(index, r), [&](std::span<const Symbol> a) {
            const std::uint64_t bd = broadcast.digit(a[0], digit);
            return static_cast<Symbol>((bd + size - f.evaluate(inputs(a))) % size);
        }));
    }
    return out;
}

NetworkCode t2_index_code_to_network_code(const NetworkInstance& augmented, const NetworkToIndexMapping& mapping,
                                          const IndexCode& code, std::optional<Symbol> sigma) {
    const auto made = network_to_index(augmented);
    const IndexInstance& index = checked(made, mapping);
    check_code_matches(index, code);
    if (auto r = check_index_decodable(index, code); !r)
        throw DecodabilityPreconditionError("index code is not decodable", r.culprit);

    const Symbol s = sigma.value_or(code.encoder.at(0));
    if (sigma) {
        const auto image = encoder_image(code);
        if (!std::binary_search(image.begin(), image.end(), s))
            throw PreconditionError("broadcast value outside the encoder image", std::to_string(s));
    }

    // Index decoder slots are "broadcast" (held at sigma), edge messages
    // "edge:<e>" (fed by edge e) and sources (same name).
    auto rename_for = [&](const std::string& node) {
        std::map<std::string, std::string> rename;
        for (const Edge* e : augmented.in_edges(node)) rename[mapping.edge_message(e->id)] = e->id;
        return rename;
    };
    const std::map<std::string, Symbol> held{{kBroadcastSlot, s}};

    NetworkCode out;
    for (const auto& e : augmented.edges) {
        const auto slots = edge_slots(augmented, e, Alphabet{1});
        const FiniteFunction& g = code.decoders.at(mapping.edge_receiver(e.id));
        out.edge_functions.emplace(e.id,
                                   FiniteFunction::tabulate(slots, e.alphabet, bind_slots(g, slots, rename_for(e.tail), held)));
    }
    for (const auto& node : augmented.destination_nodes()) {
        const auto slots = decoder_slots(augmented, node);
        const FiniteFunction& g = code.decoders.at(mapping.node_receiver(node));
        out.node_decoders.emplace(node, FiniteFunction::tabulate(slots, requirement_alphabet(augmented, node),
                                                                 bind_slots(g, slots, rename_for(node), held)));
    }
    return out;
}

std::vector<Symbol> encoder_image(const IndexCode& code) {
    std::vector<Symbol> image = code.encoder.table();
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return image;
}

}  // namespace snic
