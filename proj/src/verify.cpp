#include "snic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "snic/detail/columns.hpp"
#include "snic/errors.hpp"
#include "snic/kernels.hpp"

namespace snic {

using detail::Column;

namespace {

detail::Packed pack_group(const JointTable& joint, const IdSet& names) {
    std::vector<const Column*> cols;
    std::vector<std::uint64_t> sizes;
    for (const auto& name : names) {
        const std::size_t i = joint.index_of(name);
        cols.push_back(&joint.column(name));
        sizes.push_back(joint.variables()[i].alphabet.size);
    }
    return detail::pack(cols, sizes, static_cast<std::size_t>(joint.total()));
}

// Row whose input tuple is lexicographically smallest (first slot most
// significant) among rows where out != expected.
std::size_t lex_min_failure(const Radix& radix, const Column& out, const Column& expected,
                            std::size_t first) {
    std::size_t best = first;
    std::vector<Symbol> best_digits = radix.unpack(first);
    for (std::size_t r = first + 1; r < out.size(); ++r) {
        if (out[r] == expected[r]) continue;
        auto digits = radix.unpack(r);
        if (digits < best_digits) {
            best = r;
            best_digits = std::move(digits);
        }
    }
    return best;
}

std::vector<Assignment> witness_at(const std::vector<Slot>& slots, const Radix& radix, std::size_t row) {
    std::vector<Assignment> w;
    for (std::size_t i = 0; i < slots.size(); ++i) w.push_back({slots[i].name, radix.digit(row, i)});
    return w;
}

CheckResult failure(std::string culprit, std::vector<Assignment> witness = {}) {
    return {false, std::move(culprit), std::move(witness)};
}

}  // namespace

std::size_t JointTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name) return i;
    throw UnknownVariableError(name);
}

void JointTable::add(std::string name, Alphabet alphabet, std::vector<Symbol> column) {
    for (const auto& v : variables_)
        if (v.name == name) throw Error("duplicate variable " + name);
    variables_.push_back({std::move(name), alphabet});
    columns_.push_back(std::move(column));
}

std::map<std::vector<Symbol>, std::uint64_t> JointTable::counts() const {
    std::map<std::vector<Symbol>, std::uint64_t> out;
    std::vector<Symbol> tuple(columns_.size());
    for (std::uint64_t r = 0; r < rows_; ++r) {
        for (std::size_t v = 0; v < columns_.size(); ++v) tuple[v] = columns_[v][r];
        ++out[tuple];
    }
    return out;
}

JointTable build_joint(const std::vector<Slot>& inputs,
                       const std::vector<std::pair<std::string, FiniteFunction>>& derived, std::uint64_t max_rows) {
    detail::DigitColumns digits(detail::bounded_radix(inputs, max_rows));
    JointTable joint;
    joint.rows_ = digits.rows();
    for (std::size_t i = 0; i < inputs.size(); ++i) joint.add(inputs[i].name, inputs[i].alphabet, digits[i]);
    for (const auto& [name, f] : derived) {
        std::vector<const Column*> args;
        for (const auto& slot : f.slots()) {
            auto it = std::find_if(inputs.begin(), inputs.end(), [&](const Slot& s) { return s.name == slot.name; });
            if (it == inputs.end()) throw UnknownVariableError(slot.name);
            if (it->alphabet != slot.alphabet)
                throw ArityError("slot " + slot.name + " of " + name + " disagrees with the input alphabet");
            args.push_back(&digits[static_cast<std::size_t>(it - inputs.begin())]);
        }
        Column idx = detail::local_index(args, f.radix().sizes, digits.rows());
        Column out(digits.rows());
        kernels::gather(f.table(), idx, out);
        joint.add(name, f.output(), std::move(out));
    }
    return joint;
}

JointTable network_joint(const NetworkInstance& instance, const NetworkCode& code, std::uint64_t max_rows) {
    auto cols = detail::evaluate_network(instance, code, max_rows);
    JointTable joint;
    joint.rows_ = cols.rows();
    for (std::size_t i = 0; i < cols.space.slots.size(); ++i)
        joint.add(cols.space.slots[i].name, cols.space.slots[i].alphabet, cols.digits[i]);
    for (const Edge* e : instance.sorted_edges()) joint.add(e->id, e->alphabet, std::move(cols.edge.at(e->id)));
    return joint;
}

JointTable index_joint(const IndexInstance& instance, const IndexCode& code, std::uint64_t max_rows) {
    auto cols = detail::evaluate_index(instance, code, max_rows);
    JointTable joint;
    joint.rows_ = cols.rows();
    const auto& radix = cols.digits.radix();
    for (const Message* m : instance.sorted_messages()) joint.add(m->id, m->alphabet, cols.message(m->id));
    joint.add(kSenderKeySlot, Alphabet{radix.sizes[cols.key_slot]}, cols.digits[cols.key_slot]);
    joint.add(kBroadcastSlot, instance.broadcast_alphabet, std::move(cols.broadcast));
    return joint;
}

bool check_independent(const JointTable& joint, const IdSet& group_a, const IdSet& group_b) {
    return detail::independent(pack_group(joint, group_a), pack_group(joint, group_b));
}

double conditional_entropy_bits(const JointTable& joint, const IdSet& group_a, const IdSet& group_b) {
    const auto a = pack_group(joint, group_a);
    const auto b = pack_group(joint, group_b);
    std::unordered_map<std::uint64_t, std::uint64_t> count_b;
    std::unordered_map<std::uint64_t, std::uint64_t> count_ab;
    for (std::size_t r = 0; r < a.values.size(); ++r) {
        ++count_b[b.values[r]];
        ++count_ab[(std::uint64_t{b.values[r]} << 32) | a.values[r]];
    }
    const long double total = static_cast<long double>(joint.total());
    long double h = 0;
    for (const auto& [key, ab] : count_ab) {
        const long double cb = static_cast<long double>(count_b.at(key >> 32));
        h += static_cast<long double>(ab) / total * std::log2(cb / static_cast<long double>(ab));
    }
    return static_cast<double>(h);
}

CheckResult check_network_decodable(const NetworkInstance& instance, const NetworkCode& code,
                                    std::uint64_t max_rows) {
    auto cols = detail::evaluate_network(instance, code, max_rows);
    for (const auto& node : instance.destination_nodes()) {
        const FiniteFunction& g = code.node_decoders.at(node);
        auto args = detail::local_arguments(instance, cols, node, false);
        Column idx = detail::local_index(args, g.radix().sizes, cols.rows());
        Column out(cols.rows());
        kernels::gather(g.table(), idx, out);

        std::vector<const Column*> wanted;
        std::vector<std::uint64_t> sizes;
        for (const Source* s : instance.required_sources(node)) {
            wanted.push_back(&cols.source(s->id));
            sizes.push_back(s->alphabet.size);
        }
        const Column expected = detail::pack(wanted, sizes, cols.rows()).values;
        const std::size_t first = kernels::first_mismatch(out, expected);
        if (first == out.size()) continue;
        const std::size_t row = lex_min_failure(cols.digits.radix(), out, expected, first);
        return failure(node, witness_at(cols.space.slots, cols.digits.radix(), row));
    }
    return {};
}

CheckResult check_network_secure(const NetworkInstance& instance, const NetworkCode& code, std::uint64_t max_rows) {
    auto cols = detail::evaluate_network(instance, code, max_rows);
    std::vector<const NetworkEavesdropper*> eves;
    for (const auto& r : instance.eavesdroppers) eves.push_back(&r);
    std::sort(eves.begin(), eves.end(), [](auto* x, auto* y) { return x->id < y->id; });
    for (const auto* r : eves) {
        std::vector<const Column*> a_cols, b_cols;
        std::vector<std::uint64_t> a_sizes, b_sizes;
        for (const auto& s : r->target_sources) {
            a_cols.push_back(&cols.source(s));
            a_sizes.push_back(instance.find_source(s)->alphabet.size);
        }
        for (const auto& e : r->tapped_edges) {
            b_cols.push_back(&cols.edge.at(e));
            b_sizes.push_back(instance.find_edge(e)->alphabet.size);
        }
        if (!detail::independent(detail::pack(a_cols, a_sizes, cols.rows()), detail::pack(b_cols, b_sizes, cols.rows())))
            return failure(r->id);
    }
    return {};
}

CheckResult check_source_recoverable(const NetworkInstance& instance, const NetworkCode& code,
                                     std::uint64_t max_rows) {
    auto cols = detail::evaluate_network(instance, code, max_rows);
    for (const Source* s : instance.sorted_sources()) {
        std::vector<const Column*> out_cols;
        std::vector<std::uint64_t> sizes;
        for (const Edge* e : instance.out_edges(s->origin)) {
            out_cols.push_back(&cols.edge.at(e->id));
            sizes.push_back(e->alphabet.size);
        }
        auto key = detail::pack(out_cols, sizes, cols.rows());
        if (auto row = detail::dependence_violation(key, cols.source(s->id)))
            return failure(s->id, witness_at(cols.space.slots, cols.digits.radix(), *row));
    }
    return {};
}

CheckResult check_index_decodable(const IndexInstance& instance, const IndexCode& code, std::uint64_t max_rows) {
    auto cols = detail::evaluate_index(instance, code, max_rows);
    std::vector<const Receiver*> receivers;
    for (const auto& r : instance.receivers) receivers.push_back(&r);
    std::sort(receivers.begin(), receivers.end(), [](auto* x, auto* y) { return x->id < y->id; });
    for (const Receiver* r : receivers) {
        if (r->wants.empty()) continue;
        const FiniteFunction& g = code.decoders.at(r->id);
        std::vector<const Column*> args{&cols.broadcast};
        for (const auto& h : r->has) args.push_back(&cols.message(h));
        Column idx = detail::local_index(args, g.radix().sizes, cols.rows());
        Column out(cols.rows());
        kernels::gather(g.table(), idx, out);

        std::vector<const Column*> wanted;
        std::vector<std::uint64_t> sizes;
        for (const auto& w : r->wants) {
            wanted.push_back(&cols.message(w));
            sizes.push_back(instance.find_message(w)->alphabet.size);
        }
        const Column expected = detail::pack(wanted, sizes, cols.rows()).values;
        const std::size_t first = kernels::first_mismatch(out, expected);
        if (first == out.size()) continue;
        std::vector<Slot> slots = encoder_slots(instance, Alphabet{1});
        slots.push_back({kSenderKeySlot, code.key_alphabet});
        const std::size_t row = lex_min_failure(cols.digits.radix(), out, expected, first);
        return failure(r->id, witness_at(slots, cols.digits.radix(), row));
    }
    return {};
}

CheckResult check_index_secure(const IndexInstance& instance, const IndexCode& code, std::uint64_t max_rows) {
    auto cols = detail::evaluate_index(instance, code, max_rows);
    std::vector<const IndexEavesdropper*> eves;
    for (const auto& r : instance.eavesdroppers) eves.push_back(&r);
    std::sort(eves.begin(), eves.end(), [](auto* x, auto* y) { return x->id < y->id; });
    for (const auto* r : eves) {
        std::vector<const Column*> a_cols, b_cols{&cols.broadcast};
        std::vector<std::uint64_t> a_sizes, b_sizes{instance.broadcast_alphabet.size};
        for (const auto& m : r->target_messages) {
            a_cols.push_back(&cols.message(m));
            a_sizes.push_back(instance.find_message(m)->alphabet.size);
        }
        for (const auto& m : r->side_info) {
            b_cols.push_back(&cols.message(m));
            b_sizes.push_back(instance.find_message(m)->alphabet.size);
        }
        if (!detail::independent(detail::pack(a_cols, a_sizes, cols.rows()), detail::pack(b_cols, b_sizes, cols.rows())))
            return failure(r->id);
    }
    return {};
}

}  // namespace snic
