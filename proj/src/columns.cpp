#include "snic/detail/columns.hpp"

#include <algorithm>
#include <unordered_map>

#include "snic/errors.hpp"
#include "snic/kernels.hpp"

namespace snic::detail {

namespace {

constexpr std::uint64_t kDenseLimit = std::uint64_t{1} << 22;
constexpr std::uint64_t kKeyLimit = std::uint64_t{1} << 32;

// Replace values by the rank of each among the distinct values.
void densify(std::vector<std::uint64_t>& wide, Packed& out) {
    std::vector<std::uint64_t> distinct(wide);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    out.values.resize(wide.size());
    for (std::size_t r = 0; r < wide.size(); ++r)
        out.values[r] = static_cast<Symbol>(std::lower_bound(distinct.begin(), distinct.end(), wide[r]) - distinct.begin());
    out.cardinality = std::max<std::uint64_t>(1, distinct.size());
}

Packed dense_copy(const Packed& p) {
    std::vector<std::uint64_t> wide(p.values.begin(), p.values.end());
    Packed out;
    densify(wide, out);
    return out;
}

}  // namespace

const Column& DigitColumns::operator[](std::size_t slot) const {
    auto& entry = cache_.at(slot);
    if (!entry) {
        Column c(rows());
        kernels::fill_digit(c, radix_.strides[slot], radix_.sizes[slot]);
        entry = std::move(c);
    }
    return *entry;
}

Column local_index(std::span<const Column* const> args, std::span<const std::uint64_t> sizes, std::size_t rows) {
    Column idx(rows, 0);
    std::uint64_t stride = 1;
    for (std::size_t i = 0; i < args.size(); ++i) {
        kernels::accumulate(idx, *args[i], static_cast<std::uint32_t>(stride));
        stride *= sizes[i];
    }
    return idx;
}

Packed pack(std::span<const Column* const> columns, std::span<const std::uint64_t> sizes, std::size_t rows) {
    Packed out;
    out.values.assign(rows, 0);
    out.cardinality = 1;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const std::uint64_t size = sizes[i];
        if (size <= 1) continue;
        if (out.cardinality <= kKeyLimit / size) {
            kernels::accumulate(out.values, *columns[i], static_cast<std::uint32_t>(out.cardinality));
            out.cardinality *= size;
            continue;
        }
        // 64-bit combine, then back to ranks
        std::vector<std::uint64_t> wide(rows);
        const Column& col = *columns[i];
        for (std::size_t r = 0; r < rows; ++r) wide[r] = out.values[r] + std::uint64_t{col[r]} * out.cardinality;
        densify(wide, out);
    }
    return out;
}

bool independent(const Packed& a_in, const Packed& b_in) {
    const std::size_t rows = a_in.values.size();
    if (rows == 0 || a_in.cardinality <= 1 || b_in.cardinality <= 1) return true;
    std::optional<Packed> a_dense, b_dense;
    if (a_in.cardinality > kDenseLimit) a_dense = dense_copy(a_in);
    if (b_in.cardinality > kDenseLimit) b_dense = dense_copy(b_in);
    const Packed& a = a_dense ? *a_dense : a_in;
    const Packed& b = b_dense ? *b_dense : b_in;

    thread_local std::vector<std::uint64_t> count_a, count_b, count_ab;
    count_a.assign(a.cardinality, 0);
    count_b.assign(b.cardinality, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        ++count_a[a.values[r]];
        ++count_b[b.values[r]];
    }
    const std::uint64_t total = rows;
    auto balanced = [&](std::uint64_t ab, Symbol va, Symbol vb) { return ab * total == count_a[va] * count_b[vb]; };

    if (a.cardinality * b.cardinality <= kDenseLimit) {
        count_ab.assign(a.cardinality * b.cardinality, 0);
        for (std::size_t r = 0; r < rows; ++r) ++count_ab[a.values[r] + a.cardinality * b.values[r]];
        // Checking only the pairs that occur is enough: if each present pair
        // balances, the present pairs already carry sum c(a)c(b)/N = N rows,
        // so no (a,b) with c(a),c(b) > 0 can be missing.
        for (std::size_t r = 0; r < rows; ++r)
            if (!balanced(count_ab[a.values[r] + a.cardinality * b.values[r]], a.values[r], b.values[r])) return false;
        return true;
    }
    std::unordered_map<std::uint64_t, std::uint64_t> pairs;
    pairs.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) ++pairs[a.values[r] + a.cardinality * std::uint64_t{b.values[r]}];
    for (const auto& [key, ab] : pairs)
        if (!balanced(ab, static_cast<Symbol>(key % a.cardinality), static_cast<Symbol>(key / a.cardinality)))
            return false;
    return true;
}

std::optional<std::size_t> dependence_violation(const Packed& key_in, const Column& value) {
    const std::size_t rows = value.size();
    std::optional<Packed> key_dense;
    if (key_in.cardinality > kDenseLimit) key_dense = dense_copy(key_in);
    const Packed& key = key_dense ? *key_dense : key_in;
    thread_local std::vector<std::uint64_t> seen;  // value + 1, 0 = unseen
    seen.assign(key.cardinality, 0);
    for (std::size_t r = 0; r < rows; ++r) {
        auto& slot = seen[key.values[r]];
        const std::uint64_t v = std::uint64_t{value[r]} + 1;
        if (slot == 0)
            slot = v;
        else if (slot != v)
            return r;
    }
    return std::nullopt;
}

Radix bounded_radix(const std::vector<Slot>& slots, std::uint64_t max_rows) {
    std::uint64_t total = 1;
    for (const auto& s : slots) {
        if (s.alphabet.size == 0) throw ArityError("slot alphabet of size 0");
        if (total > max_rows / s.alphabet.size)
            throw SizeBudgetError("joint input space exceeds the enumeration budget of " + std::to_string(max_rows) +
                                  " tuples");
        total *= s.alphabet.size;
    }
    return Radix(slots);
}

NetworkSpace network_space(const NetworkInstance& instance, const std::map<std::string, Alphabet>& keys) {
    NetworkSpace space;
    IdSet taken;
    for (const Source* s : instance.sorted_sources()) {
        space.source_slot[s->id] = space.slots.size();
        space.slots.push_back({s->id, s->alphabet});
        taken.insert(s->id);
    }
    std::vector<std::string> nodes(instance.nodes);
    std::sort(nodes.begin(), nodes.end());
    for (const auto& node : nodes) {
        std::string name = key_slot_name(node);
        while (taken.count(name)) name += '#';
        auto it = keys.find(node);
        space.key_slot[node] = space.slots.size();
        space.slots.push_back({name, it == keys.end() ? Alphabet{1} : it->second});
        taken.insert(name);
    }
    return space;
}

std::vector<const Column*> local_arguments(const NetworkInstance& instance, const NetworkColumns& cols,
                                           const std::string& node, bool with_key) {
    std::vector<const Column*> args;
    for (const Edge* in : instance.in_edges(node)) args.push_back(&cols.edge.at(in->id));
    for (const Source* s : instance.sources_at(node)) args.push_back(&cols.source(s->id));
    if (with_key) args.push_back(&cols.digits[cols.space.key_slot.at(node)]);
    return args;
}

NetworkColumns evaluate_network(const NetworkInstance& instance, const NetworkCode& code, std::uint64_t max_rows) {
    check_code_matches(instance, code);
    NetworkSpace space = network_space(instance, code.key_alphabets);
    Radix radix = bounded_radix(space.slots, max_rows);
    NetworkColumns cols{std::move(space), DigitColumns(std::move(radix)), topological_order(instance), {}};
    for (const auto& id : cols.order) {
        const Edge& e = *instance.find_edge(id);
        const FiniteFunction& f = code.edge_functions.at(id);
        auto args = local_arguments(instance, cols, e.tail, code.key_alphabet(e.tail).size > 1);
        Column idx = local_index(args, f.radix().sizes, cols.rows());
        Column out(cols.rows());
        kernels::gather(f.table(), idx, out);
        cols.edge.emplace(id, std::move(out));
    }
    return cols;
}

IndexColumns evaluate_index(const IndexInstance& instance, const IndexCode& code, std::uint64_t max_rows) {
    check_code_matches(instance, code);
    std::vector<Slot> slots = encoder_slots(instance, Alphabet{1});
    std::map<std::string, std::size_t> message_slot;
    for (std::size_t i = 0; i < slots.size(); ++i) message_slot[slots[i].name] = i;
    const std::size_t key_slot = slots.size();
    slots.push_back({kSenderKeySlot, code.key_alphabet});

    IndexColumns cols{DigitColumns(bounded_radix(slots, max_rows)), std::move(message_slot), key_slot, {}};
    std::vector<const Column*> args;
    for (std::size_t i = 0; i < key_slot; ++i) args.push_back(&cols.digits[i]);
    if (code.key_alphabet.size > 1) args.push_back(&cols.digits[key_slot]);
    Column idx = local_index(args, code.encoder.radix().sizes, cols.rows());
    cols.broadcast.resize(cols.rows());
    kernels::gather(code.encoder.table(), idx, cols.broadcast);
    return cols;
}

}  // namespace snic::detail
