#include "snic/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "snic/detail/columns.hpp"
#include "snic/errors.hpp"
#include "snic/kernels.hpp"
#include "snic/transform.hpp"
#include "snic/translate.hpp"
#include "snic/verify.hpp"

namespace snic {

using detail::Column;
using detail::Packed;

namespace {

struct OutOfBudget {};

struct Counter {
    std::uint64_t tried = 0;
    std::uint64_t limit;

    void tick() {
        if (++tried > limit) throw OutOfBudget{};
    }
};

// Next tuple in lexicographic order (last digit fastest), leaving frozen
// positions alone. False once every tuple has been visited.
bool advance(std::vector<Symbol>& digits, const std::vector<std::uint64_t>& radix, const std::vector<bool>& frozen) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (frozen[i]) continue;
        if (++digits[i] < radix[i]) return true;
        digits[i] = 0;
    }
    return false;
}

std::vector<std::uint32_t> distinct(const Column& c) {
    std::vector<std::uint32_t> out(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Table that maps every occurring local index to the value it must produce.
// Entries that never occur stay 0.
std::vector<Symbol> forced_table(const Column& idx, const Column& value, std::size_t domain) {
    std::vector<Symbol> table(domain, 0);
    for (std::size_t r = 0; r < idx.size(); ++r) table[idx[r]] = value[r];
    return table;
}

Packed pack_cols(const std::vector<const Column*>& cols, const std::vector<std::uint64_t>& sizes, std::size_t rows) {
    return detail::pack(cols, sizes, rows);
}

// ---------------------------------------------------------------- network

class NetworkSearch {
public:
    NetworkSearch(const NetworkInstance& instance, std::map<std::string, Alphabet> keys, Counter& counter,
                  bool symmetry)
        : inst_(instance),
          keys_(std::move(keys)),
          space_(detail::network_space(instance, keys_)),
          digits_(Radix(space_.slots)),
          order_(topological_order(instance)),
          counter_(counter),
          symmetry_(symmetry) {
        for (const auto& id : order_) edge_cols_[id].resize(rows());
        for (std::size_t d = 0; d < order_.size(); ++d) position_of_[order_[d]] = d;
        prepare_levels();
        prepare_eavesdroppers();
        prepare_regions();
    }

    std::optional<NetworkCode> run() {
        if (!regions_consistent(0)) return std::nullopt;
        if (!dfs(0)) return std::nullopt;
        return build_code();
    }

private:
    struct Level {
        const Edge* edge;
        std::vector<const Column*> args;
        std::vector<std::uint64_t> sizes;
        std::vector<Slot> slots;
        std::vector<Symbol> table;
    };
    struct Eavesdropper {
        Packed targets;
        // Per depth at which one of its edges is assigned: the tapped edges
        // assigned so far.
        std::map<std::size_t, std::vector<const Column*>> seen;
        std::map<std::size_t, std::vector<std::uint64_t>> seen_sizes;
    };
    struct Region {
        std::vector<const Column*> cols;
        std::vector<std::uint64_t> sizes;
        bool operator==(const Region& o) const { return cols == o.cols && sizes == o.sizes; }
    };
    struct Destination {
        std::string node;
        Packed required;
        // regions[a] = inputs that must determine the requirement once the
        // first `a` edges of the order are assigned.
        std::vector<Region> regions;
    };

    std::size_t rows() const { return digits_.rows(); }

    std::uint64_t key_size(const std::string& node) const {
        auto it = keys_.find(node);
        return it == keys_.end() ? 1 : it->second.size;
    }

    const Column& source_col(const std::string& id) const { return digits_[space_.source_slot.at(id)]; }
    const Column& key_col(const std::string& node) const { return digits_[space_.key_slot.at(node)]; }

    void prepare_levels() {
        for (const auto& id : order_) {
            const Edge* e = inst_.find_edge(id);
            Level lv{e, {}, {}, edge_slots(inst_, *e, Alphabet{key_size(e->tail)}), {}};
            for (const Edge* in : inst_.in_edges(e->tail)) lv.args.push_back(&edge_cols_.at(in->id));
            for (const Source* s : inst_.sources_at(e->tail)) lv.args.push_back(&source_col(s->id));
            if (key_size(e->tail) > 1) lv.args.push_back(&key_col(e->tail));
            for (const auto& s : lv.slots) lv.sizes.push_back(s.alphabet.size);
            levels_.push_back(std::move(lv));
        }
    }

    void prepare_eavesdroppers() {
        std::vector<const NetworkEavesdropper*> eves;
        for (const auto& r : inst_.eavesdroppers) eves.push_back(&r);
        std::sort(eves.begin(), eves.end(), [](auto* a, auto* b) { return a->id < b->id; });
        for (const auto* r : eves) {
            std::vector<const Column*> tcols;
            std::vector<std::uint64_t> tsizes;
            for (const auto& s : r->target_sources) {
                tcols.push_back(&source_col(s));
                tsizes.push_back(inst_.find_source(s)->alphabet.size);
            }
            Eavesdropper ev{pack_cols(tcols, tsizes, rows()), {}, {}};
            for (const auto& e : r->tapped_edges) {
                const std::size_t d = position_of_.at(e);
                for (const auto& other : r->tapped_edges) {
                    if (position_of_.at(other) > d) continue;
                    ev.seen[d].push_back(&edge_cols_.at(other));
                    ev.seen_sizes[d].push_back(inst_.find_edge(other)->alphabet.size);
                }
            }
            eaves_.push_back(std::move(ev));
        }
    }

    // Nodes that reach `u` through edges not yet assigned when `assigned`
    // edges of the order are fixed.
    std::set<std::string> region(const std::string& u, std::size_t assigned) const {
        std::set<std::string> in{u};
        std::vector<std::string> stack{u};
        while (!stack.empty()) {
            const std::string v = stack.back();
            stack.pop_back();
            for (const Edge* e : inst_.in_edges(v)) {
                if (position_of_.at(e->id) < assigned) continue;
                if (in.insert(e->tail).second) stack.push_back(e->tail);
            }
        }
        return in;
    }

    void prepare_regions() {
        for (const auto& u : inst_.destination_nodes()) {
            Destination dest{u, {}, {}};
            std::vector<const Column*> req;
            std::vector<std::uint64_t> req_sizes;
            for (const Source* s : inst_.required_sources(u)) {
                req.push_back(&source_col(s->id));
                req_sizes.push_back(s->alphabet.size);
            }
            dest.required = pack_cols(req, req_sizes, rows());
            for (std::size_t a = 0; a <= order_.size(); ++a) {
                const auto nodes = region(u, a);
                Region rg;
                for (std::size_t d = 0; d < a; ++d) {
                    const Edge* e = inst_.find_edge(order_[d]);
                    if (!nodes.count(e->head)) continue;
                    rg.cols.push_back(&edge_cols_.at(e->id));
                    rg.sizes.push_back(e->alphabet.size);
                }
                for (const auto& v : nodes) {
                    for (const Source* s : inst_.sources_at(v)) {
                        rg.cols.push_back(&source_col(s->id));
                        rg.sizes.push_back(s->alphabet.size);
                    }
                    if (v != u && key_size(v) > 1) {
                        rg.cols.push_back(&key_col(v));
                        rg.sizes.push_back(key_size(v));
                    }
                }
                dest.regions.push_back(std::move(rg));
            }
            dests_.push_back(std::move(dest));
        }
    }

    bool regions_consistent(std::size_t assigned) const {
        for (const auto& dest : dests_) {
            const Region& rg = dest.regions[assigned];
            if (assigned > 0 && rg == dest.regions[assigned - 1]) continue;
            if (detail::dependence_violation(pack_cols(rg.cols, rg.sizes, rows()), dest.required.values)) return false;
        }
        return true;
    }

    bool secure_so_far(std::size_t depth) const {
        for (const auto& ev : eaves_) {
            auto it = ev.seen.find(depth);
            if (it == ev.seen.end()) continue;
            if (!detail::independent(ev.targets, pack_cols(it->second, ev.seen_sizes.at(depth), rows()))) return false;
        }
        return true;
    }

    bool dfs(std::size_t depth) {
        if (depth == levels_.size()) return true;
        Level& lv = levels_[depth];
        const Column idx = detail::local_index(lv.args, lv.sizes, rows());
        const auto reachable = distinct(idx);
        const std::uint64_t out = lv.edge->alphabet.size;
        lv.table.assign(static_cast<std::size_t>(Radix(lv.sizes).total), 0);
        std::vector<Symbol> values(reachable.size(), 0);
        std::vector<std::uint64_t> radix(reachable.size(), out);
        std::vector<bool> frozen(reachable.size(), false);
        if (symmetry_ && !frozen.empty()) frozen[0] = true;
        Column& column = edge_cols_.at(lv.edge->id);
        do {
            counter_.tick();
            for (std::size_t j = 0; j < reachable.size(); ++j) lv.table[reachable[j]] = values[j];
            kernels::gather(lv.table, idx, column);
            if (secure_so_far(depth) && regions_consistent(depth + 1) && dfs(depth + 1)) return true;
        } while (advance(values, radix, frozen));
        return false;
    }

    NetworkCode build_code() const {
        NetworkCode code;
        for (const auto& [node, a] : keys_)
            if (a.size > 1) code.key_alphabets[node] = a;
        for (const auto& lv : levels_)
            code.edge_functions.emplace(lv.edge->id, FiniteFunction(lv.slots, lv.edge->alphabet, lv.table));
        for (const auto& dest : dests_) {
            const auto slots = decoder_slots(inst_, dest.node);
            std::vector<const Column*> args;
            std::vector<std::uint64_t> sizes;
            for (const Edge* in : inst_.in_edges(dest.node)) args.push_back(&edge_cols_.at(in->id));
            for (const Source* s : inst_.sources_at(dest.node)) args.push_back(&source_col(s->id));
            for (const auto& s : slots) sizes.push_back(s.alphabet.size);
            const Column idx = detail::local_index(args, sizes, rows());
            code.node_decoders.emplace(
                dest.node, FiniteFunction(slots, requirement_alphabet(inst_, dest.node),
                                          forced_table(idx, dest.required.values, Radix(sizes).total)));
        }
        return code;
    }

    const NetworkInstance& inst_;
    std::map<std::string, Alphabet> keys_;
    detail::NetworkSpace space_;
    detail::DigitColumns digits_;
    std::vector<std::string> order_;
    Counter& counter_;
    bool symmetry_;
    std::map<std::string, Column> edge_cols_;
    std::map<std::string, std::size_t> position_of_;
    std::vector<Level> levels_;
    std::vector<Eavesdropper> eaves_;
    std::vector<Destination> dests_;
};

// Every full candidate in order, each handed to `accept`.
struct TableSpec {
    std::vector<Slot> slots;
    Alphabet output;
    std::size_t entries;
    bool symmetric;
};

template <class Build, class Accept>
auto enumerate_naive(const std::vector<TableSpec>& specs, Counter& counter, bool symmetry, Build build,
                     Accept accept) -> std::optional<decltype(build(std::vector<std::vector<Symbol>>{}))> {
    std::vector<std::uint64_t> radix;
    std::vector<bool> frozen;
    for (const auto& t : specs) {
        for (std::size_t i = 0; i < t.entries; ++i) {
            radix.push_back(t.output.size);
            frozen.push_back(symmetry && t.symmetric && i == 0);
        }
    }
    std::vector<Symbol> flat(radix.size(), 0);
    do {
        counter.tick();
        std::vector<std::vector<Symbol>> tables;
        std::size_t at = 0;
        for (const auto& t : specs) {
            tables.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(at),
                                flat.begin() + static_cast<std::ptrdiff_t>(at + t.entries));
            at += t.entries;
        }
        auto code = build(tables);
        if (accept(code)) return code;
    } while (advance(flat, radix, frozen));
    return std::nullopt;
}

std::optional<NetworkCode> naive_network(const NetworkInstance& instance, const std::map<std::string, Alphabet>& keys,
                                         Counter& counter, bool symmetry, std::uint64_t max_rows) {
    NetworkCode shape;
    for (const auto& [node, a] : keys)
        if (a.size > 1) shape.key_alphabets[node] = a;
    std::vector<TableSpec> specs;
    std::vector<std::string> names;
    for (const auto& id : topological_order(instance)) {
        const Edge& e = *instance.find_edge(id);
        auto slots = edge_slots(instance, e, shape.key_alphabet(e.tail));
        const auto n = static_cast<std::size_t>(Radix(slots).total);
        specs.push_back({std::move(slots), e.alphabet, n, true});
        names.push_back(id);
    }
    const std::size_t edges = specs.size();
    for (const auto& u : instance.destination_nodes()) {
        auto slots = decoder_slots(instance, u);
        const auto n = static_cast<std::size_t>(Radix(slots).total);
        specs.push_back({std::move(slots), requirement_alphabet(instance, u), n, false});
        names.push_back(u);
    }
    auto build = [&](const std::vector<std::vector<Symbol>>& tables) {
        NetworkCode code = shape;
        for (std::size_t t = 0; t < specs.size(); ++t) {
            FiniteFunction f(specs[t].slots, specs[t].output, tables[t]);
            (t < edges ? code.edge_functions : code.node_decoders).emplace(names[t], std::move(f));
        }
        return code;
    };
    auto accept = [&](const NetworkCode& code) {
        return check_network_decodable(instance, code, max_rows) && check_network_secure(instance, code, max_rows);
    };
    return enumerate_naive(specs, counter, symmetry, build, accept);
}

// ------------------------------------------------------------------ index

std::vector<const Receiver*> demanding_receivers(const IndexInstance& instance) {
    std::vector<const Receiver*> out;
    for (const auto& r : instance.receivers)
        if (!r.wants.empty()) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return a->id < b->id; });
    return out;
}

std::optional<IndexCode> pruned_index(const IndexInstance& instance, Alphabet key, Counter& counter, bool symmetry) {
    std::vector<Slot> slots = encoder_slots(instance, Alphabet{1});
    std::map<std::string, std::size_t> slot_of;
    for (std::size_t i = 0; i < slots.size(); ++i) slot_of[slots[i].name] = i;
    slots.push_back({kSenderKeySlot, key});
    const detail::DigitColumns digits{Radix(slots)};
    const std::size_t rows = digits.rows();
    const std::uint64_t b_size = instance.broadcast_alphabet.size;

    auto group = [&](const IdSet& ids, std::vector<const Column*>& cols, std::vector<std::uint64_t>& sizes) {
        for (const auto& id : ids) {
            cols.push_back(&digits[slot_of.at(id)]);
            sizes.push_back(instance.find_message(id)->alphabet.size);
        }
    };

    Column broadcast(rows, 0);
    struct Eve {
        Packed targets;
        std::vector<const Column*> seen;
        std::vector<std::uint64_t> sizes;
    };
    std::vector<const IndexEavesdropper*> sorted_eves;
    for (const auto& r : instance.eavesdroppers) sorted_eves.push_back(&r);
    std::sort(sorted_eves.begin(), sorted_eves.end(), [](auto* a, auto* b) { return a->id < b->id; });
    std::vector<Eve> eves;
    for (const auto* r : sorted_eves) {
        std::vector<const Column*> tc;
        std::vector<std::uint64_t> ts;
        group(r->target_messages, tc, ts);
        Eve ev{pack_cols(tc, ts, rows), {&broadcast}, {b_size}};
        group(r->side_info, ev.seen, ev.sizes);
        eves.push_back(std::move(ev));
    }
    struct Want {
        const Receiver* receiver;
        Packed wanted;
        std::vector<const Column*> seen;
        std::vector<std::uint64_t> sizes;
    };
    std::vector<Want> wants;
    for (const Receiver* r : demanding_receivers(instance)) {
        std::vector<const Column*> wc;
        std::vector<std::uint64_t> ws;
        group(r->wants, wc, ws);
        Want w{r, pack_cols(wc, ws, rows), {&broadcast}, {b_size}};
        group(r->has, w.seen, w.sizes);
        wants.push_back(std::move(w));
    }

    std::vector<Symbol> values(rows, 0);
    const std::vector<std::uint64_t> radix(rows, b_size);
    std::vector<bool> frozen(rows, false);
    if (symmetry && rows > 0) frozen[0] = true;
    do {
        counter.tick();
        std::copy(values.begin(), values.end(), broadcast.begin());
        bool ok = true;
        for (const auto& ev : eves) {
            if (!detail::independent(ev.targets, pack_cols(ev.seen, ev.sizes, rows))) {
                ok = false;
                break;
            }
        }
        for (std::size_t i = 0; ok && i < wants.size(); ++i)
            if (detail::dependence_violation(pack_cols(wants[i].seen, wants[i].sizes, rows), wants[i].wanted.values))
                ok = false;
        if (!ok) continue;

        IndexCode code;
        code.key_alphabet = key;
        code.encoder = FiniteFunction(encoder_slots(instance, key), instance.broadcast_alphabet, values);
        for (const auto& w : wants) {
            const auto dslots = index_decoder_slots(instance, *w.receiver);
            const Column idx = detail::local_index(w.seen, w.sizes, rows);
            code.decoders.emplace(w.receiver->id,
                                  FiniteFunction(dslots, wants_alphabet(instance, *w.receiver),
                                                 forced_table(idx, w.wanted.values, Radix(w.sizes).total)));
        }
        return code;
    } while (advance(values, radix, frozen));
    return std::nullopt;
}

std::optional<IndexCode> naive_index(const IndexInstance& instance, Alphabet key, Counter& counter, bool symmetry,
                                     std::uint64_t max_rows) {
    std::vector<TableSpec> specs;
    auto enc = encoder_slots(instance, key);
    const auto n = static_cast<std::size_t>(Radix(enc).total);
    specs.push_back({std::move(enc), instance.broadcast_alphabet, n, true});
    const auto receivers = demanding_receivers(instance);
    for (const Receiver* r : receivers) {
        auto slots = index_decoder_slots(instance, *r);
        const auto m = static_cast<std::size_t>(Radix(slots).total);
        specs.push_back({std::move(slots), wants_alphabet(instance, *r), m, false});
    }
    auto build = [&](const std::vector<std::vector<Symbol>>& tables) {
        IndexCode code;
        code.key_alphabet = key;
        code.encoder = FiniteFunction(specs[0].slots, specs[0].output, tables[0]);
        for (std::size_t t = 1; t < specs.size(); ++t)
            code.decoders.emplace(receivers[t - 1]->id, FiniteFunction(specs[t].slots, specs[t].output, tables[t]));
        return code;
    };
    auto accept = [&](const IndexCode& code) {
        return check_index_decodable(instance, code, max_rows) && check_index_secure(instance, code, max_rows);
    };
    return enumerate_naive(specs, counter, symmetry, build, accept);
}

bool fits(const std::vector<Slot>& slots, std::uint64_t max_rows) {
    std::uint64_t total = 1;
    for (const auto& s : slots) {
        if (total > max_rows / s.alphabet.size) return false;
        total *= s.alphabet.size;
    }
    return true;
}

// Runs `attempt(symmetry)`; a code found under symmetry pruning is replaced by
// the unpruned run's canonical witness.
template <class Code>
SearchResult<Code> drive(const SearchBudget& budget, const SearchOptions& options,
                         const std::function<std::optional<Code>(Counter&, bool)>& attempt,
                         const std::function<bool(const Code&)>& verified) {
    SearchResult<Code> result;
    Counter counter{0, budget.max_candidate_codes};
    try {
        result.code = attempt(counter, options.symmetry_pruning);
        if (result.code && options.symmetry_pruning) {
            Counter again{0, budget.max_candidate_codes};
            try {
                result.code = attempt(again, false);
            } catch (const OutOfBudget&) {
                result.candidates = counter.tried + again.tried;
                result.code.reset();
                result.status = SearchStatus::budget_exceeded;
                return result;
            }
            counter.tried += again.tried;
        }
    } catch (const OutOfBudget&) {
        result.candidates = counter.limit;
        result.status = SearchStatus::budget_exceeded;
        return result;
    }
    result.candidates = counter.tried;
    if (!result.code) {
        result.status = SearchStatus::infeasible;
        return result;
    }
    if (!verified(*result.code)) throw Error("internal: search produced a code the verifier rejects");
    result.status = SearchStatus::feasible;
    return result;
}

}  // namespace

std::string_view to_string(SearchStatus status) noexcept {
    switch (status) {
        case SearchStatus::feasible: return "Feasible";
        case SearchStatus::infeasible: return "Infeasible";
        case SearchStatus::budget_exceeded: return "BudgetExceeded";
    }
    return "?";
}

NetworkSearchResult search_network_codes(const NetworkInstance& instance,
                                         const std::map<std::string, Alphabet>& key_alphabets,
                                         const SearchBudget& budget, const SearchOptions& options) {
    require_valid(instance);
    for (const auto& [node, a] : key_alphabets) {
        if (!instance.has_node(node)) throw ValidationError("key alphabet for unknown node " + node);
        if (a.size == 0 || a.size > kMaxAlphabetSize) throw ValidationError("key alphabet size out of range at " + node);
    }
    if (!fits(detail::network_space(instance, key_alphabets).slots, budget.max_joint_tuples))
        return {SearchStatus::budget_exceeded, std::nullopt, 0};

    const std::uint64_t rows = budget.max_joint_tuples;
    return drive<NetworkCode>(
        budget, options,
        [&](Counter& counter, bool symmetry) -> std::optional<NetworkCode> {
            if (!options.early_rejection) return naive_network(instance, key_alphabets, counter, symmetry, rows);
            return NetworkSearch(instance, key_alphabets, counter, symmetry).run();
        },
        [&](const NetworkCode& code) {
            return check_network_decodable(instance, code, rows) && check_network_secure(instance, code, rows);
        });
}

IndexSearchResult search_index_codes(const IndexInstance& instance, Alphabet key_alphabet, const SearchBudget& budget,
                                     const SearchOptions& options) {
    require_valid(instance);
    if (key_alphabet.size == 0 || key_alphabet.size > kMaxAlphabetSize)
        throw ValidationError("key alphabet size out of range");
    auto joint = encoder_slots(instance, Alphabet{1});
    joint.push_back({kSenderKeySlot, key_alphabet});
    if (!fits(joint, budget.max_joint_tuples)) return {SearchStatus::budget_exceeded, std::nullopt, 0};

    const std::uint64_t rows = budget.max_joint_tuples;
    return drive<IndexCode>(
        budget, options,
        [&](Counter& counter, bool symmetry) -> std::optional<IndexCode> {
            if (!options.early_rejection) return naive_index(instance, key_alphabet, counter, symmetry, rows);
            return pruned_index(instance, key_alphabet, counter, symmetry);
        },
        [&](const IndexCode& code) {
            return check_index_decodable(instance, code, rows) && check_index_secure(instance, code, rows);
        });
}

EquivalenceReport feasibility_equivalence(const IndexInstance& instance, const SearchBudget& budget,
                                          const EquivalenceOptions& options) {
    EquivalenceReport report;
    report.index_search = search_index_codes(instance, options.key_alphabet, budget, options.search);
    if (report.index_search.status == SearchStatus::budget_exceeded)
        throw BudgetExceededError("index code search exceeded the budget");

    const auto [net, mapping] = index_to_network(instance);
    std::map<std::string, Alphabet> keys;
    if (options.key_alphabet.size > 1) keys[mapping.relay_nodes.first] = options.key_alphabet;
    report.network_search = search_network_codes(net, keys, budget, options.search);
    if (report.network_search.status == SearchStatus::budget_exceeded)
        throw BudgetExceededError("network code search exceeded the budget");

    report.index_feasible = report.index_search.feasible();
    report.network_feasible = report.network_search.feasible();
    report.agree = report.index_feasible == report.network_feasible;

    if (!options.augmented_leg) {
        report.augmented_note = "not requested";
        return report;
    }
    const auto [aug, record] = augment(net);
    const auto [image, back] = network_to_index(aug);
    auto joint = encoder_slots(image, Alphabet{1});
    if (!fits(joint, budget.max_joint_tuples)) {
        report.augmented_note = "index image of the augmented network exceeds the joint budget";
        return report;
    }
    if (report.network_feasible) {
        // Certificate: carry the witness over and verify it.
        try {
            const NetworkCode det = randomized_to_augmented(net, *report.network_search.code);
            const IndexCode translated = t2_network_code_to_index_code(aug, back, det);
            report.augmented_feasible = check_index_decodable(image, translated, budget.max_joint_tuples) &&
                                        check_index_secure(image, translated, budget.max_joint_tuples);
            report.augmented_note = "translated witness";
        } catch (const PreconditionError& e) {
            report.augmented_note = std::string("witness not translatable: ") + e.what();
        }
    } else {
        // Exhaustive search only when the encoder space alone fits the budget.
        std::uint64_t space = 1;
        bool small = true;
        for (std::size_t i = 0; small && i < Radix(joint).total; ++i) {
            if (space > budget.max_candidate_codes / image.broadcast_alphabet.size) small = false;
            space *= image.broadcast_alphabet.size;
        }
        if (!small) {
            report.augmented_note = "encoder space of the index image exceeds the candidate budget";
        } else {
            auto res = search_index_codes(image, Alphabet{1}, budget, options.search);
            if (res.status == SearchStatus::budget_exceeded) {
                report.augmented_note = "index image search exceeded the budget";
            } else {
                report.augmented_feasible = res.feasible();
                report.augmented_note = "exhaustive search";
            }
        }
    }
    if (report.augmented_feasible) report.agree = report.agree && *report.augmented_feasible == report.network_feasible;
    return report;
}

}  // namespace snic
