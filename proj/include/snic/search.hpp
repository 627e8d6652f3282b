#pragma once

// Exhaustive search over all codes at fixed alphabets. Candidates are ordered
// lexicographically over the concatenated tables (edge functions in
// topological order, then decoders by node or receiver id; the first table
// entry is most significant), and the first code passing the verifier is the
// canonical witness.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "snic/codes.hpp"
#include "snic/model.hpp"

namespace snic {

struct SearchBudget {
    std::uint64_t max_candidate_codes = std::uint64_t{1} << 22;
    std::uint64_t max_joint_tuples = std::uint64_t{1} << 20;
};

struct SearchOptions {
    /// Reject partial codes that cannot be completed (sound: never changes the
    /// verdict or the witness). When off, every full candidate, decoders
    /// included, is built and handed to the verifier.
    bool early_rejection = true;
    /// Fix the first entry of every edge table (encoder for index codes) to 0.
    /// Only trusted for infeasibility: a code found this way triggers a
    /// second, unpruned run for the canonical witness.
    bool symmetry_pruning = false;
};

enum class SearchStatus { feasible, infeasible, budget_exceeded };

std::string_view to_string(SearchStatus status) noexcept;

template <class Code>
struct SearchResult {
    SearchStatus status = SearchStatus::infeasible;
    std::optional<Code> code;
    /// Tables tried (each candidate edge function, encoder or full code).
    std::uint64_t candidates = 0;

    bool feasible() const noexcept { return status == SearchStatus::feasible; }
};

using NetworkSearchResult = SearchResult<NetworkCode>;
using IndexSearchResult = SearchResult<IndexCode>;

/// Nodes missing from `key_alphabets` are deterministic. Throws
/// ValidationError on an invalid instance.
NetworkSearchResult search_network_codes(const NetworkInstance& instance,
                                         const std::map<std::string, Alphabet>& key_alphabets = {},
                                         const SearchBudget& budget = {}, const SearchOptions& options = {});

IndexSearchResult search_index_codes(const IndexInstance& instance, Alphabet key_alphabet = Alphabet{1},
                                     const SearchBudget& budget = {}, const SearchOptions& options = {});

struct EquivalenceOptions {
    /// Sender key for the index search; the mapped network gives node "1" the
    /// same key and every other node none.
    Alphabet key_alphabet{1};
    /// Also relate the augmented network to its index image.
    bool augmented_leg = true;
    SearchOptions search;
};

struct EquivalenceReport {
    bool index_feasible = false;
    bool network_feasible = false;
    /// Feasibility of network_to_index(augment(network)); nullopt when it could
    /// not be settled within the budget.
    std::optional<bool> augmented_feasible;
    std::string augmented_note;
    bool agree = false;
    IndexSearchResult index_search;
    NetworkSearchResult network_search;
};

/// Throws BudgetExceededError when either of the two main searches runs out.
EquivalenceReport feasibility_equivalence(const IndexInstance& instance, const SearchBudget& budget = {},
                                          const EquivalenceOptions& options = {});

}  // namespace snic
