#pragma once

// Column-oriented evaluation shared by the verifier, the translations and the
// searches. Row r of every column is the joint input tuple with mixed-radix
// index r over the relevant input space.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "snic/codes.hpp"
#include "snic/function.hpp"
#include "snic/model.hpp"

namespace snic::detail {

using Column = std::vector<Symbol>;

/// Digit columns of a radix, built on first use.
class DigitColumns {
public:
    explicit DigitColumns(Radix radix) : radix_(std::move(radix)), cache_(radix_.sizes.size()) {}

    const Radix& radix() const noexcept { return radix_; }
    std::size_t rows() const noexcept { return static_cast<std::size_t>(radix_.total); }
    const Column& operator[](std::size_t slot) const;

private:
    Radix radix_;
    mutable std::vector<std::optional<Column>> cache_;
};

/// idx[r] = sum_i args[i][r] * stride_i with strides from `sizes` (first fastest).
Column local_index(std::span<const Column* const> args, std::span<const std::uint64_t> sizes, std::size_t rows);

/// Several columns packed into one key column. Cardinality is an upper bound
/// on the number of distinct values; when the running product would pass
/// 2^32 the partial key is replaced by ranks of its distinct values.
struct Packed {
    Column values;
    std::uint64_t cardinality = 1;
};
Packed pack(std::span<const Column* const> columns, std::span<const std::uint64_t> sizes, std::size_t rows);

/// Exact test of p(a,b) = p(a)p(b) over equiprobable rows, integer arithmetic.
bool independent(const Packed& a, const Packed& b);

/// First row r for which some earlier row has the same key but a different
/// value, or nullopt when `key` determines `value`.
std::optional<std::size_t> dependence_violation(const Packed& key, const Column& value);

/// Joint input space of a network code: every source (by id) followed by one
/// key per node (by node id); deterministic nodes get a size-1 key slot.
struct NetworkSpace {
    std::vector<Slot> slots;
    std::map<std::string, std::size_t> source_slot;
    std::map<std::string, std::size_t> key_slot;
};
NetworkSpace network_space(const NetworkInstance& instance, const std::map<std::string, Alphabet>& keys);

/// Every edge symbol of a network code as a column over its NetworkSpace.
struct NetworkColumns {
    NetworkSpace space;
    DigitColumns digits;
    std::vector<std::string> order;
    std::map<std::string, Column> edge;

    std::size_t rows() const noexcept { return digits.rows(); }
    const Column& source(const std::string& id) const { return digits[space.source_slot.at(id)]; }
};

/// Throws CodeMismatchError, SizeBudgetError when the space exceeds `max_rows`.
NetworkColumns evaluate_network(const NetworkInstance& instance, const NetworkCode& code, std::uint64_t max_rows);

/// Argument columns of a local function at `node` (in-edges then sources),
/// plus the key digit column when present.
std::vector<const Column*> local_arguments(const NetworkInstance& instance, const NetworkColumns& cols,
                                           const std::string& node, bool with_key);

/// Index code inputs: messages by id, then the sender key.
struct IndexColumns {
    DigitColumns digits;
    std::map<std::string, std::size_t> message_slot;
    std::size_t key_slot;
    Column broadcast;

    std::size_t rows() const noexcept { return digits.rows(); }
    const Column& message(const std::string& id) const { return digits[message_slot.at(id)]; }
};
IndexColumns evaluate_index(const IndexInstance& instance, const IndexCode& code, std::uint64_t max_rows);

/// Radix over `slots`, throwing SizeBudgetError past `max_rows`.
Radix bounded_radix(const std::vector<Slot>& slots, std::uint64_t max_rows);

}  // namespace snic::detail
