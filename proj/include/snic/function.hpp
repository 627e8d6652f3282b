#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "snic/model.hpp"

namespace snic {

struct Slot {
    std::string name;
    Alphabet alphabet;

    friend bool operator==(const Slot&, const Slot&) = default;
};

/// Mixed-radix strides for a slot list; the first slot is the least
/// significant digit. `total` is the product of the slot sizes.
struct Radix {
    std::vector<std::uint64_t> sizes;
    std::vector<std::uint64_t> strides;
    std::uint64_t total = 1;

    Radix() = default;
    explicit Radix(const std::vector<Slot>& slots);
    explicit Radix(std::vector<std::uint64_t> slot_sizes);

    std::uint64_t pack(std::span<const Symbol> digits) const;
    std::vector<Symbol> unpack(std::uint64_t index) const;
    Symbol digit(std::uint64_t index, std::size_t slot) const {
        return static_cast<Symbol>((index / strides[slot]) % sizes[slot]);
    }
};

/// A total function from a product of finite alphabets to a finite alphabet,
/// stored extensionally.
class FiniteFunction {
public:
    FiniteFunction() = default;
    /// Throws ArityError when the table length is not the product of the slot
    /// sizes, SymbolRangeError when an entry is outside the output alphabet.
    FiniteFunction(std::vector<Slot> slots, Alphabet output, std::vector<Symbol> table);

    /// Builds the table by calling `fn` on every argument tuple.
    static FiniteFunction tabulate(std::vector<Slot> slots, Alphabet output,
                                   const std::function<Symbol(std::span<const Symbol>)>& fn);
    static FiniteFunction constant(Alphabet output, Symbol value);

    const std::vector<Slot>& slots() const noexcept { return slots_; }
    const Alphabet& output() const noexcept { return output_; }
    const std::vector<Symbol>& table() const noexcept { return table_; }
    const Radix& radix() const noexcept { return radix_; }

    std::size_t arity() const noexcept { return slots_.size(); }
    /// Position of the slot called `name`, or arity() when absent.
    std::size_t slot_index(const std::string& name) const;

    /// Throws ArityError / SymbolRangeError on bad arguments.
    Symbol evaluate(std::span<const Symbol> args) const;
    Symbol evaluate(std::initializer_list<Symbol> args) const {
        return evaluate(std::span<const Symbol>(args.begin(), args.size()));
    }
    Symbol at(std::uint64_t index) const { return table_[index]; }

    friend bool operator==(const FiniteFunction& a, const FiniteFunction& b) {
        return a.slots_ == b.slots_ && a.output_ == b.output_ && a.table_ == b.table_;
    }

private:
    std::vector<Slot> slots_;
    Alphabet output_;
    std::vector<Symbol> table_{0};
    Radix radix_;
};

/// Table-size guard used before materialising any product space.
inline constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 28;

}  // namespace snic
