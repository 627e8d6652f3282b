#include "snic/function.hpp"

#include <algorithm>

#include "snic/errors.hpp"

namespace snic {

Radix::Radix(const std::vector<Slot>& slots) {
    std::vector<std::uint64_t> s;
    s.reserve(slots.size());
    for (const auto& slot : slots) s.push_back(slot.alphabet.size);
    *this = Radix(std::move(s));
}

Radix::Radix(std::vector<std::uint64_t> slot_sizes) : sizes(std::move(slot_sizes)) {
    strides.reserve(sizes.size());
    total = 1;
    for (auto size : sizes) {
        if (size == 0) throw ArityError("slot alphabet of size 0");
        strides.push_back(total);
        if (total > kMaxTableEntries / size)
            throw SizeBudgetError("product space exceeds " + std::to_string(kMaxTableEntries) + " entries");
        total *= size;
    }
}

std::uint64_t Radix::pack(std::span<const Symbol> digits) const {
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) index += digits[i] * strides[i];
    return index;
}

std::vector<Symbol> Radix::unpack(std::uint64_t index) const {
    std::vector<Symbol> out(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) out[i] = digit(index, i);
    return out;
}

FiniteFunction::FiniteFunction(std::vector<Slot> slots, Alphabet output, std::vector<Symbol> table)
    : slots_(std::move(slots)), output_(output), table_(std::move(table)), radix_(slots_) {
    if (output_.size == 0 || output_.size > kMaxAlphabetSize)
        throw SymbolRangeError("output alphabet size out of range");
    if (table_.size() != radix_.total)
        throw ArityError("table has " + std::to_string(table_.size()) + " entries, expected " +
                         std::to_string(radix_.total));
    for (Symbol v : table_)
        if (v >= output_.size)
            throw SymbolRangeError("table entry " + std::to_string(v) + " outside output alphabet of size " +
                                   std::to_string(output_.size));
}

FiniteFunction FiniteFunction::tabulate(std::vector<Slot> slots, Alphabet output,
                                        const std::function<Symbol(std::span<const Symbol>)>& fn) {
    Radix radix(slots);
    std::vector<Symbol> table(radix.total);
    std::vector<Symbol> args(slots.size(), 0);
    for (std::uint64_t i = 0; i < radix.total; ++i) {
        table[i] = fn(args);
        // odometer, first slot fastest
        for (std::size_t k = 0; k < args.size(); ++k) {
            if (++args[k] < radix.sizes[k]) break;
            args[k] = 0;
        }
    }
    return FiniteFunction(std::move(slots), output, std::move(table));
}

FiniteFunction FiniteFunction::constant(Alphabet output, Symbol value) {
    return FiniteFunction({}, output, {value});
}

std::size_t FiniteFunction::slot_index(const std::string& name) const {
    for (std::size_t i = 0; i < slots_.size(); ++i)
        if (slots_[i].name == name) return i;
    return slots_.size();
}

Symbol FiniteFunction::evaluate(std::span<const Symbol> args) const {
    if (args.size() != slots_.size())
        throw ArityError("expected " + std::to_string(slots_.size()) + " arguments, got " +
                         std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i] >= radix_.sizes[i])
            throw SymbolRangeError("argument " + std::to_string(i) + " (" + slots_[i].name +
                                   ") = " + std::to_string(args[i]) + " outside alphabet of size " +
                                   std::to_string(radix_.sizes[i]));
    return table_[radix_.pack(args)];
}

}  // namespace snic
