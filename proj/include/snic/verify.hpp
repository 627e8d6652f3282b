#pragma once

// Exact certification of zero-error decodability and information-theoretic
// security. Sources, messages and keys are independent and uniform, so every
// joint input tuple is equiprobable and all pass/fail decisions reduce to
// integer counting over the enumerated tuples.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "snic/codes.hpp"
#include "snic/function.hpp"
#include "snic/model.hpp"
#include "snic/tables.hpp"

namespace snic {

struct Variable {
    std::string name;
    Alphabet alphabet;
};

/// Joint law of uniform independent inputs and functions of them. Stored as
/// one column per variable with one row per input tuple; counts() folds the
/// rows into the tuple -> count map.
class JointTable {
public:
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    std::uint64_t total() const noexcept { return rows_; }
    /// Throws UnknownVariableError.
    std::size_t index_of(const std::string& name) const;
    const std::vector<Symbol>& column(const std::string& name) const { return columns_[index_of(name)]; }
    std::map<std::vector<Symbol>, std::uint64_t> counts() const;

private:
    friend JointTable build_joint(const std::vector<Slot>&, const std::vector<std::pair<std::string, FiniteFunction>>&,
                                  std::uint64_t);
    friend JointTable network_joint(const NetworkInstance&, const NetworkCode&, std::uint64_t);
    friend JointTable index_joint(const IndexInstance&, const IndexCode&, std::uint64_t);

    void add(std::string name, Alphabet alphabet, std::vector<Symbol> column);

    std::vector<Variable> variables_;
    std::vector<std::vector<Symbol>> columns_;
    std::uint64_t rows_ = 1;
};

/// Inputs are uniform and independent; each derived function may only read
/// declared inputs (by slot name, matching alphabets). Throws
/// UnknownVariableError, ArityError, SizeBudgetError.
JointTable build_joint(const std::vector<Slot>& inputs,
                       const std::vector<std::pair<std::string, FiniteFunction>>& derived,
                       std::uint64_t max_rows = kDefaultJointBudget);

/// Sources, node keys and edge symbols of a network code.
JointTable network_joint(const NetworkInstance& instance, const NetworkCode& code,
                         std::uint64_t max_rows = kDefaultJointBudget);
/// Messages, the sender key and the broadcast symbol ("broadcast").
JointTable index_joint(const IndexInstance& instance, const IndexCode& code,
                       std::uint64_t max_rows = kDefaultJointBudget);

/// True iff count(a,b) * total == count(a) * count(b) for all (a,b).
bool check_independent(const JointTable& joint, const IdSet& group_a, const IdSet& group_b);

/// H(A | B) in bits. Reporting only; verdicts never depend on it.
double conditional_entropy_bits(const JointTable& joint, const IdSet& group_a, const IdSet& group_b);

struct Assignment {
    std::string name;
    Symbol value;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct CheckResult {
    bool passed = true;
    /// Offending node, receiver, eavesdropper or source.
    std::string culprit;
    /// Lexicographically smallest failing input tuple (decodability only).
    std::vector<Assignment> witness;

    explicit operator bool() const noexcept { return passed; }
};

CheckResult check_network_decodable(const NetworkInstance& instance, const NetworkCode& code,
                                    std::uint64_t max_rows = kDefaultJointBudget);
CheckResult check_network_secure(const NetworkInstance& instance, const NetworkCode& code,
                                 std::uint64_t max_rows = kDefaultJointBudget);
/// Every source is a function of the symbols on the out-edges of its origin.
CheckResult check_source_recoverable(const NetworkInstance& instance, const NetworkCode& code,
                                     std::uint64_t max_rows = kDefaultJointBudget);

CheckResult check_index_decodable(const IndexInstance& instance, const IndexCode& code,
                                  std::uint64_t max_rows = kDefaultJointBudget);
CheckResult check_index_secure(const IndexInstance& instance, const IndexCode& code,
                               std::uint64_t max_rows = kDefaultJointBudget);

}  // namespace snic
