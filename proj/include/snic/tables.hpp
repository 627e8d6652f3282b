#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snic/codes.hpp"
#include "snic/function.hpp"
#include "snic/model.hpp"

namespace snic {

inline constexpr std::uint64_t kDefaultJointBudget = std::uint64_t{1} << 24;

/// Domain shared by every global encoding function of a code: all sources
/// sorted by id, then one key slot per node sorted by node id. Nodes without
/// a key contribute a size-1 slot, so any two global functions of the same
/// code can be compared entry by entry.
std::vector<Slot> global_domain(const NetworkInstance& instance, const NetworkCode& code);

/// The symbol each edge carries, as a function of (sources, keys). Computed by
/// substituting local functions along the topological order.
std::map<std::string, FiniteFunction> global_encodings(const NetworkInstance& instance, const NetworkCode& code,
                                                       std::uint64_t max_rows = kDefaultJointBudget);

}  // namespace snic
