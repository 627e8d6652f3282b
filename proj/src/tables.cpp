#include "snic/tables.hpp"

#include "snic/detail/columns.hpp"

namespace snic {

std::vector<Slot> global_domain(const NetworkInstance& instance, const NetworkCode& code) {
    return detail::network_space(instance, code.key_alphabets).slots;
}

std::map<std::string, FiniteFunction> global_encodings(const NetworkInstance& instance, const NetworkCode& code,
                                                       std::uint64_t max_rows) {
    auto cols = detail::evaluate_network(instance, code, max_rows);
    std::map<std::string, FiniteFunction> out;
    for (auto& [id, column] : cols.edge)
        out.emplace(id, FiniteFunction(cols.space.slots, instance.find_edge(id)->alphabet, std::move(column)));
    return out;
}

}  // namespace snic
