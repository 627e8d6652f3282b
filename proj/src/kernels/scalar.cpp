#include "snic/kernels.hpp"

namespace snic::kernels::scalar {

void gather(const std::uint32_t* table, const std::uint32_t* index, std::uint32_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = table[index[i]];
}

void accumulate(std::uint32_t* acc, const std::uint32_t* digits, std::uint32_t stride, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += digits[i] * stride;
}

std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return i;
    return n;
}

}  // namespace snic::kernels::scalar
