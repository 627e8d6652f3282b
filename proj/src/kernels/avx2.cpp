// Compiled with -mavx2; only reached after a runtime CPU check.
#include "snic/kernels.hpp"

#if defined(SNIC_HAVE_AVX2_KERNELS)

#include <immintrin.h>

namespace snic::kernels::avx2 {

void gather(const std::uint32_t* table, const std::uint32_t* index, std::uint32_t* out, std::size_t n) {
    const int* base = reinterpret_cast<const int*>(table);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i idx = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(index + i));
        const __m256i v = _mm256_i32gather_epi32(base, idx, 4);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), v);
    }
    for (; i < n; ++i) out[i] = table[index[i]];
}

void accumulate(std::uint32_t* acc, const std::uint32_t* digits, std::uint32_t stride, std::size_t n) {
    const __m256i s = _mm256_set1_epi32(static_cast<int>(stride));
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
        const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(digits + i));
        a = _mm256_add_epi32(a, _mm256_mullo_epi32(d, s));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i), a);
    }
    for (; i < n; ++i) acc[i] += digits[i] * stride;
}

std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const unsigned eq = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(va, vb))));
        if (eq != 0xFFu) return i + static_cast<std::size_t>(__builtin_ctz(~eq & 0xFFu));
    }
    for (; i < n; ++i)
        if (a[i] != b[i]) return i;
    return n;
}

}  // namespace snic::kernels::avx2

#endif
