#include <algorithm>
#include <atomic>
#include <cassert>

#include "snic/kernels.hpp"

namespace snic::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(SNIC_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend detect() noexcept { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& current() noexcept {
    static std::atomic<Backend> backend{detect()};
    return backend;
}

}  // namespace

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) noexcept { return b == Backend::scalar || cpu_has_avx2(); }

bool set_backend(Backend b) noexcept {
    if (!backend_available(b)) return false;
    current().store(b, std::memory_order_relaxed);
    return true;
}

std::string_view backend_name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

void gather(std::span<const std::uint32_t> table, std::span<const std::uint32_t> index,
            std::span<std::uint32_t> out) {
    assert(index.size() == out.size());
#if defined(SNIC_HAVE_AVX2_KERNELS)
    if (active_backend() == Backend::avx2) return avx2::gather(table.data(), index.data(), out.data(), out.size());
#endif
    scalar::gather(table.data(), index.data(), out.data(), out.size());
}

void accumulate(std::span<std::uint32_t> acc, std::span<const std::uint32_t> digits, std::uint32_t stride) {
    assert(acc.size() == digits.size());
#if defined(SNIC_HAVE_AVX2_KERNELS)
    if (active_backend() == Backend::avx2) return avx2::accumulate(acc.data(), digits.data(), stride, acc.size());
#endif
    scalar::accumulate(acc.data(), digits.data(), stride, acc.size());
}

std::size_t first_mismatch(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    assert(a.size() == b.size());
#if defined(SNIC_HAVE_AVX2_KERNELS)
    if (active_backend() == Backend::avx2) return avx2::first_mismatch(a.data(), b.data(), a.size());
#endif
    return scalar::first_mismatch(a.data(), b.data(), a.size());
}

void fill_digit(std::span<std::uint32_t> out, std::uint64_t stride, std::uint64_t radix) {
    // runs of `stride` equal digits, cycling through 0..radix-1
    std::size_t i = 0;
    std::uint32_t d = 0;
    while (i < out.size()) {
        const std::size_t run = std::min<std::uint64_t>(stride, out.size() - i);
        for (std::size_t k = 0; k < run; ++k) out[i + k] = d;
        i += run;
        if (++d == radix) d = 0;
    }
}

}  // namespace snic::kernels
