#pragma once

// Column kernels behind every exhaustive enumeration. A column holds one
// symbol per joint input tuple; table composition, mixed-radix packing and
// mismatch scans all run over whole columns.
//
// Each kernel has a scalar reference and an AVX2 variant. The variant is
// picked once at start-up from the running CPU and can be pinned with
// set_backend() (tests pin both and compare).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace snic::kernels {

enum class Backend { scalar, avx2 };

/// out[i] = table[index[i]]
void gather(std::span<const std::uint32_t> table, std::span<const std::uint32_t> index,
            std::span<std::uint32_t> out);

/// acc[i] += digits[i] * stride   (mod 2^32)
void accumulate(std::span<std::uint32_t> acc, std::span<const std::uint32_t> digits, std::uint32_t stride);

/// Smallest i with a[i] != b[i], or a.size() when the columns agree.
std::size_t first_mismatch(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// out[i] = (i / stride) % radix
void fill_digit(std::span<std::uint32_t> out, std::uint64_t stride, std::uint64_t radix);

Backend active_backend() noexcept;
bool backend_available(Backend b) noexcept;
/// Returns false (and changes nothing) when `b` is not supported here.
bool set_backend(Backend b) noexcept;
std::string_view backend_name(Backend b) noexcept;

namespace scalar {
void gather(const std::uint32_t* table, const std::uint32_t* index, std::uint32_t* out, std::size_t n);
void accumulate(std::uint32_t* acc, const std::uint32_t* digits, std::uint32_t stride, std::size_t n);
std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SNIC_HAVE_AVX2_KERNELS 1
namespace avx2 {
void gather(const std::uint32_t* table, const std::uint32_t* index, std::uint32_t* out, std::size_t n);
void accumulate(std::uint32_t* acc, const std::uint32_t* digits, std::uint32_t stride, std::size_t n);
std::size_t first_mismatch(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
}  // namespace avx2
#endif

}  // namespace snic::kernels
