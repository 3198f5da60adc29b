#pragma once

// Counter-based random numbers: Philox4x32-10 and an inverse-CDF normal
// transform, so every variate is a pure function of (key, counter).

#include <array>
#include <cstdint>

namespace specvar {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// One Philox4x32 block with 10 rounds.
PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

/// Uniform in (0, 1) from the top 52 bits of a 64-bit word, centred in its cell.
double uniform_open01(std::uint64_t bits);

/// Standard normal quantile: Acklam's rational approximation refined by one
/// Halley step against erfc. DomainError outside (0, 1).
double normal_quantile(double p);

/// Standard normal number `index` of stream (key = seed, stream id). Two
/// normals are drawn per Philox block; the counter words hold
/// (index / 2, stream, tag).
double stream_normal(std::uint64_t seed, std::uint32_t stream, std::uint32_t tag, std::uint64_t index);

}  // namespace specvar
