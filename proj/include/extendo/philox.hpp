#pragma once

#include <array>
#include <cstdint>

namespace extendo {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123). Stateless: the
/// output is a pure function of (counter, key), so any sample can be generated
/// independently of every other one.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

/// Two uniforms in the open interval (0, 1) with 53 random bits each, for sample
/// `index` of stream `seed`.
std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace extendo
