#pragma once

#include <string_view>

namespace nftcycles {

// Keep in sync with the CMake project version.
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace nftcycles
