#pragma once

namespace triplekit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace triplekit
