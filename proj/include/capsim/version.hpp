#pragma once

namespace capsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace capsim
