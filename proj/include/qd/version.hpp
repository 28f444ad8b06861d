#pragma once

namespace qd {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qd
