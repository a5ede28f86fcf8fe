#pragma once

namespace phiid {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace phiid
