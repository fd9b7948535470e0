#pragma once

namespace cblup {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cblup
