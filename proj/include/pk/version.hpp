#pragma once

namespace pk {

inline constexpr const char* version = "0.1.0";

}  // namespace pk
