#pragma once

namespace coex {

inline constexpr const char* version = "0.1.0";

}  // namespace coex
