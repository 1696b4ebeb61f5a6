#pragma once

namespace bindcap {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bindcap
