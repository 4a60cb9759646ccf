#pragma once

namespace qwd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qwd
