#pragma once

namespace graphquad {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace graphquad
