#pragma once

namespace partsep {

inline constexpr const char* kVersion = "0.1.0";

} // namespace partsep
