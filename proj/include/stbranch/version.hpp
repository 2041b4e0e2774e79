#pragma once

namespace stbranch {

inline constexpr const char* kVersion = "1.0.0";

// Bumping this invalidates cached character tables.
inline constexpr int kCacheFormatVersion = 1;

}  // namespace stbranch
