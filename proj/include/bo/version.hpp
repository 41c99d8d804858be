#pragma once

namespace bo {

inline constexpr const char* kLibraryVersion = "1.0.0";

} // namespace bo
