#pragma once

namespace deconv {

inline constexpr const char* kVersion = "1.0.0";

} // namespace deconv
