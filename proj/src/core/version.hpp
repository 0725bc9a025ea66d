#pragma once

namespace plab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace plab
