#pragma once

namespace dualbraid {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dualbraid
