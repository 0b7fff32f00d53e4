#pragma once

namespace posopt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace posopt
