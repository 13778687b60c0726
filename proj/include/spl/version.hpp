#pragma once

namespace spl {

inline constexpr const char* version = "0.1.0";

}  // namespace spl
