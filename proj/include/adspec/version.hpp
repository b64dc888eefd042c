#pragma once

namespace adspec {

inline constexpr const char* kVersion = "adspec 0.1.0";

}
