#pragma once

namespace athermal {

inline constexpr const char* kVersion = "0.1.0";

}
