#pragma once

namespace xsb {
inline constexpr const char* kVersion = "0.1.0";
}
