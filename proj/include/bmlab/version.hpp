#pragma once

namespace bmlab {
inline constexpr const char* kVersion = "0.3.1";
}
