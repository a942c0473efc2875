#pragma once

namespace oormlp {
inline constexpr const char* kVersion = "0.1.0";
}
