#pragma once

namespace lhk {
inline constexpr const char* kVersion = "lhk 1.0.0";
}
