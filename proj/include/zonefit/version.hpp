#pragma once

namespace zonefit {
inline constexpr const char* kVersion = "1.0.0";
}
