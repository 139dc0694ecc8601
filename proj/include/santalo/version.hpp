#pragma once

namespace santalo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace santalo
