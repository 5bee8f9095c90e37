#pragma once

namespace binfar {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace binfar
