#pragma once

namespace qumeas {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qumeas
