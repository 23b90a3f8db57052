#pragma once
/**
 * @file version.hpp
 * @brief Library version embedded in every emitted report.
 */

namespace obstr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace obstr
