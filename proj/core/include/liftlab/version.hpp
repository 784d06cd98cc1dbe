#pragma once

namespace liftlab {

inline constexpr const char* kVersion = "0.1.0";

} // namespace liftlab
