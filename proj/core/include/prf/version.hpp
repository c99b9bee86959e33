#pragma once

namespace prf {

inline constexpr const char* version_string = "prf 1.0.0";

} // namespace prf
