#pragma once

namespace chopshop {

#ifdef CHOPSHOP_VERSION
inline constexpr const char* kToolVersion = "chopshop " CHOPSHOP_VERSION;
#else
inline constexpr const char* kToolVersion = "chopshop 0.1.0";
#endif

} // namespace chopshop
