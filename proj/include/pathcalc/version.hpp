#pragma once

namespace pathcalc {

inline constexpr const char* kEngineVersion = "pathcalc 0.1.0";

}  // namespace pathcalc
