#pragma once

namespace algcensus {

inline constexpr const char* kToolVersion = "algcensus 0.1.0";

}  // namespace algcensus
