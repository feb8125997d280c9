#pragma once

namespace equimax {

// Engine identifier embedded in every report so results can be traced to
// the exact build that produced them.
inline constexpr const char* kEngineVersion = "equimax/1.0.0";

}  // namespace equimax
