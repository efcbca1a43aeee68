#pragma once

namespace greedy_energy {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace greedy_energy
