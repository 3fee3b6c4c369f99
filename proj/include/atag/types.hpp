// Shared aliases for action labels and traces.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace atag {

using ActionLabel = std::string;

// One attack vector: the sequence of actions along a root-to-success path.
using Trace = std::vector<ActionLabel>;
using TraceSet = std::set<Trace>;

inline constexpr std::uint64_t kDefaultTraceBound = 1'000'000;

}  // namespace atag
