#pragma once

#include <chrono>

namespace robocache {

// Simulated time. A time point is the duration since the simulation epoch.
using Millis = std::chrono::duration<double, std::milli>;
using Minutes = std::chrono::duration<double, std::ratio<60>>;

inline double to_minutes(Millis t) { return Minutes(t).count(); }

}  // namespace robocache
