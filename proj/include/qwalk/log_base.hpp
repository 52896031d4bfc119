// log_base.hpp
// Entropy log-base selector shared by the entanglement and experiment
// modules. Natural log (nats) is the default everywhere; base 2 (bits)
// rescales by 1/ln 2.

#pragma once

#include <cmath>
#include <string>

namespace qwalk {

enum class LogBase { natural, two };

inline double log_base_scale(LogBase base) {
    return base == LogBase::two ? 1.0 / std::log(2.0) : 1.0;
}

inline std::string log_base_name(LogBase base) {
    return base == LogBase::two ? "two" : "natural";
}

} // namespace qwalk
