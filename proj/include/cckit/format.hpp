#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace cckit {

// 17 significant digits: enough to round-trip any double bit-exactly.
inline std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Portable uniform draw in [0,1): the top 53 bits of the generator output.
// std::uniform_real_distribution is implementation-defined, which would
// break the byte-identical-output guarantee of seeded commands.
template <class Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class Rng>
double uniform_in(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

}  // namespace cckit
