#include "ccs/interval.hpp"

#include <cstdio>

namespace ccs {

std::string to_string(const Interval& a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", a.lo, a.hi);
    return buf;
}

std::string to_string(const Box& b) {
    std::string s = "{";
    for (int i = 0; i < b.dim(); ++i) {
        if (i) s += ", ";
        s += to_string(b[i]);
    }
    s += "}";
    return s;
}

} // namespace ccs
