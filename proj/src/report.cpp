#include "bhlab/report.hpp"

#include <cstdio>

namespace bhlab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace bhlab
