#pragma once

#include <cstdio>
#include <string>

namespace spindirac {

// Fixed 17 significant digit rendering.
inline std::string fmt17(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace spindirac
