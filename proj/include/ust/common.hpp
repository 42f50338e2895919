#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ust {

// Thrown when an algorithmic contract that is supposed to hold by
// construction is violated at runtime. These checks stay on in release
// builds; hitting one means a bug, not bad input.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& msg) : std::logic_error(msg) {}
};

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw ContractViolation(msg);
}

// Largest t >= 0 with t*t*t <= x.
inline long long icbrt_floor(long long x) {
    if (x <= 0) return 0;
    auto cube_leq = [x](long long t) {
        if (t > 2097151) return false;  // t^3 would overflow int64
        return t * t * t <= x;
    };
    long long t = static_cast<long long>(cbrtl(static_cast<long double>(x)));
    while (!cube_leq(t)) --t;
    while (cube_leq(t + 1)) ++t;
    return t;
}

inline int ilog2_floor(long long x) {
    int r = -1;
    while (x > 0) { x >>= 1; ++r; }
    return r;
}

}  // namespace ust
