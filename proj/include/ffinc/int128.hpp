#pragma once

#include <cstdint>
#include <string>

namespace ffinc {

// All exact counters are 128-bit so that p <= 2^20 and set sizes <= 4096
// leave a wide overflow margin on every moment accumulator.
using i128 = __int128;
using u128 = unsigned __int128;

inline std::string to_decimal(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

inline std::string to_decimal(i128 v) {
    if (v < 0) return "-" + to_decimal(static_cast<u128>(-v));
    return to_decimal(static_cast<u128>(v));
}

inline double to_double(u128 v) {
    return static_cast<double>(v);
}

inline double to_double(i128 v) {
    return static_cast<double>(v);
}

} // namespace ffinc
