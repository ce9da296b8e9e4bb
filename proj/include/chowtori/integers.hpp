#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace chowtori {

// All arithmetic is exact; intermediate growth in normal-form
// computations must never wrap.
using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Floor division (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline bool is_zero_vec(const Vec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

inline Vec& add_scaled(Vec& dst, const Vec& src, const Int& c) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
    return dst;
}

inline Vec scaled(const Vec& v, const Int& c) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

} // namespace chowtori
