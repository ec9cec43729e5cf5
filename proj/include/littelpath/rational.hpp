#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace littelpath {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact rational vector in the ambient euclidean space of a root system.
using Vec = std::vector<Rat>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Exact conversion of an integer-valued rational; throws otherwise.
inline long to_long(const Rat& r) {
    if (denominator(r) != 1) throw std::domain_error("expected an integer, got " +
                                                     numerator(r).str() + "/" + denominator(r).str());
    return numerator(r).convert_to<long>();
}

/// Parses "p/q" or "p"; also accepts a leading '-'. Throws on malformed input
/// or zero denominator.
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational '" + s + "'");
    }
}

/// "p/q" with the "/q" part omitted for integers.
inline std::string format_rat(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline Vec zero_vec(std::size_t dim) { return Vec(dim, Rat(0)); }

inline bool is_zero(const Vec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

inline Vec operator+(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec operator-(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline Vec operator*(const Rat& c, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Vec& operator+=(Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

inline Rat dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    Rat r(0);
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline Rat norm_sq(const Vec& a) { return dot(a, a); }

inline std::string format_vec(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_rat(v[i]);
    }
    return s + ")";
}

/// Nearest integer, ties rounded down.
inline Int rat_round(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    // floor(r + 1/2) rounds half up; we want ties toward the smaller value.
    Int twice = 2 * num + den;  // numerator of 2r+1 over den
    Int q = twice / (2 * den);
    if (twice < 0 && twice % (2 * den) != 0) --q;  // floor for negatives
    Rat rounded_up(q);
    if (rounded_up - r == Rat(1, 2)) --q;  // exact tie: prefer smaller
    return q;
}

}  // namespace littelpath
