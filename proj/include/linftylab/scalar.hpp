#pragma once

// Exact scalars for the whole library: Gaussian rationals re + im*i with
// arbitrary-precision rational components. No floating point anywhere.

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace linftylab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

class Scalar {
public:
    Scalar() = default;
    Scalar(int v) : re_(v) {}                                      // NOLINT(google-explicit-constructor)
    Scalar(long long v) : re_(v) {}                                // NOLINT(google-explicit-constructor)
    Scalar(Rational re) : re_(std::move(re)) {}                    // NOLINT(google-explicit-constructor)
    Scalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }
    static Scalar fraction(long long num, long long den) { return Scalar(Rational(num, den)); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    // re^2 + im^2, a nonnegative rational.
    Rational norm2() const { return re_ * re_ + im_ * im_; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
    friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        Rational n = b.norm2();
        if (n == 0) throw std::domain_error("Scalar: division by zero");
        return {(a.re_ * b.re_ + a.im_ * b.im_) / n, (a.im_ * b.re_ - a.re_ * b.im_) / n};
    }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
    Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // Lexicographic order; used only for deterministic containers, no analytic meaning.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

private:
    Rational re_{0};
    Rational im_{0};
};

inline Scalar sign_pow(long long exponent) { return (exponent % 2 == 0) ? Scalar(1) : Scalar(-1); }

inline Scalar conj(const Scalar& s) { return s.conj(); }

// --- canonical wire format: "0", "3/2", "-1/3*i", "1/2+1/2*i", "2-1*i" ---

inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline std::string to_string(const Scalar& s) {
    if (s.is_zero()) return "0";
    if (s.im() == 0) return to_string(s.re());
    std::string im_part = to_string(s.im() < 0 ? Rational(-s.im()) : s.im()) + "*i";
    if (s.re() == 0) return (s.im() < 0 ? "-" : "") + im_part;
    return to_string(s.re()) + (s.im() < 0 ? "-" : "+") + im_part;
}

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << to_string(s); }

namespace detail {

inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
}

} // namespace detail

// Parses the canonical format above (and tolerates a bare "i" factor written as "1*i").
inline Scalar parse_scalar(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty scalar literal");
    // Split at the last top-level +/- that is not the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < text.size(); ++k) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != '/' && text[k - 1] != '+' && text[k - 1] != '-')
            split = k;
    }
    auto parse_part = [](const std::string& part, Rational& re, Rational& im) {
        if (part.size() >= 2 && part.substr(part.size() - 2) == "*i")
            im += detail::parse_rational(part.substr(0, part.size() - 2));
        else if (part == "i")
            im += 1;
        else if (part == "-i")
            im -= 1;
        else
            re += detail::parse_rational(part);
    };
    Rational re(0), im(0);
    if (split == std::string::npos) {
        parse_part(text, re, im);
    } else {
        parse_part(text.substr(0, split), re, im);
        std::string rest = text.substr(split);
        if (rest[0] == '+') rest = rest.substr(1);
        parse_part(rest, re, im);
    }
    return {re, im};
}

} // namespace linftylab

namespace Eigen {

template <>
struct NumTraits<linftylab::Scalar> {
    using Real = linftylab::Scalar;
    using NonInteger = linftylab::Scalar;
    using Nested = linftylab::Scalar;
    using Literal = int;
    enum {
        IsComplex = 0, // conjugation is handled explicitly by the library
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 32,
        MulCost = 64,
    };
    static linftylab::Scalar epsilon() { return {}; }
    static linftylab::Scalar dummy_precision() { return {}; }
    static int digits10() { return 0; }
};

} // namespace Eigen
