#ifndef SCALEKIT_WIDE_COUNT_HPP_
#define SCALEKIT_WIDE_COUNT_HPP_

#include <cmath>
#include <cstdint>
#include <string>

#include "error.hpp"

namespace scalekit {

// Exact unsigned 128-bit operation counter. FLOP totals for the largest
// plans reach ~1e24 and products in tests reach ~1e30; doubles lose
// integer exactness above 2^53, so totals are carried in 128 bits and
// every overflow (wrap past 2^128) throws.
class WideCount {
  public:
    constexpr WideCount() : v_(0) {}
    constexpr WideCount(std::uint64_t v) : v_(v) {}

    static WideCount from_parts(std::uint64_t hi, std::uint64_t lo) {
        WideCount w;
        w.v_ = (static_cast<unsigned __int128>(hi) << 64) | lo;
        return w;
    }

    // Exact conversion of a non-negative integral double (e.g. a table
    // value like 2.3e22 that is already a whole number).
    static WideCount from_double(double d) {
        if (!std::isfinite(d) || d < 0.0)
            fail(ErrorCode::invalid_argument, "count must be a finite non-negative value");
        if (d >= 0x1p128)
            fail(ErrorCode::overflow, "count exceeds 128 bits");
        double whole = std::floor(d);
        unsigned __int128 acc = 0;
        // Peel 32 bits at a time; each chunk is exact in double.
        double scale = 0x1p96;
        for (int i = 0; i < 4; ++i) {
            double chunk = std::floor(whole / scale);
            acc = (acc << 32) | static_cast<std::uint64_t>(chunk);
            whole -= chunk * scale;
            scale /= 0x1p32;
        }
        WideCount w;
        w.v_ = acc;
        return w;
    }

    std::uint64_t hi() const { return static_cast<std::uint64_t>(v_ >> 64); }
    std::uint64_t lo() const { return static_cast<std::uint64_t>(v_); }

    WideCount operator+(WideCount o) const {
        WideCount r;
        r.v_ = v_ + o.v_;
        if (r.v_ < v_) fail(ErrorCode::overflow, "128-bit add overflow");
        return r;
    }

    WideCount operator-(WideCount o) const {
        if (o.v_ > v_) fail(ErrorCode::overflow, "128-bit subtract underflow");
        WideCount r;
        r.v_ = v_ - o.v_;
        return r;
    }

    WideCount operator*(WideCount o) const {
        WideCount r;
        if (v_ != 0 && o.v_ != 0) {
            r.v_ = v_ * o.v_;
            if (r.v_ / v_ != o.v_) fail(ErrorCode::overflow, "128-bit multiply overflow");
        }
        return r;
    }

    WideCount& operator+=(WideCount o) { return *this = *this + o; }

    bool operator==(const WideCount&) const = default;
    auto operator<=>(const WideCount&) const = default;

    double to_double() const {
        return std::ldexp(static_cast<double>(hi()), 64) + static_cast<double>(lo());
    }

    std::string to_string() const {
        if (v_ == 0) return "0";
        unsigned __int128 x = v_;
        std::string out;
        while (x != 0) {
            out.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
            x /= 10;
        }
        return {out.rbegin(), out.rend()};
    }

  private:
    unsigned __int128 v_;
};

} // namespace scalekit

#endif
