#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cep {

/// Fixed-point decimal with 12 fractional digits on a 128-bit integer.
///
/// Flow amounts, notionals and prices are carried in this type so that file
/// round-trips, portfolio sums and offset cancellation are exact: addition is
/// plain integer addition and therefore associative, which makes totals
/// independent of summation order. Every multiplicative operation performs a
/// single round-half-away-from-zero at the 12th decimal place.
class Decimal {
public:
    using Raw = __int128;

    static constexpr int kFracDigits = 12;
    static constexpr std::int64_t kScale = 1'000'000'000'000LL;  // 10^12

    Decimal() : raw_(0) {}

    /// Parse "123", "-0.25", "100000000.000001". No exponents, at most 12
    /// fractional digits. Throws ParseError.
    static Decimal parse(std::string_view text);

    static Decimal from_int(std::int64_t v) { return Decimal(static_cast<Raw>(v) * kScale); }

    /// Nearest representable value; used where a flow amount is derived from
    /// a binary-float computation (decayed past contributions).
    static Decimal from_double_rounded(double x);

    static Decimal from_raw(Raw r) { return Decimal(r); }
    Raw raw() const { return raw_; }

    /// Canonical text: no exponent, trailing fractional zeros trimmed,
    /// no trailing dot. parse(to_string(d)) == d.
    std::string to_string() const;

    double to_double() const;

    bool is_zero() const { return raw_ == 0; }
    int sign() const { return raw_ < 0 ? -1 : raw_ > 0 ? 1 : 0; }
    Decimal abs() const { return Decimal(raw_ < 0 ? -raw_ : raw_); }

    Decimal operator-() const { return Decimal(-raw_); }
    Decimal operator+(const Decimal& o) const;
    Decimal operator-(const Decimal& o) const;
    Decimal& operator+=(const Decimal& o) { *this = *this + o; return *this; }
    Decimal& operator-=(const Decimal& o) { *this = *this - o; return *this; }

    /// Product rounded once at 12 decimal places.
    Decimal mul(const Decimal& o) const;

    /// Multiply by the exact rational num/den, rounded once. den != 0.
    Decimal mul_ratio(std::int64_t num, std::int64_t den) const;

    /// Quotient rounded once. o != 0.
    Decimal div(const Decimal& o) const;

    friend bool operator==(const Decimal& a, const Decimal& b) { return a.raw_ == b.raw_; }
    friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
        if (a.raw_ < b.raw_) return std::strong_ordering::less;
        if (a.raw_ > b.raw_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    explicit Decimal(Raw r) : raw_(r) {}

    Raw raw_;
};

}  // namespace cep
