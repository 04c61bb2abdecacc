#include "cep/decimal.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "cep/errors.hpp"

namespace cep {

namespace {

// Round-half-away-from-zero integer division.
Decimal::Raw div_rounded(Decimal::Raw n, Decimal::Raw d) {
    if (d == 0) throw DomainError("decimal: division by zero");
    const bool neg = (n < 0) != (d < 0);
    unsigned __int128 un = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
    unsigned __int128 ud = d < 0 ? -static_cast<unsigned __int128>(d) : static_cast<unsigned __int128>(d);
    unsigned __int128 q = un / ud;
    if (2 * (un % ud) >= ud) ++q;
    if (q > static_cast<unsigned __int128>(std::numeric_limits<Decimal::Raw>::max()))
        throw OverflowError("decimal: quotient out of range");
    Decimal::Raw sq = static_cast<Decimal::Raw>(q);
    return neg ? -sq : sq;
}

Decimal::Raw checked_mul(Decimal::Raw a, Decimal::Raw b) {
    Decimal::Raw out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("decimal: product out of range");
    return out;
}

Decimal::Raw checked_add(Decimal::Raw a, Decimal::Raw b) {
    Decimal::Raw out;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("decimal: sum out of range");
    return out;
}

}  // namespace

Decimal Decimal::parse(std::string_view text) {
    const std::string_view orig = text;
    auto fail = [&] { throw ParseError("invalid decimal: '" + std::string(orig) + "'"); };

    bool neg = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        neg = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) fail();

    Raw value = 0;
    std::size_t i = 0;
    std::size_t int_digits = 0;
    for (; i < text.size() && text[i] != '.'; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
        // Bound the magnitude so downstream products have headroom in 128 bits.
        if (++int_digits > 24) throw OverflowError("decimal out of range: '" + std::string(orig) + "'");
        value = value * 10 + (text[i] - '0');
    }
    if (int_digits == 0) fail();

    int frac_digits = 0;
    if (i < text.size()) {  // at the '.'
        ++i;
        if (i == text.size()) fail();
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
            if (++frac_digits > kFracDigits)
                throw ParseError("decimal has more than 12 fractional digits: '" + std::string(orig) + "'");
            value = value * 10 + (text[i] - '0');
        }
    }
    for (int k = frac_digits; k < kFracDigits; ++k) value *= 10;
    return Decimal(neg ? -value : value);
}

Decimal Decimal::from_double_rounded(double x) {
    if (!std::isfinite(x)) throw DomainError("decimal: non-finite value");
    double scaled = x * static_cast<double>(kScale);
    if (std::abs(scaled) >= 1.6e38) throw OverflowError("decimal: value out of range");
    // Beyond 2^53 a double carries no fractional part, so the cast is exact.
    if (std::abs(scaled) < 9.0e18) return Decimal(static_cast<Raw>(std::llrint(scaled)));
    return Decimal(static_cast<Raw>(scaled));
}

std::string Decimal::to_string() const {
    unsigned __int128 mag = raw_ < 0 ? -static_cast<unsigned __int128>(raw_)
                                     : static_cast<unsigned __int128>(raw_);
    unsigned __int128 ip = mag / kScale;
    std::uint64_t fp = static_cast<std::uint64_t>(mag % kScale);

    std::string int_part;
    if (ip == 0) {
        int_part = "0";
    } else {
        while (ip > 0) {
            int_part.push_back(static_cast<char>('0' + static_cast<int>(ip % 10)));
            ip /= 10;
        }
        std::reverse(int_part.begin(), int_part.end());
    }

    std::string out;
    if (raw_ < 0) out.push_back('-');
    out += int_part;
    if (fp != 0) {
        char frac[kFracDigits];
        for (int k = kFracDigits - 1; k >= 0; --k) {
            frac[k] = static_cast<char>('0' + fp % 10);
            fp /= 10;
        }
        int len = kFracDigits;
        while (len > 0 && frac[len - 1] == '0') --len;
        out.push_back('.');
        out.append(frac, frac + len);
    }
    return out;
}

double Decimal::to_double() const {
    return static_cast<double>(raw_) / static_cast<double>(kScale);
}

Decimal Decimal::operator+(const Decimal& o) const { return Decimal(checked_add(raw_, o.raw_)); }
Decimal Decimal::operator-(const Decimal& o) const { return Decimal(checked_add(raw_, -o.raw_)); }

Decimal Decimal::mul(const Decimal& o) const {
    return Decimal(div_rounded(checked_mul(raw_, o.raw_), static_cast<Raw>(kScale)));
}

Decimal Decimal::mul_ratio(std::int64_t num, std::int64_t den) const {
    if (den == 0) throw DomainError("decimal: zero denominator");
    return Decimal(div_rounded(checked_mul(raw_, static_cast<Raw>(num)), static_cast<Raw>(den)));
}

Decimal Decimal::div(const Decimal& o) const {
    if (o.raw_ == 0) throw DomainError("decimal: division by zero");
    return Decimal(div_rounded(checked_mul(raw_, static_cast<Raw>(kScale)), o.raw_));
}

}  // namespace cep
