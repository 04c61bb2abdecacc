#include "cep/dates.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "cep/errors.hpp"

namespace cep {

bool CivilDate::is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int CivilDate::days_in_month(int year, int month) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return lengths[month - 1];
}

bool CivilDate::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::int64_t CivilDate::serial() const {
    // days_from_civil, Howard Hinnant (public domain).
    const int y = year - (month <= 2);
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2) / 5 +
                         static_cast<unsigned>(day) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate CivilDate::from_serial(std::int64_t days) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int CivilDate::day_of_week() const {
    // 1970-01-01 was a Thursday (index 3 with Monday = 0).
    std::int64_t s = serial() + 3;
    return static_cast<int>(((s % 7) + 7) % 7);
}

CivilDate CivilDate::with_year(int y) const {
    int d = std::min(day, days_in_month(y, month));
    return CivilDate{y, month, d};
}

std::string CivilDate::to_iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

CivilDate CivilDate::from_iso(std::string_view text) {
    auto fail = [&] { throw ParseError("invalid ISO date: '" + std::string(text) + "'"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail();
    CivilDate d{(text[0] - '0') * 1000 + (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0'),
                (text[5] - '0') * 10 + (text[6] - '0'),
                (text[8] - '0') * 10 + (text[9] - '0')};
    if (!d.valid()) fail();
    return d;
}

bool Calendar::is_business_day(const CivilDate& d) const {
    if (weekend_.count(static_cast<Weekday>(d.day_of_week()))) return false;
    return holidays_.count(d) == 0;
}

Calendar Calendar::with_holidays_from_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw StoreError("cannot open holiday file: " + file.string());
    Calendar cal;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string token = line.substr(first, last - first + 1);
        try {
            cal.add_holiday(CivilDate::from_iso(token));
        } catch (const ParseError& e) {
            throw ParseError(file.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cal;
}

RollConvention roll_from_string(std::string_view s) {
    if (s == "modified_following") return RollConvention::ModifiedFollowing;
    if (s == "following") return RollConvention::Following;
    if (s == "preceding") return RollConvention::Preceding;
    if (s == "unadjusted") return RollConvention::Unadjusted;
    throw ParseError("unknown roll convention: '" + std::string(s) + "'");
}

std::string to_string(RollConvention r) {
    switch (r) {
        case RollConvention::ModifiedFollowing: return "modified_following";
        case RollConvention::Following: return "following";
        case RollConvention::Preceding: return "preceding";
        case RollConvention::Unadjusted: return "unadjusted";
    }
    return "unadjusted";
}

DayCount daycount_from_string(std::string_view s) {
    if (s == "act_360") return DayCount::Act360;
    throw ParseError("unknown day count: '" + std::string(s) + "'");
}

std::string to_string(DayCount) { return "act_360"; }

namespace {

CivilDate roll_following(CivilDate d, const Calendar& cal) {
    for (int i = 0; i < 366; ++i) {
        if (cal.is_business_day(d)) return d;
        d = d.next_day();
    }
    throw DomainError("no business day within a year after " + d.to_iso());
}

CivilDate roll_preceding(CivilDate d, const Calendar& cal) {
    for (int i = 0; i < 366; ++i) {
        if (cal.is_business_day(d)) return d;
        d = d.prev_day();
    }
    throw DomainError("no business day within a year before " + d.to_iso());
}

}  // namespace

CivilDate adjust_date(const CivilDate& d, RollConvention conv, const Calendar& cal) {
    if (!d.valid()) throw DomainError("invalid date: " + d.to_iso());
    switch (conv) {
        case RollConvention::Unadjusted:
            return d;
        case RollConvention::Following:
            return roll_following(d, cal);
        case RollConvention::Preceding:
            return roll_preceding(d, cal);
        case RollConvention::ModifiedFollowing: {
            CivilDate f = roll_following(d, cal);
            if (f.month != d.month || f.year != d.year) return roll_preceding(d, cal);
            return f;
        }
    }
    throw DomainError("unknown roll convention");
}

YearFraction year_fraction(const CivilDate& start, const CivilDate& end, DayCount dc) {
    if (start > end) throw DomainError("year_fraction: start " + start.to_iso() +
                                       " after end " + end.to_iso());
    switch (dc) {
        case DayCount::Act360:
            return YearFraction{end.serial() - start.serial(), 360};
    }
    throw DomainError("unknown day count");
}

std::vector<CivilDate> annual_schedule(int anchor_month, int anchor_day, int first_year,
                                       int last_year, RollConvention conv, const Calendar& cal) {
    if (anchor_month < 1 || anchor_month > 12 || anchor_day < 1 || anchor_day > 31)
        throw DomainError("annual_schedule: invalid anchor month/day");
    if (first_year > last_year)
        throw DomainError("annual_schedule: first_year after last_year");
    std::vector<CivilDate> out;
    out.reserve(static_cast<std::size_t>(last_year - first_year + 1));
    for (int y = first_year; y <= last_year; ++y) {
        int d = std::min(anchor_day, CivilDate::days_in_month(y, anchor_month));
        out.push_back(adjust_date(CivilDate{y, anchor_month, d}, conv, cal));
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        if (!(out[i - 1] < out[i]))
            throw DomainError("annual_schedule: dates not strictly increasing");
    return out;
}

}  // namespace cep
