#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cep {

/// Whole civil day in the proleptic Gregorian calendar. Termsheet flows are
/// dated to the day; there is no time-of-day anywhere in the engine.
struct CivilDate {
    int year = 1970;
    int month = 1;  // 1-12
    int day = 1;    // 1-31

    static bool is_leap(int year);
    static int days_in_month(int year, int month);

    bool valid() const;

    /// Days since 1970-01-01 (Hinnant's civil-days algorithm).
    std::int64_t serial() const;
    static CivilDate from_serial(std::int64_t days);

    /// 0 = Monday ... 6 = Sunday.
    int day_of_week() const;

    CivilDate next_day() const { return from_serial(serial() + 1); }
    CivilDate prev_day() const { return from_serial(serial() - 1); }

    /// Same month/day in another year, day clamped (Feb 29 -> Feb 28).
    CivilDate with_year(int y) const;

    std::string to_iso() const;
    static CivilDate from_iso(std::string_view text);  // throws ParseError

    friend bool operator==(const CivilDate&, const CivilDate&) = default;
    friend std::strong_ordering operator<=>(const CivilDate&, const CivilDate&) = default;
};

enum class Weekday { Monday = 0, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

/// Business-day calendar: weekend mask plus an explicit holiday list.
/// Defaults to Saturday/Sunday weekends and no holidays, which keeps the
/// golden fixtures deterministic without external data.
class Calendar {
public:
    Calendar() : weekend_{Weekday::Saturday, Weekday::Sunday} {}
    Calendar(std::set<Weekday> weekend, std::set<CivilDate> holidays)
        : weekend_(std::move(weekend)), holidays_(std::move(holidays)) {}

    bool is_business_day(const CivilDate& d) const;
    void add_holiday(const CivilDate& d) { holidays_.insert(d); }

    /// Holiday file: one ISO-8601 date per line, '#' starts a comment,
    /// blank lines ignored. Throws ParseError / StoreError.
    static Calendar with_holidays_from_file(const std::filesystem::path& file);

    const std::set<CivilDate>& holidays() const { return holidays_; }

private:
    std::set<Weekday> weekend_;
    std::set<CivilDate> holidays_;
};

enum class RollConvention { ModifiedFollowing, Following, Preceding, Unadjusted };

enum class DayCount { Act360 };

RollConvention roll_from_string(std::string_view s);       // throws ParseError
std::string to_string(RollConvention r);
DayCount daycount_from_string(std::string_view s);         // throws ParseError
std::string to_string(DayCount dc);

/// Business-day adjustment. ModifiedFollowing never leaves the month of d.
CivilDate adjust_date(const CivilDate& d, RollConvention conv, const Calendar& cal);

/// Exact accrual fraction as a rational: Act/360 is days/360 with no binary
/// rounding at this stage.
struct YearFraction {
    std::int64_t days = 0;
    std::int64_t basis = 360;

    double value() const { return static_cast<double>(days) / static_cast<double>(basis); }
    friend bool operator==(const YearFraction&, const YearFraction&) = default;
};

YearFraction year_fraction(const CivilDate& start, const CivilDate& end, DayCount dc);

/// One adjusted date per year from first_year to last_year inclusive, on the
/// given month/day anchor. Strictly increasing by construction.
std::vector<CivilDate> annual_schedule(int anchor_month, int anchor_day, int first_year,
                                       int last_year, RollConvention conv, const Calendar& cal);

}  // namespace cep
