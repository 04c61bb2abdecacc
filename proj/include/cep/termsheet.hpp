#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cep/dates.hpp"
#include "cep/decimal.hpp"

namespace cep {

enum class PartyRole { Funder, Issuer, Government, Other };

PartyRole party_role_from_string(std::string_view s);  // throws ParseError
std::string to_string(PartyRole r);

struct Party {
    std::string id;    // nonempty, unique within a product
    std::string name;
    PartyRole role = PartyRole::Other;

    friend bool operator==(const Party&, const Party&) = default;
};

/// Annual coupon anchor: month/day plus the first and last payment years.
struct CouponTerms {
    int month = 12;
    int day = 29;
    int first_year = 0;
    int last_year = 0;

    friend bool operator==(const CouponTerms&, const CouponTerms&) = default;
};

/// The CCY side of a linked product. `payer` funds the notional at the
/// effective date; `receiver` is the issuer, who pays coupons and redemption.
struct MoneyLeg {
    std::string currency;  // 3-letter code
    Decimal notional;
    CivilDate effective_date;
    CivilDate maturity_date;
    Decimal fixed_rate;  // decimal fraction, e.g. 0.02
    CouponTerms coupon;
    RollConvention roll = RollConvention::ModifiedFollowing;
    DayCount daycount = DayCount::Act360;
    std::string payer;     // party id
    std::string receiver;  // party id

    friend bool operator==(const MoneyLeg&, const MoneyLeg&) = default;
};

enum class ProfileKind { SingleFlow, ConstantAnnual, ReverseAmortizing };
enum class FlowSign { Emission, Absorption };

ProfileKind profile_kind_from_string(std::string_view s);  // throws ParseError
std::string to_string(ProfileKind k);
FlowSign flow_sign_from_string(std::string_view s);        // throws ParseError
std::string to_string(FlowSign s);

/// Parametric XCA flow generator over whole-year offsets (year 1 = base
/// year). `amount_per_unit` is an absolute per-unit quantity in tCO2e; the
/// sign is carried separately. For ReverseAmortizing it is the terminal
/// (last-year) per-unit amount of the linear ramp from zero.
struct CarbonProfile {
    ProfileKind kind = ProfileKind::ConstantAnnual;
    FlowSign sign = FlowSign::Emission;
    int start_year = 1;  // offset >= 1
    int end_year = 1;    // offset >= start_year
    Decimal amount_per_unit;

    int span() const { return end_year - start_year + 1; }

    friend bool operator==(const CarbonProfile&, const CarbonProfile&) = default;
};

/// The XCA side: a physical notional (hectares, megawatts, ...) and the
/// profiles that scale with it. `payer` is the carbon-changing party, the
/// issuer; `receiver` is the funder.
struct CarbonLeg {
    Decimal unit_quantity;
    std::string unit_kind;  // e.g. "hectare:tree-type-G", "MW:offshore-wind-K"
    int base_year = 0;      // calendar year of profile year 1
    bool floating = false;
    std::string payer;
    std::string receiver;
    std::vector<CarbonProfile> profiles;

    friend bool operator==(const CarbonLeg&, const CarbonLeg&) = default;
};

/// Shorthand representation: one summary carbon flow instead of a schedule.
struct ShorthandCarbon {
    Decimal amount_tco2e;  // signed, + emission / - absorption
    CivilDate as_of;

    friend bool operator==(const ShorthandCarbon&, const ShorthandCarbon&) = default;
};

enum class LifecycleStatus { Active, Matured, Defaulted };

LifecycleStatus lifecycle_status_from_string(std::string_view s);  // throws ParseError
std::string to_string(LifecycleStatus s);

struct LifecycleEventRecord {
    CivilDate date;
    std::string description;

    friend bool operator==(const LifecycleEventRecord&, const LifecycleEventRecord&) = default;
};

/// Status plus the ordered event log. The log is position-store data rebuilt
/// from the journal; product documents persist the status only.
struct LifecycleState {
    LifecycleStatus status = LifecycleStatus::Active;
    std::vector<LifecycleEventRecord> log;

    friend bool operator==(const LifecycleState&, const LifecycleState&) = default;
};

/// One strategy identifier joining a money termsheet with its carbon
/// representation (full leg or shorthand summary flow).
struct LinkedProduct {
    std::string strategy_id;
    std::vector<Party> parties;
    MoneyLeg money_leg;
    std::variant<CarbonLeg, ShorthandCarbon> carbon;
    std::map<std::string, std::string> labels;
    LifecycleState state;
    /// Unknown top-level document fields, preserved verbatim (compact JSON).
    std::map<std::string, std::string> extra_fields;

    bool has_carbon_leg() const { return std::holds_alternative<CarbonLeg>(carbon); }
    const CarbonLeg& carbon_leg() const { return std::get<CarbonLeg>(carbon); }
    const ShorthandCarbon& shorthand() const { return std::get<ShorthandCarbon>(carbon); }

    const Party* find_party(const std::string& id) const;
    const Party* find_by_role(PartyRole role) const;

    friend bool operator==(const LinkedProduct&, const LinkedProduct&) = default;
};

enum class Severity { Error, Warning };

struct Finding {
    Severity severity = Severity::Error;
    std::string code;
    std::string message;

    friend bool operator==(const Finding&, const Finding&) = default;
};

/// Pure structural and policy validation. Empty result means clean; the
/// "no Green label" rule (code "green-label") is an error, schedule quirks
/// like a coupon past redemption are warnings.
std::vector<Finding> validate_product(const LinkedProduct& p);

bool has_errors(const std::vector<Finding>& findings);

}  // namespace cep
