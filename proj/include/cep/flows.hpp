#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cep/termsheet.hpp"

namespace cep {

enum class MoneyFlowKind { NotionalOut, NotionalBack, Coupon };

std::string to_string(MoneyFlowKind k);

struct MoneyFlow {
    std::string strategy_id;
    CivilDate date;
    std::string currency;
    Decimal amount;  // > 0; direction is payer -> receiver
    std::string payer;
    std::string receiver;
    MoneyFlowKind kind = MoneyFlowKind::Coupon;

    friend bool operator==(const MoneyFlow&, const MoneyFlow&) = default;
};

enum class FlowStatus { Fixed, Estimated, FixedFromFixing };

std::string to_string(FlowStatus s);

struct CarbonFlow {
    std::string strategy_id;
    CivilDate date;
    Decimal amount_tco2e;  // signed: + emission, - absorption
    std::string payer;     // the carbon-changing party
    std::string receiver;  // the party providing the money
    FlowStatus status = FlowStatus::Fixed;
    std::string kind;      // profile kind, or "shorthand" / "offset" / "permit"
    int source_profile = -1;  // index into the leg's profiles, -1 if none
    int year = 0;             // calendar year of the flow

    friend bool operator==(const CarbonFlow&, const CarbonFlow&) = default;
};

struct FlowSet {
    std::vector<MoneyFlow> money;
    std::vector<CarbonFlow> carbon;

    friend bool operator==(const FlowSet&, const FlowSet&) = default;
};

/// Observed XCA amounts keyed by (strategy_id, calendar year). At most one
/// entry per key.
class FixingTable {
public:
    void add(const std::string& strategy_id, int year, const Decimal& observed);
    const Decimal* find(const std::string& strategy_id, int year) const;
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    /// CSV with header `strategy_id,year,observed_tco2e`.
    static FixingTable from_csv(const std::string& text);
    std::string to_csv() const;

    const std::map<std::pair<std::string, int>, Decimal>& entries() const { return entries_; }

private:
    std::map<std::pair<std::string, int>, Decimal> entries_;
};

/// Notional out on the adjusted effective date, notional back on the
/// adjusted maturity, one coupon per anchor year. Accrual runs between
/// unadjusted anchors (first period from the effective date); payment lands
/// on the adjusted anchor. Zero-amount coupons are suppressed.
std::vector<MoneyFlow> generate_money_flows(const LinkedProduct& p, const Calendar& cal);

/// Expand the carbon leg profiles into dated flows. Year k of a profile is
/// dated on the (base_year + k - 1) anniversary of the money leg's effective
/// date, adjusted by the money leg's roll convention. Requires a full carbon
/// leg; shorthand products have no generated carbon schedule.
std::vector<CarbonFlow> generate_carbon_flows(const LinkedProduct& p, const Calendar& cal);

/// Carbon flows for either representation: leg expansion, or the shorthand
/// summary as a single fixed flow dated at its as_of.
std::vector<CarbonFlow> carbon_flows_of(const LinkedProduct& p, const Calendar& cal);

FlowSet generate_flows(const LinkedProduct& p, const Calendar& cal);

/// Replace estimated amounts with observed fixings. A fixing aimed at a
/// non-floating (Fixed) flow is a conflict. Dates and parties never change.
std::vector<CarbonFlow> apply_fixings(const std::vector<CarbonFlow>& flows,
                                      const FixingTable& fixings);

/// Per-year attribution of company emissions at a financing fraction in
/// [0,1]: equity/debt share, or an ESG bond's project-financing pro rata.
/// Each year maps to one summary flow dated at that year's end.
std::vector<ShorthandCarbon> attribute_shorthand(
    const std::vector<std::pair<int, Decimal>>& company_annual_emissions, const Decimal& fraction);

}  // namespace cep
