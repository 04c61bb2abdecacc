#pragma once

#include <string>
#include <vector>

#include "cep/flows.hpp"

namespace cep {

/// Continuous decay rate per year applied to past carbon flows. The default
/// reflects atmospheric removal of roughly half an emitted tonne over three
/// centuries. Rates outside the plausible band must be forced explicitly.
struct DecayParams {
    static constexpr double kDefaultRate = -0.0020;
    static constexpr double kMinRate = -0.0035;
    static constexpr double kMaxRate = -0.0002;

    double rate = kDefaultRate;
    bool forced = false;

    void validate() const;
};

/// 1.0 exactly when flow_date >= as_of, otherwise exp(rate * y) where y is
/// the elapsed (as_of - flow_date) in 365.25-day years. Future amounts never
/// shrink; past ones decay toward zero.
double decay_factor(const CivilDate& flow_date, const CivilDate& as_of, const DecayParams& params);

/// The flow's contribution to a position as of a date: the exact amount for
/// current and future flows, the decayed value for past ones.
Decimal decayed_amount(const Decimal& amount, const CivilDate& flow_date, const CivilDate& as_of,
                       const DecayParams& params);

struct CarbonSummary {
    std::string label;
    CivilDate as_of;
    Decimal past_tco2e;    // decayed contributions of flows before as_of
    Decimal future_tco2e;  // exact amounts of flows on or after as_of
    Decimal total_tco2e;   // past + future
    Decimal total_pico_degc;

    friend bool operator==(const CarbonSummary&, const CarbonSummary&) = default;
};

/// Sum flows into past/future/total plus the warming equivalent. Flows are
/// accumulated in the given order; with exact decimals the totals do not
/// depend on it.
CarbonSummary summarize(const std::string& label, const std::vector<CarbonFlow>& flows,
                        const CivilDate& as_of, const DecayParams& params);

/// Component-wise sum of per-product summaries sharing one as_of, labeled
/// PORTFOLIO. Equals re-summarizing the concatenated flow lists.
CarbonSummary net_portfolio(const std::vector<CarbonSummary>& summaries);

/// The single fixed flow, dated at the summary's as_of, that drives the
/// re-summarized total to exactly zero. Exact because a flow on as_of
/// contributes at face value.
CarbonFlow required_offset(const CarbonSummary& s);

/// Warming equivalent of a carbon amount: 2 degrees per 1.15e12 tCO2e, i.e.
/// tonnes * 2 / 1.15 in pico-degrees Celsius.
Decimal to_pico_degrees(const Decimal& tco2e);

}  // namespace cep
