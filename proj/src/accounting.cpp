#include "cep/accounting.hpp"

#include <cmath>

#include "cep/errors.hpp"

namespace cep {

void DecayParams::validate() const {
    if (forced) return;
    if (rate < kMinRate || rate > kMaxRate)
        throw DomainError("decay rate " + std::to_string(rate) +
                          " outside plausible band [" + std::to_string(kMinRate) + ", " +
                          std::to_string(kMaxRate) + "]; pass the force flag to override");
}

double decay_factor(const CivilDate& flow_date, const CivilDate& as_of,
                    const DecayParams& params) {
    params.validate();
    if (!(flow_date < as_of)) return 1.0;
    double years = static_cast<double>(as_of.serial() - flow_date.serial()) / 365.25;
    return std::exp(params.rate * years);
}

Decimal decayed_amount(const Decimal& amount, const CivilDate& flow_date, const CivilDate& as_of,
                       const DecayParams& params) {
    double factor = decay_factor(flow_date, as_of, params);
    if (factor == 1.0) return amount;
    return Decimal::from_double_rounded(amount.to_double() * factor);
}

CarbonSummary summarize(const std::string& label, const std::vector<CarbonFlow>& flows,
                        const CivilDate& as_of, const DecayParams& params) {
    params.validate();
    CarbonSummary s;
    s.label = label;
    s.as_of = as_of;
    for (const CarbonFlow& f : flows) {
        if (f.date < as_of)
            s.past_tco2e = s.past_tco2e + decayed_amount(f.amount_tco2e, f.date, as_of, params);
        else
            s.future_tco2e = s.future_tco2e + f.amount_tco2e;
    }
    s.total_tco2e = s.past_tco2e + s.future_tco2e;
    s.total_pico_degc = to_pico_degrees(s.total_tco2e);
    return s;
}

CarbonSummary net_portfolio(const std::vector<CarbonSummary>& summaries) {
    CarbonSummary net;
    net.label = "PORTFOLIO";
    if (summaries.empty()) return net;
    net.as_of = summaries.front().as_of;
    for (const CarbonSummary& s : summaries) {
        if (s.as_of != net.as_of)
            throw DomainError("summaries disagree on as_of: " + net.as_of.to_iso() + " vs " +
                              s.as_of.to_iso() + " (" + s.label + ")");
        net.past_tco2e = net.past_tco2e + s.past_tco2e;
        net.future_tco2e = net.future_tco2e + s.future_tco2e;
    }
    net.total_tco2e = net.past_tco2e + net.future_tco2e;
    net.total_pico_degc = to_pico_degrees(net.total_tco2e);
    return net;
}

CarbonFlow required_offset(const CarbonSummary& s) {
    CarbonFlow f;
    f.strategy_id = "OFFSET";
    f.date = s.as_of;
    f.amount_tco2e = -s.total_tco2e;
    f.payer = "OFFSET";
    f.receiver = "PORTFOLIO";
    f.status = FlowStatus::Fixed;
    f.kind = "offset";
    f.year = s.as_of.year;
    return f;
}

Decimal to_pico_degrees(const Decimal& tco2e) {
    static const Decimal kTonnesPerTwoDegrees = Decimal::parse("1.15");
    return tco2e.mul(Decimal::from_int(2)).div(kTonnesPerTwoDegrees);
}

}  // namespace cep
