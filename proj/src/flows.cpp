#include "cep/flows.hpp"

#include <algorithm>
#include <sstream>

#include "cep/errors.hpp"

namespace cep {

std::string to_string(MoneyFlowKind k) {
    switch (k) {
        case MoneyFlowKind::NotionalOut: return "notional_out";
        case MoneyFlowKind::NotionalBack: return "notional_back";
        case MoneyFlowKind::Coupon: return "coupon";
    }
    return "coupon";
}

std::string to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::Fixed: return "fixed";
        case FlowStatus::Estimated: return "estimated";
        case FlowStatus::FixedFromFixing: return "fixed_from_fixing";
    }
    return "fixed";
}

void FixingTable::add(const std::string& strategy_id, int year, const Decimal& observed) {
    auto key = std::make_pair(strategy_id, year);
    if (entries_.count(key))
        throw DomainError("duplicate fixing for " + strategy_id + " year " + std::to_string(year));
    entries_.emplace(std::move(key), observed);
}

const Decimal* FixingTable::find(const std::string& strategy_id, int year) const {
    auto it = entries_.find(std::make_pair(strategy_id, year));
    return it == entries_.end() ? nullptr : &it->second;
}

FixingTable FixingTable::from_csv(const std::string& text) {
    FixingTable t;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "strategy_id,year,observed_tco2e")
                throw ParseError("fixings: bad header at line " + std::to_string(lineno));
            saw_header = true;
            continue;
        }
        auto c1 = line.find(',');
        auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ParseError("fixings: expected 3 fields at line " + std::to_string(lineno));
        std::string id = line.substr(0, c1);
        std::string year_s = line.substr(c1 + 1, c2 - c1 - 1);
        std::string amount_s = line.substr(c2 + 1);
        if (id.empty()) throw ParseError("fixings: empty strategy_id at line " + std::to_string(lineno));
        int year = 0;
        try {
            std::size_t pos = 0;
            year = std::stoi(year_s, &pos);
            if (pos != year_s.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("fixings: bad year '" + year_s + "' at line " + std::to_string(lineno));
        }
        t.add(id, year, Decimal::parse(amount_s));
    }
    if (!saw_header && lineno > 0) throw ParseError("fixings: missing header");
    return t;
}

std::string FixingTable::to_csv() const {
    std::string out = "strategy_id,year,observed_tco2e\n";
    for (const auto& [key, amount] : entries_)
        out += key.first + "," + std::to_string(key.second) + "," + amount.to_string() + "\n";
    return out;
}

std::vector<MoneyFlow> generate_money_flows(const LinkedProduct& p, const Calendar& cal) {
    const MoneyLeg& m = p.money_leg;
    std::vector<MoneyFlow> out;

    out.push_back({p.strategy_id, adjust_date(m.effective_date, m.roll, cal), m.currency,
                   m.notional, m.payer, m.receiver, MoneyFlowKind::NotionalOut});

    std::vector<CivilDate> anchors;
    for (int y = m.coupon.first_year; y <= m.coupon.last_year; ++y) {
        int day = std::min(m.coupon.day, CivilDate::days_in_month(y, m.coupon.month));
        anchors.push_back(CivilDate{y, m.coupon.month, day});
    }
    CivilDate accrual_start = m.effective_date;
    for (const CivilDate& anchor : anchors) {
        if (!(accrual_start < anchor)) continue;
        YearFraction yf = year_fraction(accrual_start, anchor, m.daycount);
        Decimal amount = m.notional.mul(m.fixed_rate).mul_ratio(yf.days, yf.basis);
        accrual_start = anchor;
        if (amount.is_zero()) continue;
        out.push_back({p.strategy_id, adjust_date(anchor, m.roll, cal), m.currency, amount,
                       m.receiver, m.payer, MoneyFlowKind::Coupon});
    }

    out.push_back({p.strategy_id, adjust_date(m.maturity_date, m.roll, cal), m.currency,
                   m.notional, m.receiver, m.payer, MoneyFlowKind::NotionalBack});

    std::stable_sort(out.begin(), out.end(),
                     [](const MoneyFlow& a, const MoneyFlow& b) { return a.date < b.date; });
    return out;
}

namespace {

Decimal profile_amount(const CarbonProfile& prof, const Decimal& unit_quantity, int k) {
    Decimal full = unit_quantity.mul(prof.amount_per_unit);
    Decimal magnitude = full;
    if (prof.kind == ProfileKind::ReverseAmortizing) {
        int span = prof.span();
        magnitude = span == 1 ? full : full.mul_ratio(k - prof.start_year, span - 1);
    }
    return prof.sign == FlowSign::Absorption ? -magnitude : magnitude;
}

}  // namespace

std::vector<CarbonFlow> generate_carbon_flows(const LinkedProduct& p, const Calendar& cal) {
    if (!p.has_carbon_leg())
        throw DomainError("product " + p.strategy_id + " has no carbon leg to expand");
    const CarbonLeg& leg = p.carbon_leg();
    const MoneyLeg& m = p.money_leg;

    std::vector<CarbonFlow> out;
    for (std::size_t i = 0; i < leg.profiles.size(); ++i) {
        const CarbonProfile& prof = leg.profiles[i];
        for (int k = prof.start_year; k <= prof.end_year; ++k) {
            int year = leg.base_year + k - 1;
            int day = std::min(m.effective_date.day,
                               CivilDate::days_in_month(year, m.effective_date.month));
            CivilDate date = adjust_date(CivilDate{year, m.effective_date.month, day}, m.roll, cal);
            CarbonFlow f;
            f.strategy_id = p.strategy_id;
            f.date = date;
            f.amount_tco2e = profile_amount(prof, leg.unit_quantity, k);
            f.payer = leg.payer;
            f.receiver = leg.receiver;
            f.status = leg.floating ? FlowStatus::Estimated : FlowStatus::Fixed;
            f.kind = to_string(prof.kind);
            f.source_profile = static_cast<int>(i);
            f.year = year;
            out.push_back(std::move(f));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const CarbonFlow& a, const CarbonFlow& b) { return a.date < b.date; });
    return out;
}

std::vector<CarbonFlow> carbon_flows_of(const LinkedProduct& p, const Calendar& cal) {
    if (p.has_carbon_leg()) return generate_carbon_flows(p, cal);

    const ShorthandCarbon& sh = p.shorthand();
    CarbonFlow f;
    f.strategy_id = p.strategy_id;
    f.date = sh.as_of;
    f.amount_tco2e = sh.amount_tco2e;
    const Party* issuer = p.find_by_role(PartyRole::Issuer);
    const Party* funder = p.find_by_role(PartyRole::Funder);
    f.payer = issuer ? issuer->id : p.money_leg.receiver;
    f.receiver = funder ? funder->id : p.money_leg.payer;
    f.status = FlowStatus::Fixed;
    f.kind = "shorthand";
    f.year = sh.as_of.year;
    return {f};
}

FlowSet generate_flows(const LinkedProduct& p, const Calendar& cal) {
    return FlowSet{generate_money_flows(p, cal), carbon_flows_of(p, cal)};
}

std::vector<CarbonFlow> apply_fixings(const std::vector<CarbonFlow>& flows,
                                      const FixingTable& fixings) {
    std::vector<CarbonFlow> out = flows;
    for (CarbonFlow& f : out) {
        const Decimal* observed = fixings.find(f.strategy_id, f.year);
        if (!observed) continue;
        if (f.status == FlowStatus::Fixed)
            throw DomainError("fixing conflicts with fixed flow: " + f.strategy_id + " year " +
                              std::to_string(f.year));
        f.amount_tco2e = *observed;
        f.status = FlowStatus::FixedFromFixing;
    }
    return out;
}

std::vector<ShorthandCarbon> attribute_shorthand(
    const std::vector<std::pair<int, Decimal>>& company_annual_emissions,
    const Decimal& fraction) {
    if (fraction.sign() < 0 || Decimal::from_int(1) < fraction)
        throw DomainError("attribution fraction must lie in [0,1], got " + fraction.to_string());
    std::vector<ShorthandCarbon> out;
    out.reserve(company_annual_emissions.size());
    for (const auto& [year, emitted] : company_annual_emissions)
        out.push_back(ShorthandCarbon{emitted.mul(fraction), CivilDate{year, 12, 31}});
    return out;
}

}  // namespace cep
