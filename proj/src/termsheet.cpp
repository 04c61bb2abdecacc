#include "cep/termsheet.hpp"

#include <algorithm>
#include <cctype>

#include "cep/errors.hpp"

namespace cep {

PartyRole party_role_from_string(std::string_view s) {
    if (s == "funder") return PartyRole::Funder;
    if (s == "issuer") return PartyRole::Issuer;
    if (s == "government") return PartyRole::Government;
    if (s == "other") return PartyRole::Other;
    throw ParseError("unknown party role: '" + std::string(s) + "'");
}

std::string to_string(PartyRole r) {
    switch (r) {
        case PartyRole::Funder: return "funder";
        case PartyRole::Issuer: return "issuer";
        case PartyRole::Government: return "government";
        case PartyRole::Other: return "other";
    }
    return "other";
}

ProfileKind profile_kind_from_string(std::string_view s) {
    if (s == "single") return ProfileKind::SingleFlow;
    if (s == "constant") return ProfileKind::ConstantAnnual;
    if (s == "reverse_amortizing") return ProfileKind::ReverseAmortizing;
    throw ParseError("unknown profile kind: '" + std::string(s) + "'");
}

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::SingleFlow: return "single";
        case ProfileKind::ConstantAnnual: return "constant";
        case ProfileKind::ReverseAmortizing: return "reverse_amortizing";
    }
    return "constant";
}

FlowSign flow_sign_from_string(std::string_view s) {
    if (s == "emission") return FlowSign::Emission;
    if (s == "absorption") return FlowSign::Absorption;
    throw ParseError("unknown flow sign: '" + std::string(s) + "'");
}

std::string to_string(FlowSign s) {
    return s == FlowSign::Emission ? "emission" : "absorption";
}

LifecycleStatus lifecycle_status_from_string(std::string_view s) {
    if (s == "active") return LifecycleStatus::Active;
    if (s == "matured") return LifecycleStatus::Matured;
    if (s == "defaulted") return LifecycleStatus::Defaulted;
    throw ParseError("unknown lifecycle state: '" + std::string(s) + "'");
}

std::string to_string(LifecycleStatus s) {
    switch (s) {
        case LifecycleStatus::Active: return "active";
        case LifecycleStatus::Matured: return "matured";
        case LifecycleStatus::Defaulted: return "defaulted";
    }
    return "active";
}

const Party* LinkedProduct::find_party(const std::string& id) const {
    for (const auto& p : parties)
        if (p.id == id) return &p;
    return nullptr;
}

const Party* LinkedProduct::find_by_role(PartyRole role) const {
    for (const auto& p : parties)
        if (p.role == role) return &p;
    return nullptr;
}

bool has_errors(const std::vector<Finding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

namespace {

// "green" as a standalone word, case-insensitive. "evergreen" does not
// count; "dark-green" does.
bool contains_green_word(const std::string& text) {
    auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
    const std::string needle = "green";
    for (std::size_t i = 0; i + needle.size() <= text.size(); ++i) {
        bool match = true;
        for (std::size_t k = 0; k < needle.size(); ++k) {
            if (lower(text[i + k]) != needle[k]) { match = false; break; }
        }
        if (!match) continue;
        bool left_ok = i == 0 || !std::isalnum(static_cast<unsigned char>(text[i - 1]));
        std::size_t after = i + needle.size();
        bool right_ok = after >= text.size() || !std::isalnum(static_cast<unsigned char>(text[after]));
        if (left_ok && right_ok) return true;
    }
    return false;
}

bool safe_strategy_id(const std::string& id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    });
}

}  // namespace

std::vector<Finding> validate_product(const LinkedProduct& p) {
    std::vector<Finding> out;
    auto error = [&](std::string code, std::string msg) {
        out.push_back({Severity::Error, std::move(code), std::move(msg)});
    };
    auto warning = [&](std::string code, std::string msg) {
        out.push_back({Severity::Warning, std::move(code), std::move(msg)});
    };

    if (p.strategy_id.empty())
        error("strategy-id-empty", "strategy_id must be nonempty");
    else if (!safe_strategy_id(p.strategy_id))
        error("strategy-id-chars",
              "strategy_id may only contain letters, digits, '-', '_', '.': '" + p.strategy_id + "'");

    if (p.parties.empty()) error("parties-empty", "at least one party is required");
    for (std::size_t i = 0; i < p.parties.size(); ++i) {
        if (p.parties[i].id.empty()) error("party-id-empty", "party id must be nonempty");
        for (std::size_t j = i + 1; j < p.parties.size(); ++j)
            if (!p.parties[i].id.empty() && p.parties[i].id == p.parties[j].id)
                error("party-id-duplicate", "duplicate party id '" + p.parties[i].id + "'");
    }

    // The carbon schedule is the classification; a "Green" label is not.
    for (const auto& [key, value] : p.labels) {
        if (contains_green_word(key) || contains_green_word(value))
            error("green-label", "\"Green\" may not be used to classify a product; state the "
                                 "carbon schedule instead (label '" + key + "' = '" + value + "')");
    }

    const MoneyLeg& m = p.money_leg;
    if (m.currency.size() != 3)
        error("currency-code", "currency must be a 3-letter code, got '" + m.currency + "'");
    if (!(m.notional > Decimal()))
        error("notional-nonpositive", "money notional must be positive, got " + m.notional.to_string());
    if (!(m.effective_date < m.maturity_date))
        error("money-dates", "effective_date " + m.effective_date.to_iso() +
                                 " must precede maturity_date " + m.maturity_date.to_iso());
    if (m.fixed_rate < Decimal())
        error("rate-negative", "fixed_rate must be >= 0, got " + m.fixed_rate.to_string());
    if (m.coupon.first_year > m.coupon.last_year)
        error("coupon-years", "coupon first_year after last_year");
    if (m.coupon.month < 1 || m.coupon.month > 12 || m.coupon.day < 1 || m.coupon.day > 31)
        error("coupon-anchor", "coupon anchor month/day out of range");

    auto check_party_ref = [&](const std::string& id, const char* where) {
        if (id.empty())
            error("party-ref-empty", std::string(where) + " party id missing");
        else if (!p.find_party(id))
            error("party-ref-unknown", std::string(where) + " references unknown party '" + id + "'");
    };
    check_party_ref(m.payer, "money leg payer");
    check_party_ref(m.receiver, "money leg receiver");
    if (!m.payer.empty() && m.payer == m.receiver)
        error("party-ref-same", "money leg payer and receiver must differ");

    // Last coupon anchor can postdate redemption (the forest termsheet is
    // written that way); reproduce it but flag it.
    {
        CivilDate last_anchor = CivilDate{m.coupon.last_year, m.coupon.month,
                                          std::min(m.coupon.day, CivilDate::days_in_month(
                                                                     m.coupon.last_year, m.coupon.month))};
        if (m.coupon.first_year <= m.coupon.last_year && last_anchor > m.maturity_date)
            warning("coupon-after-maturity",
                    "last coupon anchor " + last_anchor.to_iso() + " falls after maturity " +
                        m.maturity_date.to_iso());
    }

    if (p.has_carbon_leg()) {
        const CarbonLeg& c = p.carbon_leg();
        if (c.unit_quantity < Decimal())
            error("unit-quantity-negative", "unit_quantity must be >= 0, got " + c.unit_quantity.to_string());
        else if (c.unit_quantity.is_zero())
            warning("unit-quantity-zero", "unit_quantity is zero; all carbon flows will be zero-amount");
        if (c.unit_kind.empty()) error("unit-kind-empty", "unit_kind must be nonempty");
        if (c.profiles.empty()) error("profiles-empty", "carbon leg needs at least one profile");
        check_party_ref(c.payer, "carbon leg payer");
        check_party_ref(c.receiver, "carbon leg receiver");
        if (!c.payer.empty() && c.payer == c.receiver)
            error("party-ref-same", "carbon leg payer and receiver must differ");

        // XCA flows run from the party changing the carbon to the party
        // providing the money.
        if (const Party* payer = p.find_party(c.payer); payer && payer->role != PartyRole::Issuer)
            error("carbon-direction", "carbon leg payer '" + c.payer + "' must have role issuer");
        if (const Party* recv = p.find_party(c.receiver); recv && recv->role != PartyRole::Funder)
            error("carbon-direction", "carbon leg receiver '" + c.receiver + "' must have role funder");

        for (std::size_t i = 0; i < c.profiles.size(); ++i) {
            const CarbonProfile& pr = c.profiles[i];
            if (pr.start_year < 1)
                error("profile-years", "profile year offsets start at 1, got " +
                                           std::to_string(pr.start_year));
            if (pr.start_year > pr.end_year)
                error("profile-years", "profile start_year after end_year");
            if (pr.kind == ProfileKind::SingleFlow && pr.start_year != pr.end_year)
                error("profile-years", "single profiles cover exactly one year, got " +
                                           std::to_string(pr.start_year) + "-" +
                                           std::to_string(pr.end_year));
            if (pr.amount_per_unit < Decimal())
                error("profile-amount", "amount_per_unit must be >= 0 (sign is carried separately)");
        }
        // Same-sign overlaps look like double counting; opposite signs (the
        // forest's planting vs. absorption in year 1) are complementary.
        for (std::size_t i = 0; i < c.profiles.size(); ++i) {
            for (std::size_t j = i + 1; j < c.profiles.size(); ++j) {
                const CarbonProfile& a = c.profiles[i];
                const CarbonProfile& b = c.profiles[j];
                if (a.sign != b.sign) continue;
                if (a.start_year <= b.end_year && b.start_year <= a.end_year)
                    warning("profile-overlap",
                            "profiles " + std::to_string(i) + " and " + std::to_string(j) +
                                " of equal sign overlap in years " +
                                std::to_string(std::max(a.start_year, b.start_year)) + "-" +
                                std::to_string(std::min(a.end_year, b.end_year)));
            }
        }
    }

    return out;
}

}  // namespace cep
