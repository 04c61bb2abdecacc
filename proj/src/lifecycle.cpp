#include "cep/lifecycle.hpp"

#include <algorithm>

#include "cep/errors.hpp"

namespace cep {

std::string to_string(XcaPolicy p) {
    return p == XcaPolicy::Continue ? "CONTINUE" : "CEASE";
}

XcaPolicy xca_policy_from_string(const std::string& s) {
    if (s == "CONTINUE" || s == "continue") return XcaPolicy::Continue;
    if (s == "CEASE" || s == "cease") return XcaPolicy::Cease;
    throw ParseError("unknown carbon policy '" + s + "' (expected CONTINUE or CEASE)");
}

CivilDate event_date(const LifecycleEvent& ev) {
    return std::visit([](const auto& e) { return e.date; }, ev);
}

std::string event_name(const LifecycleEvent& ev) {
    if (std::holds_alternative<MaturityEvent>(ev)) return "MATURITY";
    if (std::holds_alternative<DefaultEvent>(ev)) return "DEFAULT";
    return "XCA_NONPAYMENT";
}

std::string event_policy_name(const LifecycleEvent& ev) {
    if (const auto* d = std::get_if<DefaultEvent>(&ev)) return to_string(d->policy);
    if (const auto* x = std::get_if<XcaNonPaymentEvent>(&ev); x && x->policy)
        return to_string(*x->policy);
    return "-";
}

LifecycleEvent event_from_names(const std::string& name, const std::string& policy,
                                const CivilDate& date) {
    if (name == "MATURITY") {
        if (policy != "-" && !policy.empty())
            throw ParseError("maturity events carry no policy, got '" + policy + "'");
        return MaturityEvent{date};
    }
    if (name == "DEFAULT") return DefaultEvent{date, xca_policy_from_string(policy)};
    if (name == "XCA_NONPAYMENT") {
        if (policy == "-" || policy.empty()) return XcaNonPaymentEvent{date, std::nullopt};
        return XcaNonPaymentEvent{date, xca_policy_from_string(policy)};
    }
    throw ParseError("unknown event '" + name +
                     "' (expected MATURITY, DEFAULT, or XCA_NONPAYMENT)");
}

namespace {

void check_within_life(const LinkedProduct& p, const FlowSet& flows, const CivilDate& date) {
    CivilDate lo = p.money_leg.effective_date;
    CivilDate hi = p.money_leg.maturity_date;
    for (const MoneyFlow& f : flows.money) hi = std::max(hi, f.date);
    for (const CarbonFlow& f : flows.carbon) hi = std::max(hi, f.date);
    if (date < lo || hi < date)
        throw DomainError("event date " + date.to_iso() + " outside product life [" +
                          lo.to_iso() + ", " + hi.to_iso() + "]");
}

void transition(LinkedProduct& p, LifecycleStatus to, const CivilDate& date,
                const std::string& description) {
    if (p.state.status != LifecycleStatus::Active)
        throw DomainError("product " + p.strategy_id + " is " + to_string(p.state.status) +
                          "; terminal events apply once");
    if (!p.state.log.empty() && date < p.state.log.back().date)
        throw DomainError("event date " + date.to_iso() + " precedes last logged event " +
                          p.state.log.back().date.to_iso());
    p.state.status = to;
    p.state.log.push_back(LifecycleEventRecord{date, description});
}

FlowSet apply_default(const FlowSet& flows, const CivilDate& date, XcaPolicy policy) {
    FlowSet out;
    for (const MoneyFlow& f : flows.money)
        if (!(date < f.date)) out.money.push_back(f);
    for (const CarbonFlow& f : flows.carbon)
        if (policy == XcaPolicy::Continue || !(date < f.date)) out.carbon.push_back(f);
    return out;
}

}  // namespace

EventResult apply_event(const LinkedProduct& p, const FlowSet& flows, const LifecycleEvent& ev,
                        XcaPolicy xca_default) {
    check_within_life(p, flows, event_date(ev));
    EventResult r{p, flows};

    if (const auto* mat = std::get_if<MaturityEvent>(&ev)) {
        transition(r.product, LifecycleStatus::Matured, mat->date, "maturity");
        for (CarbonFlow& f : r.flows.carbon)
            if (mat->date < f.date) std::swap(f.payer, f.receiver);
        return r;
    }

    CivilDate date = event_date(ev);
    XcaPolicy policy = xca_default;
    std::string description = "xca_non_payment";
    if (const auto* def = std::get_if<DefaultEvent>(&ev)) {
        policy = def->policy;
        description = "default";
    } else if (const auto* xca = std::get_if<XcaNonPaymentEvent>(&ev); xca && xca->policy) {
        policy = *xca->policy;
    }
    description += policy == XcaPolicy::Continue ? "(continue)" : "(cease)";
    transition(r.product, LifecycleStatus::Defaulted, date, description);
    r.flows = apply_default(flows, date, policy);
    return r;
}

FlowSet remaining_flows(const FlowSet& flows, const CivilDate& as_of) {
    FlowSet out;
    for (const MoneyFlow& f : flows.money)
        if (as_of < f.date) out.money.push_back(f);
    for (const CarbonFlow& f : flows.carbon)
        if (as_of < f.date) out.carbon.push_back(f);
    return out;
}

void PermitOption::validate() const {
    if (id.empty()) throw DomainError("permit id must be non-empty");
    if (volume.sign() <= 0) throw DomainError("permit volume must be positive");
    if (exercised.sign() < 0 || volume < exercised)
        throw DomainError("exercised amount must lie in [0, volume]");
    if (window_end < window_start)
        throw DomainError("permit window ends " + window_end.to_iso() + " before it starts " +
                          window_start.to_iso());
    if (grantor.role != PartyRole::Government)
        throw DomainError("permit grantor " + grantor.id + " must be a government party");
}

ExerciseResult exercise_permit(const PermitOption& perm, const CivilDate& date,
                               const Decimal& amount) {
    perm.validate();
    if (date < perm.window_start)
        throw DomainError("permit " + perm.id + " window not open until " +
                          perm.window_start.to_iso());
    if (perm.window_end < date)
        throw DomainError("permit " + perm.id + " window expired " + perm.window_end.to_iso());
    if (amount.sign() <= 0) throw DomainError("exercise amount must be positive");
    if (perm.remaining() < amount)
        throw DomainError("insufficient permit volume: " + perm.remaining().to_string() +
                          " remaining, " + amount.to_string() + " requested");

    ExerciseResult r;
    r.permit = perm;
    r.permit.exercised = perm.exercised + amount;
    r.flow.strategy_id = perm.id;
    r.flow.date = date;
    r.flow.amount_tco2e = -amount;
    r.flow.payer = perm.grantor.id;
    r.flow.receiver = perm.holder.id;
    r.flow.status = FlowStatus::Fixed;
    r.flow.kind = "permit";
    r.flow.year = date.year;
    return r;
}

}  // namespace cep
