#pragma once

#include <optional>
#include <string>
#include <variant>

#include "cep/flows.hpp"

namespace cep {

/// What happens to carbon flows when the money leg defaults: they stay with
/// the buyer, or they stop. Never inferred; always stated or configured.
enum class XcaPolicy { Continue, Cease };

std::string to_string(XcaPolicy p);
XcaPolicy xca_policy_from_string(const std::string& s);

struct MaturityEvent {
    CivilDate date;
};

struct DefaultEvent {
    CivilDate date;
    XcaPolicy policy;
};

/// Missed XCA delivery. Handled as a default. The carbon policy is usually
/// left unset and resolved from engine configuration when applied; journals
/// record the resolved policy so replay never depends on configuration.
struct XcaNonPaymentEvent {
    CivilDate date;
    std::optional<XcaPolicy> policy;
};

using LifecycleEvent = std::variant<MaturityEvent, DefaultEvent, XcaNonPaymentEvent>;

CivilDate event_date(const LifecycleEvent& ev);

/// Wire names used in journals and event files: MATURITY, DEFAULT,
/// XCA_NONPAYMENT with policy CONTINUE, CEASE, or "-".
std::string event_name(const LifecycleEvent& ev);
std::string event_policy_name(const LifecycleEvent& ev);
LifecycleEvent event_from_names(const std::string& name, const std::string& policy,
                                const CivilDate& date);

struct EventResult {
    LinkedProduct product;
    FlowSet flows;
};

/// Apply a terminal event to an active product.
///
/// Maturity: carbon flows strictly after the date swap payer and receiver
/// (their impact reverts to the issuer); amounts and dates are untouched.
/// Default: money flows strictly after the date are cancelled; carbon flows
/// strictly after it are kept (Continue) or cancelled (Cease). XCA
/// non-payment is a default with the supplied fallback policy.
EventResult apply_event(const LinkedProduct& p, const FlowSet& flows, const LifecycleEvent& ev,
                        XcaPolicy xca_default = XcaPolicy::Continue);

/// Flows strictly after as_of. After maturity the money leg is exhausted and
/// only the carbon schedule keeps running.
FlowSet remaining_flows(const FlowSet& flows, const CivilDate& as_of);

/// A government-granted right to offset up to `volume` tonnes within a
/// closed date window, exercisable in parts.
struct PermitOption {
    std::string id;
    Party holder;
    Party grantor;
    Decimal volume;
    CivilDate window_start;
    CivilDate window_end;
    Decimal exercised;

    Decimal remaining() const { return volume - exercised; }
    void validate() const;
};

struct ExerciseResult {
    PermitOption permit;
    CarbonFlow flow;
};

/// Use part of a permit. Emits a CarbonFlow of -amount on the exercise date
/// from grantor to holder. The window is inclusive on both ends.
ExerciseResult exercise_permit(const PermitOption& perm, const CivilDate& date,
                               const Decimal& amount);

}  // namespace cep
