#include <doctest.h>

#include <algorithm>

#include "cep/accounting.hpp"
#include "cep/errors.hpp"
#include "cep/lifecycle.hpp"
#include "generators.hpp"

using namespace cep;

namespace {

const Calendar kWeekendCal{};

Decimal carbon_total(const std::vector<CarbonFlow>& flows) {
    Decimal t;
    for (const CarbonFlow& f : flows) t += f.amount_tco2e;
    return t;
}

}  // namespace

TEST_CASE("maturity swaps post-date carbon direction and nothing else") {
    LinkedProduct p = testgen::load_fixture("forest.json");
    FlowSet flows = generate_flows(p, kWeekendCal);
    CivilDate when{2032, 1, 3};

    EventResult r = apply_event(p, flows, MaturityEvent{when});
    CHECK(r.product.state.status == LifecycleStatus::Matured);
    REQUIRE(r.product.state.log.size() == 1);
    CHECK(r.product.state.log[0].description == "maturity");
    CHECK(r.product.state.log[0].date == when);

    CHECK(r.flows.money == flows.money);
    REQUIRE(r.flows.carbon.size() == flows.carbon.size());
    for (std::size_t i = 0; i < flows.carbon.size(); ++i) {
        const CarbonFlow& before = flows.carbon[i];
        const CarbonFlow& after = r.flows.carbon[i];
        CHECK(after.amount_tco2e == before.amount_tco2e);
        CHECK(after.date == before.date);
        if (when < before.date) {
            CHECK(after.payer == before.receiver);
            CHECK(after.receiver == before.payer);
        } else {
            CHECK(after.payer == before.payer);
            CHECK(after.receiver == before.receiver);
        }
    }
    // Physical carbon is conserved: redirecting flows changes no totals.
    CHECK(carbon_total(r.flows.carbon) == carbon_total(flows.carbon));
}

TEST_CASE("default cancels post-date money flows") {
    LinkedProduct p = testgen::load_fixture("coal.json");
    FlowSet flows = generate_flows(p, kWeekendCal);
    CivilDate when{2030, 6, 1};

    SUBCASE("carbon continues") {
        EventResult r = apply_event(p, flows, DefaultEvent{when, XcaPolicy::Continue});
        CHECK(r.product.state.status == LifecycleStatus::Defaulted);
        CHECK(r.product.state.log[0].description == "default(continue)");
        for (const MoneyFlow& f : r.flows.money) CHECK(f.date <= when);
        CHECK(r.flows.money.size() < flows.money.size());
        // The plant does not stop emitting because the bond defaulted.
        CHECK(r.flows.carbon == flows.carbon);
    }
    SUBCASE("carbon ceases") {
        EventResult r = apply_event(p, flows, DefaultEvent{when, XcaPolicy::Cease});
        CHECK(r.product.state.log[0].description == "default(cease)");
        for (const CarbonFlow& f : r.flows.carbon) CHECK(f.date <= when);
        // Coal emissions through mid-2030: 2022..2025 at 20000, 2026..2030
        // at 2400000.
        CHECK(carbon_total(r.flows.carbon).to_string() == "12080000");
    }
}

TEST_CASE("xca non-payment resolves its policy from the configured default") {
    LinkedProduct p = testgen::load_fixture("wind.json");
    FlowSet flows = generate_flows(p, kWeekendCal);
    CivilDate when{2026, 1, 3};

    EventResult keep = apply_event(p, flows, XcaNonPaymentEvent{when, std::nullopt},
                                   XcaPolicy::Continue);
    CHECK(keep.product.state.status == LifecycleStatus::Defaulted);
    CHECK(keep.product.state.log[0].description == "xca_non_payment(continue)");
    CHECK(keep.flows.carbon == flows.carbon);

    EventResult stop = apply_event(p, flows, XcaNonPaymentEvent{when, std::nullopt},
                                   XcaPolicy::Cease);
    CHECK(stop.product.state.log[0].description == "xca_non_payment(cease)");
    CHECK(stop.flows.carbon.size() < flows.carbon.size());
    for (const CarbonFlow& f : stop.flows.carbon) CHECK(f.date <= when);

    // An explicit policy on the event wins over the configured default.
    EventResult forced = apply_event(p, flows, XcaNonPaymentEvent{when, XcaPolicy::Cease},
                                     XcaPolicy::Continue);
    CHECK(forced.flows.carbon == stop.flows.carbon);
    CHECK(forced.product.state.log[0].description == "xca_non_payment(cease)");
}

TEST_CASE("events outside the product life are rejected") {
    LinkedProduct p = testgen::load_fixture("forest.json");
    FlowSet flows = generate_flows(p, kWeekendCal);
    CHECK_THROWS_WITH_AS(apply_event(p, flows, MaturityEvent{CivilDate{2021, 12, 31}}),
                         doctest::Contains("outside product life"), DomainError);
    // The carbon schedule runs to 2071, well past money maturity.
    CHECK_NOTHROW(apply_event(p, flows, DefaultEvent{CivilDate{2071, 1, 3}, XcaPolicy::Continue}));
    CHECK_THROWS_WITH_AS(
        apply_event(p, flows, DefaultEvent{CivilDate{2071, 1, 4}, XcaPolicy::Continue}),
        doctest::Contains("outside product life"), DomainError);
}

TEST_CASE("terminal events apply exactly once") {
    LinkedProduct p = testgen::load_fixture("forest.json");
    FlowSet flows = generate_flows(p, kWeekendCal);
    EventResult r = apply_event(p, flows, MaturityEvent{CivilDate{2032, 1, 3}});
    CHECK_THROWS_WITH_AS(
        apply_event(r.product, r.flows, DefaultEvent{CivilDate{2033, 1, 1}, XcaPolicy::Cease}),
        doctest::Contains("apply once"), DomainError);

    LinkedProduct defaulted = p;
    defaulted.state.status = LifecycleStatus::Defaulted;
    CHECK_THROWS_AS(apply_event(defaulted, flows, MaturityEvent{CivilDate{2032, 1, 3}}),
                    DomainError);
}

TEST_CASE("remaining_flows keeps strictly later flows") {
    LinkedProduct p = testgen::load_fixture("forest.json");
    FlowSet flows = generate_flows(p, kWeekendCal);

    // After money maturity only the carbon schedule keeps running.
    FlowSet after = remaining_flows(flows, CivilDate{2033, 1, 1});
    CHECK(after.money.empty());
    CHECK_FALSE(after.carbon.empty());
    for (const CarbonFlow& f : after.carbon) CHECK(CivilDate{2033, 1, 1} < f.date);

    // Far past everything.
    FlowSet none = remaining_flows(flows, CivilDate{2071, 1, 3});
    CHECK(none.money.empty());
    CHECK(none.carbon.empty());

    // Strictness: a flow dated exactly at as_of drops out.
    FlowSet at = remaining_flows(flows, CivilDate{2022, 1, 3});
    for (const MoneyFlow& f : at.money) CHECK(CivilDate{2022, 1, 3} < f.date);
    CHECK(at.money.size() == flows.money.size() - 1);

    // Oracle: filtering matches a brute-force date scan.
    CivilDate mid{2040, 6, 1};
    FlowSet got = remaining_flows(flows, mid);
    std::size_t expect = 0;
    for (const CarbonFlow& f : flows.carbon)
        if (mid < f.date) ++expect;
    CHECK(got.carbon.size() == expect);
}

TEST_CASE("default then offset keeps the ledger consistent") {
    // Conservation under lifecycle: the offset computed after an event zeroes
    // the post-event book, not the original one.
    DecayParams params;
    LinkedProduct p = testgen::load_fixture("coal.json");
    FlowSet flows = generate_flows(p, kWeekendCal);
    CivilDate when{2030, 6, 1};
    EventResult r = apply_event(p, flows, DefaultEvent{when, XcaPolicy::Cease});

    CivilDate as_of{2031, 1, 1};
    CarbonSummary s = summarize(p.strategy_id, r.flows.carbon, as_of, params);
    std::vector<CarbonFlow> with_offset = r.flows.carbon;
    with_offset.push_back(required_offset(s));
    CHECK(summarize(p.strategy_id, with_offset, as_of, params).total_tco2e.is_zero());
}

TEST_CASE("permit exercise splits volume and emits negative carbon") {
    PermitOption perm;
    perm.id = "PERMIT-GOV-1";
    perm.holder = Party{"A", "Party A", PartyRole::Funder};
    perm.grantor = Party{"G", "Gov", PartyRole::Government};
    perm.volume = Decimal::parse("1000");
    perm.window_start = CivilDate{2025, 1, 1};
    perm.window_end = CivilDate{2030, 12, 31};

    ExerciseResult first = exercise_permit(perm, CivilDate{2026, 5, 1}, Decimal::parse("400"));
    CHECK(first.permit.exercised.to_string() == "400");
    CHECK(first.permit.remaining().to_string() == "600");
    CHECK(first.flow.amount_tco2e.to_string() == "-400");
    CHECK(first.flow.payer == "G");
    CHECK(first.flow.receiver == "A");
    CHECK(first.flow.kind == "permit");
    CHECK(first.flow.strategy_id == "PERMIT-GOV-1");
    CHECK(first.flow.date == CivilDate{2026, 5, 1});

    // The window is inclusive at both ends.
    ExerciseResult last = exercise_permit(first.permit, CivilDate{2030, 12, 31},
                                          Decimal::parse("600"));
    CHECK(last.permit.remaining().is_zero());

    CHECK_THROWS_WITH_AS(
        exercise_permit(last.permit, CivilDate{2030, 12, 31}, Decimal::parse("0.01")),
        doctest::Contains("insufficient"), DomainError);
    CHECK_THROWS_WITH_AS(exercise_permit(perm, CivilDate{2024, 12, 31}, Decimal::parse("1")),
                         doctest::Contains("not open"), DomainError);
    CHECK_THROWS_WITH_AS(exercise_permit(perm, CivilDate{2031, 1, 1}, Decimal::parse("1")),
                         doctest::Contains("expired"), DomainError);
    CHECK_THROWS_AS(exercise_permit(perm, CivilDate{2026, 1, 1}, Decimal()), DomainError);
    CHECK_THROWS_AS(exercise_permit(perm, CivilDate{2026, 1, 1}, Decimal::parse("-5")),
                    DomainError);

    PermitOption corporate = perm;
    corporate.grantor.role = PartyRole::Other;
    CHECK_THROWS_WITH_AS(exercise_permit(corporate, CivilDate{2026, 1, 1}, Decimal::parse("1")),
                         doctest::Contains("government"), DomainError);

    PermitOption inverted = perm;
    std::swap(inverted.window_start, inverted.window_end);
    CHECK_THROWS_AS(exercise_permit(inverted, CivilDate{2026, 1, 1}, Decimal::parse("1")),
                    DomainError);
}

TEST_CASE("permit exercised volume never exceeds the grant") {
    PermitOption perm;
    perm.id = "PERMIT-GOV-2";
    perm.holder = Party{"A", "Party A", PartyRole::Funder};
    perm.grantor = Party{"G", "Gov", PartyRole::Government};
    perm.volume = Decimal::parse("777.25");
    perm.window_start = CivilDate{2025, 1, 1};
    perm.window_end = CivilDate{2035, 1, 1};

    std::mt19937 rng(7401);
    Decimal sum;
    for (int i = 0; i < 200; ++i) {
        Decimal amount = testgen::random_amount_2dp(rng, 1, 2000);
        CivilDate date{2025 + static_cast<int>(rng() % 10), 1 + static_cast<int>(rng() % 12),
                       1 + static_cast<int>(rng() % 28)};
        try {
            ExerciseResult r = exercise_permit(perm, date, amount);
            perm = r.permit;
            sum += amount;
            CHECK(r.flow.amount_tco2e == -amount);
        } catch (const DomainError&) {
            // over-volume attempts must leave the permit untouched
        }
        CHECK(perm.exercised == sum);
        CHECK(perm.exercised <= perm.volume);
    }
}

TEST_CASE("event wire names round-trip") {
    CivilDate d{2030, 1, 1};
    for (const auto& [name, policy] :
         std::vector<std::pair<std::string, std::string>>{{"MATURITY", "-"},
                                                          {"DEFAULT", "CONTINUE"},
                                                          {"DEFAULT", "CEASE"},
                                                          {"XCA_NONPAYMENT", "-"},
                                                          {"XCA_NONPAYMENT", "CEASE"}}) {
        LifecycleEvent ev = event_from_names(name, policy, d);
        CHECK(event_name(ev) == name);
        CHECK(event_policy_name(ev) == policy);
        CHECK(event_date(ev) == d);
    }
    CHECK_THROWS_AS(event_from_names("EXPIRY", "-", d), ParseError);
    CHECK_THROWS_AS(event_from_names("DEFAULT", "MAYBE", d), ParseError);
    CHECK_THROWS_AS(event_from_names("MATURITY", "CEASE", d), ParseError);
}
