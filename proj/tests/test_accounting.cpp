#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cep/accounting.hpp"
#include "cep/errors.hpp"
#include "cep/flows.hpp"
#include "generators.hpp"

using namespace cep;

namespace {

const Calendar kWeekendCal{};

CarbonFlow flow_on(const CivilDate& d, const std::string& amount, std::string id = "T") {
    CarbonFlow f;
    f.strategy_id = std::move(id);
    f.date = d;
    f.amount_tco2e = Decimal::parse(amount);
    f.payer = "B";
    f.receiver = "A";
    f.kind = "constant";
    f.year = d.year;
    return f;
}

}  // namespace

TEST_CASE("decay factor boundaries") {
    DecayParams params;
    CivilDate as_of{2050, 6, 15};
    // Same-day and future flows contribute at face value.
    CHECK(decay_factor(as_of, as_of, params) == 1.0);
    CHECK(decay_factor(CivilDate{2070, 1, 1}, as_of, params) == 1.0);
    CHECK(decay_factor(as_of.next_day(), as_of, params) == 1.0);
    // Past flows decay strictly below one.
    double past = decay_factor(as_of.prev_day(), as_of, params);
    CHECK(past < 1.0);
    CHECK(past > 0.99);
}

TEST_CASE("a century of decay at the default rate") {
    // 1990-01-01 to 2090-01-01 is 36525 days, exactly 100 years on the
    // 365.25-day convention, so the factor is exp(-0.20) on the nose.
    DecayParams params;
    CivilDate flow{1990, 1, 1};
    CivilDate as_of{2090, 1, 1};
    CHECK(as_of.serial() - flow.serial() == 36525);
    CHECK(decay_factor(flow, as_of, params) == doctest::Approx(std::exp(-0.20)).epsilon(1e-12));
}

TEST_CASE("decay is monotone in elapsed time") {
    DecayParams params;
    CivilDate as_of{2080, 1, 1};
    double prev = 1.0;
    for (int back = 1; back <= 2000; back += 37) {
        double f = decay_factor(CivilDate::from_serial(as_of.serial() - back), as_of, params);
        CHECK(f < prev);
        CHECK(f > 0.0);
        prev = f;
    }
}

TEST_CASE("rate band is enforced unless forced") {
    CivilDate d{2020, 1, 1}, as_of{2030, 1, 1};
    CHECK_THROWS_AS(decay_factor(d, as_of, DecayParams{-0.01, false}), DomainError);
    CHECK_THROWS_AS(decay_factor(d, as_of, DecayParams{0.0, false}), DomainError);
    CHECK_THROWS_AS(decay_factor(d, as_of, DecayParams{0.001, false}), DomainError);
    CHECK_NOTHROW(decay_factor(d, as_of, DecayParams{-0.0035, false}));
    CHECK_NOTHROW(decay_factor(d, as_of, DecayParams{-0.0002, false}));
    CHECK(decay_factor(d, as_of, DecayParams{-0.01, true}) == doctest::Approx(std::exp(-0.1)));
    // Forced zero rate degenerates into plain summation.
    CHECK(decay_factor(d, as_of, DecayParams{0.0, true}) == 1.0);
}

TEST_CASE("decayed amounts round once to fixed point") {
    DecayParams params;
    CivilDate as_of{2090, 1, 1};
    Decimal amount = Decimal::parse("1000");
    Decimal d = decayed_amount(amount, CivilDate{1990, 1, 1}, as_of, params);
    CHECK(d == Decimal::from_double_rounded(1000.0 * std::exp(-0.20)));
    // Future flows pass through untouched, raw-exact.
    CHECK(decayed_amount(amount, as_of, as_of, params) == amount);
}

TEST_CASE("summarize splits past and future") {
    DecayParams params;
    CivilDate as_of{2030, 1, 1};
    std::vector<CarbonFlow> flows = {
        flow_on(CivilDate{2020, 1, 1}, "100"),
        flow_on(CivilDate{2030, 1, 1}, "40"),    // on as_of: future bucket
        flow_on(CivilDate{2041, 6, 1}, "-15.5"),
    };
    CarbonSummary s = summarize("T", flows, as_of, params);
    CHECK(s.label == "T");
    CHECK(s.as_of == as_of);
    CHECK(s.future_tco2e.to_string() == "24.5");
    Decimal expected_past =
        Decimal::from_double_rounded(100.0 * decay_factor(flows[0].date, as_of, params));
    CHECK(s.past_tco2e == expected_past);
    CHECK(s.total_tco2e == s.past_tco2e + s.future_tco2e);
    CHECK(s.total_pico_degc == to_pico_degrees(s.total_tco2e));

    CarbonSummary empty = summarize("E", {}, as_of, params);
    CHECK(empty.total_tco2e.is_zero());
    CHECK(empty.total_pico_degc.is_zero());
}

TEST_CASE("summaries are permutation invariant") {
    DecayParams params;
    CivilDate as_of{2045, 3, 1};
    std::mt19937 rng(7301);
    std::vector<CarbonFlow> flows;
    for (int i = 0; i < 120; ++i) {
        CivilDate d = CivilDate::from_serial(CivilDate{2020, 1, 1}.serial() + (i * 211) % 18000);
        flows.push_back(flow_on(d, testgen::random_amount_2dp(rng, -900'000, 900'000).to_string()));
    }
    CarbonSummary base = summarize("P", flows, as_of, params);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(flows.begin(), flows.end(), rng);
        CarbonSummary again = summarize("P", flows, as_of, params);
        CHECK(again.past_tco2e == base.past_tco2e);
        CHECK(again.future_tco2e == base.future_tco2e);
        CHECK(again.total_tco2e == base.total_tco2e);
    }
}

TEST_CASE("net_portfolio equals summarizing the concatenation") {
    DecayParams params;
    CivilDate as_of{2040, 1, 1};
    std::mt19937 rng(7302);
    std::vector<CarbonSummary> summaries;
    std::vector<CarbonFlow> all;
    for (int p = 0; p < 20; ++p) {
        std::vector<CarbonFlow> flows;
        int n = 1 + static_cast<int>(rng() % 30);
        for (int i = 0; i < n; ++i) {
            CivilDate d =
                CivilDate::from_serial(CivilDate{2015, 1, 1}.serial() + rng() % 15000);
            flows.push_back(
                flow_on(d, testgen::random_amount_2dp(rng, -500'000, 500'000).to_string(),
                        "P" + std::to_string(p)));
        }
        summaries.push_back(summarize("P" + std::to_string(p), flows, as_of, params));
        all.insert(all.end(), flows.begin(), flows.end());
    }
    CarbonSummary net = net_portfolio(summaries);
    CarbonSummary direct = summarize("PORTFOLIO", all, as_of, params);
    CHECK(net.label == "PORTFOLIO");
    CHECK(net.past_tco2e == direct.past_tco2e);
    CHECK(net.future_tco2e == direct.future_tco2e);
    CHECK(net.total_tco2e == direct.total_tco2e);
    CHECK(net.total_pico_degc == direct.total_pico_degc);
}

TEST_CASE("net_portfolio edge cases") {
    DecayParams params;
    CarbonSummary one = summarize("X", {flow_on(CivilDate{2030, 1, 1}, "12.25")},
                                  CivilDate{2029, 1, 1}, params);
    CarbonSummary net = net_portfolio({one});
    CHECK(net.total_tco2e == one.total_tco2e);
    CHECK(net.label == "PORTFOLIO");

    CHECK(net_portfolio({}).total_tco2e.is_zero());

    CarbonSummary other = one;
    other.as_of = CivilDate{2031, 1, 1};
    CHECK_THROWS_WITH_AS(net_portfolio({one, other}), doctest::Contains("as_of"), DomainError);
}

TEST_CASE("mirrored positions net to exactly zero") {
    DecayParams params;
    CivilDate as_of{2035, 7, 1};
    std::mt19937 rng(7303);
    std::vector<CarbonSummary> summaries;
    for (int p = 0; p < 50; ++p) {
        std::vector<CarbonFlow> flows, mirror;
        int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) {
            CivilDate d =
                CivilDate::from_serial(CivilDate{2010, 1, 1}.serial() + rng() % 20000);
            Decimal a = testgen::random_amount_2dp(rng, -300'000, 300'000);
            CarbonFlow f = flow_on(d, a.to_string(), "L" + std::to_string(p));
            flows.push_back(f);
            f.amount_tco2e = -f.amount_tco2e;
            mirror.push_back(f);
        }
        summaries.push_back(summarize("L" + std::to_string(p), flows, as_of, params));
        summaries.push_back(summarize("S" + std::to_string(p), mirror, as_of, params));
    }
    CarbonSummary net = net_portfolio(summaries);
    // Exact: decay rounds each past flow once, identically on both sides,
    // and fixed-point addition cancels sign-mirrored raws.
    CHECK(net.past_tco2e.is_zero());
    CHECK(net.future_tco2e.is_zero());
    CHECK(net.total_tco2e.is_zero());
}

TEST_CASE("required_offset zeroes the re-summarized book") {
    DecayParams params;
    CivilDate as_of{2033, 1, 1};
    LinkedProduct forest = testgen::load_fixture("forest.json");
    std::vector<CarbonFlow> flows = generate_carbon_flows(forest, kWeekendCal);
    CarbonSummary s = summarize("FOREST-2022-G", flows, as_of, params);

    CarbonFlow offset = required_offset(s);
    CHECK(offset.date == as_of);
    CHECK(offset.amount_tco2e == -s.total_tco2e);
    CHECK(offset.strategy_id == "OFFSET");
    CHECK(offset.payer == "OFFSET");
    CHECK(offset.receiver == "PORTFOLIO");
    CHECK(offset.kind == "offset");
    CHECK(offset.status == FlowStatus::Fixed);

    std::vector<CarbonFlow> with_offset = flows;
    with_offset.push_back(offset);
    CarbonSummary zeroed = summarize("FOREST-2022-G", with_offset, as_of, params);
    CHECK(zeroed.total_tco2e.is_zero());
    CHECK(zeroed.total_pico_degc.is_zero());

    CarbonSummary flat;
    flat.as_of = as_of;
    CHECK(required_offset(flat).amount_tco2e.is_zero());
}

TEST_CASE("warming equivalence anchors") {
    // 1.15e12 tonnes warm by 2 degrees; the engine reports pico-degrees.
    CHECK(to_pico_degrees(Decimal::parse("1150000000000")).to_string() == "2000000000000");
    CHECK(to_pico_degrees(Decimal::from_int(1)).to_string() == "1.739130434783");
    CHECK(to_pico_degrees(Decimal()).is_zero());
    // Sign-preserving and linear on clean doublings.
    CHECK(to_pico_degrees(Decimal::parse("-1150000000000")).to_string() == "-2000000000000");
    CHECK(to_pico_degrees(Decimal::parse("2300000000000")).to_string() == "4000000000000");
    CHECK(to_pico_degrees(Decimal::parse("0.575")).to_string() == "1");
}

TEST_CASE("forced zero rate reduces to plain totals") {
    DecayParams zero{0.0, true};
    CivilDate as_of{2050, 1, 1};
    std::vector<CarbonFlow> flows = {
        flow_on(CivilDate{2000, 1, 1}, "10.5"),
        flow_on(CivilDate{2049, 12, 31}, "4.25"),
        flow_on(CivilDate{2060, 1, 1}, "-3"),
    };
    CarbonSummary s = summarize("Z", flows, as_of, zero);
    CHECK(s.past_tco2e.to_string() == "14.75");
    CHECK(s.future_tco2e.to_string() == "-3");
    CHECK(s.total_tco2e.to_string() == "11.75");
}
