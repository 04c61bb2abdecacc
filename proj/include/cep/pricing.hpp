#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cep/flows.hpp"

namespace cep {

/// A named scenario mapping calendar years to a carbon price per tCO2e.
struct CarbonPriceCurve {
    std::string scenario_name;
    std::string currency;
    std::vector<std::pair<int, Decimal>> points;  // years strictly increasing

    void validate() const;
};

/// CSV with `# scenario: <name>` and `# currency: <code>` comment headers
/// followed by `year,price` rows.
CarbonPriceCurve load_curve(const std::string& text);
CarbonPriceCurve load_curve_file(const std::string& path);
std::string save_curve(const CarbonPriceCurve& curve);

/// Linear interpolation between bracketing knots, flat beyond the endpoints.
/// Matches every knot exactly.
Decimal price_at(const CarbonPriceCurve& curve, int year);

struct MonetizedLine {
    std::string strategy_id;
    CivilDate date;
    Decimal amount_tco2e;
    Decimal price;
    Decimal cost;  // amount * price; absorption flows yield a credit

    friend bool operator==(const MonetizedLine&, const MonetizedLine&) = default;
};

struct MonetizedReport {
    std::string scenario_name;
    std::string currency;
    std::vector<MonetizedLine> lines;
    std::vector<std::pair<std::string, Decimal>> product_totals;  // sorted by id
    Decimal total;
};

/// Cost out each carbon flow at the scenario price for its year. Lines keep
/// the input order; totals are exact sums.
MonetizedReport monetize(const std::vector<CarbonFlow>& flows, const CarbonPriceCurve& curve);

}  // namespace cep
