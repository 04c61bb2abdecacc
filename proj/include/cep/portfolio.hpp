#pragma once

#include <string>
#include <vector>

#include "cep/accounting.hpp"
#include "cep/termsheet.hpp"

namespace cep {

struct ProductFlows {
    std::string strategy_id;
    FlowSet flows;

    friend bool operator==(const ProductFlows&, const ProductFlows&) = default;
};

/// Expand every product's legs into dated flows, one entry per product in
/// input order. The plain functions parallelize across products when built
/// with OpenMP; the _serial variants are the single-threaded reference. Both
/// produce bit-identical results: each product is an independent unit of
/// work and results land in pre-assigned slots.
std::vector<ProductFlows> expand_portfolio_serial(const std::vector<LinkedProduct>& products,
                                                  const Calendar& cal);
std::vector<ProductFlows> expand_portfolio(const std::vector<LinkedProduct>& products,
                                           const Calendar& cal);

/// One summary per product, labeled by strategy_id, in input order.
std::vector<CarbonSummary> summarize_portfolio_serial(const std::vector<ProductFlows>& expanded,
                                                      const CivilDate& as_of,
                                                      const DecayParams& params);
std::vector<CarbonSummary> summarize_portfolio(const std::vector<ProductFlows>& expanded,
                                               const CivilDate& as_of, const DecayParams& params);

/// All carbon flows in canonical order: ascending (date, strategy_id),
/// stable within ties.
std::vector<CarbonFlow> merged_carbon(const std::vector<ProductFlows>& expanded);

}  // namespace cep
