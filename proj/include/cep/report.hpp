#pragma once

#include <string>
#include <vector>

#include "cep/accounting.hpp"
#include "cep/portfolio.hpp"
#include "cep/pricing.hpp"

namespace cep {

/// Rows under the header `strategy_id,date,leg,kind,currency_or_xca,amount,
/// payer,receiver,status`, ascending by (date, strategy_id), money before
/// carbon within a tie.
std::string flows_csv(const std::vector<ProductFlows>& expanded);

/// Rows under `strategy_id,as_of,past_tco2e,future_tco2e,total_tco2e,
/// total_pico_degC`, one per summary in the given order.
std::string summary_csv(const std::vector<CarbonSummary>& summaries);

/// Per-flow cost lines followed by per-product totals and the portfolio
/// total, with scenario and currency comment headers.
std::string monetized_csv(const MonetizedReport& report);

/// Render CSV text as aligned columns. Comment lines pass through verbatim;
/// blank lines separate sections.
std::string render_table(const std::string& csv_text);

}  // namespace cep
