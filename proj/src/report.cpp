#include "cep/report.hpp"

#include <algorithm>
#include <sstream>

#include "cep/csv.hpp"

namespace cep {

namespace {

struct FlowRow {
    CivilDate date;
    std::string strategy_id;
    int leg_rank;  // money 0, carbon 1
    std::vector<std::string> fields;
};

}  // namespace

std::string flows_csv(const std::vector<ProductFlows>& expanded) {
    std::vector<FlowRow> rows;
    for (const ProductFlows& pf : expanded) {
        for (const MoneyFlow& f : pf.flows.money)
            rows.push_back({f.date, f.strategy_id, 0,
                            {f.strategy_id, f.date.to_iso(), "money", to_string(f.kind),
                             f.currency, f.amount.to_string(), f.payer, f.receiver, "fixed"}});
        for (const CarbonFlow& f : pf.flows.carbon)
            rows.push_back({f.date, f.strategy_id, 1,
                            {f.strategy_id, f.date.to_iso(), "carbon", f.kind, "XCA",
                             f.amount_tco2e.to_string(), f.payer, f.receiver,
                             to_string(f.status)}});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const FlowRow& a, const FlowRow& b) {
        if (a.date != b.date) return a.date < b.date;
        if (a.strategy_id != b.strategy_id) return a.strategy_id < b.strategy_id;
        return a.leg_rank < b.leg_rank;
    });
    std::string out = "strategy_id,date,leg,kind,currency_or_xca,amount,payer,receiver,status\n";
    for (const FlowRow& r : rows) out += csv_join(r.fields) + "\n";
    return out;
}

std::string summary_csv(const std::vector<CarbonSummary>& summaries) {
    std::string out = "strategy_id,as_of,past_tco2e,future_tco2e,total_tco2e,total_pico_degC\n";
    for (const CarbonSummary& s : summaries)
        out += csv_join({s.label, s.as_of.to_iso(), s.past_tco2e.to_string(),
                         s.future_tco2e.to_string(), s.total_tco2e.to_string(),
                         s.total_pico_degc.to_string()}) +
               "\n";
    return out;
}

std::string monetized_csv(const MonetizedReport& report) {
    std::string out;
    out += "# scenario: " + report.scenario_name + "\n";
    out += "# currency: " + report.currency + "\n";
    out += "strategy_id,date,amount_tco2e,price,cost\n";
    for (const MonetizedLine& line : report.lines)
        out += csv_join({line.strategy_id, line.date.to_iso(), line.amount_tco2e.to_string(),
                         line.price.to_string(), line.cost.to_string()}) +
               "\n";
    out += "\n";
    out += "strategy_id,total_cost\n";
    for (const auto& [id, total] : report.product_totals)
        out += csv_join({id, total.to_string()}) + "\n";
    out += csv_join({"PORTFOLIO", report.total.to_string()}) + "\n";
    return out;
}

std::string render_table(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    std::string out;
    std::vector<std::vector<std::string>> block;

    auto flush_block = [&] {
        if (block.empty()) return;
        std::vector<std::size_t> widths;
        for (const auto& row : block) {
            if (widths.size() < row.size()) widths.resize(row.size(), 0);
            for (std::size_t i = 0; i < row.size(); ++i)
                widths[i] = std::max(widths[i], row[i].size());
        }
        for (const auto& row : block) {
            std::string rendered;
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) rendered += "  ";
                rendered += row[i];
                if (i + 1 < row.size())
                    rendered.append(widths[i] - row[i].size(), ' ');
            }
            out += rendered + "\n";
        }
        block.clear();
    };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush_block();
            out += "\n";
            continue;
        }
        if (line[0] == '#') {
            flush_block();
            out += line + "\n";
            continue;
        }
        block.push_back(csv_split(line));
    }
    flush_block();
    return out;
}

}  // namespace cep
