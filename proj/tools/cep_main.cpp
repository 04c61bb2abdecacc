#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cep/accounting.hpp"
#include "cep/csv.hpp"
#include "cep/errors.hpp"
#include "cep/lifecycle.hpp"
#include "cep/portfolio.hpp"
#include "cep/pricing.hpp"
#include "cep/product_io.hpp"
#include "cep/report.hpp"
#include "cep/store.hpp"

namespace {

using namespace cep;

/// Bad invocations exit 2; data and domain problems exit 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LinkedProduct load_validated(const std::string& path) {
    LinkedProduct p = parse_product(read_file(path));
    std::vector<Finding> findings = validate_product(p);
    if (has_errors(findings)) {
        std::string msg = path + " fails validation:";
        for (const Finding& f : findings)
            if (f.severity == Severity::Error) msg += " [" + f.code + "] " + f.message + ";";
        throw DomainError(msg);
    }
    return p;
}

Calendar make_calendar(const std::string& holidays_path) {
    if (holidays_path.empty()) return Calendar{};
    return Calendar::with_holidays_from_file(holidays_path);
}

DecayParams make_params(double bps, bool forced) {
    DecayParams params{bps / 10000.0, forced};
    params.validate();
    return params;
}

std::string require_store(const std::string& store) {
    if (store.empty())
        throw UsageError("no store given; pass --store DIR or set CEP_STORE");
    return store;
}

std::vector<LinkedProduct> gather_products(const std::string& store,
                                           const std::vector<std::string>& files) {
    if (!files.empty()) {
        std::vector<LinkedProduct> out;
        out.reserve(files.size());
        for (const std::string& f : files) out.push_back(load_validated(f));
        return out;
    }
    return PositionStore::open(require_store(store)).list_portfolio();
}

FixingTable gather_fixings(const std::string& store, bool store_mode,
                           const std::string& fixings_file) {
    FixingTable table;
    if (store_mode && !store.empty()) table = PositionStore::open(store).fixings();
    if (!fixings_file.empty()) {
        FixingTable extra = FixingTable::from_csv(read_file(fixings_file));
        for (const auto& [key, amount] : extra.entries())
            table.add(key.first, key.second, amount);
    }
    return table;
}

std::vector<ProductFlows> expand_with_fixings(const std::vector<LinkedProduct>& products,
                                              const Calendar& cal, const FixingTable& fixings) {
    std::vector<ProductFlows> expanded = expand_portfolio(products, cal);
    if (!fixings.empty())
        for (ProductFlows& pf : expanded)
            pf.flows.carbon = apply_fixings(pf.flows.carbon, fixings);
    return expanded;
}

void emit(const std::string& csv_text, const std::string& format) {
    std::cout << (format == "table" ? render_table(csv_text) : csv_text);
}

int run_validate(const std::vector<std::string>& files) {
    bool any_error = false;
    for (const std::string& path : files) {
        std::cout << "== " << path << "\n";
        try {
            LinkedProduct p = parse_product(read_file(path));
            std::vector<Finding> findings = validate_product(p);
            int errors = 0;
            int warnings = 0;
            for (const Finding& f : findings) {
                bool is_error = f.severity == Severity::Error;
                (is_error ? errors : warnings) += 1;
                std::cout << (is_error ? "error" : "warning") << " [" << f.code << "] "
                          << f.message << "\n";
            }
            if (errors > 0) {
                any_error = true;
                std::cout << "invalid (" << errors << " errors, " << warnings << " warnings)\n";
            } else {
                std::cout << "ok (" << warnings << " warnings)\n";
            }
        } catch (const ParseError& e) {
            any_error = true;
            std::cout << "error [parse] " << e.what() << "\n";
            std::cout << "invalid (1 error)\n";
        }
    }
    return any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carbon-linked product engine"};
    app.require_subcommand(1);

    const char* env_store = std::getenv("CEP_STORE");
    std::string store = env_store ? env_store : "";
    std::string as_of_text;
    double decay_bps = -20.0;
    bool force_rate = false;
    std::string xca_policy = "continue";
    std::string curve_file;
    std::string holidays_file;
    std::string format = "csv";
    std::string fixings_file;
    std::vector<std::string> files;

    auto add_common = [&](CLI::App* cmd, bool needs_as_of) {
        cmd->add_option("--store", store, "position store directory (default: $CEP_STORE)");
        auto* as_of =
            cmd->add_option("--as-of", as_of_text, "valuation date YYYY-MM-DD");
        if (needs_as_of) as_of->required();
        cmd->add_option("--decay-rate", decay_bps,
                        "decay rate in basis points per year (default -20)");
        cmd->add_flag("--force-rate", force_rate, "allow a decay rate outside [-35, -2] bps");
        cmd->add_option("--xca-default-policy", xca_policy,
                        "carbon policy for XCA non-payment: continue|cease")
            ->check(CLI::IsMember({"continue", "cease"}));
        cmd->add_option("--holidays", holidays_file, "holiday calendar file, one date per line");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "table"}));
        cmd->add_option("--fixings", fixings_file, "extra fixing file to apply");
    };

    CLI::App* validate = app.add_subcommand("validate", "parse and validate product files");
    validate->add_option("files", files, "product JSON files")->required();

    CLI::App* book = app.add_subcommand("book", "validate and persist products in the store");
    book->add_option("files", files, "product JSON files")->required();
    add_common(book, false);

    CLI::App* flows = app.add_subcommand("flows", "expand products into dated flows");
    flows->add_option("--file", files, "product files instead of the store");
    add_common(flows, false);

    CLI::App* summarize_cmd =
        app.add_subcommand("summarize", "per-product carbon summaries plus the portfolio net");
    summarize_cmd->add_option("--file", files, "product files instead of the store");
    add_common(summarize_cmd, true);

    CLI::App* net = app.add_subcommand("net", "portfolio net carbon summary");
    net->add_option("--file", files, "product files instead of the store");
    add_common(net, true);

    CLI::App* offset =
        app.add_subcommand("offset", "offset flow that nets the portfolio to zero");
    offset->add_option("--file", files, "product files instead of the store");
    add_common(offset, true);

    CLI::App* price = app.add_subcommand("price", "monetize carbon flows on a scenario curve");
    price->add_option("--file", files, "product files instead of the store");
    price->add_option("--curve", curve_file, "scenario curve CSV")->required();
    add_common(price, false);

    std::string event_id, event_name_text, event_date_text, event_policy = "-";
    std::string event_file;
    CLI::App* event = app.add_subcommand("event", "record a lifecycle event");
    event->add_option("strategy_id", event_id, "product to affect");
    event->add_option("event", event_name_text, "MATURITY | DEFAULT | XCA_NONPAYMENT");
    event->add_option("date", event_date_text, "event date YYYY-MM-DD");
    event->add_option("policy", event_policy, "DEFAULT carbon policy: CONTINUE | CEASE");
    event->add_option("--file", event_file, "event CSV strategy_id,date,event,policy");
    add_common(event, false);

    CLI::App* permit = app.add_subcommand("permit", "manage emission permits");
    permit->require_subcommand(1);
    std::string perm_id, holder_id, holder_name, holder_role = "other";
    std::string grantor_id, grantor_name, volume_text, window_start, window_end;
    CLI::App* permit_create = permit->add_subcommand("create", "record a new permit");
    permit_create->add_option("--id", perm_id)->required();
    permit_create->add_option("--holder-id", holder_id)->required();
    permit_create->add_option("--holder-name", holder_name);
    permit_create->add_option("--holder-role", holder_role)
        ->check(CLI::IsMember({"funder", "issuer", "other"}));
    permit_create->add_option("--grantor-id", grantor_id)->required();
    permit_create->add_option("--grantor-name", grantor_name);
    permit_create->add_option("--volume", volume_text, "tCO2e capacity")->required();
    permit_create->add_option("--window-start", window_start)->required();
    permit_create->add_option("--window-end", window_end)->required();
    add_common(permit_create, false);

    std::string exercise_date_text, exercise_amount_text;
    CLI::App* permit_exercise = permit->add_subcommand("exercise", "use part of a permit");
    permit_exercise->add_option("--id", perm_id)->required();
    permit_exercise->add_option("--date", exercise_date_text)->required();
    permit_exercise->add_option("--amount", exercise_amount_text, "tCO2e to offset")->required();
    add_common(permit_exercise, false);

    CLI::App* permit_list = permit->add_subcommand("list", "list permits in the store");
    add_common(permit_list, false);

    CLI::App* report =
        app.add_subcommand("report", "products, flows, summaries, and optional monetization");
    report->add_option("--curve", curve_file, "scenario curve CSV for a monetized section");
    add_common(report, true);

    try {
        app.parse(argc, argv);

        if (validate->parsed()) return run_validate(files);

        if (book->parsed()) {
            PositionStore s = PositionStore::open(require_store(store));
            for (const std::string& path : files) {
                PositionStore::Receipt r = s.book(load_validated(path));
                std::cout << "booked " << r.strategy_id << " " << r.content_hash << "\n";
            }
            return 0;
        }

        if (flows->parsed()) {
            Calendar cal = make_calendar(holidays_file);
            std::vector<LinkedProduct> products = gather_products(store, files);
            FixingTable fixings = gather_fixings(store, files.empty(), fixings_file);
            emit(flows_csv(expand_with_fixings(products, cal, fixings)), format);
            return 0;
        }

        if (summarize_cmd->parsed() || net->parsed() || offset->parsed()) {
            Calendar cal = make_calendar(holidays_file);
            CivilDate as_of = CivilDate::from_iso(as_of_text);
            DecayParams params = make_params(decay_bps, force_rate);
            std::vector<LinkedProduct> products = gather_products(store, files);
            FixingTable fixings = gather_fixings(store, files.empty(), fixings_file);
            std::vector<ProductFlows> expanded = expand_with_fixings(products, cal, fixings);
            std::vector<CarbonSummary> summaries = summarize_portfolio(expanded, as_of, params);
            CarbonSummary netted = net_portfolio(summaries);
            if (summarize_cmd->parsed()) {
                summaries.push_back(netted);
                emit(summary_csv(summaries), format);
            } else if (net->parsed()) {
                emit(summary_csv({netted}), format);
            } else {
                CarbonFlow off = required_offset(netted);
                std::vector<CarbonFlow> all = merged_carbon(expanded);
                all.push_back(off);
                if (!summarize("check", all, as_of, params).total_tco2e.is_zero())
                    throw DomainError("offset failed to net the portfolio to zero");
                emit(flows_csv({ProductFlows{"OFFSET", FlowSet{{}, {off}}}}), format);
            }
            return 0;
        }

        if (price->parsed()) {
            Calendar cal = make_calendar(holidays_file);
            CarbonPriceCurve curve = load_curve_file(curve_file);
            std::vector<LinkedProduct> products = gather_products(store, files);
            FixingTable fixings = gather_fixings(store, files.empty(), fixings_file);
            std::vector<ProductFlows> expanded = expand_with_fixings(products, cal, fixings);
            emit(monetized_csv(monetize(merged_carbon(expanded), curve)), format);
            return 0;
        }

        if (event->parsed()) {
            PositionStore s = PositionStore::open(require_store(store));
            XcaPolicy fallback = xca_policy_from_string(xca_policy);
            std::string out = "strategy_id,status\n";
            if (!event_file.empty()) {
                std::istringstream in(read_file(event_file));
                std::string line;
                bool saw_header = false;
                while (std::getline(in, line)) {
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (line.empty() || line[0] == '#') continue;
                    if (!saw_header) {
                        if (line != "strategy_id,date,event,policy")
                            throw ParseError("event file: bad header '" + line + "'");
                        saw_header = true;
                        continue;
                    }
                    std::vector<std::string> f = csv_split(line);
                    if (f.size() != 4)
                        throw ParseError("event file: expected 4 fields, got '" + line + "'");
                    LifecycleEvent ev = event_from_names(f[2], f[3], CivilDate::from_iso(f[1]));
                    LinkedProduct updated = s.record_event(f[0], ev, fallback);
                    out += f[0] + "," + to_string(updated.state.status) + "\n";
                }
            } else {
                if (event_id.empty() || event_name_text.empty() || event_date_text.empty())
                    throw UsageError(
                        "event needs STRATEGY_ID EVENT DATE [POLICY] or --file FILE");
                LifecycleEvent ev = event_from_names(event_name_text, event_policy,
                                                     CivilDate::from_iso(event_date_text));
                LinkedProduct updated = s.record_event(event_id, ev, fallback);
                out += event_id + "," + to_string(updated.state.status) + "\n";
            }
            emit(out, format);
            return 0;
        }

        if (permit_create->parsed()) {
            PositionStore s = PositionStore::open(require_store(store));
            PermitOption perm;
            perm.id = perm_id;
            perm.holder = Party{holder_id, holder_name, party_role_from_string(holder_role)};
            perm.grantor = Party{grantor_id, grantor_name, PartyRole::Government};
            perm.volume = Decimal::parse(volume_text);
            perm.window_start = CivilDate::from_iso(window_start);
            perm.window_end = CivilDate::from_iso(window_end);
            s.put_permit(perm);
            emit(PositionStore::permits_csv({perm}), format);
            return 0;
        }

        if (permit_exercise->parsed()) {
            PositionStore s = PositionStore::open(require_store(store));
            CarbonFlow flow = s.exercise(perm_id, CivilDate::from_iso(exercise_date_text),
                                         Decimal::parse(exercise_amount_text));
            PermitOption after = s.get_permit(perm_id);
            std::string out = "# permit " + after.id + " remaining " +
                              after.remaining().to_string() + "\n";
            out += flows_csv({ProductFlows{after.id, FlowSet{{}, {flow}}}});
            emit(out, format);
            return 0;
        }

        if (permit_list->parsed()) {
            PositionStore s = PositionStore::open(require_store(store));
            emit(PositionStore::permits_csv(s.permits()), format);
            return 0;
        }

        if (report->parsed()) {
            PositionStore s = PositionStore::open(require_store(store));
            Calendar cal = make_calendar(holidays_file);
            CivilDate as_of = CivilDate::from_iso(as_of_text);
            DecayParams params = make_params(decay_bps, force_rate);
            std::vector<LinkedProduct> products = s.list_portfolio();
            FixingTable fixings = gather_fixings(store, true, fixings_file);
            std::vector<ProductFlows> expanded = expand_with_fixings(products, cal, fixings);

            std::string out = "# products\n";
            out += "strategy_id,status,currency,notional,effective_date,maturity_date\n";
            for (const LinkedProduct& p : products)
                out += csv_join({p.strategy_id, to_string(p.state.status), p.money_leg.currency,
                                 p.money_leg.notional.to_string(),
                                 p.money_leg.effective_date.to_iso(),
                                 p.money_leg.maturity_date.to_iso()}) +
                       "\n";
            out += "\n# flows\n" + flows_csv(expanded);

            std::vector<CarbonSummary> summaries = summarize_portfolio(expanded, as_of, params);
            summaries.push_back(net_portfolio(summaries));
            out += "\n# summary\n" + summary_csv(summaries);

            if (!curve_file.empty()) {
                CarbonPriceCurve curve = load_curve_file(curve_file);
                out += "\n# monetized\n" + monetized_csv(monetize(merged_carbon(expanded), curve));
            }
            emit(out, format);
            return 0;
        }

        throw UsageError("no subcommand handled");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
