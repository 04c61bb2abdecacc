#include "cep/product_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cep/errors.hpp"

namespace cep {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void missing(const std::string& path) {
    throw ParseError("missing mandatory field '" + path + "'");
}

const Json& member(const Json& obj, const std::string& path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) missing(path.empty() ? key : path + "." + key);
    return *it;
}

std::string get_string(const Json& obj, const std::string& path, const char* key) {
    const Json& v = member(obj, path, key);
    if (!v.is_string()) throw ParseError("field '" + path + "." + key + "' must be a string");
    return v.get<std::string>();
}

int get_int(const Json& obj, const std::string& path, const char* key) {
    const Json& v = member(obj, path, key);
    if (!v.is_number_integer()) throw ParseError("field '" + path + "." + key + "' must be an integer");
    return v.get<int>();
}

bool get_bool(const Json& obj, const std::string& path, const char* key) {
    const Json& v = member(obj, path, key);
    if (!v.is_boolean()) throw ParseError("field '" + path + "." + key + "' must be a boolean");
    return v.get<bool>();
}

// Amounts travel as decimal strings so values never pass through a binary
// float.
Decimal get_decimal(const Json& obj, const std::string& path, const char* key) {
    const Json& v = member(obj, path, key);
    if (!v.is_string())
        throw ParseError("field '" + path + "." + key + "' must be a decimal string, e.g. \"100.5\"");
    try {
        return Decimal::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        throw ParseError("field '" + path + "." + key + "': " + e.what());
    }
}

CivilDate get_date(const Json& obj, const std::string& path, const char* key) {
    std::string s = get_string(obj, path, key);
    try {
        return CivilDate::from_iso(s);
    } catch (const std::exception& e) {
        throw ParseError("field '" + path + "." + key + "': " + e.what());
    }
}

void reject_unknown(const Json& obj, const std::string& path, std::set<std::string> known) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ParseError("unknown field '" + (path.empty() ? it.key() : path + "." + it.key()) + "'");
}

MoneyLeg parse_money_leg(const Json& j) {
    const std::string path = "money_leg";
    if (!j.is_object()) throw ParseError("'money_leg' must be an object");
    reject_unknown(j, path, {"currency", "notional", "effective_date", "maturity_date", "fixed_rate",
                             "coupon", "roll", "daycount", "payer", "receiver"});
    MoneyLeg m;
    m.currency = get_string(j, path, "currency");
    m.notional = get_decimal(j, path, "notional");
    m.effective_date = get_date(j, path, "effective_date");
    m.maturity_date = get_date(j, path, "maturity_date");
    m.fixed_rate = get_decimal(j, path, "fixed_rate");
    const Json& c = member(j, path, "coupon");
    if (!c.is_object()) throw ParseError("'money_leg.coupon' must be an object");
    reject_unknown(c, path + ".coupon", {"month", "day", "first_year", "last_year"});
    m.coupon.month = get_int(c, path + ".coupon", "month");
    m.coupon.day = get_int(c, path + ".coupon", "day");
    m.coupon.first_year = get_int(c, path + ".coupon", "first_year");
    m.coupon.last_year = get_int(c, path + ".coupon", "last_year");
    m.roll = roll_from_string(get_string(j, path, "roll"));
    m.daycount = daycount_from_string(get_string(j, path, "daycount"));
    m.payer = get_string(j, path, "payer");
    m.receiver = get_string(j, path, "receiver");
    return m;
}

CarbonLeg parse_carbon_leg(const Json& j) {
    const std::string path = "carbon_leg";
    if (!j.is_object()) throw ParseError("'carbon_leg' must be an object");
    reject_unknown(j, path, {"unit_quantity", "unit_kind", "base_year", "floating", "payer",
                             "receiver", "profiles"});
    CarbonLeg c;
    c.unit_quantity = get_decimal(j, path, "unit_quantity");
    c.unit_kind = get_string(j, path, "unit_kind");
    c.base_year = get_int(j, path, "base_year");
    c.floating = get_bool(j, path, "floating");
    c.payer = get_string(j, path, "payer");
    c.receiver = get_string(j, path, "receiver");
    const Json& profiles = member(j, path, "profiles");
    if (!profiles.is_array()) throw ParseError("'carbon_leg.profiles' must be an array");
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        const Json& pj = profiles[i];
        std::string ppath = path + ".profiles[" + std::to_string(i) + "]";
        if (!pj.is_object()) throw ParseError("'" + ppath + "' must be an object");
        reject_unknown(pj, ppath, {"kind", "sign", "start_year", "end_year", "amount_per_unit"});
        CarbonProfile pr;
        pr.kind = profile_kind_from_string(get_string(pj, ppath, "kind"));
        pr.sign = flow_sign_from_string(get_string(pj, ppath, "sign"));
        pr.start_year = get_int(pj, ppath, "start_year");
        pr.end_year = get_int(pj, ppath, "end_year");
        pr.amount_per_unit = get_decimal(pj, ppath, "amount_per_unit");
        c.profiles.push_back(pr);
    }
    return c;
}

}  // namespace

LinkedProduct parse_product(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("syntax error: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("product document must be a JSON object");

    LinkedProduct p;
    p.strategy_id = get_string(doc, "", "strategy_id");

    const Json& parties = member(doc, "", "parties");
    if (!parties.is_array()) throw ParseError("'parties' must be an array");
    for (std::size_t i = 0; i < parties.size(); ++i) {
        const Json& pj = parties[i];
        std::string ppath = "parties[" + std::to_string(i) + "]";
        if (!pj.is_object()) throw ParseError("'" + ppath + "' must be an object");
        reject_unknown(pj, ppath, {"id", "name", "role"});
        Party party;
        party.id = get_string(pj, ppath, "id");
        party.name = get_string(pj, ppath, "name");
        party.role = party_role_from_string(get_string(pj, ppath, "role"));
        p.parties.push_back(std::move(party));
    }

    p.money_leg = parse_money_leg(member(doc, "", "money_leg"));

    const bool has_leg = doc.contains("carbon_leg");
    const bool has_shorthand = doc.contains("shorthand_carbon");
    if (!has_leg && !has_shorthand)
        throw ParseError("carbon representation required: provide 'carbon_leg' or 'shorthand_carbon'");
    if (has_leg && has_shorthand)
        throw ParseError("provide either 'carbon_leg' or 'shorthand_carbon', not both");
    if (has_leg) {
        p.carbon = parse_carbon_leg(doc["carbon_leg"]);
    } else {
        const Json& sj = doc["shorthand_carbon"];
        if (!sj.is_object()) throw ParseError("'shorthand_carbon' must be an object");
        reject_unknown(sj, "shorthand_carbon", {"amount_tco2e", "as_of"});
        ShorthandCarbon sc;
        sc.amount_tco2e = get_decimal(sj, "shorthand_carbon", "amount_tco2e");
        sc.as_of = get_date(sj, "shorthand_carbon", "as_of");
        p.carbon = sc;
    }

    if (doc.contains("labels")) {
        const Json& lj = doc["labels"];
        if (!lj.is_object()) throw ParseError("'labels' must be an object");
        for (auto it = lj.begin(); it != lj.end(); ++it) {
            if (!it.value().is_string())
                throw ParseError("label '" + it.key() + "' must be a string");
            p.labels[it.key()] = it.value().get<std::string>();
        }
    }

    if (doc.contains("state"))
        p.state.status = lifecycle_status_from_string(get_string(doc, "", "state"));

    static const std::set<std::string> known = {"strategy_id", "parties", "money_leg", "carbon_leg",
                                                "shorthand_carbon", "labels", "state"};
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (!known.count(it.key()))
            p.extra_fields[it.key()] = it.value().dump();

    return p;
}

LinkedProduct load_product(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw StoreError("cannot open product file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_product(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(file.string() + ": " + e.what());
    }
}

std::string serialize_product(const LinkedProduct& p) {
    Json doc = Json::object();
    doc["strategy_id"] = p.strategy_id;

    Json parties = Json::array();
    for (const auto& party : p.parties) {
        Json pj = Json::object();
        pj["id"] = party.id;
        pj["name"] = party.name;
        pj["role"] = to_string(party.role);
        parties.push_back(std::move(pj));
    }
    doc["parties"] = std::move(parties);

    {
        const MoneyLeg& m = p.money_leg;
        Json mj = Json::object();
        mj["currency"] = m.currency;
        mj["notional"] = m.notional.to_string();
        mj["effective_date"] = m.effective_date.to_iso();
        mj["maturity_date"] = m.maturity_date.to_iso();
        mj["fixed_rate"] = m.fixed_rate.to_string();
        Json cj = Json::object();
        cj["month"] = m.coupon.month;
        cj["day"] = m.coupon.day;
        cj["first_year"] = m.coupon.first_year;
        cj["last_year"] = m.coupon.last_year;
        mj["coupon"] = std::move(cj);
        mj["roll"] = to_string(m.roll);
        mj["daycount"] = to_string(m.daycount);
        mj["payer"] = m.payer;
        mj["receiver"] = m.receiver;
        doc["money_leg"] = std::move(mj);
    }

    if (p.has_carbon_leg()) {
        const CarbonLeg& c = p.carbon_leg();
        Json cj = Json::object();
        cj["unit_quantity"] = c.unit_quantity.to_string();
        cj["unit_kind"] = c.unit_kind;
        cj["base_year"] = c.base_year;
        cj["floating"] = c.floating;
        cj["payer"] = c.payer;
        cj["receiver"] = c.receiver;
        Json profiles = Json::array();
        for (const auto& pr : c.profiles) {
            Json pj = Json::object();
            pj["kind"] = to_string(pr.kind);
            pj["sign"] = to_string(pr.sign);
            pj["start_year"] = pr.start_year;
            pj["end_year"] = pr.end_year;
            // Explicit-zero policy: a zero amount stays in the document.
            pj["amount_per_unit"] = pr.amount_per_unit.to_string();
            profiles.push_back(std::move(pj));
        }
        cj["profiles"] = std::move(profiles);
        doc["carbon_leg"] = std::move(cj);
    } else {
        const ShorthandCarbon& sc = p.shorthand();
        Json sj = Json::object();
        sj["amount_tco2e"] = sc.amount_tco2e.to_string();
        sj["as_of"] = sc.as_of.to_iso();
        doc["shorthand_carbon"] = std::move(sj);
    }

    Json labels = Json::object();
    for (const auto& [k, v] : p.labels) labels[k] = v;  // std::map iterates sorted
    doc["labels"] = std::move(labels);

    doc["state"] = to_string(p.state.status);

    for (const auto& [k, v] : p.extra_fields) doc[k] = Json::parse(v);

    return doc.dump(2) + "\n";
}

}  // namespace cep
