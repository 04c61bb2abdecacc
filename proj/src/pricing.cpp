#include "cep/pricing.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "cep/errors.hpp"

namespace cep {

void CarbonPriceCurve::validate() const {
    if (points.empty()) throw DomainError("price curve has no points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].second.sign() < 0)
            throw DomainError("negative price " + points[i].second.to_string() + " at year " +
                              std::to_string(points[i].first));
        if (i > 0 && points[i].first <= points[i - 1].first)
            throw DomainError("curve years must be strictly increasing, got " +
                              std::to_string(points[i - 1].first) + " then " +
                              std::to_string(points[i].first));
    }
}

namespace {

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

CarbonPriceCurve load_curve(const std::string& text) {
    CarbonPriceCurve curve;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trimmed(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            std::string body = trimmed(t.substr(1));
            if (body.rfind("scenario:", 0) == 0)
                curve.scenario_name = trimmed(body.substr(9));
            else if (body.rfind("currency:", 0) == 0)
                curve.currency = trimmed(body.substr(9));
            continue;
        }
        if (!saw_header) {
            if (t != "year,price")
                throw ParseError("curve: expected 'year,price' header at line " +
                                 std::to_string(lineno));
            saw_header = true;
            continue;
        }
        auto comma = t.find(',');
        if (comma == std::string::npos)
            throw ParseError("curve: expected 'year,price' at line " + std::to_string(lineno));
        int year = 0;
        try {
            std::size_t pos = 0;
            year = std::stoi(t.substr(0, comma), &pos);
            if (pos != comma) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParseError("curve: bad year at line " + std::to_string(lineno));
        }
        curve.points.emplace_back(year, Decimal::parse(t.substr(comma + 1)));
    }
    curve.validate();
    return curve;
}

CarbonPriceCurve load_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw StoreError("cannot open curve file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_curve(buf.str());
}

std::string save_curve(const CarbonPriceCurve& curve) {
    curve.validate();
    std::string out;
    out += "# scenario: " + curve.scenario_name + "\n";
    out += "# currency: " + curve.currency + "\n";
    out += "year,price\n";
    for (const auto& [year, price] : curve.points)
        out += std::to_string(year) + "," + price.to_string() + "\n";
    return out;
}

Decimal price_at(const CarbonPriceCurve& curve, int year) {
    curve.validate();
    const auto& pts = curve.points;
    if (year <= pts.front().first) return pts.front().second;
    if (year >= pts.back().first) return pts.back().second;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (year > pts[i].first) continue;
        const auto& [y0, p0] = pts[i - 1];
        const auto& [y1, p1] = pts[i];
        if (year == y1) return p1;
        return p0 + (p1 - p0).mul_ratio(year - y0, y1 - y0);
    }
    return pts.back().second;
}

MonetizedReport monetize(const std::vector<CarbonFlow>& flows, const CarbonPriceCurve& curve) {
    curve.validate();
    MonetizedReport report;
    report.scenario_name = curve.scenario_name;
    report.currency = curve.currency;

    std::map<std::string, Decimal> by_product;
    for (const CarbonFlow& f : flows) {
        MonetizedLine line;
        line.strategy_id = f.strategy_id;
        line.date = f.date;
        line.amount_tco2e = f.amount_tco2e;
        line.price = price_at(curve, f.year);
        line.cost = f.amount_tco2e.mul(line.price);
        by_product[f.strategy_id] = by_product[f.strategy_id] + line.cost;
        report.total = report.total + line.cost;
        report.lines.push_back(std::move(line));
    }
    report.product_totals.assign(by_product.begin(), by_product.end());
    return report;
}

}  // namespace cep
