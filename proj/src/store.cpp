#include "cep/store.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cep/csv.hpp"
#include "cep/errors.hpp"

namespace fs = std::filesystem;

namespace cep {

namespace {

constexpr const char* kJournalHeader = "seq,strategy_id,date,event,policy";
constexpr const char* kPermitsHeader =
    "id,holder_id,holder_name,holder_role,grantor_id,grantor_name,grantor_role,volume,"
    "window_start,window_end,exercised";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void append_line(const std::string& path, const std::string& line) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw StoreError("cannot append to " + path);
    out << line << "\n";
    out.flush();
    if (!out) throw StoreError("write to " + path + " failed");
}

}  // namespace

PositionStore PositionStore::open(const std::string& root) {
    fs::path r(root);
    if (fs::exists(r) && !fs::is_directory(r))
        throw StoreError(root + " exists and is not a directory");
    fs::create_directories(r / "products");
    PositionStore store(r.string());
    for (const std::string& path :
         {store.journal_path(), store.fixings_path(), store.permits_path()}) {
        if (fs::exists(path)) continue;
        std::string header = kJournalHeader;
        if (path == store.fixings_path()) header = "strategy_id,year,observed_tco2e";
        if (path == store.permits_path()) header = kPermitsHeader;
        store.write_atomically(path, header + std::string("\n"));
    }
    return store;
}

std::string PositionStore::product_path(const std::string& strategy_id) const {
    return (fs::path(root_) / "products" / (strategy_id + ".json")).string();
}

std::string PositionStore::journal_path() const {
    return (fs::path(root_) / "journal.csv").string();
}

std::string PositionStore::fixings_path() const {
    return (fs::path(root_) / "fixings.csv").string();
}

std::string PositionStore::permits_path() const {
    return (fs::path(root_) / "permits.csv").string();
}

void PositionStore::write_atomically(const std::string& path, const std::string& bytes) const {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw StoreError("cannot write " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw StoreError("write to " + tmp + " failed");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw StoreError("cannot publish " + path + ": " + ec.message());
    }
}

std::string PositionStore::content_hash(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xF];
    return out;
}

PositionStore::Receipt PositionStore::book(const LinkedProduct& p) {
    std::vector<Finding> findings = validate_product(p);
    if (has_errors(findings)) {
        std::string msg = "product " + p.strategy_id + " fails validation:";
        for (const Finding& f : findings)
            if (f.severity == Severity::Error) msg += " [" + f.code + "] " + f.message + ";";
        throw DomainError(msg);
    }
    if (contains(p.strategy_id))
        throw StoreError("duplicate strategy_id " + p.strategy_id + " already booked");
    std::string bytes = serialize_product(p);
    write_atomically(product_path(p.strategy_id), bytes);
    return Receipt{p.strategy_id, content_hash(bytes)};
}

bool PositionStore::contains(const std::string& strategy_id) const {
    return fs::exists(product_path(strategy_id));
}

std::vector<std::string> PositionStore::list_ids() const {
    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(fs::path(root_) / "products")) {
        if (!entry.is_regular_file()) continue;
        fs::path p = entry.path();
        if (p.extension() != ".json") continue;
        ids.push_back(p.stem().string());
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::string PositionStore::read_document(const std::string& strategy_id) const {
    if (!contains(strategy_id)) throw StoreError("unknown strategy_id " + strategy_id);
    return read_file(product_path(strategy_id));
}

LinkedProduct PositionStore::replay_state(LinkedProduct booked) const {
    for (const JournalEntry& entry : journal_for(booked.strategy_id)) {
        FlowSet flows = generate_flows(booked, Calendar{});
        booked = apply_event(booked, flows, entry.event).product;
    }
    return booked;
}

LinkedProduct PositionStore::load(const std::string& strategy_id) const {
    return replay_state(parse_product(read_document(strategy_id)));
}

std::vector<PositionStore::JournalEntry> PositionStore::journal() const {
    std::string text = read_file(journal_path());
    std::istringstream in(text);
    std::string line;
    std::vector<JournalEntry> entries;
    bool saw_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kJournalHeader)
                throw StoreError("journal: unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> f = csv_split(line);
        if (f.size() != 5)
            throw StoreError("journal: expected 5 fields at line " + std::to_string(lineno));
        JournalEntry e;
        e.seq = std::stol(f[0]);
        e.strategy_id = f[1];
        e.event = event_from_names(f[3], f[4], CivilDate::from_iso(f[2]));
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<PositionStore::JournalEntry> PositionStore::journal_for(
    const std::string& strategy_id) const {
    std::vector<JournalEntry> all = journal();
    std::vector<JournalEntry> mine;
    for (JournalEntry& e : all)
        if (e.strategy_id == strategy_id) mine.push_back(std::move(e));
    return mine;
}

LinkedProduct PositionStore::record_event(const std::string& strategy_id,
                                          const LifecycleEvent& ev, XcaPolicy xca_default) {
    LinkedProduct current = load(strategy_id);

    LifecycleEvent resolved = ev;
    if (auto* xca = std::get_if<XcaNonPaymentEvent>(&resolved); xca && !xca->policy)
        xca->policy = xca_default;

    FlowSet flows = generate_flows(current, Calendar{});
    LinkedProduct updated = apply_event(current, flows, resolved, xca_default).product;

    long seq = 1;
    if (std::vector<JournalEntry> all = journal(); !all.empty()) seq = all.back().seq + 1;
    append_line(journal_path(),
                csv_join({std::to_string(seq), strategy_id, event_date(resolved).to_iso(),
                          event_name(resolved), event_policy_name(resolved)}));
    return updated;
}

std::vector<LinkedProduct> PositionStore::list_portfolio(const Filter& filter) const {
    std::vector<LinkedProduct> out;
    for (const std::string& id : list_ids()) {
        LinkedProduct p = load(id);
        if (filter.status && p.state.status != *filter.status) continue;
        if (filter.party_id) {
            bool found = false;
            for (const Party& party : p.parties) found = found || party.id == *filter.party_id;
            if (!found) continue;
        }
        if (filter.effective_from && p.money_leg.effective_date < *filter.effective_from) continue;
        if (filter.effective_to && *filter.effective_to < p.money_leg.effective_date) continue;
        out.push_back(std::move(p));
    }
    return out;
}

FixingTable PositionStore::fixings() const {
    return FixingTable::from_csv(read_file(fixings_path()));
}

void PositionStore::add_fixing(const std::string& strategy_id, int year,
                               const Decimal& observed) {
    if (!contains(strategy_id)) throw StoreError("unknown strategy_id " + strategy_id);
    FixingTable table = fixings();
    table.add(strategy_id, year, observed);
    write_atomically(fixings_path(), table.to_csv());
}

std::vector<PermitOption> PositionStore::permits() const {
    std::string text = read_file(permits_path());
    std::istringstream in(text);
    std::string line;
    std::vector<PermitOption> out;
    bool saw_header = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kPermitsHeader)
                throw StoreError("permits: unexpected header '" + line + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> f = csv_split(line);
        if (f.size() != 11)
            throw StoreError("permits: expected 11 fields at line " + std::to_string(lineno));
        PermitOption perm;
        perm.id = f[0];
        perm.holder = Party{f[1], f[2], party_role_from_string(f[3])};
        perm.grantor = Party{f[4], f[5], party_role_from_string(f[6])};
        perm.volume = Decimal::parse(f[7]);
        perm.window_start = CivilDate::from_iso(f[8]);
        perm.window_end = CivilDate::from_iso(f[9]);
        perm.exercised = Decimal::parse(f[10]);
        perm.validate();
        out.push_back(std::move(perm));
    }
    return out;
}

std::string PositionStore::permits_csv(const std::vector<PermitOption>& permits) {
    std::string out = std::string(kPermitsHeader) + "\n";
    for (const PermitOption& p : permits)
        out += csv_join({p.id, p.holder.id, p.holder.name, to_string(p.holder.role),
                         p.grantor.id, p.grantor.name, to_string(p.grantor.role),
                         p.volume.to_string(), p.window_start.to_iso(), p.window_end.to_iso(),
                         p.exercised.to_string()}) +
               "\n";
    return out;
}

PermitOption PositionStore::get_permit(const std::string& permit_id) const {
    for (const PermitOption& p : permits())
        if (p.id == permit_id) return p;
    throw StoreError("unknown permit " + permit_id);
}

void PositionStore::put_permit(const PermitOption& perm) {
    perm.validate();
    std::vector<PermitOption> all = permits();
    for (const PermitOption& p : all)
        if (p.id == perm.id) throw StoreError("duplicate permit id " + perm.id);
    all.push_back(perm);
    write_atomically(permits_path(), permits_csv(all));
}

CarbonFlow PositionStore::exercise(const std::string& permit_id, const CivilDate& date,
                                   const Decimal& amount) {
    std::vector<PermitOption> all = permits();
    for (PermitOption& p : all) {
        if (p.id != permit_id) continue;
        ExerciseResult r = exercise_permit(p, date, amount);
        p = r.permit;
        write_atomically(permits_path(), permits_csv(all));
        return r.flow;
    }
    throw StoreError("unknown permit " + permit_id);
}

}  // namespace cep
