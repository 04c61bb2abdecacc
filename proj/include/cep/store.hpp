#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cep/lifecycle.hpp"
#include "cep/product_io.hpp"

namespace cep {

/// Plain-file position keeping under one root directory:
///
///   products/<strategy_id>.json   canonical booked documents (immutable)
///   journal.csv                   append-only lifecycle events
///   fixings.csv                   observed XCA amounts
///   permits.csv                   permit options and exercise totals
///
/// Current state is the booked document plus a replay of its journal
/// entries, so reopening a store always reproduces identical state and every
/// artifact stays readable without the tool.
class PositionStore {
public:
    struct Receipt {
        std::string strategy_id;
        std::string content_hash;
    };

    struct JournalEntry {
        long seq = 0;
        std::string strategy_id;
        LifecycleEvent event;
    };

    struct Filter {
        std::optional<LifecycleStatus> status;
        std::optional<std::string> party_id;
        std::optional<CivilDate> effective_from;  // inclusive, on effective_date
        std::optional<CivilDate> effective_to;    // inclusive
    };

    /// Open a store, creating the layout when absent.
    static PositionStore open(const std::string& root);

    const std::string& root() const { return root_; }

    /// Persist a validated product. Atomic: the document appears fully
    /// written or not at all. Duplicate strategy_ids are rejected.
    Receipt book(const LinkedProduct& p);

    bool contains(const std::string& strategy_id) const;
    std::vector<std::string> list_ids() const;

    /// Raw canonical document bytes as booked.
    std::string read_document(const std::string& strategy_id) const;

    /// Product with lifecycle state derived from the journal.
    LinkedProduct load(const std::string& strategy_id) const;

    /// Validate and journal a lifecycle event; returns post-event state.
    /// XCA non-payment is journaled with its resolved policy.
    LinkedProduct record_event(const std::string& strategy_id, const LifecycleEvent& ev,
                               XcaPolicy xca_default = XcaPolicy::Continue);

    std::vector<JournalEntry> journal() const;
    std::vector<JournalEntry> journal_for(const std::string& strategy_id) const;

    /// Products in ascending strategy_id order, optionally filtered.
    std::vector<LinkedProduct> list_portfolio(const Filter& filter = {}) const;

    FixingTable fixings() const;
    void add_fixing(const std::string& strategy_id, int year, const Decimal& observed);

    std::vector<PermitOption> permits() const;
    PermitOption get_permit(const std::string& permit_id) const;
    void put_permit(const PermitOption& perm);
    CarbonFlow exercise(const std::string& permit_id, const CivilDate& date,
                        const Decimal& amount);

    /// Hash used in booking receipts, over the canonical document bytes.
    static std::string content_hash(const std::string& bytes);

    /// The permits.csv representation of a permit list.
    static std::string permits_csv(const std::vector<PermitOption>& permits);

private:
    explicit PositionStore(std::string root) : root_(std::move(root)) {}

    std::string product_path(const std::string& strategy_id) const;
    std::string journal_path() const;
    std::string fixings_path() const;
    std::string permits_path() const;
    void write_atomically(const std::string& path, const std::string& bytes) const;
    LinkedProduct replay_state(LinkedProduct booked) const;

    std::string root_;
};

}  // namespace cep
