#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quivar/group.hpp"
#include "quivar/molien.hpp"
#include "quivar/poly.hpp"

namespace quivar {

inline constexpr int kCatalogSchemaVersion = 1;

enum class EntityKind { gate, group, invariant, closed_form };
std::string_view to_string(EntityKind k);
EntityKind entity_kind_from_string(std::string_view s);

struct GroupDef {
    std::vector<CycMatrix> generators;
    std::optional<std::uint64_t> cap;  // overrides the run cap
};

struct NamedEntity {
    std::string id;
    EntityKind kind = EntityKind::gate;
    std::string anchor;
    std::string source;  // text the payload was parsed from
    std::variant<CycMatrix, GroupDef, MultiPoly, ClosedForm> payload;

    const CycMatrix& gate() const { return std::get<CycMatrix>(payload); }
    const GroupDef& group() const { return std::get<GroupDef>(payload); }
    const MultiPoly& poly() const { return std::get<MultiPoly>(payload); }
    const ClosedForm& form() const { return std::get<ClosedForm>(payload); }
};

enum class ExpectedStatus { pass, known_discrepancy };
enum class ClaimStatus { pass, fail, discrepancy };
std::string_view to_string(ClaimStatus s);
std::string_view to_string(ExpectedStatus s);

struct PaperClaim {
    std::string id;
    std::string description;
    std::string anchor;
    std::string check;
    std::map<std::string, std::string, std::less<>> args;
    ExpectedStatus expected_status = ExpectedStatus::pass;

    const std::string& arg(std::string_view key) const;  // throws Error when missing
    std::optional<std::string> opt(std::string_view key) const;
};

struct ClaimResult {
    std::string id;
    ClaimStatus status = ClaimStatus::fail;
    std::string expected;
    std::string computed;
    // Extra named values (attached series, mismatch index, fingerprints, ...).
    std::map<std::string, std::string> details;
    double runtime_ms = 0;
};

struct RunOptions {
    int series_order = kDefaultSeriesOrder;
    double tol = 1e-10;
    std::uint64_t cap = kDefaultClosureCap;
    unsigned threads = 1;
    std::uint64_t seed = 20240607;
};

// Loaded registry of named entities and claims. Group closures and Molien
// series are cached across claims; the cache is thread safe, the registry
// itself is immutable after load.
class Catalog {
public:
    static Catalog parse(std::string_view text);
    static Catalog load_file(const std::filesystem::path& path);
    // The catalog compiled into the library.
    static Catalog builtin();

    int schema_version() const;
    const NamedEntity& get_named(EntityKind kind, std::string_view id) const;
    std::vector<std::string> ids(EntityKind kind) const;

    std::vector<std::string> claim_ids() const;  // sorted
    const PaperClaim& claim(std::string_view id) const;
    std::vector<std::string> match_claims(std::string_view glob) const;  // sorted

    ClaimResult run_claim(std::string_view id, const RunOptions& opts = {}) const;
    // Runs the matching claims on opts.threads workers; sorted by id.
    std::vector<ClaimResult> run_claims(std::string_view glob, const RunOptions& opts = {}) const;

    // Enumerated group, cached per (id, cap).
    FiniteMatrixGroup group(std::string_view id, const RunOptions& opts = {}) const;
    MolienSeries molien(std::string_view group_id, const RunOptions& opts = {}) const;
    PolyEnv invariants(int nvars) const;
    // Gate expression: a gate id or kron(a, b, ...).
    CycMatrix gate_expr(std::string_view text) const;

private:
    struct Data;
    struct Cache;
    std::shared_ptr<const Data> data_;
    std::shared_ptr<Cache> cache_;
};

std::string_view builtin_catalog_text();
std::string_view builtin_formula_sheet();

// Shell-style glob with * and ?.
bool glob_match(std::string_view pattern, std::string_view text);

}  // namespace quivar
