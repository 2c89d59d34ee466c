#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quivar/matrix.hpp"

namespace quivar {

inline constexpr std::uint64_t kDefaultClosureCap = 10'000'000;

// A fully enumerated finite matrix group. Elements are kept in a packed byte
// arena with an open-addressing index keyed on the packed canonical encoding,
// which keeps ~70 bytes per 8x8 rational element. Index 0 is the identity.
// Copies share storage.
class FiniteMatrixGroup {
public:
    // Breadth-first closure under right multiplication by the generators.
    // Throws CapExceeded once more than `cap` distinct elements are found.
    static FiniteMatrixGroup closure(std::vector<CycMatrix> generators, std::uint64_t cap = kDefaultClosureCap);
    // Wraps an element list already known to be closed (no check).
    static FiniteMatrixGroup from_elements(std::vector<CycMatrix> generators, std::span<const CycMatrix> elements);

    const std::vector<CycMatrix>& generators() const;
    int dimension() const;
    std::size_t order() const;

    CycMatrix element(std::size_t index) const;
    std::vector<CycMatrix> elements() const;
    std::optional<std::size_t> find(const CycMatrix& m) const;
    bool contains(const CycMatrix& m) const { return find(m).has_value(); }

    // Index arithmetic; decoded elements are cached on first use.
    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const;

    // Sorted canonical encodings, for comparing element sets.
    std::vector<std::vector<std::uint8_t>> sorted_keys() const;

private:
    struct Store;
    std::shared_ptr<Store> store_;
};

struct GroupFingerprint {
    std::uint64_t order = 1;
    std::uint64_t center_order = 1;
    std::uint64_t derived_order = 1;
    std::uint64_t abelianization_order = 1;
    std::uint64_t exponent = 1;
    // Orders of G, G', G'', ... down to the first repeat.
    std::vector<std::uint64_t> derived_series;
    std::map<std::uint64_t, std::uint64_t> order_histogram;

    bool operator==(const GroupFingerprint&) const = default;
    std::string to_string() const;
};

FiniteMatrixGroup closure(const std::vector<CycMatrix>& generators, std::uint64_t cap = kDefaultClosureCap);
FiniteMatrixGroup center(const FiniteMatrixGroup& g);
FiniteMatrixGroup derived_subgroup(const FiniteMatrixGroup& g);
GroupFingerprint order_histogram(const FiniteMatrixGroup& g);
// Throws NotASubgroup when h is not contained in g.
bool is_normal(const FiniteMatrixGroup& g, const FiniteMatrixGroup& h);
// Throws NotASubgroup / NotNormal.
GroupFingerprint quotient_fingerprint(const FiniteMatrixGroup& g, const FiniteMatrixGroup& n);
// "S4", "S6", "Z2xS4", "SL23", "Z4"; throws UnknownName.
GroupFingerprint reference_fingerprint(std::string_view name);

}  // namespace quivar
