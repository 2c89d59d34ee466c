#pragma once

// Structure queries on a group given only by index arithmetic. Ops must
// provide order(), identity(), mul(a, b), inv(a) and generators().

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "quivar/group.hpp"

namespace quivar::detail {

struct Subgroup {
    std::vector<std::size_t> elements;  // sorted
    std::vector<std::size_t> generators;
    std::vector<bool> member;
};

template <class Ops>
Subgroup generate(const Ops& ops, std::vector<std::size_t> gens) {
    Subgroup h;
    h.member.assign(ops.order(), false);
    const std::size_t e = ops.identity();
    gens.erase(std::remove(gens.begin(), gens.end(), e), gens.end());
    h.generators = gens;
    h.elements.push_back(e);
    h.member[e] = true;
    for (std::size_t i = 0; i < h.elements.size(); ++i)
        for (std::size_t g : gens) {
            std::size_t p = ops.mul(h.elements[i], g);
            if (!h.member[p]) {
                h.member[p] = true;
                h.elements.push_back(p);
            }
        }
    std::sort(h.elements.begin(), h.elements.end());
    return h;
}

// Smallest subgroup containing `seeds` and stable under conjugation by `by`.
template <class Ops>
Subgroup normal_closure(const Ops& ops, std::vector<std::size_t> seeds, const std::vector<std::size_t>& by) {
    Subgroup h = generate(ops, seeds);
    for (;;) {
        std::vector<std::size_t> extra;
        for (std::size_t g : by) {
            std::size_t gi = ops.inv(g);
            for (std::size_t s : h.generators) {
                std::size_t c = ops.mul(ops.mul(gi, s), g);
                if (!h.member[c] && std::find(extra.begin(), extra.end(), c) == extra.end()) extra.push_back(c);
            }
        }
        if (extra.empty()) return h;
        std::vector<std::size_t> gens = h.generators;
        gens.insert(gens.end(), extra.begin(), extra.end());
        h = generate(ops, gens);
    }
}

template <class Ops>
Subgroup derived_of(const Ops& ops, const std::vector<std::size_t>& gens) {
    std::vector<std::size_t> comms;
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b) {
            std::size_t x = gens[a], y = gens[b];
            std::size_t c = ops.mul(ops.mul(ops.inv(x), ops.inv(y)), ops.mul(x, y));
            if (c != ops.identity() && std::find(comms.begin(), comms.end(), c) == comms.end()) comms.push_back(c);
        }
    return normal_closure(ops, comms, gens);
}

template <class Ops>
std::vector<std::size_t> center_of(const Ops& ops) {
    const auto gens = ops.generators();
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < ops.order(); ++x) {
        bool central = true;
        for (std::size_t g : gens)
            if (ops.mul(x, g) != ops.mul(g, x)) {
                central = false;
                break;
            }
        if (central) out.push_back(x);
    }
    return out;
}

// Greedy generating set for a subgroup given by its elements.
template <class Ops>
std::vector<std::size_t> generating_set(const Ops& ops, const std::vector<std::size_t>& elements) {
    std::vector<std::size_t> gens;
    Subgroup h = generate(ops, gens);
    for (std::size_t x : elements) {
        if (h.member[x]) continue;
        gens.push_back(x);
        h = generate(ops, gens);
        if (h.elements.size() == elements.size()) break;
    }
    return gens;
}

template <class Ops>
std::uint64_t element_order(const Ops& ops, std::size_t x) {
    std::uint64_t k = 1;
    for (std::size_t p = x; p != ops.identity(); p = ops.mul(p, x)) ++k;
    return k;
}

template <class Ops>
GroupFingerprint fingerprint_of(const Ops& ops) {
    GroupFingerprint f;
    f.order = ops.order();
    f.center_order = center_of(ops).size();
    std::vector<std::size_t> gens = ops.generators();
    std::uint64_t prev = f.order;
    f.derived_series.push_back(prev);
    for (;;) {
        Subgroup d = derived_of(ops, gens);
        if (f.derived_series.size() == 1) f.derived_order = d.elements.size();
        if (d.elements.size() == prev) break;
        prev = d.elements.size();
        f.derived_series.push_back(prev);
        if (prev == 1) break;
        gens = d.generators;
    }
    f.abelianization_order = f.order / f.derived_order;
    f.exponent = 1;
    for (std::size_t x = 0; x < ops.order(); ++x) {
        std::uint64_t k = element_order(ops, x);
        ++f.order_histogram[k];
        f.exponent = std::lcm(f.exponent, k);
    }
    return f;
}

// Group given by a full Cayley table.
struct TableOps {
    std::size_t n = 1;
    std::size_t e = 0;
    std::vector<std::uint32_t> table;  // table[a * n + b]
    std::vector<std::uint32_t> inverses;
    std::vector<std::size_t> gens;

    TableOps(std::size_t order, std::vector<std::uint32_t> t) : n(order), table(std::move(t)) {
        for (std::size_t a = 0; a < n; ++a) {
            bool is_e = true;
            for (std::size_t b = 0; b < n && is_e; ++b) is_e = table[a * n + b] == b;
            if (is_e) {
                e = a;
                break;
            }
        }
        inverses.assign(n, 0);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (table[a * n + b] == e) {
                    inverses[a] = std::uint32_t(b);
                    break;
                }
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        gens = generating_set(*this, all);
    }
    std::size_t order() const { return n; }
    std::size_t identity() const { return e; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table[a * n + b]; }
    std::size_t inv(std::size_t a) const { return inverses[a]; }
    std::vector<std::size_t> generators() const { return gens; }
};

}  // namespace quivar::detail
