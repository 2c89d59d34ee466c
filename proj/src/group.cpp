#include "quivar/group.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

#include "group_algo.hpp"

namespace quivar {

// Packed elements back to back in one arena; `slots` is an open-addressing
// table of (index + 1), 0 meaning empty, probed linearly.
struct FiniteMatrixGroup::Store {
    std::vector<CycMatrix> generators;
    int dim = 0;
    std::vector<std::uint8_t> arena;
    std::vector<std::uint64_t> offsets{0};
    std::vector<std::uint32_t> tags;  // low hash bits per element
    std::vector<std::uint32_t> slots;
    std::size_t mask = 0;

    mutable std::once_flag cache_once;
    mutable std::vector<CycMatrix> cache;

    std::size_t size() const { return offsets.size() - 1; }

    static std::uint64_t hash_bytes(const std::uint8_t* p, std::size_t n) {
        return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(p), n));
    }

    const std::uint8_t* data(std::size_t i) const { return arena.data() + offsets[i]; }
    std::size_t length(std::size_t i) const { return std::size_t(offsets[i + 1] - offsets[i]); }

    std::optional<std::size_t> lookup(const std::uint8_t* p, std::size_t n, std::uint64_t h) const {
        if (slots.empty()) return std::nullopt;
        for (std::size_t s = h & mask;; s = (s + 1) & mask) {
            std::uint32_t v = slots[s];
            if (v == 0) return std::nullopt;
            std::size_t i = v - 1;
            if (tags[i] == std::uint32_t(h) && length(i) == n && std::memcmp(data(i), p, n) == 0) return i;
        }
    }

    void rehash(std::size_t capacity) {
        slots.assign(capacity, 0);
        mask = capacity - 1;
        for (std::size_t i = 0; i < size(); ++i) {
            std::uint64_t h = hash_bytes(data(i), length(i));
            std::size_t s = h & mask;
            while (slots[s] != 0) s = (s + 1) & mask;
            slots[s] = std::uint32_t(i + 1);
        }
    }

    // Returns true when the element was new.
    bool insert(const std::vector<std::uint8_t>& bytes) {
        std::uint64_t h = hash_bytes(bytes.data(), bytes.size());
        if (lookup(bytes.data(), bytes.size(), h)) return false;
        if ((size() + 1) * 2 > slots.size()) {
            arena.insert(arena.end(), bytes.begin(), bytes.end());
            offsets.push_back(arena.size());
            tags.push_back(std::uint32_t(h));
            rehash(std::max<std::size_t>(64, slots.size() * 2));
            return true;
        }
        arena.insert(arena.end(), bytes.begin(), bytes.end());
        offsets.push_back(arena.size());
        tags.push_back(std::uint32_t(h));
        std::size_t s = h & mask;
        while (slots[s] != 0) s = (s + 1) & mask;
        slots[s] = std::uint32_t(size());
        return true;
    }

    CycMatrix decode(std::size_t i) const { return CycMatrix::decode_packed(data(i), length(i)); }

    const std::vector<CycMatrix>& decoded() const {
        std::call_once(cache_once, [this] {
            cache.reserve(size());
            for (std::size_t i = 0; i < size(); ++i) cache.push_back(decode(i));
        });
        return cache;
    }

    std::optional<std::size_t> find(const CycMatrix& m) const {
        std::vector<std::uint8_t> buf;
        m.encode_packed(buf);
        return lookup(buf.data(), buf.size(), hash_bytes(buf.data(), buf.size()));
    }
};

namespace {

void check_generators(const std::vector<CycMatrix>& gens, int& dim) {
    if (gens.empty()) throw DimensionMismatch("closure needs at least one generator");
    dim = gens.front().rows();
    for (const auto& g : gens) {
        if (!g.is_square() || g.rows() != dim) throw DimensionMismatch("generators must be square of equal size");
        if (det(g).is_zero()) throw SingularMatrix();
    }
}

struct MatrixOps {
    const FiniteMatrixGroup& g;
    std::vector<std::size_t> gens;

    explicit MatrixOps(const FiniteMatrixGroup& grp) : g(grp) {
        for (const auto& m : g.generators()) {
            auto idx = g.find(m);
            if (!idx) throw Error("generator missing from its own group");
            if (*idx != 0 && std::find(gens.begin(), gens.end(), *idx) == gens.end()) gens.push_back(*idx);
        }
    }
    std::size_t order() const { return g.order(); }
    std::size_t identity() const { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const { return g.multiply(a, b); }
    std::size_t inv(std::size_t a) const { return g.inverse(a); }
    std::vector<std::size_t> generators() const { return gens; }
};

FiniteMatrixGroup subgroup_of(const FiniteMatrixGroup& g, const std::vector<std::size_t>& gens,
                              const std::vector<std::size_t>& elements) {
    std::vector<CycMatrix> gm, em;
    for (auto i : gens) gm.push_back(g.element(i));
    if (gm.empty()) gm.push_back(CycMatrix::identity(g.dimension()));
    em.reserve(elements.size());
    for (auto i : elements) em.push_back(g.element(i));
    return FiniteMatrixGroup::from_elements(std::move(gm), em);
}

// Indices in g of every element of h.
std::vector<std::size_t> embed_subgroup(const FiniteMatrixGroup& g, const FiniteMatrixGroup& h) {
    if (g.dimension() != h.dimension()) throw NotASubgroup("subgroup has a different dimension");
    std::vector<std::size_t> out;
    out.reserve(h.order());
    for (std::size_t i = 0; i < h.order(); ++i) {
        auto idx = g.find(h.element(i));
        if (!idx) throw NotASubgroup("element " + std::to_string(i) + " of the subgroup is not in the group");
        out.push_back(*idx);
    }
    return out;
}

}  // namespace

FiniteMatrixGroup FiniteMatrixGroup::closure(std::vector<CycMatrix> generators, std::uint64_t cap) {
    FiniteMatrixGroup grp;
    grp.store_ = std::make_shared<Store>();
    Store& s = *grp.store_;
    check_generators(generators, s.dim);
    s.generators = std::move(generators);
    std::vector<std::uint8_t> buf;
    CycMatrix::identity(s.dim).encode_packed(buf);
    s.insert(buf);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const CycMatrix x = s.decode(i);
        for (const auto& g : s.generators) {
            buf.clear();
            (x * g).encode_packed(buf);
            if (s.insert(buf) && s.size() > cap) throw CapExceeded(cap);
        }
    }
    return grp;
}

FiniteMatrixGroup FiniteMatrixGroup::from_elements(std::vector<CycMatrix> generators, std::span<const CycMatrix> elements) {
    FiniteMatrixGroup grp;
    grp.store_ = std::make_shared<Store>();
    Store& s = *grp.store_;
    check_generators(generators, s.dim);
    s.generators = std::move(generators);
    std::vector<std::uint8_t> buf;
    CycMatrix::identity(s.dim).encode_packed(buf);
    s.insert(buf);
    for (const auto& m : elements) {
        if (m.rows() != s.dim || m.cols() != s.dim) throw DimensionMismatch("element of the wrong size");
        buf.clear();
        m.encode_packed(buf);
        s.insert(buf);
    }
    return grp;
}

const std::vector<CycMatrix>& FiniteMatrixGroup::generators() const { return store_->generators; }
int FiniteMatrixGroup::dimension() const { return store_->dim; }
std::size_t FiniteMatrixGroup::order() const { return store_->size(); }

CycMatrix FiniteMatrixGroup::element(std::size_t index) const {
    if (index >= order()) throw Error("group element index out of range");
    return store_->decode(index);
}

std::vector<CycMatrix> FiniteMatrixGroup::elements() const { return store_->decoded(); }

std::optional<std::size_t> FiniteMatrixGroup::find(const CycMatrix& m) const { return store_->find(m); }

std::size_t FiniteMatrixGroup::multiply(std::size_t a, std::size_t b) const {
    const auto& c = store_->decoded();
    auto idx = store_->find(c[a] * c[b]);
    if (!idx) throw Error("product left the group; the element list is not closed");
    return *idx;
}

std::size_t FiniteMatrixGroup::inverse(std::size_t a) const {
    const auto& c = store_->decoded();
    const CycMatrix& m = c[a];
    CycMatrix adj = m.adjoint();
    auto idx = store_->find((m * adj).is_identity() ? adj : mat_inv(m));
    if (!idx) throw Error("inverse left the group; the element list is not closed");
    return *idx;
}

std::vector<std::vector<std::uint8_t>> FiniteMatrixGroup::sorted_keys() const {
    std::vector<std::vector<std::uint8_t>> keys;
    keys.reserve(order());
    for (std::size_t i = 0; i < order(); ++i) keys.emplace_back(store_->data(i), store_->data(i) + store_->length(i));
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::string GroupFingerprint::to_string() const {
    std::ostringstream os;
    os << "order=" << order << " center=" << center_order << " derived=" << derived_order
       << " abelianization=" << abelianization_order << " exponent=" << exponent << " series=[";
    for (std::size_t k = 0; k < derived_series.size(); ++k) os << (k ? "," : "") << derived_series[k];
    os << "] orders={";
    bool first = true;
    for (const auto& [k, v] : order_histogram) {
        os << (first ? "" : ",") << k << ":" << v;
        first = false;
    }
    os << "}";
    return os.str();
}

FiniteMatrixGroup closure(const std::vector<CycMatrix>& generators, std::uint64_t cap) {
    return FiniteMatrixGroup::closure(generators, cap);
}

FiniteMatrixGroup center(const FiniteMatrixGroup& g) {
    MatrixOps ops(g);
    auto elems = detail::center_of(ops);
    return subgroup_of(g, detail::generating_set(ops, elems), elems);
}

FiniteMatrixGroup derived_subgroup(const FiniteMatrixGroup& g) {
    MatrixOps ops(g);
    detail::Subgroup d = detail::derived_of(ops, ops.generators());
    return subgroup_of(g, d.generators, d.elements);
}

GroupFingerprint order_histogram(const FiniteMatrixGroup& g) { return detail::fingerprint_of(MatrixOps(g)); }

bool is_normal(const FiniteMatrixGroup& g, const FiniteMatrixGroup& h) {
    embed_subgroup(g, h);
    for (const auto& x : g.generators()) {
        CycMatrix xi = mat_inv(x);
        for (const auto& y : h.generators())
            if (!h.contains(x * y * xi)) return false;
    }
    return true;
}

GroupFingerprint quotient_fingerprint(const FiniteMatrixGroup& g, const FiniteMatrixGroup& n) {
    const std::vector<std::size_t> nidx = embed_subgroup(g, n);
    if (!is_normal(g, n)) throw NotNormal("subgroup is not normal");
    const std::size_t order = g.order();
    std::vector<std::int64_t> coset(order, -1);
    std::vector<std::pair<std::vector<std::uint8_t>, std::size_t>> reps;  // canonical bytes, element
    for (std::size_t x = 0; x < order; ++x) {
        if (coset[x] >= 0) continue;
        const std::int64_t id = std::int64_t(reps.size());
        std::vector<std::uint8_t> best;
        std::size_t best_idx = x;
        for (std::size_t m : nidx) {
            std::size_t y = g.multiply(x, m);
            coset[y] = id;
            auto key = g.element(y).canonical_bytes();
            if (best.empty() || key < best) {
                best = std::move(key);
                best_idx = y;
            }
        }
        reps.emplace_back(std::move(best), best_idx);
    }
    // Renumber cosets by representative encoding so tables do not depend on
    // enumeration order.
    std::vector<std::size_t> perm(reps.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return reps[a].first < reps[b].first; });
    std::vector<std::uint32_t> rank(reps.size());
    for (std::size_t k = 0; k < perm.size(); ++k) rank[perm[k]] = std::uint32_t(k);
    const std::size_t q = reps.size();
    std::vector<std::uint32_t> table(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            std::size_t p = g.multiply(reps[perm[a]].second, reps[perm[b]].second);
            table[a * q + b] = rank[std::size_t(coset[p])];
        }
    return detail::fingerprint_of(detail::TableOps(q, std::move(table)));
}

namespace {

using Perm = std::vector<std::uint8_t>;

Perm cycle_perm(int n, std::initializer_list<int> cycle) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<int> c(cycle);
    for (std::size_t k = 0; k < c.size(); ++k) p[c[k]] = std::uint8_t(c[(k + 1) % c.size()]);
    return p;
}

// Enumerates the permutation group and hands its Cayley table to the
// generic fingerprint code.
GroupFingerprint permutation_fingerprint(const std::vector<Perm>& gens) {
    const std::size_t n = gens.front().size();
    Perm id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    std::map<Perm, std::uint32_t> index{{id, 0}};
    auto compose = [n](const Perm& a, const Perm& b) {
        Perm r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = b[a[k]];
        return r;
    };
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            Perm p = compose(elems[i], g);
            if (index.emplace(p, std::uint32_t(elems.size())).second) elems.push_back(std::move(p));
        }
    const std::size_t q = elems.size();
    std::vector<std::uint32_t> table(q * q);
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) table[a * q + b] = index.at(compose(elems[a], elems[b]));
    return detail::fingerprint_of(detail::TableOps(q, std::move(table)));
}

// SL(2,3) acting on the eight nonzero vectors of F3^2.
std::vector<Perm> sl23_generators() {
    std::vector<std::pair<int, int>> vecs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a || b) vecs.emplace_back(a, b);
    auto act = [&](int m00, int m01, int m10, int m11) {
        Perm p(vecs.size());
        for (std::size_t k = 0; k < vecs.size(); ++k) {
            auto [x, y] = vecs[k];
            std::pair<int, int> img{(m00 * x + m01 * y) % 3, (m10 * x + m11 * y) % 3};
            p[k] = std::uint8_t(std::find(vecs.begin(), vecs.end(), img) - vecs.begin());
        }
        return p;
    };
    return {act(1, 1, 0, 1), act(1, 0, 1, 1)};
}

}  // namespace

GroupFingerprint reference_fingerprint(std::string_view name) {
    if (name == "S4") return permutation_fingerprint({cycle_perm(4, {0, 1}), cycle_perm(4, {0, 1, 2, 3})});
    if (name == "S6") return permutation_fingerprint({cycle_perm(6, {0, 1}), cycle_perm(6, {0, 1, 2, 3, 4, 5})});
    if (name == "Z2xS4")
        return permutation_fingerprint({cycle_perm(6, {0, 1}), cycle_perm(6, {0, 1, 2, 3}), cycle_perm(6, {4, 5})});
    if (name == "SL23") return permutation_fingerprint(sl23_generators());
    if (name == "Z4") return permutation_fingerprint({cycle_perm(4, {0, 1, 2, 3})});
    throw UnknownName("unknown reference group '" + std::string(name) + "'");
}

}  // namespace quivar
