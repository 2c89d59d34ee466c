#include "quivar/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "quivar/errors.hpp"
#include "quivar/qgeom.hpp"

namespace quivar {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Split on top-level occurrences of sep (outside parentheses).
std::vector<std::string> split_top(std::string_view s, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    out.push_back(trim(s.substr(start)));
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

template <class Seq>
std::string join(const Seq& xs, std::string_view sep = ", ") {
    std::ostringstream os;
    bool first = true;
    for (const auto& x : xs) {
        if (!first) os << sep;
        first = false;
        os << x;
    }
    return os.str();
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t used = 0;
    const double d = std::stod(s, &used);
    if (used != s.size() || d < 0 || d != std::floor(d)) throw Error("expected a nonnegative integer, got '" + s + "'");
    return static_cast<std::uint64_t>(d);
}

// "8", "0-12" or "4, 6, 8".
std::vector<int> parse_degrees(const std::string& s) {
    std::vector<int> out;
    for (const auto& part : split_top(s, ',')) {
        const auto dash = part.find('-');
        if (dash != std::string::npos && dash > 0) {
            const int lo = std::stoi(part.substr(0, dash)), hi = std::stoi(part.substr(dash + 1));
            for (int d = lo; d <= hi; ++d) out.push_back(d);
        } else {
            out.push_back(std::stoi(part));
        }
    }
    return out;
}

struct Section {
    std::string kind, id;
    std::size_t line = 0;
    std::vector<std::pair<std::string, std::string>> keys;

    std::optional<std::string> get(std::string_view k) const {
        for (const auto& [key, v] : keys)
            if (key == k) return v;
        return std::nullopt;
    }
    std::string need(std::string_view k) const {
        auto v = get(k);
        if (!v) throw Error("catalog line " + std::to_string(line) + ": [" + kind + " " + id + "] needs '" + std::string(k) + "'");
        return *v;
    }
};

const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> k{
        "order",      "center",          "noniso",      "normal",     "quotient",          "fingerprint",
        "derived",    "molien",          "degrees",     "invariant",  "relation",          "reynolds",
        "independent", "root",           "sic",         "stereo",     "hopf_sphere",       "hopf_entanglement",
        "hopf_fiber", "hopf2_zeta",      "gate_norm",   "gate_equal", "unitary",           "e8",
        "cap",        "eigen"};
    return k;
}

// Which claim keys name which entity kinds (lists allowed).
const std::vector<std::pair<std::string, EntityKind>>& reference_keys() {
    static const std::vector<std::pair<std::string, EntityKind>> k{
        {"group", EntityKind::group},         {"sub", EntityKind::group},    {"equals", EntityKind::group},
        {"groups", EntityKind::group},        {"form", EntityKind::closed_form}, {"poly", EntityKind::invariant},
        {"polys", EntityKind::invariant},     {"proportional", EntityKind::invariant},
        {"gate", EntityKind::gate},           {"gates", EntityKind::gate},   {"triple", EntityKind::gate}};
    return k;
}

struct Outcome {
    bool ok = false;
    std::string expected, computed;
    std::map<std::string, std::string> details;
};

}  // namespace

std::string_view to_string(EntityKind k) {
    switch (k) {
        case EntityKind::gate: return "gate";
        case EntityKind::group: return "group";
        case EntityKind::invariant: return "invariant";
        case EntityKind::closed_form: return "closed_form";
    }
    return "?";
}

EntityKind entity_kind_from_string(std::string_view s) {
    if (s == "gate") return EntityKind::gate;
    if (s == "group") return EntityKind::group;
    if (s == "invariant") return EntityKind::invariant;
    if (s == "closed_form") return EntityKind::closed_form;
    throw UnknownName("unknown entity kind '" + std::string(s) + "'");
}

std::string_view to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::pass: return "pass";
        case ClaimStatus::fail: return "fail";
        case ClaimStatus::discrepancy: return "discrepancy";
    }
    return "?";
}

std::string_view to_string(ExpectedStatus s) { return s == ExpectedStatus::pass ? "pass" : "known_discrepancy"; }

const std::string& PaperClaim::arg(std::string_view key) const {
    auto it = args.find(key);
    if (it == args.end()) throw Error("claim " + id + " needs '" + std::string(key) + "'");
    return it->second;
}

std::optional<std::string> PaperClaim::opt(std::string_view key) const {
    auto it = args.find(key);
    if (it == args.end()) return std::nullopt;
    return it->second;
}

bool glob_match(std::string_view p, std::string_view t) {
    std::size_t pi = 0, ti = 0, star = std::string_view::npos, mark = 0;
    while (ti < t.size()) {
        if (pi < p.size() && (p[pi] == '?' || p[pi] == t[ti])) {
            ++pi;
            ++ti;
        } else if (pi < p.size() && p[pi] == '*') {
            star = pi++;
            mark = ti;
        } else if (star != std::string_view::npos) {
            pi = star + 1;
            ti = ++mark;
        } else {
            return false;
        }
    }
    while (pi < p.size() && p[pi] == '*') ++pi;
    return pi == p.size();
}

struct Catalog::Data {
    int schema = 0;
    std::map<std::string, NamedEntity, std::less<>> entities[4];
    std::vector<std::string> entity_order[4];
    std::map<std::string, PaperClaim, std::less<>> claims;
    std::vector<std::string> claim_order;  // file order, used for scheduling
};

// Compute-once slots; failures are cached too.
struct Catalog::Cache {
    template <class T>
    struct Slot {
        std::mutex m;
        bool done = false;
        std::optional<T> value;
        std::exception_ptr error;
    };
    std::mutex m;
    std::map<std::string, std::shared_ptr<Slot<FiniteMatrixGroup>>> groups;
    std::map<std::string, std::shared_ptr<Slot<MolienSeries>>> series;

    template <class T>
    static T get(std::mutex& outer, std::map<std::string, std::shared_ptr<Slot<T>>>& table, const std::string& key,
                 const std::function<T()>& make) {
        std::shared_ptr<Slot<T>> slot;
        {
            std::lock_guard lock(outer);
            auto& s = table[key];
            if (!s) s = std::make_shared<Slot<T>>();
            slot = s;
        }
        std::lock_guard lock(slot->m);
        if (!slot->done) {
            try {
                slot->value = make();
            } catch (...) {
                slot->error = std::current_exception();
            }
            slot->done = true;
        }
        if (slot->error) std::rethrow_exception(slot->error);
        return *slot->value;
    }
};

Catalog Catalog::parse(std::string_view text) {
    auto data = std::make_shared<Data>();
    std::vector<Section> sections;
    std::optional<int> schema;
    std::string* last_value = nullptr;

    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') {
            if (line.empty()) last_value = nullptr;
            if (nl == text.size()) break;
            continue;
        }
        const auto where = "catalog line " + std::to_string(line_no) + ": ";
        if (std::isspace(static_cast<unsigned char>(raw[0]))) {
            if (!last_value) throw Error(where + "continuation line without a key");
            *last_value += " " + line;
        } else if (line[0] == '[') {
            if (line.back() != ']') throw Error(where + "unterminated section header");
            std::istringstream is(line.substr(1, line.size() - 2));
            Section s;
            s.line = line_no;
            is >> s.kind >> s.id;
            std::string extra;
            if (s.id.empty() || (is >> extra)) throw Error(where + "section header must read [kind id]");
            sections.push_back(std::move(s));
            last_value = nullptr;
        } else {
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw Error(where + "expected 'key = value'");
            std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
            if (sections.empty()) {
                if (key != "schema_version") throw Error(where + "unexpected key '" + key + "' before the first section");
                schema = std::stoi(value);
                last_value = nullptr;
            } else {
                for (const auto& kv : sections.back().keys)
                    if (kv.first == key) throw Error(where + "duplicate key '" + key + "'");
                sections.back().keys.emplace_back(key, value);
                last_value = &sections.back().keys.back().second;
            }
        }
        if (nl == text.size()) break;
    }
    if (!schema) throw Error("catalog has no schema_version");
    if (*schema != kCatalogSchemaVersion)
        throw Error("catalog schema_version " + std::to_string(*schema) + " is not supported (expected " +
                    std::to_string(kCatalogSchemaVersion) + ")");
    data->schema = *schema;

    Catalog cat;
    cat.data_ = data;
    cat.cache_ = std::make_shared<Cache>();
    auto add = [&](NamedEntity e, std::size_t line) {
        auto& table = data->entities[int(e.kind)];
        if (table.count(e.id))
            throw Error("catalog line " + std::to_string(line) + ": duplicate " + std::string(to_string(e.kind)) + " '" + e.id + "'");
        data->entity_order[int(e.kind)].push_back(e.id);
        table.emplace(e.id, std::move(e));
    };

    for (const auto& s : sections) {
        const auto where = "catalog line " + std::to_string(s.line) + " [" + s.kind + " " + s.id + "]: ";
        try {
            if (s.kind == "claim") {
                PaperClaim c;
                c.id = s.id;
                for (const auto& [k, v] : s.keys) {
                    if (k == "description") c.description = v;
                    else if (k == "anchor") c.anchor = v;
                    else if (k == "check") c.check = v;
                    else if (k == "expect") {
                        if (v == "pass") c.expected_status = ExpectedStatus::pass;
                        else if (v == "known_discrepancy") c.expected_status = ExpectedStatus::known_discrepancy;
                        else throw Error("expect must be pass or known_discrepancy");
                    } else {
                        c.args.emplace(k, v);
                    }
                }
                if (c.check.empty()) throw Error("missing 'check'");
                if (std::find(known_checks().begin(), known_checks().end(), c.check) == known_checks().end())
                    throw Error("unknown check '" + c.check + "'");
                if (c.anchor.empty()) throw Error("missing 'anchor'");
                for (const auto& [key, kind] : reference_keys()) {
                    auto v = c.opt(key);
                    if (!v) continue;
                    for (const auto& name : split_top(*v, ',')) cat.get_named(kind, name);
                }
                if (data->claims.count(c.id)) throw Error("duplicate claim");
                data->claim_order.push_back(c.id);
                data->claims.emplace(c.id, std::move(c));
                continue;
            }
            NamedEntity e;
            e.id = s.id;
            e.kind = entity_kind_from_string(s.kind);
            e.anchor = s.get("anchor").value_or("");
            switch (e.kind) {
                case EntityKind::gate:
                    if (auto m = s.get("matrix")) {
                        e.source = *m;
                        e.payload = parse_matrix(*m);
                    } else {
                        e.source = s.need("expr");
                        e.payload = cat.gate_expr(e.source);
                    }
                    if (!e.gate().is_square()) throw Error("gate is not square");
                    break;
                case EntityKind::group: {
                    GroupDef g;
                    e.source = s.need("generators");
                    for (const auto& x : split_top(e.source, ',')) g.generators.push_back(cat.gate_expr(x));
                    if (g.generators.empty()) throw Error("group needs generators");
                    if (auto cap = s.get("cap")) g.cap = parse_u64(*cap);
                    e.payload = std::move(g);
                    break;
                }
                case EntityKind::invariant: {
                    const int n = std::stoi(s.need("nvars"));
                    e.source = s.need("poly");
                    e.payload = parse_polynomial(e.source, n, cat.invariants(n));
                    break;
                }
                case EntityKind::closed_form:
                    e.source = s.need("form");
                    e.payload = parse_closed_form(e.source);
                    break;
            }
            add(std::move(e), s.line);
        } catch (const Error& err) {
            throw Error(where + err.what());
        } catch (const std::exception& err) {
            throw Error(where + err.what());
        }
    }
    return cat;
}

Catalog Catalog::load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open catalog file " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

Catalog Catalog::builtin() {
    static const Catalog cat = parse(builtin_catalog_text());
    // Fresh cache per call so callers control memory; entities are shared.
    Catalog c;
    c.data_ = cat.data_;
    c.cache_ = std::make_shared<Cache>();
    return c;
}

int Catalog::schema_version() const { return data_->schema; }

const NamedEntity& Catalog::get_named(EntityKind kind, std::string_view id) const {
    const auto& table = data_->entities[int(kind)];
    auto it = table.find(id);
    if (it == table.end()) throw UnknownName("unknown " + std::string(to_string(kind)) + " '" + std::string(id) + "'");
    return it->second;
}

std::vector<std::string> Catalog::ids(EntityKind kind) const { return data_->entity_order[int(kind)]; }

std::vector<std::string> Catalog::claim_ids() const {
    std::vector<std::string> out;
    for (const auto& [id, c] : data_->claims) out.push_back(id);
    return out;
}

const PaperClaim& Catalog::claim(std::string_view id) const {
    auto it = data_->claims.find(id);
    if (it == data_->claims.end()) throw UnknownName("unknown claim '" + std::string(id) + "'");
    return it->second;
}

std::vector<std::string> Catalog::match_claims(std::string_view glob) const {
    std::vector<std::string> out;
    for (const auto& [id, c] : data_->claims)
        if (glob_match(glob, id)) out.push_back(id);
    return out;
}

CycMatrix Catalog::gate_expr(std::string_view text) const {
    const std::string t = trim(text);
    if (t.rfind("kron(", 0) == 0 && t.back() == ')') {
        const auto parts = split_top(std::string_view(t).substr(5, t.size() - 6), ',');
        if (parts.size() < 2) throw Error("kron needs at least two factors");
        CycMatrix m = gate_expr(parts[0]);
        for (std::size_t k = 1; k < parts.size(); ++k) m = kron(m, gate_expr(parts[k]));
        return m;
    }
    return get_named(EntityKind::gate, t).gate();
}

PolyEnv Catalog::invariants(int nvars) const {
    PolyEnv env;
    for (const auto& [id, e] : data_->entities[int(EntityKind::invariant)])
        if (e.poly().nvars() == nvars) env.emplace(id, e.poly());
    return env;
}

FiniteMatrixGroup Catalog::group(std::string_view id, const RunOptions& opts) const {
    const GroupDef& def = get_named(EntityKind::group, id).group();
    const std::uint64_t cap = def.cap.value_or(opts.cap);
    const std::string key = std::string(id) + "#" + std::to_string(cap);
    return Cache::get<FiniteMatrixGroup>(cache_->m, cache_->groups, key,
                                         [&] { return FiniteMatrixGroup::closure(def.generators, cap); });
}

MolienSeries Catalog::molien(std::string_view group_id, const RunOptions& opts) const {
    const GroupDef& def = get_named(EntityKind::group, group_id).group();
    const std::string key = std::string(group_id) + "#" + std::to_string(def.cap.value_or(opts.cap)) + "#" +
                            std::to_string(opts.series_order);
    return Cache::get<MolienSeries>(cache_->m, cache_->series, key, [&] {
        return molien_series(group(group_id, opts), opts.series_order, std::max(1u, opts.threads));
    });
}

namespace {

using Checker = void (*)(const Catalog&, const PaperClaim&, const RunOptions&, Outcome&);

QuartitState random_quartit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return normalized(QuartitState{{n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}, {n(rng), n(rng)}});
}

QubitState random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    return normalized(QubitState{{n(rng), n(rng)}, {n(rng), n(rng)}});
}

int samples_of(const PaperClaim& c) { return c.opt("samples") ? std::stoi(*c.opt("samples")) : 1000; }

void check_order(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    out.expected = c.arg("value");
    out.computed = std::to_string(cat.group(c.arg("group"), o).order());
    out.ok = out.computed == out.expected;
}

void check_center(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    out.expected = c.arg("value");
    out.computed = std::to_string(center(cat.group(c.arg("group"), o)).order());
    out.ok = out.computed == out.expected;
}

std::string histogram_text(const GroupFingerprint& f) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto [k, v] : f.order_histogram) {
        os << (first ? "" : ",") << k << ":" << v;
        first = false;
    }
    os << "}";
    return os.str();
}

void check_noniso(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    const auto names = split_top(c.arg("groups"), ',');
    if (names.size() != 2) throw Error("noniso compares two groups");
    const auto a = order_histogram(cat.group(names[0], o));
    const auto b = order_histogram(cat.group(names[1], o));
    out.expected = "histograms differ";
    out.computed = a.order_histogram != b.order_histogram ? "histograms differ" : "histograms equal";
    out.details["histogram_" + names[0]] = histogram_text(a);
    out.details["histogram_" + names[1]] = histogram_text(b);
    out.ok = a.order_histogram != b.order_histogram;
}

void check_normal(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    out.expected = "normal";
    out.computed = is_normal(cat.group(c.arg("group"), o), cat.group(c.arg("sub"), o)) ? "normal" : "not normal";
    out.ok = out.computed == out.expected;
}

void check_quotient(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    out.expected = reference_fingerprint(c.arg("reference")).to_string();
    out.computed = quotient_fingerprint(cat.group(c.arg("group"), o), cat.group(c.arg("sub"), o)).to_string();
    out.ok = out.computed == out.expected;
}

void check_fingerprint(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    out.expected = reference_fingerprint(c.arg("reference")).to_string();
    out.computed = order_histogram(cat.group(c.arg("group"), o)).to_string();
    out.ok = out.computed == out.expected;
}

void check_derived(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    const auto other = cat.group(c.arg("equals"), o);
    const auto d = derived_subgroup(cat.group(c.arg("group"), o));
    out.expected = "same elements as " + c.arg("equals") + " (order " + std::to_string(other.order()) + ")";
    const bool same = d.sorted_keys() == other.sorted_keys();
    out.computed = same ? out.expected : "order " + std::to_string(d.order()) + ", different element set";
    out.ok = same;
}

void check_molien(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    const auto& form = cat.get_named(EntityKind::closed_form, c.arg("form"));
    const MolienSeries expected = expand_closed_form(form.form(), o.series_order);
    out.expected = expected.to_string();
    out.details["closed_form"] = form.source;
    out.details["series_order"] = std::to_string(o.series_order);
    const MolienComparison cmp = compare_series(cat.molien(c.arg("group"), o), expected);
    out.computed = cmp.computed.to_string();
    if (cmp.first_mismatch) out.details["first_mismatch"] = std::to_string(*cmp.first_mismatch);
    out.ok = cmp.match;
}

void check_degrees(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    std::vector<long long> ds;
    for (const auto& d : split_top(c.arg("degrees"), ',')) ds.push_back(std::stoll(d));
    out.computed = degrees_product(ds).get_str();
    if (auto v = c.opt("value")) out.expected = *v;
    else out.expected = std::to_string(cat.group(c.arg("group"), o).order());
    out.ok = out.computed == out.expected;
}

void check_invariant(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    const MultiPoly& f = cat.get_named(EntityKind::invariant, c.arg("poly")).poly();
    const auto& gens = cat.get_named(EntityKind::group, c.arg("group")).group().generators;
    out.expected = "invariant";
    std::vector<std::string> moved;
    for (std::size_t k = 0; k < gens.size(); ++k)
        if (substitute_linear(f, gens[k]) != f) moved.push_back(std::to_string(k + 1));
    out.computed = moved.empty() ? "invariant" : "changed by generator " + join(moved);
    out.ok = moved.empty();
}

void check_relation(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    const int n = std::stoi(c.arg("nvars"));
    const MultiPoly r = parse_polynomial(c.arg("expr"), n, cat.invariants(n));
    out.expected = "0";
    out.computed = r.is_zero() ? "0" : "nonzero: " + std::to_string(r.term_count()) + " terms of degree " + std::to_string(r.degree());
    if (!r.is_zero() && r.term_count() <= 6) out.details["remainder"] = r.to_string();
    out.ok = r.is_zero();
}

void check_reynolds(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    const auto degrees = parse_degrees(c.arg("degrees"));
    const int top = *std::max_element(degrees.begin(), degrees.end());
    std::vector<mpq_class> coeffs;
    if (auto form = c.opt("form")) {
        coeffs = expand_closed_form(cat.get_named(EntityKind::closed_form, *form).form(), std::max(top, 1)).coefficients;
        out.details["dimensions_from"] = *form;
    } else {
        RunOptions deep = o;
        deep.series_order = std::max(o.series_order, top);
        coeffs = cat.molien(c.arg("group"), deep).coefficients;
        out.details["dimensions_from"] = "computed Molien series";
    }
    const std::optional<std::string> prop = c.opt("proportional");
    const MultiPoly* target = prop ? &cat.get_named(EntityKind::invariant, *prop).poly() : nullptr;

    std::vector<std::string> exp, got;
    for (int d : degrees) exp.push_back("d" + std::to_string(d) + ":" + coeffs[d].get_str());
    if (target) exp.push_back("d" + std::to_string(target->degree()) + " basis proportional to " + *prop);
    out.expected = join(exp, " ");

    // Set before the group is touched so a cap failure still reports both sides.
    const FiniteMatrixGroup g = cat.group(c.arg("group"), o);
    bool ok = true;
    for (int d : degrees) {
        const auto basis = reynolds_basis(g, d);
        got.push_back("d" + std::to_string(d) + ":" + std::to_string(basis.size()));
        ok &= mpq_class(static_cast<long>(basis.size())) == coeffs[d];
        if (target && d == target->degree()) {
            const bool p = basis.size() == 1 && proportional(basis[0], *target).has_value();
            got.push_back("d" + std::to_string(d) + " basis " + (p ? "proportional" : "not proportional") + " to " + *prop);
            ok &= p;
        }
    }
    if (target && std::find(degrees.begin(), degrees.end(), target->degree()) == degrees.end())
        throw Error("proportional target degree is not among the checked degrees");
    out.computed = join(got, " ");
    out.ok = ok;
}

void check_independent(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    std::vector<MultiPoly> fs;
    for (const auto& n : split_top(c.arg("polys"), ',')) fs.push_back(cat.get_named(EntityKind::invariant, n).poly());
    out.expected = "independent";
    const bool ind = jacobian_independent(fs, 5, o.seed);
    out.computed = ind ? "independent" : "Jacobian rank deficient at every sample point";
    out.ok = ind;
}

void check_root(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    std::vector<ExactPoint> pts;
    for (const auto& p : split_top(c.arg("points"), ';')) {
        const auto parts = split_top(p, '/');
        if (parts.size() < 2) throw Error("point '" + p + "' must read p/q");
        // The last top-level slash separates p from q.
        std::string num = parts[0];
        for (std::size_t k = 1; k + 1 < parts.size(); ++k) num += "/" + parts[k];
        pts.push_back({parse_cyclotomic(num), parse_cyclotomic(parts.back())});
    }
    const MultiPoly f = root_polynomial(pts);
    const auto names = split_top(c.arg("polys"), ',');
    out.expected = names.size() == 1 ? "proportional to " + names[0] : "proportional to exactly one of " + join(names);
    std::vector<std::string> hits;
    for (const auto& n : names)
        if (auto lam = proportional(f, cat.get_named(EntityKind::invariant, n).poly())) {
            hits.push_back(n);
            out.details["lambda_" + n] = lam->to_string();
        }
    out.details["expansion"] = f.to_string();
    out.computed = hits.empty() ? "proportional to none" : "proportional to " + join(hits);
    out.ok = hits.size() == 1;
}

void check_sic(const Catalog&, const PaperClaim&, const RunOptions&, Outcome& out) {
    const double s3 = std::sqrt(3.0), pi = 3.14159265358979323846;
    const cplx a = std::sqrt(0.5) * std::sqrt(1 + 1 / s3);
    const cplx b = std::sqrt(0.5) * std::polar(1.0, pi / 4) * std::sqrt(1 - 1 / s3);
    const auto m = sic_overlaps(a, b);
    double dev = 0;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) dev = std::max(dev, std::abs(m[x][y] - (x == y ? 1.0 : 1.0 / 3)));
    out.expected = "off-diagonal overlaps 1/3";
    out.ok = dev <= 1e-12;
    out.computed = out.ok ? out.expected : "max deviation " + fmt_double(dev);
}

void check_stereo(const Catalog&, const PaperClaim&, const RunOptions& o, Outcome& out) {
    std::vector<std::string> bad;
    if (!stereographic({0, 0, 1}, o.tol).is_infinity(o.tol)) bad.push_back("north pole");
    if (!stereographic({0, 0, -1}, o.tol).same_point({0, 1}, o.tol)) bad.push_back("south pole");
    if (!stereographic({1, 0, 0}, o.tol).same_point({1, 1}, o.tol)) bad.push_back("(1,0,0)");
    if (!stereographic({-1, 0, 0}, o.tol).same_point({-1, 1}, o.tol)) bad.push_back("(-1,0,0)");
    std::mt19937_64 rng(o.seed);
    double dev = 0;
    for (int k = 0; k < 100; ++k) {
        const BlochVector b = bloch_map(random_qubit(rng));
        const BlochVector r = inverse_stereographic(stereographic(b, o.tol));
        dev = std::max({dev, std::abs(r.xi - b.xi), std::abs(r.eta - b.eta), std::abs(r.zeta - b.zeta)});
    }
    if (dev > o.tol) bad.push_back("round trip");
    out.expected = "poles, equator points and round trips agree";
    out.computed = bad.empty() ? out.expected : "mismatch at " + join(bad);
    out.ok = bad.empty();
}

void check_hopf_sphere(const Catalog&, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    std::mt19937_64 rng(o.seed);
    const bool second = c.arg("map") == "second";
    double dev = 0;
    for (int k = 0, n = samples_of(c); k < n; ++k)
        dev = std::max(dev, std::abs((second ? second_hopf(random_quartit(rng)).norm() : bloch_map(random_qubit(rng)).norm()) - 1));
    out.expected = "unit norm within 1e-12";
    out.ok = dev <= 1e-12;
    out.computed = out.ok ? out.expected : "max deviation " + fmt_double(dev);
}

void check_hopf_entanglement(const Catalog&, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    const double r = 1 / std::sqrt(2.0);
    const cplx i(0, 1);
    const std::vector<QuartitState> bell{{r, 0, 0, r}, {r, 0, 0, -r}, {0, r, r, 0}, {0, r, -r, 0}, {r, 0, 0, i * r}};
    double bell_dev = 0;
    for (const auto& s : bell) {
        const S4Point p = second_hopf(s);
        bell_dev = std::max({bell_dev, std::abs(p.xi), std::abs(p.eta), std::abs(p.zeta)});
    }
    std::mt19937_64 rng(o.seed);
    double prod_dev = 0;
    for (int k = 0, n = samples_of(c); k < n; ++k) {
        const QubitState a = random_qubit(rng), b = random_qubit(rng);
        const S4Point p = second_hopf({a.alpha * b.alpha, a.alpha * b.beta, a.beta * b.alpha, a.beta * b.beta});
        prod_dev = std::max(prod_dev, std::hypot(p.u, p.v));
    }
    out.expected = "Bell states: xi = eta = zeta = 0; product states: u = v = 0";
    std::vector<std::string> bad;
    if (bell_dev > o.tol) bad.push_back("Bell deviation " + fmt_double(bell_dev));
    if (prod_dev > o.tol) bad.push_back("product deviation " + fmt_double(prod_dev));
    out.ok = bad.empty();
    out.computed = out.ok ? out.expected : join(bad, "; ");
}

void check_hopf_fiber(const Catalog&, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    std::mt19937_64 rng(o.seed);
    std::normal_distribution<double> n;
    double dev = 0;
    for (int k = 0, m = samples_of(c); k < m; ++k) {
        const QuartitState s = random_quartit(rng);
        Quaternion u{n(rng), n(rng), n(rng), n(rng)};
        const double nu = u.norm();
        u = {u.w / nu, u.x / nu, u.y / nu, u.z / nu};
        const auto [q1, q2] = quaternion_pair(s);
        const S4Point a = second_hopf(s), b = second_hopf(from_quaternion_pair(q1 * u, q2 * u));
        dev = std::max({dev, std::abs(a.xi - b.xi), std::abs(a.eta - b.eta), std::abs(a.u - b.u), std::abs(a.v - b.v),
                        std::abs(a.zeta - b.zeta)});
    }
    out.expected = "image fixed within tolerance";
    out.ok = dev <= o.tol;
    out.computed = out.ok ? out.expected : "max deviation " + fmt_double(dev);
}

void check_hopf2_zeta(const Catalog&, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    std::mt19937_64 rng(o.seed);
    double printed = 0, corrected = 0, imag = 0;
    for (int k = 0, n = samples_of(c); k < n; ++k) {
        const QuartitState s = random_quartit(rng);
        const S4Point p = second_hopf(s);
        const cplx z = s.alpha * s.alpha - s.beta * s.beta + s.gamma * s.gamma - s.delta * s.delta;
        const double base = p.xi * p.xi + p.eta * p.eta + p.u * p.u + p.v * p.v;
        printed = std::max(printed, std::abs(std::sqrt(base + std::norm(z)) - 1));
        corrected = std::max(corrected, std::abs(p.norm() - 1));
        imag = std::max(imag, std::abs(z.imag()));
    }
    out.expected = "unit norm within 1e-12";
    out.ok = printed <= 1e-12;
    out.computed = out.ok ? out.expected : "max deviation " + fmt_double(printed);
    out.details["printed_zeta_max_imaginary_part"] = fmt_double(imag);
    out.details["corrected_zeta_max_deviation"] = fmt_double(corrected);
}

void check_gate_norm(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    const CycMatrix& m = cat.get_named(EntityKind::gate, c.arg("gate")).gate();
    const CycMatrix p = m * m.adjoint();
    out.expected = "M M^+ = I";
    const CycNum s = p.at(0, 0);
    if (p == CycMatrix::identity(m.rows()).scaled(s))
        out.computed = s.is_one() ? out.expected : "M M^+ = " + s.to_string() + " I";
    else
        out.computed = "M M^+ is not scalar";
    const MatrixProps props = mat_props(m);
    out.details["det"] = props.det.to_string();
    out.details["real"] = props.is_real ? "true" : "false";
    out.ok = props.is_unitary;
}

void check_gate_equal(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    const CycMatrix& a = cat.get_named(EntityKind::gate, c.arg("gate")).gate();
    const CycMatrix b = cat.gate_expr(c.arg("expr"));
    out.expected = c.arg("gate") + " = " + c.arg("expr");
    out.ok = a == b;
    out.computed = out.ok ? out.expected : c.arg("gate") + " != " + c.arg("expr");
}

void check_unitary(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    std::vector<std::string> bad;
    for (const auto& n : split_top(c.arg("gates"), ','))
        if (!mat_props(cat.get_named(EntityKind::gate, n).gate()).is_unitary) bad.push_back(n);
    out.expected = "all unitary";
    out.ok = bad.empty();
    out.computed = out.ok ? out.expected : "not unitary: " + join(bad);
}

void check_e8(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    out.expected = "all real orthogonal, |det| = 1, E8 preserved";
    out.details["e8_basis_gram_det"] = e8_gram_det().get_str();
    std::vector<std::string> bad;
    for (const auto& n : split_top(c.arg("gates"), ',')) {
        const CycMatrix& m = cat.get_named(EntityKind::gate, n).gate();
        const MatrixProps p = mat_props(m);
        const bool unimod = p.det == CycNum(1) || p.det == CycNum(-1);
        const bool pres = p.is_orthogonal && unimod && e8_preserved(m);
        out.details[n] = std::string(p.is_orthogonal ? "orthogonal" : "not orthogonal") + ", det " + p.det.to_string() +
                         (pres ? ", preserves E8" : ", does not preserve E8");
        if (!pres) bad.push_back(n);
    }
    out.ok = bad.empty();
    out.computed = out.ok ? out.expected : "fails for " + join(bad);
}

void check_cap(const Catalog& cat, const PaperClaim& c, const RunOptions& o, Outcome& out) {
    const auto& def = cat.get_named(EntityKind::group, c.arg("group")).group();
    const std::uint64_t cap = c.opt("cap") ? parse_u64(*c.opt("cap")) : o.cap;
    out.expected = CapExceeded(cap).what();
    try {
        const auto g = FiniteMatrixGroup::closure(def.generators, cap);
        out.computed = "closed with order " + std::to_string(g.order());
        out.ok = false;
    } catch (const CapExceeded& e) {
        out.computed = e.what();
        out.ok = true;
    }
}

void check_eigen(const Catalog& cat, const PaperClaim& c, const RunOptions&, Outcome& out) {
    std::vector<CycMatrix> triple;
    for (const auto& n : split_top(c.arg("triple"), ',')) triple.push_back(cat.get_named(EntityKind::gate, n).gate());
    const EigenbasisReport r = eigenbasis_relation(cat.get_named(EntityKind::gate, c.arg("gate")).gate(), triple);
    out.expected = "relation reported";
    out.computed = "convention " + r.convention;
    out.details["report"] = r.to_string();
    if (r.eigenvectors.size() == 4 && r.eigenvectors[0].size() == 4) {
        std::vector<std::string> cs;
        for (const auto& v : r.eigenvectors) cs.push_back(fmt_double(concurrence(v)));
        out.details["eigenvector_concurrence"] = join(cs);
    }
    out.ok = r.commuting;
}

Checker find_checker(const std::string& name) {
    static const std::map<std::string, Checker> table{
        {"order", check_order},           {"center", check_center},
        {"noniso", check_noniso},         {"normal", check_normal},
        {"quotient", check_quotient},     {"fingerprint", check_fingerprint},
        {"derived", check_derived},       {"molien", check_molien},
        {"degrees", check_degrees},       {"invariant", check_invariant},
        {"relation", check_relation},     {"reynolds", check_reynolds},
        {"independent", check_independent}, {"root", check_root},
        {"sic", check_sic},               {"stereo", check_stereo},
        {"hopf_sphere", check_hopf_sphere}, {"hopf_entanglement", check_hopf_entanglement},
        {"hopf_fiber", check_hopf_fiber}, {"hopf2_zeta", check_hopf2_zeta},
        {"gate_norm", check_gate_norm},   {"gate_equal", check_gate_equal},
        {"unitary", check_unitary},       {"e8", check_e8},
        {"cap", check_cap},               {"eigen", check_eigen}};
    auto it = table.find(name);
    if (it == table.end()) throw UnknownName("unknown check '" + name + "'");
    return it->second;
}

}  // namespace

ClaimResult Catalog::run_claim(std::string_view id, const RunOptions& opts) const {
    const PaperClaim& c = claim(id);
    ClaimResult r;
    r.id = c.id;
    Outcome out;
    bool internal_error = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        find_checker(c.check)(*this, c, opts, out);
    } catch (const CapExceeded& e) {
        // An enumeration cut off by the cap is a computed outcome, not a crash.
        out.computed = e.what();
        out.ok = false;
    } catch (const std::exception& e) {
        out.computed = std::string("error: ") + e.what();
        out.ok = false;
        internal_error = true;
    }
    r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.expected = std::move(out.expected);
    r.computed = std::move(out.computed);
    r.details = std::move(out.details);
    if (out.ok) r.status = ClaimStatus::pass;
    else if (!internal_error && c.expected_status == ExpectedStatus::known_discrepancy) r.status = ClaimStatus::discrepancy;
    else r.status = ClaimStatus::fail;
    return r;
}

std::vector<ClaimResult> Catalog::run_claims(std::string_view glob, const RunOptions& opts) const {
    // Schedule in file order (slow claims are listed first), report by id.
    std::vector<std::string> todo;
    for (const auto& id : data_->claim_order)
        if (glob_match(glob, id)) todo.push_back(id);
    std::vector<ClaimResult> results(todo.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, unsigned(todo.size())));
    RunOptions inner = opts;
    if (workers > 1) inner.threads = 1;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next++) < todo.size();) results[k] = run_claim(todo[k], inner);
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    std::sort(results.begin(), results.end(), [](const ClaimResult& a, const ClaimResult& b) { return a.id < b.id; });
    return results;
}

}  // namespace quivar
