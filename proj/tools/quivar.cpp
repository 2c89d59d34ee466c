// quivar: run catalog claims and the underlying computations from a shell.
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "quivar/catalog.hpp"
#include "quivar/errors.hpp"
#include "quivar/qgeom.hpp"
#include "quivar/report.hpp"

using namespace quivar;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    int series_order = kDefaultSeriesOrder;
    double tol = 1e-10;
    unsigned threads = 0;
    std::string out;
    bool json = false;
    bool strict = false;
    std::uint64_t cap = kDefaultClosureCap;
    bool timings = false;
    std::string catalog;
    std::string timestamp;

    RunOptions run() const {
        RunOptions o;
        o.series_order = series_order;
        o.tol = tol;
        o.cap = cap;
        o.threads = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
        return o;
    }
};

Catalog load(const Globals& g) { return g.catalog.empty() ? Catalog::builtin() : Catalog::load_file(g.catalog); }

void emit(const Globals& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw Error("cannot write " + g.out);
    f << text;
    if (!f) throw Error("write failed for " + g.out);
}

// Decimal parts, imaginary one suffixed by i: "0.6", "-0.8i", "0.5+0.5 i".
std::complex<double> parse_complex(std::string s) {
    std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
    if (s.empty()) throw Error("empty amplitude");
    auto num = [&](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) throw Error("bad number '" + t + "'");
        return v;
    };
    if (s.back() != 'i') return {num(s), 0};
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    if (split == std::string::npos) return {0, num(s)};
    return {num(s.substr(0, split)), num(s.substr(split))};
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", std::abs(x) < 1e-15 ? 0.0 : x);
    return buf;
}

std::string fmt(std::complex<double> z) {
    return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + " i";
}

FiniteMatrixGroup resolve_group(const Catalog& cat, const Globals& g, const std::string& id,
                                const std::vector<std::string>& gens) {
    if (!id.empty() && !gens.empty()) throw Error("give either --group or --gen, not both");
    if (!id.empty()) return cat.group(id, g.run());
    if (gens.empty()) throw Error("need --group ID or at least one --gen MATRIX");
    std::vector<CycMatrix> ms;
    for (const auto& s : gens) ms.push_back(parse_matrix(s));
    return FiniteMatrixGroup::closure(ms, g.cap);
}

int exit_code(const std::vector<ClaimResult>& rs, bool strict) {
    const SummaryCounts s = summarize(rs);
    return (s.fail > 0 || (strict && s.discrepancy > 0)) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quivar: exact checks of qubit and quartit invariant theory"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--series-order", g.series_order, "Molien series order")->check(CLI::NonNegativeNumber);
    app.add_option("--tol", g.tol, "Floating tolerance for geometry checks");
    app.add_option("--threads", g.threads, "Worker threads (default: all cores)")->envname("QUIVAR_THREADS");
    app.add_option("--out", g.out, "Write output to this path instead of stdout");
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_flag("--strict", g.strict, "Treat known discrepancies as failures");
    app.add_option("--cap", g.cap, "Closure cap on group order");
    app.add_flag("--timings", g.timings, "Include runtime_ms (breaks byte-identical reports)");
    app.add_option("--catalog", g.catalog, "Catalog file to use instead of the built-in one")->check(CLI::ExistingFile);
    app.add_option("--timestamp", g.timestamp, "Fixed report timestamp");

    std::string glob = "*";
    auto* verify = app.add_subcommand("verify", "Run catalog claims and write a JSON report");
    verify->add_option("glob", glob, "Claim id glob");

    std::string claim_id;
    auto* claim = app.add_subcommand("claim", "Run one claim");
    claim->add_option("id", claim_id)->required();

    std::string list_kind = "claim";
    auto* list = app.add_subcommand("list", "List claims or named entities");
    list->add_option("--kind", list_kind)->check(CLI::IsMember({"claim", "gate", "group", "invariant", "closed_form"}));

    std::string group_id, form_text;
    std::vector<std::string> gens;
    int degree = 0;
    auto group_opts = [&](CLI::App* sc) {
        sc->add_option("--group", group_id, "Catalog group id");
        sc->add_option("--gen", gens, "Generator matrix literal (repeatable)");
    };
    auto* molien = app.add_subcommand("molien", "Molien series of a group");
    group_opts(molien);
    molien->add_option("--form", form_text, "Closed form to compare against, e.g. \"1 / (1-t^8)(1-t^12)\"");
    auto* reynolds = app.add_subcommand("reynolds", "Invariant basis in one degree");
    group_opts(reynolds);
    reynolds->add_option("--degree", degree)->required()->check(CLI::NonNegativeNumber);
    auto* closure = app.add_subcommand("closure", "Enumerate a group and print its fingerprint");
    group_opts(closure);

    std::string amplitudes;
    auto* state = app.add_subcommand("state", "Hopf coordinates of a qubit or quartit state");
    state->add_option("amplitudes", amplitudes, "Comma-separated complex amplitudes, e.g. \"0.6, 0.8i\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify || *claim) {
            const Catalog cat = load(g);
            const RunOptions run = g.run();
            std::vector<ClaimResult> rs;
            if (*verify) {
                if (cat.match_claims(glob).empty()) throw Error("no claim matches '" + glob + "'");
                rs = cat.run_claims(glob, run);
            } else {
                rs.push_back(cat.run_claim(claim_id, run));
            }
            ReportOptions ro;
            ro.timings = g.timings;
            if (!g.timestamp.empty()) ro.timestamp = g.timestamp;
            std::cerr << render_table(rs, g.timings);
            if (*verify || g.json) {
                emit(g, render_report(cat, rs, run, ro));
            } else {
                const ClaimResult& r = rs.front();
                std::string text = r.id + ": " + std::string(to_string(r.status)) + "\n  expected: " + r.expected +
                                   "\n  computed: " + r.computed + "\n";
                for (const auto& [k, v] : r.details) text += "  " + k + ": " + v + "\n";
                emit(g, text);
            }
            return exit_code(rs, g.strict);
        }
        if (*list) {
            const Catalog cat = load(g);
            json j = json::array();
            std::string text;
            if (list_kind == "claim") {
                for (const auto& id : cat.claim_ids()) {
                    const PaperClaim& c = cat.claim(id);
                    j.push_back({{"id", id}, {"check", c.check}, {"expected_status", to_string(c.expected_status)},
                                 {"description", c.description}});
                    text += id + "  [" + c.check + (c.expected_status == ExpectedStatus::pass ? "" : ", known discrepancy") +
                            "]  " + c.description + "\n";
                }
            } else {
                const EntityKind kind = entity_kind_from_string(list_kind);
                for (const auto& id : cat.ids(kind)) {
                    const NamedEntity& e = cat.get_named(kind, id);
                    j.push_back({{"id", id}, {"source", e.source}});
                    text += id + " = " + e.source + "\n";
                }
            }
            emit(g, g.json ? j.dump(2) + "\n" : text);
            return 0;
        }
        if (*molien || *reynolds || *closure) {
            const Catalog cat = load(g);
            const FiniteMatrixGroup grp = resolve_group(cat, g, group_id, gens);
            if (*closure) {
                const GroupFingerprint fp = order_histogram(grp);
                if (g.json) {
                    json hist = json::object();
                    for (auto [k, v] : fp.order_histogram) hist[std::to_string(k)] = std::to_string(v);
                    emit(g, json{{"order", std::to_string(grp.order())},
                                 {"center_order", std::to_string(fp.center_order)},
                                 {"derived_order", std::to_string(fp.derived_order)},
                                 {"exponent", std::to_string(fp.exponent)},
                                 {"order_histogram", hist},
                                 {"fingerprint", fp.to_string()}}
                                    .dump(2) +
                                "\n");
                } else {
                    emit(g, "order " + std::to_string(grp.order()) + "\n" + fp.to_string() + "\n");
                }
                return 0;
            }
            if (*molien) {
                const MolienSeries s = molien_series(grp, g.series_order, g.run().threads);
                json j{{"group_order", std::to_string(grp.order())}, {"series", s.to_string()}};
                j["coefficients"] = json::array();
                for (const auto& c : s.coefficients) j["coefficients"].push_back(c.get_str());
                std::string text = s.to_string() + "\n";
                int rc = 0;
                if (!form_text.empty()) {
                    const MolienComparison cmp = compare_series(s, expand_closed_form(parse_closed_form(form_text), g.series_order));
                    j["form"] = form_text;
                    j["form_series"] = cmp.expected.to_string();
                    j["match"] = cmp.match;
                    if (cmp.first_mismatch) j["first_mismatch"] = std::to_string(*cmp.first_mismatch);
                    text += cmp.match ? "matches the closed form\n"
                                      : "differs from the closed form at t^" + std::to_string(*cmp.first_mismatch) + "\n" +
                                            cmp.expected.to_string() + "\n";
                    rc = cmp.match ? 0 : 1;
                }
                emit(g, g.json ? j.dump(2) + "\n" : text);
                return rc;
            }
            const auto basis = reynolds_basis(grp, degree);
            json j{{"degree", degree}, {"dimension", std::to_string(basis.size())}, {"basis", json::array()}};
            std::string text = "dimension " + std::to_string(basis.size()) + "\n";
            for (const auto& p : basis) {
                j["basis"].push_back(p.to_string());
                text += p.to_string() + "\n";
            }
            emit(g, g.json ? j.dump(2) + "\n" : text);
            return 0;
        }
        // state
        std::vector<std::complex<double>> amps;
        std::stringstream ss(amplitudes);
        for (std::string tok; std::getline(ss, tok, ',');) amps.push_back(parse_complex(tok));
        double n2 = 0;
        for (auto a : amps) n2 += std::norm(a);
        if (n2 == 0) throw Error("zero state");
        if (std::abs(std::sqrt(n2) - 1) > 1e-6) {
            std::cerr << "warning: state norm " << fmt(std::sqrt(n2)) << " differs from 1; normalizing\n";
        }
        for (auto& a : amps) a /= std::sqrt(n2);
        json j;
        std::string text;
        if (amps.size() == 2) {
            const BlochVector b = bloch_map({amps[0], amps[1]});
            const RiemannPoint r = stereographic(b, g.tol);
            j["bloch"] = {b.xi, b.eta, b.zeta};
            j["riemann"] = r.is_infinity(g.tol) ? json("infinity") : json{r.value().real(), r.value().imag()};
            text = "bloch (xi, eta, zeta) = (" + fmt(b.xi) + ", " + fmt(b.eta) + ", " + fmt(b.zeta) + ")\n" +
                   "riemann point = " + (r.is_infinity(g.tol) ? std::string("infinity") : fmt(r.value())) + "\n";
        } else if (amps.size() == 4) {
            const QuartitState psi{amps[0], amps[1], amps[2], amps[3]};
            const S4Point p = second_hopf(psi);
            const Entanglement e = entanglement(psi, g.tol);
            j["s4"] = {p.xi, p.eta, p.u, p.v, p.zeta};
            j["concurrence"] = e.c;
            j["separable"] = e.separable;
            text = "S4 (xi, eta, u, v, zeta) = (" + fmt(p.xi) + ", " + fmt(p.eta) + ", " + fmt(p.u) + ", " + fmt(p.v) + ", " +
                   fmt(p.zeta) + ")\nconcurrence = " + fmt(e.c) + (e.separable ? " (separable)\n" : " (entangled)\n");
        } else {
            throw Error("state needs 2 or 4 amplitudes, got " + std::to_string(amps.size()));
        }
        emit(g, g.json ? j.dump(2) + "\n" : text);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
