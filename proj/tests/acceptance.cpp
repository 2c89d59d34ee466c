// Acceptance criteria, one line each. Exit status 0 only if all hold.
#include <cstdio>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "gates.hpp"
#include "quivar/catalog.hpp"
#include "quivar/report.hpp"

using namespace quivar;

namespace {

using Results = std::map<std::string, ClaimResult>;

struct Line {
    bool ok = true;
    std::string notes;

    // Record a claim: it must end with the given status.
    void claim(const Results& rs, const std::string& id, ClaimStatus want = ClaimStatus::pass) {
        const ClaimResult& r = rs.at(id);
        const bool good = r.status == want;
        ok &= good;
        add(id + (good ? " ok" : " " + std::string(to_string(r.status)) + " (" + r.computed + ")"));
    }
    void check(bool cond, const std::string& what) {
        ok &= cond;
        add(what + (cond ? " ok" : " FAILED"));
    }
    void add(const std::string& s) { notes += (notes.empty() ? "" : "; ") + s; }
};

int failures = 0;

void print(int n, const char* title, const Line& l) {
    std::printf("%s %2d  %s: %s\n", l.ok ? "PASS" : "FAIL", n, title, l.notes.c_str());
    std::fflush(stdout);
    failures += !l.ok;
}

// Brute-force oracle: naive closure, element orders and center.
struct Brute {
    std::vector<CycMatrix> elems;
    explicit Brute(const std::vector<CycMatrix>& gens) {
        elems.push_back(CycMatrix::identity(gens[0].rows()));
        for (std::size_t k = 0; k < elems.size(); ++k)
            for (const auto& g : gens) {
                CycMatrix m = elems[k] * g;
                bool seen = false;
                for (const auto& e : elems) seen = seen || e == m;
                if (!seen) elems.push_back(std::move(m));
            }
    }
    std::map<int, int> histogram() const {
        std::map<int, int> h;
        for (const auto& e : elems) {
            int n = 1;
            for (CycMatrix p = e; !p.is_identity(); p = p * e) ++n;
            ++h[n];
        }
        return h;
    }
    std::size_t center() const {
        std::size_t c = 0;
        for (const auto& z : elems) {
            bool central = true;
            for (const auto& e : elems) central = central && z * e == e * z;
            c += central;
        }
        return c;
    }
};

}  // namespace

int main() {
    // At least 4 workers so the comparison exercises parallel scheduling.
    const unsigned hw = std::max(4u, std::thread::hardware_concurrency());
    ReportOptions ro;
    ro.timestamp = "1970-01-01T00:00:00Z";
    RunOptions many;
    many.threads = hw;

    Results rs;
    std::string report_many;
    {
        const Catalog cat = Catalog::builtin();
        const auto results = cat.run_claims("*", many);
        report_many = render_report(cat, results, many, ro);
        for (const auto& r : results) rs.emplace(r.id, r);
    }

    {
        Line l;
        for (const char* id : {"ORDER-P2", "ORDER-PQ", "ORDER-CCNOT", "ORDER-C1", "ORDER-U8", "ORDER-CS"}) l.claim(rs, id);
        // The printed U4 generators do not close to 24 elements.
        l.claim(rs, "ORDER-U4");
        print(1, "group orders by closure", l);
    }
    {
        Line l;
        l.claim(rs, "NONISO-P2-PQ");
        l.claim(rs, "CENTER-P2");
        l.claim(rs, "CENTER-PQ");
        const Brute p2(gates::pauli2());
        const Brute pq({gates::X(), gates::Z()});
        l.check(p2.elems.size() == 64 && pq.elems.size() == 64, "oracle orders 64/64");
        l.check(p2.histogram() != pq.histogram(), "oracle histograms differ");
        l.check(p2.center() == 4 && pq.center() == 4, "oracle centers 4/4");
        print(2, "non-isomorphism audit", l);
    }
    {
        Line l;
        for (const char* id : {"NORMAL-P2-CCNOT", "NORMAL-P2-CS", "QUOT-CCNOT", "QUOT-CS"}) l.claim(rs, id);
        print(3, "normality and quotients", l);
    }
    {
        Line l;
        for (const char* id : {"MS-U8", "MS-C1", "MS-CS", "REYN-O"}) l.claim(rs, id);
        l.claim(rs, "MS-OCTA", ClaimStatus::discrepancy);
        l.check(!rs.at("MS-OCTA").computed.empty() && rs.at("MS-OCTA").details.count("first_mismatch"),
                "MS-OCTA series attached");
        l.claim(rs, "MS-U4");
        print(4, "Molien series to order 40", l);
    }
    {
        Line l;
        for (const char* id : {"INV-T-O", "INV-W-U8", "INV-KAPPA-U8", "INV-W-C1", "INV-G-C1", "INV8-CS", "INV12-CS",
                               "INV20-CS", "INV24-CS", "INV-I2-U36", "INV-I8C-U36"})
            l.claim(rs, id);
        // I8 exactly as printed.
        l.claim(rs, "INV-I8-U36");
        print(5, "invariance suite", l);
    }
    {
        Line l;
        l.claim(rs, "REL-KLEIN");
        l.claim(rs, "REL-GOLAY");
        l.claim(rs, "REL-KLEIN-PRINTED", ClaimStatus::discrepancy);
        print(6, "syzygies", l);
    }
    {
        Line l;
        l.claim(rs, "REYN-U8");
        l.claim(rs, "REYN-CS8");
        l.claim(rs, "REYN-U4");
        print(7, "Reynolds and Molien cross-check", l);
    }
    {
        Line l;
        for (const char* id : {"SIC", "HOPF-S2", "HOPF-S4", "HOPF-ENT", "ROOT-OCTA", "ROOT-TETRA"}) l.claim(rs, id);
        print(8, "geometry", l);
    }
    {
        Line l;
        for (const char* id : {"DEGREES-E8", "E8-GENS", "U36-CAP"}) l.claim(rs, id);
        print(9, "E8 surrogate checks", l);
    }
    {
        Line l;
        RunOptions one;
        one.threads = 1;
        const Catalog cat = Catalog::builtin();
        const std::string report_one = render_report(cat, cat.run_claims("*", one), one, ro);
        l.check(report_one == report_many,
                "full registry at 1 and " + std::to_string(hw) + " threads, " + std::to_string(report_one.size()) + " bytes");
        print(10, "determinism", l);
    }
    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
