#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "gates.hpp"
#include "invariants.hpp"
#include "quivar/catalog.hpp"
#include "quivar/errors.hpp"
#include "quivar/report.hpp"

using namespace quivar;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const Catalog& cat() {
    static const Catalog c = Catalog::builtin();
    return c;
}

std::vector<std::string> all_anchors(const Catalog& c) {
    std::vector<std::string> out;
    for (const auto& id : c.claim_ids()) out.push_back(c.claim(id).anchor);
    for (auto k : {EntityKind::gate, EntityKind::group, EntityKind::invariant, EntityKind::closed_form})
        for (const auto& id : c.ids(k))
            if (!c.get_named(k, id).anchor.empty()) out.push_back(c.get_named(k, id).anchor);
    return out;
}

// Small catalog for status-mapping tests.
const char* kMini = R"(schema_version = 1

[gate a]
matrix = 0,1; 1,0

[gate b]
matrix = 1,0;
  0,-1

[group G]
generators = a, b

[claim OK-KD]
anchor = x
check = order
group = G
value = 8
expect = known_discrepancy

[claim BAD]
anchor = x
check = order
group = G
value = 7

[claim BAD-KD]
anchor = x
check = order
group = G
value = 7
expect = known_discrepancy

[claim ERR-KD]
anchor = x
check = degrees
degrees = 2, nope
value = 4
expect = known_discrepancy
)";

}  // namespace

TEST_CASE("embedded data matches the files in data/") {
    CHECK(builtin_catalog_text() == slurp(QUIVAR_SOURCE_DIR "/data/catalog.qv"));
    CHECK(builtin_formula_sheet() == slurp(QUIVAR_SOURCE_DIR "/data/paper_formulas.tex"));
    CHECK(cat().schema_version() == kCatalogSchemaVersion);
}

TEST_CASE("every anchor appears verbatim in the formula sheet") {
    const std::string sheet(builtin_formula_sheet());
    for (const auto& a : all_anchors(cat())) {
        INFO(a);
        CHECK(sheet.find(a) != std::string::npos);
    }
}

TEST_CASE("anchors appear verbatim in the source document when it is present") {
    const std::string source = slurp(QUIVAR_SOURCE_DIR "/paper.md");
    if (source.empty()) return;  // not distributed with the repository
    for (const auto& a : all_anchors(cat())) {
        INFO(a);
        CHECK(source.find(a) != std::string::npos);
    }
}

TEST_CASE("get_named returns validated entities") {
    CHECK(cat().get_named(EntityKind::gate, "S3").gate() == gates::S3());
    CHECK(cat().get_named(EntityKind::gate, "S").gate() == gates::S());
    CHECK(cat().get_named(EntityKind::gate, "S_printed").gate() == gates::S().scaled(CycNum(2)));
    CHECK(cat().get_named(EntityKind::invariant, "W").poly() == invs::W());
    CHECK(cat().get_named(EntityKind::invariant, "kappa").poly() == invs::kappa());
    CHECK(cat().get_named(EntityKind::invariant, "inv8").poly() == invs::inv8());
    CHECK(cat().get_named(EntityKind::invariant, "I8_corrected").poly() == invs::I8_corrected());
    CHECK(cat().get_named(EntityKind::group, "U4").group().generators.size() == 2);
    CHECK(cat().get_named(EntityKind::group, "U36").group().generators[1] == gates::IIsz());
    CHECK_THROWS_AS(cat().get_named(EntityKind::gate, "nope"), UnknownName);
    CHECK_THROWS_AS(cat().claim("NOPE"), UnknownName);
}

TEST_CASE("gate expressions") {
    CHECK(cat().gate_expr("kron(sz, P)") == gates::Z());
    CHECK(cat().gate_expr(" kron(I2, kron(I2, sz)) ") == gates::IIsz());
    CHECK_THROWS_AS(cat().gate_expr("kron(sz)"), Error);
}

TEST_CASE("known discrepancies are the whitelisted ones") {
    std::set<std::string> kd;
    for (const auto& id : cat().claim_ids())
        if (cat().claim(id).expected_status == ExpectedStatus::known_discrepancy) kd.insert(id);
    const std::set<std::string> want{"MS-OCTA", "REL-KLEIN-PRINTED", "HOPF2-ZETA", "GATE-S-NORM",
                                     "ORDER-U4", "MS-U4",  "REYN-U4",           "INV-I8-U36"};
    CHECK(kd == want);
}

TEST_CASE("loader rejects malformed catalogs") {
    CHECK_THROWS_AS(Catalog::parse("[gate a]\nmatrix = 1\n"), Error);                     // no schema
    CHECK_THROWS_AS(Catalog::parse("schema_version = 2\n"), Error);                       // unsupported
    CHECK_THROWS_AS(Catalog::parse("schema_version = 1\n[gate a]\nmatrix = 1\n[gate a]\nmatrix = 2\n"), Error);
    CHECK_THROWS_AS(Catalog::parse("schema_version = 1\n[gate a]\nmatrix = 1,2; 3\n"), Error);
    CHECK_THROWS_AS(Catalog::parse("schema_version = 1\n[claim C]\nanchor = x\ncheck = order\ngroup = G\n"), Error);
    CHECK_THROWS_AS(Catalog::parse("schema_version = 1\n[claim C]\nanchor = x\ncheck = frobnicate\n"), Error);
    CHECK_THROWS_AS(Catalog::parse("schema_version = 1\n[widget w]\nx = 1\n"), Error);
    CHECK_NOTHROW(Catalog::parse("schema_version = 1\n# nothing else\n"));
}

TEST_CASE("status mapping") {
    const Catalog c = Catalog::parse(kMini);
    CHECK(c.get_named(EntityKind::gate, "b").gate() == gates::sz());  // continuation line
    CHECK(c.run_claim("OK-KD").status == ClaimStatus::pass);
    CHECK(c.run_claim("BAD").status == ClaimStatus::fail);
    CHECK(c.run_claim("BAD-KD").status == ClaimStatus::discrepancy);
    const ClaimResult err = c.run_claim("ERR-KD");
    CHECK(err.status == ClaimStatus::fail);
    CHECK(err.computed.rfind("error:", 0) == 0);
}

TEST_CASE("cap failures are reported as computed values") {
    RunOptions o;
    o.cap = 5;
    const ClaimResult r = Catalog::parse(kMini).run_claim("BAD", o);
    CHECK(r.status == ClaimStatus::fail);
    CHECK(r.computed == "closure exceeded cap of 5 elements");
}

TEST_CASE("registry examples") {
    const ClaimResult order = cat().run_claim("ORDER-CCNOT");
    CHECK(order.status == ClaimStatus::pass);
    CHECK(order.computed == "3072");

    const ClaimResult ms = cat().run_claim("MS-OCTA");
    CHECK(ms.status == ClaimStatus::discrepancy);
    CHECK(ms.details.at("first_mismatch") == "4");
    CHECK(ms.expected.rfind("1 - t^4 + t^6", 0) == 0);
    CHECK(ms.computed.rfind("1 + t^6 + t^8", 0) == 0);

    CHECK(cat().run_claim("REL-KLEIN").status == ClaimStatus::pass);
    CHECK(cat().run_claim("REL-KLEIN-PRINTED").status == ClaimStatus::discrepancy);
    CHECK(cat().run_claim("GATE-S-NORM").computed == "M M^+ = 4 I");
    CHECK(cat().run_claim("ROOT-TETRA").computed == "proportional to tetra_lower");
}

TEST_CASE("glob matching") {
    CHECK(glob_match("*", ""));
    CHECK(glob_match("ORDER-*", "ORDER-CS"));
    CHECK_FALSE(glob_match("ORDER-*", "MS-CS"));
    CHECK(glob_match("*-CS", "ORDER-CS"));
    CHECK(glob_match("MS-U?", "MS-U4"));
    CHECK_FALSE(glob_match("MS-U?", "MS-U46"));
    CHECK(glob_match("*U*4*", "MS-U4"));
    const auto orders = cat().match_claims("ORDER-*");
    CHECK(orders.size() == 8);
    CHECK(std::is_sorted(orders.begin(), orders.end()));
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    const char* glob = "*-O*";  // a cheap cross-section touching several checkers
    RunOptions one, four;
    four.threads = 4;
    ReportOptions ro;
    ro.timestamp = "2000-01-01T00:00:00Z";
    const Catalog a = Catalog::builtin(), b = Catalog::builtin();
    const std::string r1 = render_report(a, a.run_claims(glob, one), one, ro);
    const std::string r2 = render_report(b, b.run_claims(glob, four), four, ro);
    CHECK(r1 == r2);
    CHECK(r1.find("runtime_ms") == std::string::npos);
    CHECK(r1.find("\"timestamp\": \"2000-01-01T00:00:00Z\"") != std::string::npos);
}

TEST_CASE("report summary counts match results") {
    const auto rs = cat().run_claims("*-O*");
    const SummaryCounts s = summarize(rs);
    CHECK(s.total() == rs.size());
    CHECK(s.discrepancy == 1);  // MS-OCTA
    CHECK(s.fail == 0);
    CHECK(iso8601_utc_now().size() == 20);
}
