#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "json.hpp"

#include "bianchi/report.hpp"

using namespace bianchi;

namespace {

bool has_code(const AnalysisReport& r, DiagCode code) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

SearchConfig default_cfg() { return SearchConfig{}; }

}  // namespace

TEST_CASE("analyze composes the module results") {
    auto r5 = analyze(5, default_cfg());
    CHECK(r5.D == 5);
    CHECK(r5.n == 1);
    CHECK(r5.paper_N == 2);
    CHECK(r5.classgroup.h == 2);
    CHECK(r5.singular_class_count == 1);
    CHECK(r5.covered_class_count == 1);
    REQUIRE(r5.symmetries.size() == 1);
    CHECK(r5.symmetries[0].type == SymmetryType::III);
    CHECK(r5.symmetries[0].report.verified());
    CHECK_FALSE(has_code(r5, DiagCode::PAPER_N_EXCEEDS_CLASSES));
    CHECK_FALSE(has_code(r5, DiagCode::FEWER_SYMMETRIES_THAN_THEOREM));

    auto r6 = analyze(6, default_cfg());
    CHECK(r6.paper_N == 4);
    CHECK(r6.classgroup.h == 2);
    CHECK(has_code(r6, DiagCode::PAPER_N_EXCEEDS_CLASSES));
    bool has_type_i = std::any_of(r6.symmetries.begin(), r6.symmetries.end(),
                                  [](const SymmetryCandidate& c) {
                                      return c.type == SymmetryType::I;
                                  });
    CHECK(has_type_i);
    CHECK(r6.covered_class_count == 1);

    auto r15 = analyze(15, default_cfg());
    CHECK(r15.symmetries.empty());
    CHECK(has_code(r15, DiagCode::FEWER_SYMMETRIES_THAN_THEOREM));

    CHECK_THROWS_AS(analyze(3, default_cfg()), ExcludedFieldError);
    CHECK_THROWS_AS(analyze(1, default_cfg()), ExcludedFieldError);
    CHECK_THROWS_AS(analyze(12, default_cfg()), std::invalid_argument);
}

TEST_CASE("range scan") {
    auto scan = range_scan(2, 30, default_cfg());
    CHECK(scan.skipped == std::vector<long long>{3, 4, 8, 9, 12, 16, 18, 20, 24, 25, 27, 28});
    for (const auto& r : scan.reports) {
        CHECK(is_squarefree(r.D));
        CHECK(r.D != 3);
    }
    CHECK(scan.reports.size() + scan.skipped.size() == 29);
    // ordered ascending
    for (size_t i = 1; i < scan.reports.size(); ++i)
        CHECK(scan.reports[i - 1].D < scan.reports[i].D);

    auto single = range_scan(5, 5, default_cfg());
    REQUIRE(single.reports.size() == 1);
    CHECK(emit(single.reports[0], EmitFormat::Json) ==
          emit(analyze(5, default_cfg()), EmitFormat::Json));

    CHECK_THROWS_AS(range_scan(1, 5, default_cfg()), std::invalid_argument);
    CHECK_THROWS_AS(range_scan(10, 5, default_cfg()), std::invalid_argument);
}

TEST_CASE("range scan is deterministic across worker counts") {
    SearchConfig one = default_cfg();
    SearchConfig four = default_cfg();
    four.workers = 4;
    auto a = emit_range(range_scan(2, 40, one), EmitFormat::Json);
    auto b = emit_range(range_scan(2, 40, four), EmitFormat::Json);
    auto c = emit_range(range_scan(2, 40, one), EmitFormat::Json);
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("emit formats") {
    auto r = analyze(5, default_cfg());

    CHECK(csv_header() ==
          "D,type,m,a1,a2,b,c,sigma_num,sigma_den,radius_sq,class_index,verified,diag_codes");

    std::string csv = emit(r, EmitFormat::Csv);
    CHECK(csv.rfind(csv_header() + "\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          static_cast<long>(1 + r.symmetries.size()));

    // json round trip: parse and re-dump reproduces the document
    std::string js = emit(r, EmitFormat::Json);
    auto parsed = nlohmann::ordered_json::parse(js);
    CHECK(parsed.dump(2) + "\n" == js);
    CHECK(parsed["D"] == 5);
    CHECK(parsed["class_number"] == 2);
    CHECK(parsed["symmetries"].size() == r.symmetries.size());
    CHECK(parsed["symmetries"][0]["radius_sq"] == "1/2");
    CHECK(parsed["symmetries"][0]["verified"] == true);

    std::string pretty6 = emit(analyze(6, default_cfg()), EmitFormat::Pretty);
    CHECK(pretty6.find("PAPER_N_EXCEEDS_CLASSES") != std::string::npos);

    CHECK(parse_format("pretty") == EmitFormat::Pretty);
    CHECK(parse_format("json") == EmitFormat::Json);
    CHECK(parse_format("csv") == EmitFormat::Csv);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("paper fixtures") {
    auto results = paper_check();
    REQUIRE(results.size() == 9);  // seven table rows + two historical cases
    for (const auto& f : results) {
        CAPTURE(f.name);
        CAPTURE(f.detail);
        CHECK(f.pass);
    }
    std::string pretty = emit_fixtures(results, EmitFormat::Pretty);
    CHECK(pretty.find("[PASS]") != std::string::npos);
    CHECK(pretty.find("[FAIL]") == std::string::npos);
}
