#include <doctest.h>

#include "kieval/fixtures.hpp"
#include "kieval/report.hpp"
#include "testutil.hpp"

using namespace kieval;

namespace {

MetricReport fixture_report(const std::string& name) {
    auto fc = load_fixture(name, testutil::fixture_dir());
    EvalConfig cfg;
    auto pairs = pair_documents(fc.gt, fc.pred, cfg);
    return aggregate(evaluate_pairs(pairs), true);
}

}  // namespace

TEST_CASE("json report is deterministic without a timestamp") {
    auto rep = fixture_report("swap");
    RunManifest m;
    m.inputs.push_back({"gt.json", "0123456789abcdef"});
    auto a = render_report_json(rep, m);
    auto b = render_report_json(rep, m);
    CHECK(a == b);
    CHECK(a.find("timestamp") == std::string::npos);
    CHECK(a.find("\"manifest\"") != std::string::npos);
    CHECK(a.find("\"scores\"") != std::string::npos);
    CHECK(a.find("\"counts\"") != std::string::npos);
    CHECK(a.find("\"per_type\"") != std::string::npos);
    CHECK(a.find("\"per_group_type\"") != std::string::npos);
    CHECK(a.find("\"per_doc\"") != std::string::npos);
}

TEST_CASE("inapplicable group F1 renders as '-' in table and csv, null in json") {
    auto rep = fixture_report("sroie_style");
    RunManifest m;
    CHECK(render_report_table(rep).find("KIEval Group F1       -") != std::string::npos);
    CHECK(render_report_csv(rep).find("kieval_group_f1,-") != std::string::npos);
    CHECK(render_report_json(rep, m).find("\"kieval_group_f1\": null") != std::string::npos);
}

TEST_CASE("table rounds scores to four decimals in the familiar row order") {
    auto rep = fixture_report("swap");
    auto table = render_report_table(rep);
    auto entity = table.find("Entity F1");
    auto kieval_entity = table.find("KIEval Entity F1");
    auto group = table.find("KIEval Group F1");
    auto aligned = table.find("KIEval Aligned");
    REQUIRE(entity != std::string::npos);
    CHECK(entity < kieval_entity);
    CHECK(kieval_entity < group);
    CHECK(group < aligned);
    CHECK(table.find("0.7143") != std::string::npos);
}

TEST_CASE("parallel evaluation matches sequential") {
    auto fc = load_fixture("swap", testutil::fixture_dir());
    EvalConfig cfg;
    std::vector<std::pair<DocumentExtraction, DocumentExtraction>> pairs;
    for (int i = 0; i < 20; ++i) {
        auto p = pair_documents(fc.gt, fc.pred, cfg);
        pairs.insert(pairs.end(), p.begin(), p.end());
    }
    auto seq = aggregate(evaluate_pairs(pairs, 1));
    auto par = aggregate(evaluate_pairs(pairs, 8));
    CHECK(seq.kieval_entity_f1.f1 == par.kieval_entity_f1.f1);
    CHECK(seq.ledger.overall.error() == par.ledger.overall.error());
    CHECK(seq.documents == par.documents);
}

TEST_CASE("sweep csv carries the fixed header") {
    std::vector<SweepPoint> pts{{0.5, 0.9, 0.8, 1, 2, 3, 4, 10}};
    auto csv = render_sweep_csv(pts);
    CHECK(csv.rfind("tau,auto_rate,kieval_aligned_tau,reviewed,subs_tau,del_tau,add,n_pr_star\n",
                    0) == 0);
    CHECK(csv.find("0.5,0.9,0.8,1,2,3,4,10") != std::string::npos);
}

TEST_CASE("knee point: highest tau with auto_rate at or above the floor") {
    std::vector<SweepPoint> pts;
    for (int i = 0; i <= 4; ++i) {
        SweepPoint p;
        p.tau = i * 0.25;
        p.auto_rate = 1.0 - i * 0.2;
        pts.push_back(p);
    }
    auto knee = knee_point(pts, 0.5);
    REQUIRE(knee.has_value());
    CHECK(knee->tau == doctest::Approx(0.5));
    CHECK(!knee_point(pts, 1.5).has_value());
}

TEST_CASE("fnv digest is stable and input-sensitive") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") != fnv1a64_hex("b"));
    CHECK(fnv1a64_hex("abc") == fnv1a64_hex("abc"));
}
