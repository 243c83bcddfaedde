#include <doctest.h>

#include <random>

#include "kieval/fixtures.hpp"
#include "kieval/metrics.hpp"
#include "kieval/rpa.hpp"
#include "testutil.hpp"

using namespace kieval;

namespace {

SweepInput fixture_input(const std::string& name) {
    auto fc = load_fixture(name, testutil::fixture_dir());
    std::vector<DocumentExtraction> gts{fc.gt.documents[0]};
    std::vector<DocumentExtraction> preds{fc.pred.documents[0]};
    std::vector<GroupMatchResult> matches{match_groups(preds[0], gts[0])};
    return collect_sweep_input(preds, matches, gts);
}

}  // namespace

TEST_CASE("wrong-value fixture: review at 0.5 fixes the one substitution") {
    auto input = fixture_input("wrong_value");
    auto points = sweep(input, {0.0, 0.5});
    REQUIRE(points.size() == 2);

    CHECK(points[0].reviewed == 0);
    CHECK(points[0].auto_rate == doctest::Approx(1.0));
    CHECK(points[0].kieval_aligned_tau == doctest::Approx(1.0 - 1.0 / 7.0));

    CHECK(points[1].reviewed == 1);
    CHECK(points[1].auto_rate == doctest::Approx(6.0 / 7.0));
    CHECK(points[1].subs_tau == 0);
    CHECK(points[1].del_tau == 0);
    CHECK(points[1].add == 0);
    CHECK(points[1].n_pr_star == 7);
    CHECK(points[1].kieval_aligned_tau == doctest::Approx(1.0));
}

TEST_CASE("tau=1.0 reviews everything below 1.0, leaving only additions") {
    // The fixture's pred file carries no confidences, so attach some.
    auto fc = load_fixture("missing_entity", testutil::fixture_dir());
    auto pred = fc.pred.documents[0];
    for (auto& g : pred.groups)
        for (auto& e : g.entities) e.confidence = 0.7;
    std::vector<DocumentExtraction> gts{fc.gt.documents[0]}, preds{pred};
    std::vector<GroupMatchResult> matches{match_groups(pred, gts[0])};
    auto in = collect_sweep_input(preds, matches, gts);

    auto points = sweep(in, {1.0});
    REQUIRE(points.size() == 1);
    CHECK(points[0].reviewed == 6);
    CHECK(points[0].subs_tau == 0);
    CHECK(points[0].del_tau == 0);
    CHECK(points[0].add == 1);
    CHECK(points[0].kieval_aligned_tau ==
          doctest::Approx(1.0 - 1.0 / (points[0].n_pr_star + 1.0)));
}

TEST_CASE("missing confidence is rejected with doc and entity named") {
    auto fc = load_fixture("perfect", testutil::fixture_dir());
    std::vector<DocumentExtraction> gts{fc.gt.documents[0]}, preds{fc.pred.documents[0]};
    std::vector<GroupMatchResult> matches{match_groups(preds[0], gts[0])};
    try {
        collect_sweep_input(preds, matches, gts);
        FAIL("expected MissingConfidenceError");
    } catch (const MissingConfidenceError& e) {
        std::string msg = e.what();
        CHECK(msg.find("receipt-001") != std::string::npos);
        CHECK(msg.find("store.name") != std::string::npos);
    }
}

TEST_CASE("default grid has 101 points from 0 to 1") {
    auto grid = default_tau_grid();
    REQUIRE(grid.size() == 101);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == 1.0);
}

TEST_CASE("property: curve monotone, endpoint ties out with the error ledger") {
    std::mt19937 rng(101);
    testutil::GenOptions opt;
    opt.with_confidence = true;
    auto grid = default_tau_grid();
    for (int i = 0; i < 100; ++i) {
        auto gt = testutil::random_document(rng, "d");
        auto pred = testutil::random_document(rng, "d", opt);
        auto match = match_groups(pred, gt);
        auto input = collect_sweep_input({pred}, {match}, {gt});
        auto points = sweep(input, grid);

        for (std::size_t k = 1; k < points.size(); ++k) {
            CHECK(points[k].kieval_aligned_tau >= points[k - 1].kieval_aligned_tau - 1e-12);
            CHECK(points[k].auto_rate <= points[k - 1].auto_rate + 1e-12);
        }

        // tau=0 reviews nothing: same ledger as the metrics module.
        auto r = evaluate_document(gt, pred);
        const auto& c = r.ledger.overall;
        double expected = 1.0;
        if (r.pred_entities + c.add > 0)
            expected = 1.0 - static_cast<double>(c.error()) /
                                 static_cast<double>(r.pred_entities + c.add);
        CHECK(points[0].kieval_aligned_tau == doctest::Approx(expected).epsilon(1e-12));
        CHECK(points[0].subs_tau == c.subs);
        CHECK(points[0].del_tau == c.del);
        CHECK(points[0].add == c.add);
        CHECK(points[0].n_pr_star == r.pred_entities);
    }
}

TEST_CASE("property: review conservation on prediction counts") {
    std::mt19937 rng(102);
    testutil::GenOptions opt;
    opt.with_confidence = true;
    for (int i = 0; i < 50; ++i) {
        auto gt = testutil::random_document(rng, "d");
        auto pred = testutil::random_document(rng, "d", opt);
        auto match = match_groups(pred, gt);
        auto input = collect_sweep_input({pred}, {match}, {gt});
        auto points = sweep(input, {0.25, 0.75});
        for (const auto& p : points) {
            std::int64_t reviewed_del =
                static_cast<std::int64_t>(input.predictions.size()) - p.n_pr_star;
            CHECK(reviewed_del >= 0);
            CHECK(reviewed_del <= p.reviewed);
        }
    }
}
