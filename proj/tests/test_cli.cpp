#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "testutil.hpp"

namespace {

const std::string kCli = KIEVAL_CLI_PATH;
const std::string kFixtures = KIEVAL_FIXTURE_DIR;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.txt";
    const std::string err_path = "cli_test_stderr.txt";
    int rc = std::system((kCli + " " + args + " >" + out_path + " 2>" + err_path).c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

std::string fx(const std::string& name, const std::string& side) {
    return kFixtures + "/" + name + "." + side + ".json";
}

}  // namespace

TEST_CASE("evaluate: perfect prediction scores 1.0 everywhere") {
    auto r = run("evaluate --gt " + fx("perfect", "gt") + " --pred " + fx("perfect", "pred") +
                 " --no-timestamp");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["scores"]["legacy_entity_f1"]["f1"] == 1.0);
    CHECK(j["scores"]["kieval_entity_f1"]["f1"] == 1.0);
    CHECK(j["scores"]["kieval_group_f1"]["f1"] == 1.0);
    CHECK(j["scores"]["kieval_aligned"] == 1.0);
    CHECK(j["counts"]["error"] == 0);
    CHECK(j["manifest"]["inputs"].size() == 2);
}

TEST_CASE("evaluate: swap fixture in one table row set") {
    auto r = run("evaluate --gt " + fx("swap", "gt") + " --pred " + fx("swap", "pred") +
                 " --format table");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("1.0000") != std::string::npos);  // legacy
    CHECK(r.out.find("0.7143") != std::string::npos);  // kieval entity
    CHECK(r.out.find("0.0000") != std::string::npos);  // group
}

TEST_CASE("evaluate: --per-type adds per-entity-type rows") {
    auto r = run("evaluate --gt " + fx("swap", "gt") + " --pred " + fx("swap", "pred") +
                 " --format csv --per-type");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("type.menu.cnt.f1,") != std::string::npos);
    CHECK(r.out.find("group_type.menu.tp,") != std::string::npos);
}

TEST_CASE("evaluate: group column '-' for a group-free dataset") {
    auto r = run("evaluate --gt " + fx("sroie_style", "gt") + " --pred " +
                 fx("sroie_style", "pred") + " --format table");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("KIEval Group F1       -") != std::string::npos);
}

TEST_CASE("evaluate: unreadable file exits 2") {
    auto r = run("evaluate --gt /nonexistent.json --pred " + fx("perfect", "pred"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("evaluate: unpaired doc under the default error policy exits 2") {
    auto r = run("evaluate --gt " + fx("perfect", "gt") + " --pred " + fx("empty_both", "pred"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("sweep: two grid points match the hand-traced curve") {
    auto r = run("sweep --gt " + fx("wrong_value", "gt") + " --pred " +
                 fx("wrong_value", "pred") + " --tau-list 0.0 0.5 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header, row0, row1;
    std::getline(lines, header);
    std::getline(lines, row0);
    std::getline(lines, row1);
    CHECK(header == "tau,auto_rate,kieval_aligned_tau,reviewed,subs_tau,del_tau,add,n_pr_star");
    CHECK(row0.rfind("0,1,0.857142857", 0) == 0);
    CHECK(row1.find("0.5,") == 0);
    CHECK(row1.find(",1,0,0,0,7") != std::string::npos);
}

TEST_CASE("sweep: knee point respects the auto-rate floor") {
    auto r = run("sweep --gt " + fx("wrong_value", "gt") + " --pred " +
                 fx("wrong_value", "pred") +
                 " --tau-list 0.0 0.5 --auto-rate-floor 0.8 --no-timestamp");
    REQUIRE(r.exit_code == 0);
    auto j = nlohmann::json::parse(r.err);  // summary goes to stderr when CSV is on stdout
    CHECK(j["knee"]["tau"] == 0.5);
}

TEST_CASE("sweep: missing confidence exits 2 with the entity named") {
    auto r = run("sweep --gt " + fx("perfect", "gt") + " --pred " + fx("perfect", "pred"));
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("store.name") != std::string::npos);
}

TEST_CASE("sweep: degenerate tau grid is a usage error") {
    auto r = run("sweep --gt " + fx("wrong_value", "gt") + " --pred " +
                 fx("wrong_value", "pred") + " --tau-steps 1");
    CHECK(r.exit_code == 2);
}

TEST_CASE("validate: clean file exits 0, silent") {
    auto r = run("validate " + fx("perfect", "gt"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("validate: out-of-range confidence exits 1 with one line") {
    std::ofstream bad("cli_bad_conf.json");
    bad << R"({"documents":[{"id":"d","groups":[
        {"group_type":null,"entities":[{"type":"t","value":"v","confidence":1.3}]}]}]})";
    bad.close();
    auto r = run("validate cli_bad_conf.json");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("confidence") != std::string::npos);

    auto e = run("evaluate --gt cli_bad_conf.json --pred cli_bad_conf.json");
    CHECK(e.exit_code == 2);  // evaluate refuses invalid inputs outright
}

TEST_CASE("validate: malformed JSON exits 2 with a position diagnostic") {
    std::ofstream out("cli_malformed.json");
    out << "{ \"documents\": [";
    out.close();
    auto r = run("validate cli_malformed.json");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("parse") != std::string::npos);
}
