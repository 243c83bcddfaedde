#include "kieval/fixtures.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kieval {

namespace {

std::string resolve_dir(std::string dir) {
    if (!dir.empty()) return dir;
    if (const char* env = std::getenv("KIEVAL_FIXTURE_DIR")) return env;
    return "fixtures";
}

}  // namespace

FixtureCase load_fixture(const std::string& name, std::string dir) {
    dir = resolve_dir(std::move(dir));
    const std::string gt_path = dir + "/" + name + ".gt.json";
    const std::string pred_path = dir + "/" + name + ".pred.json";
    if (!std::filesystem::exists(gt_path))
        throw IngestError("unknown fixture '" + name + "' (no " + gt_path + ")");

    FixtureCase fc;
    fc.name = name;
    EvalConfig config;  // fixtures are evaluated raw, no normalization
    fc.gt = parse_dataset_file(gt_path, config);
    fc.pred = parse_dataset_file(pred_path, config);

    std::ifstream in(dir + "/expected.json");
    if (in) {
        std::ostringstream buf;
        buf << in.rdbuf();
        auto all = nlohmann::json::parse(buf.str());
        if (all.contains(name)) fc.expected_json = all[name].dump();
    }
    return fc;
}

std::vector<std::string> fixture_names(std::string dir) {
    dir = resolve_dir(std::move(dir));
    std::vector<std::string> names;
    const std::string suffix = ".gt.json";
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        std::string fname = entry.path().filename().string();
        if (fname.size() > suffix.size() &&
            fname.compare(fname.size() - suffix.size(), suffix.size(), suffix) == 0)
            names.push_back(fname.substr(0, fname.size() - suffix.size()));
    }
    std::sort(names.begin(), names.end());
    return names;
}

}  // namespace kieval
