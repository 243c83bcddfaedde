#pragma once

#include <string>
#include <vector>

#include "kieval/ingest.hpp"

namespace kieval {

// One canonical test case: ground truth, prediction, and the frozen expected
// counts/scores from fixtures/expected.json (parsed but not interpreted here;
// tests own the assertions).
struct FixtureCase {
    std::string name;
    DatasetFile gt;
    DatasetFile pred;
    std::string expected_json;  // the fixture's entry from expected.json
};

// Loads <dir>/<name>.gt.json and <dir>/<name>.pred.json through the real
// ingest path. dir defaults to $KIEVAL_FIXTURE_DIR, falling back to
// "fixtures". Throws IngestError for unknown names.
FixtureCase load_fixture(const std::string& name, std::string dir = {});

std::vector<std::string> fixture_names(std::string dir = {});

}  // namespace kieval
