#include <doctest.h>

#include "kieval/model.hpp"

using namespace kieval;

namespace {

DocumentExtraction well_formed() {
    DocumentExtraction doc;
    doc.doc_id = "d1";
    doc.groups.push_back(EntityGroup{});
    doc.groups[0].entities.push_back({"store.name", "X", std::nullopt});
    doc.groups.push_back({"menu", {{"menu.nm", "AMERICANO", std::nullopt}}});
    doc.groups.push_back({"menu", {{"menu.nm", "LATTE", std::nullopt}}});
    return doc;
}

}  // namespace

TEST_CASE("well-formed document has no violations") {
    CHECK(validate_document(well_formed()).empty());
}

TEST_CASE("confidence outside [0,1] is flagged") {
    auto doc = well_formed();
    doc.groups[1].entities[0].confidence = 1.3;
    auto v = validate_document(doc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("menu.nm") != std::string::npos);
    CHECK(v[0].find("confidence") != std::string::npos);
}

TEST_CASE("a second non-group bucket is flagged") {
    auto doc = well_formed();
    doc.groups.push_back(EntityGroup{});  // duplicate bucket
    auto v = validate_document(doc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("non-group") != std::string::npos);
}

TEST_CASE("missing bucket at index 0 is flagged") {
    DocumentExtraction doc;
    doc.doc_id = "d1";
    doc.groups.push_back({"menu", {{"menu.nm", "X", std::nullopt}}});
    auto v = validate_document(doc);
    CHECK(!v.empty());
}

TEST_CASE("empty grouped group and empty entity type are flagged") {
    auto doc = well_formed();
    doc.groups.push_back({"menu", {}});
    doc.groups[0].entities.push_back({"", "v", std::nullopt});
    auto v = validate_document(doc);
    CHECK(v.size() == 2);
}

TEST_CASE("empty value is legal") {
    auto doc = well_formed();
    doc.groups[0].entities.push_back({"store.tel", "", std::nullopt});
    CHECK(validate_document(doc).empty());
}
