#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kieval/model.hpp"

namespace kieval {

struct DatasetFile {
    std::vector<DocumentExtraction> documents;
    std::string source_path;
    std::size_t unknown_field_warnings = 0;
};

// Malformed input (bad JSON, schema violation, duplicate ids, unpaired docs
// under the error policy). Maps to CLI exit code 2.
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string normalize_value(std::string_view v, Normalization mode);

// Parses a dataset from JSON text. Ungrouped entity lists (group_type null or
// absent) are merged into the non-group bucket in file order; every document
// gets a bucket at index 0 even when the input had none. Values are
// normalized per config.normalization.
DatasetFile parse_dataset(std::string_view text, const EvalConfig& config,
                          std::string source_path = "<memory>");

DatasetFile parse_dataset_file(const std::string& path, const EvalConfig& config);

// Pairs documents by id, ground truth first. Under TreatAsEmpty a missing
// counterpart becomes an empty document (non-group bucket only); under Error
// any unpaired id throws. Pairs come out in ground-truth file order, with
// prediction-only documents (TreatAsEmpty) appended in prediction order.
std::vector<std::pair<DocumentExtraction, DocumentExtraction>> pair_documents(
    const DatasetFile& gt, const DatasetFile& pred, const EvalConfig& config);

}  // namespace kieval
