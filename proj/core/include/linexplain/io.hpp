#pragma once

#include <string>
#include <vector>

#include "linexplain/model.hpp"

namespace linexplain {

// Model file: TSV lines `feature_id<TAB>weight`, with the reserved id token
// `__intercept__` carrying the intercept. `#` comments and blank lines are
// skipped. The threshold is not part of the file; it is runtime configuration.
LinearModel load_model(const std::string& path, double threshold = 0.0);

// Canonical form: entries in id order, intercept line last, shortest
// round-trip number formatting. save(load(save(x))) is byte-identical.
void save_model(const LinearModel& model, const std::string& path);

// Data file: SVMLight-style lines `label idx:1 idx:1 ...` with strictly
// increasing indices and all values exactly 1 (features are binary). `#`
// comments and blank lines are skipped; instance ids number the data lines
// from 0. The vocabulary size is inferred as max index + 1 unless a larger
// num_features is given.
SparseDataset load_dataset(const std::string& path, std::size_t num_features = 0);

void save_dataset(const SparseDataset& dataset, const std::string& path);

// Sidecar TSV `feature_id<TAB>name`; returns a vector indexed by feature id
// (missing ids keep empty names). Duplicate ids are an error.
std::vector<std::string> load_feature_names(const std::string& path);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace linexplain
