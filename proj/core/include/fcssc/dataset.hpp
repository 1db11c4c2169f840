#ifndef FCSSC_DATASET_HPP
#define FCSSC_DATASET_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fcssc/matrix.hpp"

namespace fcssc {

/// One parsed CSV field. `number` is set when the token parses as a finite
/// numeric value; the raw token is always kept so mixed columns can fall
/// back to categorical treatment.
struct Cell {
    bool missing = true;
    std::string raw;
    std::optional<double> number;
};

struct RawTable {
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> column_names;
    std::size_t label_column = 0;

    std::size_t num_rows() const { return rows.size(); }
    std::size_t num_columns() const { return column_names.size(); }
};

/// Normalized decision system: N samples over M features in [0,1], plus the
/// decision-class partition. Immutable after construction by convention.
struct FuzzyDecisionSystem {
    Matrix samples;                                   // N x M
    std::vector<std::string> feature_names;           // M
    std::vector<int> labels;                          // N, class ids 0..c-1
    std::vector<std::string> class_names;             // c, original label tokens
    std::vector<std::vector<std::size_t>> classes;    // partition, first-occurrence order

    std::size_t num_samples() const { return samples.rows(); }
    std::size_t num_features() const { return samples.cols(); }
    std::size_t num_classes() const { return classes.size(); }
};

/// A row-restricted view materialized as its own decision system. Classes are
/// re-indexed locally (absent classes drop out); `class_ids` maps local class
/// index back to the parent's id and `rows` maps local row to parent row.
struct Subsystem {
    FuzzyDecisionSystem fds;
    std::vector<int> class_ids;
    std::vector<std::size_t> rows;
};

/// Parse a comma-delimited file. Empty fields are recorded as missing. With a
/// header the label column is selected by name; a non-negative integer is
/// also accepted as a zero-based column index (and is the only form without
/// a header). An empty label spec picks the last column.
RawTable load_csv(const std::filesystem::path& path, const std::string& label_column,
                  bool has_header);

/// Replace every missing cell with its column's mode. Numeric ties break to
/// the smallest value, categorical ties to the lexicographically smallest
/// token. A column with no observed value at all is an error.
RawTable impute_missing(RawTable table);

/// Min-max normalize every feature column into [0,1] and build the decision
/// class partition. Constant columns map to all zeros; categorical columns
/// are integer-coded by first occurrence before scaling. The label column is
/// never scaled.
FuzzyDecisionSystem normalize_min_max(const RawTable& table);

/// Group indices by equal label, groups ordered by first occurrence.
template <typename Label>
std::vector<std::vector<std::size_t>> class_partition(const std::vector<Label>& labels) {
    std::vector<std::vector<std::size_t>> groups;
    std::vector<Label> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::size_t g = 0;
        while (g < seen.size() && !(seen[g] == labels[i])) ++g;
        if (g == seen.size()) {
            seen.push_back(labels[i]);
            groups.emplace_back();
        }
        groups[g].push_back(i);
    }
    return groups;
}

Subsystem subsystem_from_rows(const FuzzyDecisionSystem& full,
                              const std::vector<std::size_t>& rows);

}  // namespace fcssc

#endif
