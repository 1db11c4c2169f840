#include "fcssc/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fcssc/errors.hpp"

namespace fcssc {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Cell parse_cell(const std::string& token) {
    Cell cell;
    cell.raw = trim(token);
    if (cell.raw.empty()) return cell;
    cell.missing = false;
    const char* begin = cell.raw.data();
    const char* end = begin + cell.raw.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec == std::errc{} && ptr == end && std::isfinite(value)) cell.number = value;
    return cell;
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(current);
            current.clear();
        } else if (ch != '\r') {
            current.push_back(ch);
        }
    }
    fields.push_back(current);
    return fields;
}

bool column_is_numeric(const RawTable& table, std::size_t col) {
    for (const auto& row : table.rows) {
        const Cell& cell = row[col];
        if (!cell.missing && !cell.number.has_value()) return false;
    }
    return true;
}

}  // namespace

RawTable load_csv(const std::filesystem::path& path, const std::string& label_column,
                  bool has_header) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::UnreadableFile, "cannot open input file: " + path.string());
    }

    RawTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() && in.peek() == std::ifstream::traits_type::eof()) break;
        const std::vector<std::string> fields = split_line(line);
        if (first && has_header) {
            for (const auto& name : fields) table.column_names.push_back(trim(name));
            first = false;
            continue;
        }
        if (first) {
            table.column_names.resize(fields.size());
            for (std::size_t i = 0; i < fields.size(); ++i) {
                table.column_names[i] = "c" + std::to_string(i);
            }
            first = false;
        }
        if (fields.size() != table.column_names.size()) {
            throw Error(ErrorCode::RaggedRows,
                        "row " + std::to_string(table.rows.size() + 1) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(table.column_names.size()));
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const auto& field : fields) row.push_back(parse_cell(field));
        table.rows.push_back(std::move(row));
    }
    if (table.column_names.empty()) {
        throw Error(ErrorCode::EmptyTable, "input file has no rows: " + path.string());
    }

    if (trim(label_column).empty()) {
        table.label_column = table.num_columns() - 1;
        return table;
    }
    auto by_name = std::find(table.column_names.begin(), table.column_names.end(),
                             trim(label_column));
    if (has_header && by_name != table.column_names.end()) {
        table.label_column =
            static_cast<std::size_t>(std::distance(table.column_names.begin(), by_name));
        return table;
    }
    std::size_t index = 0;
    const std::string token = trim(label_column);
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec == std::errc{} && ptr == token.data() + token.size() &&
        index < table.num_columns()) {
        table.label_column = index;
        return table;
    }
    throw Error(ErrorCode::MissingLabelColumn,
                "label column '" + label_column + "' not found");
}

RawTable impute_missing(RawTable table) {
    const std::size_t cols = table.num_columns();
    for (std::size_t col = 0; col < cols; ++col) {
        bool any_missing = false;
        for (const auto& row : table.rows) any_missing |= row[col].missing;
        if (!any_missing) continue;

        Cell fill;
        if (column_is_numeric(table, col)) {
            std::map<double, std::size_t> counts;
            for (const auto& row : table.rows) {
                if (!row[col].missing) ++counts[*row[col].number];
            }
            if (counts.empty()) {
                throw Error(ErrorCode::AllMissingColumn,
                            "column '" + table.column_names[col] +
                                "' is entirely missing, no mode exists");
            }
            // std::map iterates in ascending key order, so the first maximal
            // count is the smallest tied value.
            double best = 0.0;
            std::size_t best_count = 0;
            for (const auto& [value, count] : counts) {
                if (count > best_count) {
                    best = value;
                    best_count = count;
                }
            }
            std::ostringstream os;
            os << best;
            fill = Cell{false, os.str(), best};
        } else {
            std::map<std::string, std::size_t> counts;
            for (const auto& row : table.rows) {
                if (!row[col].missing) ++counts[row[col].raw];
            }
            if (counts.empty()) {
                throw Error(ErrorCode::AllMissingColumn,
                            "column '" + table.column_names[col] +
                                "' is entirely missing, no mode exists");
            }
            std::string best;
            std::size_t best_count = 0;
            for (const auto& [value, count] : counts) {
                if (count > best_count) {
                    best = value;
                    best_count = count;
                }
            }
            fill = Cell{false, best, std::nullopt};
        }
        for (auto& row : table.rows) {
            if (row[col].missing) row[col] = fill;
        }
    }
    return table;
}

FuzzyDecisionSystem normalize_min_max(const RawTable& table) {
    const std::size_t n = table.num_rows();
    if (n == 0) throw Error(ErrorCode::EmptyTable, "cannot normalize a table with zero rows");

    std::vector<std::size_t> feature_cols;
    for (std::size_t col = 0; col < table.num_columns(); ++col) {
        if (col != table.label_column) feature_cols.push_back(col);
    }

    FuzzyDecisionSystem fds;
    fds.samples = Matrix(n, feature_cols.size());
    for (std::size_t col : feature_cols) fds.feature_names.push_back(table.column_names[col]);

    for (std::size_t j = 0; j < feature_cols.size(); ++j) {
        const std::size_t col = feature_cols[j];
        std::vector<double> values(n);
        if (column_is_numeric(table, col)) {
            for (std::size_t i = 0; i < n; ++i) {
                const Cell& cell = table.rows[i][col];
                if (cell.missing) {
                    throw Error(ErrorCode::InvalidArgument,
                                "normalize_min_max requires an imputed table; column '" +
                                    table.column_names[col] + "' still has missing cells");
                }
                values[i] = *cell.number;
            }
        } else {
            // Integer-code categories by first occurrence, then scale the codes.
            std::vector<std::string> seen;
            for (std::size_t i = 0; i < n; ++i) {
                const Cell& cell = table.rows[i][col];
                if (cell.missing) {
                    throw Error(ErrorCode::InvalidArgument,
                                "normalize_min_max requires an imputed table; column '" +
                                    table.column_names[col] + "' still has missing cells");
                }
                auto it = std::find(seen.begin(), seen.end(), cell.raw);
                if (it == seen.end()) {
                    seen.push_back(cell.raw);
                    it = std::prev(seen.end());
                }
                values[i] = static_cast<double>(std::distance(seen.begin(), it));
            }
        }
        const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
        const double mn = *mn_it;
        const double mx = *mx_it;
        const double span = mx - mn;
        for (std::size_t i = 0; i < n; ++i) {
            fds.samples(i, j) = span > 0.0 ? (values[i] - mn) / span : 0.0;
        }
    }

    std::vector<std::string> label_tokens(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Cell& cell = table.rows[i][table.label_column];
        if (cell.missing) {
            throw Error(ErrorCode::MissingLabelValue,
                        "row " + std::to_string(i) + " has no label value");
        }
        label_tokens[i] = cell.raw;
    }
    fds.classes = class_partition(label_tokens);
    fds.labels.assign(n, 0);
    fds.class_names.resize(fds.classes.size());
    for (std::size_t c = 0; c < fds.classes.size(); ++c) {
        fds.class_names[c] = label_tokens[fds.classes[c].front()];
        for (std::size_t i : fds.classes[c]) fds.labels[i] = static_cast<int>(c);
    }
    return fds;
}

Subsystem subsystem_from_rows(const FuzzyDecisionSystem& full,
                              const std::vector<std::size_t>& rows) {
    Subsystem sub;
    sub.rows = rows;
    sub.fds.samples = Matrix(rows.size(), full.num_features());
    sub.fds.feature_names = full.feature_names;

    std::vector<int> original_labels(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < full.num_features(); ++j) {
            sub.fds.samples(i, j) = full.samples(rows[i], j);
        }
        original_labels[i] = full.labels[rows[i]];
    }
    sub.fds.classes = class_partition(original_labels);
    sub.fds.labels.assign(rows.size(), 0);
    for (std::size_t c = 0; c < sub.fds.classes.size(); ++c) {
        const int original = original_labels[sub.fds.classes[c].front()];
        sub.class_ids.push_back(original);
        sub.fds.class_names.push_back(full.class_names[static_cast<std::size_t>(original)]);
        for (std::size_t i : sub.fds.classes[c]) sub.fds.labels[i] = static_cast<int>(c);
    }
    return sub;
}

}  // namespace fcssc
