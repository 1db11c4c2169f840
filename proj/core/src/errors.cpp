#include "fcssc/errors.hpp"

namespace fcssc {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnreadableFile: return "unreadable_file";
        case ErrorCode::RaggedRows: return "ragged_rows";
        case ErrorCode::MissingLabelColumn: return "missing_label_column";
        case ErrorCode::AllMissingColumn: return "all_missing_column";
        case ErrorCode::EmptyTable: return "empty_table";
        case ErrorCode::MissingLabelValue: return "missing_label_value";
        case ErrorCode::MalformedInput: return "malformed_input";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::InconsistentDatasets: return "inconsistent_datasets";
        case ErrorCode::DegenerateStatistic: return "degenerate_statistic";
        case ErrorCode::Internal: return "internal";
    }
    return "unknown";
}

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnreadableFile:
        case ErrorCode::MissingLabelColumn:
        case ErrorCode::InvalidArgument:
            return 2;
        case ErrorCode::RaggedRows:
        case ErrorCode::AllMissingColumn:
        case ErrorCode::EmptyTable:
        case ErrorCode::MissingLabelValue:
        case ErrorCode::MalformedInput:
        case ErrorCode::InconsistentDatasets:
        case ErrorCode::DegenerateStatistic:
            return 3;
        case ErrorCode::Internal:
            return 4;
    }
    return 4;
}

}  // namespace fcssc
