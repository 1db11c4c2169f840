#ifndef FCSSC_ERRORS_HPP
#define FCSSC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fcssc {

enum class ErrorCode {
    UnreadableFile,
    RaggedRows,
    MissingLabelColumn,
    AllMissingColumn,
    EmptyTable,
    MissingLabelValue,
    MalformedInput,
    InvalidArgument,
    InconsistentDatasets,
    DegenerateStatistic,
    Internal,
};

const char* error_code_name(ErrorCode code);

/// Process exit code for an error: 2 usage/validation, 3 data, 4 internal.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace fcssc

#endif
