#ifndef FCSSC_VERSION_HPP
#define FCSSC_VERSION_HPP

namespace fcssc {

inline constexpr const char* kToolName = "fcssc";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fcssc

#endif
