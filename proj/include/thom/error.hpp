#pragma once

#include <stdexcept>
#include <string>

namespace thom {

// Domain errors carry a stable kind tag so the CLI can emit a JSON diagnostic.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

namespace errc {
inline constexpr const char* invalid_partition = "InvalidPartition";
inline constexpr const char* out_of_box = "OutOfBox";
inline constexpr const char* non_symmetric = "NonSymmetric";
inline constexpr const char* unfaithful = "UnfaithfulRealization";
inline constexpr const char* truncation_mismatch = "TruncationMismatch";
inline constexpr const char* dimension_mismatch = "DimensionMismatch";
inline constexpr const char* not_invertible = "NotInvertible";
inline constexpr const char* non_integral = "NonIntegral";
inline constexpr const char* degree_overflow = "DegreeOverflow";
inline constexpr const char* parse = "ParseError";
inline constexpr const char* invariant = "InvariantViolation";
inline constexpr const char* missing_companion = "MissingCompanion";
inline constexpr const char* invalid_argument = "InvalidArgument";
}  // namespace errc

}  // namespace thom
