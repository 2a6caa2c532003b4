#pragma once

#include <stdexcept>
#include <string>

namespace stps {

// Error categories map onto CLI exit codes: usage errors are handled by the
// argument parser (exit 2); everything data-shaped exits 3; numeric and
// solver failures exit 4; verification failures exit 5.
enum class ErrorKind { Data, Numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
// series cannot reach the requested tolerance within max_terms
struct NonConvergentError : Error {
    explicit NonConvergentError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
// evaluation at (or within 1e-12 of) xi=1 where the kernel diverges
struct SingularPointError : Error {
    explicit SingularPointError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct NotInCatalogError : Error {
    explicit NotInCatalogError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
// tail_bound asked for a majorant that diverges (2m <= d-1)
struct UnboundedError : Error {
    explicit UnboundedError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct QuadratureError : Error {
    explicit QuadratureError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
// operator oracle requires lambda > 0, i.e. d >= 3
struct DegenerateLambdaError : Error {
    explicit DegenerateLambdaError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& w) : Error(ErrorKind::Data, w) {}
};
struct DuplicatePointsError : Error {
    explicit DuplicatePointsError(const std::string& w) : Error(ErrorKind::Data, w) {}
};
// kernel diagonal k(1) diverges for the requested spec, so no fit is possible
struct SingularKernelDiagonalError : Error {
    explicit SingularKernelDiagonalError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct NotUnisolventError : Error {
    explicit NotUnisolventError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct SingularSystemError : Error {
    explicit SingularSystemError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& w) : Error(ErrorKind::Numeric, w) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Data, w) {}
};

} // namespace stps
