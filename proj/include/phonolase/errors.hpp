#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phonolase {

enum class ErrorKind {
    Stage1Unstable,
    NonPositive,
    InvalidConfig,
    TmsUnstable,
    ZeroCoupling,
    NumericalDegeneracy,
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Stage1Unstable: return "Stage1Unstable";
    case ErrorKind::NonPositive: return "NonPositive";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::TmsUnstable: return "TmsUnstable";
    case ErrorKind::ZeroCoupling: return "ZeroCoupling";
    case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
    }
    return "Unknown";
}

/// Every failure raised by the library. `kind()` is stable and is what the
/// sweep tables print in their error column.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// |Δ_j| ≤ 2Λ_j for cavity `cavity` (1 or 2).
class Stage1Unstable : public Error {
public:
    explicit Stage1Unstable(int cavity)
        : Error(ErrorKind::Stage1Unstable,
                "cavity " + std::to_string(cavity) + " violates |delta| > 2*lambda"),
          cavity_(cavity) {}

    int cavity() const noexcept { return cavity_; }

private:
    int cavity_;
};

class NonPositive : public Error {
public:
    explicit NonPositive(std::string field)
        : Error(ErrorKind::NonPositive, "field '" + field + "' must be positive and finite"),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& what) : Error(ErrorKind::InvalidConfig, what) {}
};

class TmsUnstable : public Error {
public:
    explicit TmsUnstable(const std::string& what) : Error(ErrorKind::TmsUnstable, what) {}
};

class ZeroCoupling : public Error {
public:
    ZeroCoupling() : Error(ErrorKind::ZeroCoupling, "|G_p12| = 0, threshold is infinite") {}
};

class NumericalDegeneracy : public Error {
public:
    explicit NumericalDegeneracy(const std::string& what)
        : Error(ErrorKind::NumericalDegeneracy, what) {}
};

} // namespace phonolase
