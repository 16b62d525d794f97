#pragma once

#include <stdexcept>
#include <string>

namespace hls {

struct NormDiverges : std::runtime_error {
    explicit NormDiverges(const std::string& what) : std::runtime_error(what) {}
};

struct ExponentError : std::invalid_argument {
    explicit ExponentError(const std::string& what) : std::invalid_argument(what) {}
};

struct InadmissibleExponents : std::invalid_argument {
    explicit InadmissibleExponents(const std::string& what) : std::invalid_argument(what) {}
};

struct EssentialSpectrumError : std::domain_error {
    explicit EssentialSpectrumError(const std::string& what) : std::domain_error(what) {}
};

struct BranchError : std::domain_error {
    explicit BranchError(const std::string& what) : std::domain_error(what) {}
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct IntegrationError : std::runtime_error {
    explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

struct ContourThroughZero : std::runtime_error {
    explicit ContourThroughZero(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hls
