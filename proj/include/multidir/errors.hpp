#ifndef MULTIDIR_ERRORS_HPP
#define MULTIDIR_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace multidir {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// geometry
struct ZeroInBodyError : Error {
    explicit ZeroInBodyError(const std::string& what = "origin lies in the generator body")
        : Error(what) {}
};

// oracles
struct AllInfiniteError : Error {
    int level = -1;  // quotient level when raised inside the derivative estimator
    explicit AllInfiniteError(const std::string& what, int level_ = -1)
        : Error(what), level(level_) {}
};
struct AxiomViolationError : Error {
    std::vector<double> probe;
    AxiomViolationError(const std::string& what, std::vector<double> probe_)
        : Error(what), probe(std::move(probe_)) {}
};

// derivative
struct InfiniteBaseError : Error {
    explicit InfiniteBaseError(const std::string& what = "f is infinite at the base point")
        : Error(what) {}
};
struct ThresholdNotFoundError : Error {
    explicit ThresholdNotFoundError(const std::string& what) : Error(what) {}
};
struct GrowthViolationError : Error {
    std::vector<double> witness;
    GrowthViolationError(const std::string& what, std::vector<double> witness_)
        : Error(what), witness(std::move(witness_)) {}
};

// bishop_phelps
struct StartNotInCloudError : Error {
    explicit StartNotInCloudError(const std::string& what = "start point not in the cloud")
        : Error(what) {}
};
struct ApexInBodyError : Error {
    explicit ApexInBodyError(const std::string& what = "apex lies in the body") : Error(what) {}
};
struct ApexNotInCloudError : Error {
    explicit ApexNotInCloudError(const std::string& what = "apex not in the cloud")
        : Error(what) {}
};

// witness / bridge
struct PreconditionFailedError : Error {
    explicit PreconditionFailedError(const std::string& what) : Error(what) {}
};
struct ConditionFailedError : Error {
    explicit ConditionFailedError(const std::string& what) : Error(what) {}
};
struct ToleranceNotMetError : Error {
    explicit ToleranceNotMetError(const std::string& what) : Error(what) {}
};
struct ClaimFailedError : Error {
    explicit ClaimFailedError(const std::string& what) : Error(what) {}
};

// cli / serialization
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace multidir

#endif  // MULTIDIR_ERRORS_HPP
