#pragma once

#include <stdexcept>
#include <string>

namespace chainstat {

// Error taxonomy. Each condition named by the contract that rejects it.

struct NonStochasticGraph : std::runtime_error {
    explicit NonStochasticGraph(const std::string& what) : std::runtime_error(what) {}
};

struct SelfLoopOnTerminal : std::runtime_error {
    explicit SelfLoopOnTerminal(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSplit : std::runtime_error {
    explicit InvalidSplit(const std::string& what) : std::runtime_error(what) {}
};

struct NotLumpable : std::runtime_error {
    explicit NotLumpable(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateNullSpace : std::runtime_error {
    explicit DegenerateNullSpace(const std::string& what) : std::runtime_error(what) {}
};

struct MultiplePoleDetected : std::runtime_error {
    explicit MultiplePoleDetected(const std::string& what) : std::runtime_error(what) {}
};

struct NonTerminatingProcess : std::runtime_error {
    explicit NonTerminatingProcess(const std::string& what) : std::runtime_error(what) {}
};

struct ResidualImaginary : std::runtime_error {
    explicit ResidualImaginary(const std::string& what) : std::runtime_error(what) {}
};

struct UnknownEdge : std::runtime_error {
    explicit UnknownEdge(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroMass : std::runtime_error {
    explicit ZeroMass(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooLarge : std::runtime_error {
    explicit GridTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeCoefficient : std::runtime_error {
    explicit NegativeCoefficient(const std::string& what) : std::runtime_error(what) {}
};

struct BadBlockForm : std::runtime_error {
    explicit BadBlockForm(const std::string& what) : std::runtime_error(what) {}
};

struct LambdaOutOfRange : std::runtime_error {
    explicit LambdaOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateDistill : std::runtime_error {
    explicit DegenerateDistill(const std::string& what) : std::runtime_error(what) {}
};

struct NeverSecure : std::runtime_error {
    explicit NeverSecure(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientSamples : std::runtime_error {
    explicit InsufficientSamples(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace chainstat
