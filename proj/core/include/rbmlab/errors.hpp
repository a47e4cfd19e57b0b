#pragma once

#include <stdexcept>
#include <string>

namespace rbmlab {

// Iterative method ran out of its term or iteration budget.
class convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A root bracket could not be established.
class bracket_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sample set unsuitable for the requested statistic.
class sample_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Request would exceed a configured resource cap.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rbmlab
