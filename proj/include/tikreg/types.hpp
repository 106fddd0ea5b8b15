#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tikreg {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct RankDeficient : Error {
    using Error::Error;
};
struct DecompositionFailure : Error {
    using Error::Error;
};
struct InvalidTruncation : Error {
    using Error::Error;
};
struct SingularSystem : Error {
    using Error::Error;
};
struct DivisionDegenerate : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

// True when every entry is finite.
bool all_finite(const Matrix& a);
bool all_finite(const Vector& v);

}  // namespace tikreg
