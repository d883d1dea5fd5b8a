#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace crackgen {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Point2 = Vec2<double>;

/// Row-major dense raster, used for luminance images and filter responses.
template <typename Scalar>
using Raster = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SamplingExhausted : public Error {
public:
    using Error::Error;
};

class MeshFailure : public Error {
public:
    using Error::Error;
};

class IllPosed : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    NoConvergence(int iterations, double residual)
        : Error("solver did not converge after " + std::to_string(iterations) +
                " iterations (relative residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}

    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class EmptyRegion : public Error {
public:
    using Error::Error;
};

class IOFailure : public Error {
public:
    IOFailure(const std::string& path, const std::string& cause)
        : Error(path + ": " + cause), path_(path) {}

    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace crackgen
