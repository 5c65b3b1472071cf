#pragma once

#include <stdexcept>
#include <string>

namespace docflow {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error("format error: " + msg) {}
};

struct SizeError : Error {
    explicit SizeError(const std::string& msg) : Error("size error: " + msg) {}
};

struct DimMismatchError : Error {
    explicit DimMismatchError(const std::string& msg) : Error("dimension mismatch: " + msg) {}
};

struct EmptyMaskError : Error {
    explicit EmptyMaskError(const std::string& msg) : Error("empty mask: " + msg) {}
};

struct CenterInvalidError : Error {
    explicit CenterInvalidError(const std::string& msg) : Error("center invalid: " + msg) {}
};

struct MissingGroundTruthError : Error {
    explicit MissingGroundTruthError(const std::string& msg)
        : Error("missing ground truth: " + msg) {}
};

struct MissingExternalFileError : Error {
    explicit MissingExternalFileError(const std::string& msg)
        : Error("missing external file: " + msg) {}
};

struct NoConvergenceError : Error {
    explicit NoConvergenceError(const std::string& msg) : Error("no convergence: " + msg) {}
};

struct CountMismatchError : Error {
    explicit CountMismatchError(const std::string& msg) : Error("count mismatch: " + msg) {}
};

struct BadWindowError : Error {
    explicit BadWindowError(const std::string& msg) : Error("bad window: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("config error: " + msg) {}
};

}  // namespace docflow
