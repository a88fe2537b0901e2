#pragma once

#include <stdexcept>
#include <string>

namespace asd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes that do not agree or do not divide as required.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters for a schedule, prior, table, or sampler.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Step indices supplied out of order.
class OrderingError : public Error {
public:
    using Error::Error;
};

/// Tile offset outside [0, tile).
class OffsetError : public Error {
public:
    using Error::Error;
};

/// Unreadable or malformed file. The message always carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

/// Loss became non-finite during training.
class TrainingError : public Error {
public:
    TrainingError(const std::string& what, long step) : Error(what), step_(step) {}
    long step() const noexcept { return step_; }

private:
    long step_;
};

}  // namespace asd
