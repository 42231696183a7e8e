#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "tcpl/core/complexity_class.hpp"

namespace tcpl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed dataset content. Carries file/line context in the message.
class DataError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class InsufficientClassCount : public Error {
public:
    InsufficientClassCount(ComplexityClass cls, std::size_t have, std::size_t need)
        : Error("InsufficientClassCount: class '" + std::string(to_string(cls)) + "' has " +
                std::to_string(have) + " examples, need " + std::to_string(need)),
          cls_(cls), have_(have), need_(need) {}

    ComplexityClass cls() const { return cls_; }
    std::size_t have() const { return have_; }
    std::size_t need() const { return need_; }

private:
    ComplexityClass cls_;
    std::size_t have_;
    std::size_t need_;
};

class MissingPrediction : public Error {
public:
    explicit MissingPrediction(const std::string& id)
        : Error("MissingPrediction: no prediction for '" + id + "'"), id_(id) {}
    const std::string& id() const { return id_; }

private:
    std::string id_;
};

}  // namespace tcpl
