#pragma once

#include <stdexcept>
#include <string>

namespace scchar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

/// A result cannot be determined at the working precision.
class PrecisionLoss : public Error {
public:
    explicit PrecisionLoss(const std::string& what = "precision exhausted") : Error(what) {}
};

class UndefinedForZero : public Error {
public:
    explicit UndefinedForZero(const std::string& what = "undefined for zero") : Error(what) {}
};

/// Central (or precision-indistinguishable from central) torus element.
class NotRegular : public Error {
public:
    explicit NotRegular(const std::string& what = "element is not regular") : Error(what) {}
};

class NoSuchElement : public Error {
public:
    explicit NoSuchElement(const std::string& what = "no element with the requested data") : Error(what) {}
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace scchar
