#pragma once

#include <stdexcept>
#include <string>

namespace kbrank {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OrgNotFound : public Error {
public:
    explicit OrgNotFound(const std::string& org) : Error("org not found: " + org) {}
};

class NotFound : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// An event's timestamp went backwards relative to what is already logged.
class OrderingError : public Error {
public:
    using Error::Error;
};

class SchemaMismatch : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace kbrank
