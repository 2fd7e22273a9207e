#pragma once

#include <stdexcept>
#include <string>

namespace semistatic {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input could not be decoded (bad rational literal, malformed scenario).
class ParseError : public Error {
public:
    using Error::Error;
};

class InvalidModel : public Error {
public:
    using Error::Error;
};

class InvalidMeasure : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class ConstraintViolation : public Error {
public:
    using Error::Error;
};

class NotCalibrated : public Error {
public:
    using Error::Error;
};

class NotComplete : public Error {
public:
    using Error::Error;
};

class EmptyMeasureSet : public Error {
public:
    using Error::Error;
};

class NotMeasurable : public Error {
public:
    using Error::Error;
};

class SingularCompensator : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

}  // namespace semistatic
