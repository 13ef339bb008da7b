#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace platenet {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

class MissingFileError : public Error {
public:
    explicit MissingFileError(std::string file_path)
        : Error("cannot open file: " + file_path), path(std::move(file_path)) {}
    std::string path;
};

/// A data row did not have the expected number of fields.
class RowArityError : public Error {
public:
    RowArityError(std::size_t row_number, std::size_t found_fields, std::size_t expected_fields)
        : Error("row " + std::to_string(row_number) + ": expected " +
                std::to_string(expected_fields) + " fields, found " + std::to_string(found_fields)),
          row(row_number), found(found_fields), expected(expected_fields) {}
    std::size_t row, found, expected;
};

class NonNumericFieldError : public Error {
public:
    NonNumericFieldError(std::size_t row_number, std::size_t column, std::string field_text)
        : Error("row " + std::to_string(row_number) + ", column " + std::to_string(column) +
                ": not a finite number: '" + field_text + "'"),
          row(row_number), col(column), text(std::move(field_text)) {}
    std::size_t row, col;
    std::string text;
};

/// Fault indicator flags of a row are not a one-hot vector.
class BadIndicatorError : public Error {
public:
    explicit BadIndicatorError(std::size_t row_number)
        : Error("row " + std::to_string(row_number) +
                ": fault indicators must contain exactly one 1"),
          row(row_number) {}
    std::size_t row;
};

class EmptyInputError : public Error {
public:
    explicit EmptyInputError(const std::string& where) : Error(where + ": empty input") {}
};

class InsufficientClassCountError : public Error {
public:
    InsufficientClassCountError(const std::string& label, std::size_t required, std::size_t available)
        : Error("cannot draw " + std::to_string(required) + " " + label + " samples, only " +
                std::to_string(available) + " available"),
          required(required), available(available) {}
    std::size_t required, available;
};

class DimensionMismatchError : public Error {
public:
    DimensionMismatchError(const std::string& what_dim, std::size_t expected, std::size_t found)
        : Error(what_dim + ": expected " + std::to_string(expected) + ", found " +
                std::to_string(found)),
          expected(expected), found(found) {}
    std::size_t expected, found;
};

class LengthMismatchError : public Error {
public:
    LengthMismatchError(std::size_t lhs, std::size_t rhs)
        : Error("sequence lengths differ: " + std::to_string(lhs) + " vs " + std::to_string(rhs)),
          lhs(lhs), rhs(rhs) {}
    std::size_t lhs, rhs;
};

/// ROC needs both classes present among the labels.
class SingleClassError : public Error {
public:
    SingleClassError() : Error("labels contain only one class") {}
};

class NonFiniteFitnessError : public Error {
public:
    explicit NonFiniteFitnessError(double fitness_value)
        : Error("objective returned a non-finite value"), value(fitness_value) {}
    double value;
};

class IoError : public Error {
public:
    IoError(std::string file_path, const std::string& detail)
        : Error("i/o error on " + file_path + ": " + detail), path(std::move(file_path)) {}
    std::string path;
};

class UnknownFlagError : public Error {
public:
    explicit UnknownFlagError(const std::string& detail) : Error("unknown flag: " + detail) {}
};

class InvalidValueError : public Error {
public:
    InvalidValueError(std::string flag_name, const std::string& reason)
        : Error("invalid value for " + flag_name + ": " + reason), flag(std::move(flag_name)) {}
    std::string flag;
};

class MissingDataPathError : public Error {
public:
    MissingDataPathError() : Error("no data file given (--data)") {}
};

}  // namespace platenet
