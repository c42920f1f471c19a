#pragma once

#include <stdexcept>
#include <string>

namespace srp {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (bad shape, k out of range, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Input data could not be read or interpreted.
class DataError : public Error {
 public:
  using Error::Error;
};

/// CSV parse failure carrying the 1-based row and 0-based column of the cell.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t row, std::size_t column)
      : DataError(what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

/// A numerical routine failed (no convergence, indefinite matrix, singular kernel).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace srp
