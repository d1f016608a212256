#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stlrobust::stl {

class StlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the parser; carries a 1-based source position and the set of
/// tokens that would have been accepted there.
class ParseError : public StlError {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             const std::string& found);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// Temporal interval with a < 0 or a > b.
class IntervalError : public StlError {
 public:
  using StlError::StlError;
};

/// A temporal window reaches past the last sample of the signal.
class HorizonError : public StlError {
 public:
  using StlError::StlError;
};

class UnknownChannelError : public StlError {
 public:
  explicit UnknownChannelError(std::string channel);
  const std::string& channel() const noexcept { return channel_; }

 private:
  std::string channel_;
};

}  // namespace stlrobust::stl
