// SPDX-License-Identifier: Apache-2.0
#ifndef GEC_ERROR_HPP
#define GEC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gec {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input bytes are not well-formed UTF-8.
class Utf8Error : public Error {
public:
  explicit Utf8Error(std::size_t offset)
      : Error("invalid UTF-8 at byte offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// Invalid numeric or structural parameter (bloom sizing, split fractions...).
class ParameterError : public Error {
public:
  using Error::Error;
};

/// A line-oriented input file (wordlist, rule pack, gold data, M2) is
/// malformed. `line()` is 1-based; 0 means "not tied to a line".
class ParseError : public Error {
public:
  ParseError(std::string what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Binary container is truncated, corrupt or of an unsupported version.
class FormatError : public Error {
public:
  using Error::Error;
};

/// Edit script cannot be applied (overlap or out of bounds).
class EditError : public Error {
public:
  using Error::Error;
};

} // namespace gec

#endif // GEC_ERROR_HPP
