#pragma once

#include <stdexcept>
#include <string>

namespace seqlab {

// Base class of every failure raised by the library. The CLI maps any of these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nonpositive noise level, empty truncation, out-of-range parameter.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

// A decay sequence that is not strictly positive and strictly decreasing, or a
// table queried past its end.
class InvalidSequence : public Error {
 public:
  using Error::Error;
};

class SingularSpectrum : public Error {
 public:
  SingularSpectrum(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// The truncation level is too small for the requested Pinsker radius.
class TruncationInsufficient : public Error {
 public:
  using Error::Error;
};

class InvalidData : public Error {
 public:
  using Error::Error;
};

class BracketFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace seqlab
