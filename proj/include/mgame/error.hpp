#pragma once

#include <stdexcept>
#include <string>

namespace mgame {

enum class ErrorKind {
  kInvalidInput,      // malformed arguments, out-of-range indices, bad weights
  kValidation,        // parameter chains (PD / SG / DG inequalities)
  kContract,          // a documented precondition or strategy contract broken
  kDegenerate,        // an exact formula hit a zero denominator
  kUnsupported,       // a variant the model does not define
  kParse,             // text/JSON could not be decoded
  kIo,                // file system failures
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace mgame
