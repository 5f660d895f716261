#pragma once

#include <stdexcept>
#include <string>

namespace avrank {

// Error taxonomy. The CLI maps kinds onto exit codes:
// Config -> 1, Parse/Schema/Data/Domain -> 2, Internal -> 3.
enum class ErrorKind {
  Config,    // bad configuration or flag value
  Parse,     // malformed input bytes (carries a byte offset in the message)
  Schema,    // well-formed input violating the documented schema
  Data,      // semantic data problem (duplicates, missing files, bad lines)
  Domain,    // operation called outside its contract
  Internal,  // invariant violation inside the pipeline
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace avrank
