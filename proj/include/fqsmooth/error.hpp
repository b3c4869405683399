#pragma once

#include <stdexcept>
#include <string>

namespace fqsmooth {

/// Broad failure class; the CLI maps each kind to its exit code.
enum class ErrorKind {
  usage,    // bad flag values or inconsistent configuration
  io,       // file could not be read or written
  format,   // malformed FASTQ, index files or variant records
  backend,  // external compressor failed or is missing
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed FASTQ input. `record()` is 1-based.
class FastqError : public Error {
 public:
  FastqError(std::size_t record, const std::string& what)
      : Error(ErrorKind::format,
              "record " + std::to_string(record) + ": " + what),
        record_(record) {}

  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

}  // namespace fqsmooth
