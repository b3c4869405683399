#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fqsmooth/fastq.hpp"

namespace fqsmooth {

struct FastqStreams {
  std::string headers;    // one header per line, without '@'
  std::string bases;      // one read per line
  std::string qualities;  // one quality string per line
};

FastqStreams split_streams(const ReadCollection& reads);

/// Inverse of split_streams in the form write_fastq emits.
std::string join_streams(const FastqStreams& streams, HeaderPolicy policy);

/**
 * A general-purpose compressor. `store` is the identity; anything else runs a
 * shell command. A template containing `{in}` and `{out}` is given file
 * paths, otherwise it reads stdin and writes stdout.
 */
struct BackendSpec {
  std::string name = "store";
  std::string command;  // empty for store

  bool is_store() const noexcept { return command.empty(); }

  /// "store", "gzip", "bzip2", "xz", or "cmd:<template>".
  static BackendSpec parse(std::string_view spec);
};

/// Compress through the backend. Throws Error(backend) when the command exits
/// nonzero (the message carries its stderr); exit status 127 is reported as a
/// missing executable.
std::string compress(std::string_view data, const BackendSpec& backend);

/// Shannon entropy of the byte histogram in bits per symbol.
/// Throws std::invalid_argument on an empty stream.
double entropy0(std::string_view data);

struct StreamSize {
  std::size_t original = 0;
  std::size_t compressed = 0;
  double ratio() const noexcept {
    return original == 0 ? 0.0 : static_cast<double>(compressed) / static_cast<double>(original);
  }
};

struct CompressionReport {
  std::string backend;
  StreamSize file;
  StreamSize headers;
  StreamSize bases;
  StreamSize qualities;
  double bases_entropy = 0.0;      // order-0, newlines excluded
  double qualities_entropy = 0.0;  // order-0, newlines excluded

  std::string to_json() const;
};

/// Compress the whole FASTQ (as written under `policy`) and its three streams
/// concurrently.
CompressionReport compression_report(const ReadCollection& reads, HeaderPolicy policy,
                                     const BackendSpec& backend);

}  // namespace fqsmooth
