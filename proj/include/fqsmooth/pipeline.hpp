#pragma once

#include <filesystem>
#include <optional>

#include "fqsmooth/ebwt_index.hpp"
#include "fqsmooth/error.hpp"
#include "fqsmooth/fastq.hpp"
#include "fqsmooth/smoothing.hpp"
#include "fqsmooth/stream_codec.hpp"

namespace fqsmooth {

struct PipelineConfig {
  std::optional<std::filesystem::path> input;  // may be omitted with import_index
  std::filesystem::path output;
  SmoothingConfig smoothing;
  BackendSpec backend;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> compressed_output;
  std::optional<std::filesystem::path> dump_index;
  std::optional<std::filesystem::path> import_index;
  BuildOptions build;
};

struct PipelineResult {
  ParseStats parse;
  SmoothingStats smoothing;
  std::size_t reads = 0;
  std::size_t symbols = 0;  // N
  std::size_t clusters = 0;
  std::optional<CompressionReport> original_report;
  std::optional<CompressionReport> smoothed_report;
};

/// Read a FASTQ file; gzip-compressed input is detected and inflated.
ReadCollection load_fastq(const std::filesystem::path& path, ParseStats* stats = nullptr);

/**
 * parse -> build (or import) -> cluster -> smooth -> invert -> write, then
 * optionally compress and report. Errors are rethrown as Error with the
 * failing stage prefixed to the message.
 */
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// 1 usage, 2 I/O, 3 data format, 4 backend.
int exit_code(ErrorKind kind) noexcept;

}  // namespace fqsmooth
