#include "fqsmooth/pipeline.hpp"

#include <zlib.h>

#include <array>

#include <json.hpp>
#include <stdexcept>

#include "file_io.hpp"
#include "fqsmooth/clustering.hpp"
#include "fqsmooth/reconstruction.hpp"

namespace fqsmooth {

ReadCollection load_fastq(const std::filesystem::path& path, ParseStats* stats) {
  gzFile in = gzopen(path.c_str(), "rb");
  if (!in) throw Error(ErrorKind::io, "cannot open '" + path.string() + "' for reading");
  std::string text;
  std::array<char, 1 << 16> buf;
  int n;
  while ((n = gzread(in, buf.data(), static_cast<unsigned>(buf.size()))) > 0) {
    text.append(buf.data(), static_cast<std::size_t>(n));
  }
  const bool failed = n < 0;
  gzclose(in);
  if (failed) throw Error(ErrorKind::io, "read error on '" + path.string() + "'");
  return parse_fastq(text, stats);
}

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return 1;
    case ErrorKind::io: return 2;
    case ErrorKind::format: return 3;
    case ErrorKind::backend: return 4;
  }
  return 1;
}

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::format, std::string(name) + ": " + e.what());
  }
}

nlohmann::json stats_json(const PipelineResult& r) {
  return {
      {"reads", r.reads},
      {"symbols", r.symbols},
      {"clusters", r.clusters},
      {"clusters_with_bases", r.smoothing.clusters_with_bases},
      {"clusters_skipped_base_edits", r.smoothing.clusters_skipped_edits},
      {"bases_in_clusters", r.smoothing.bases_in_clusters},
      {"bases_edited", r.smoothing.bases_edited},
      {"qualities_smoothed", r.smoothing.qualities_smoothed},
      {"normalized_input_bases", r.parse.normalized_bases},
  };
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  stage("config", [&] {
    cfg.smoothing.validate();
    if (!cfg.input && !cfg.import_index) throw Error(ErrorKind::usage, "no input FASTQ or index given");
    if (!cfg.input && cfg.smoothing.header_policy == HeaderPolicy::keep) {
      throw Error(ErrorKind::usage, "keeping headers requires the input FASTQ");
    }
    return 0;
  });

  PipelineResult result;
  std::optional<ReadCollection> source;
  if (cfg.input) source = stage("parse", [&] { return load_fastq(*cfg.input, &result.parse); });

  const EbwtIndex index = stage(cfg.import_index ? "import" : "build", [&] {
    if (cfg.import_index) {
      EbwtIndex imported = import_index(*cfg.import_index);
      if (source && (source->size() != imported.read_count() ||
                     source->total_length() != imported.size())) {
        throw Error(ErrorKind::format, "imported index does not match the input FASTQ");
      }
      return imported;
    }
    return build_index(*source, cfg.build);
  });
  result.reads = index.read_count();
  result.symbols = index.size();

  if (cfg.dump_index) stage("export", [&] { export_index(index, *cfg.dump_index); return 0; });

  const ClusterSet clusters =
      stage("cluster", [&] { return detect_clusters(index.lcp(), cfg.smoothing.min_context); });
  result.clusters = clusters.clusters.size();

  const EditOverlay overlay = stage("smooth", [&] {
    return run_smoothing(index, clusters, cfg.smoothing, &result.smoothing);
  });

  const ReadCollection* headers =
      cfg.smoothing.header_policy == HeaderPolicy::keep && source ? &*source : nullptr;
  const ReadCollection smoothed =
      stage("invert", [&] { return invert({index, overlay, headers}); });

  const std::string out_text = write_fastq(smoothed, cfg.smoothing.header_policy);
  stage("write", [&] { detail::write_file(cfg.output, out_text); return 0; });

  if (cfg.compressed_output) {
    stage("compress", [&] {
      detail::write_file(*cfg.compressed_output, compress(out_text, cfg.backend));
      return 0;
    });
  }

  if (cfg.report) {
    stage("report", [&] {
      const ReadCollection original =
          source ? *source : invert({index, EditOverlay{}, nullptr});
      result.original_report =
          compression_report(original, cfg.smoothing.header_policy, cfg.backend);
      result.smoothed_report =
          compression_report(smoothed, cfg.smoothing.header_policy, cfg.backend);
      nlohmann::json j;
      j["original"] = nlohmann::json::parse(result.original_report->to_json());
      j["smoothed"] = nlohmann::json::parse(result.smoothed_report->to_json());
      j["smoothing"] = stats_json(result);
      detail::write_file(*cfg.report, j.dump(2) + "\n");
      return 0;
    });
  }
  return result;
}

}  // namespace fqsmooth
