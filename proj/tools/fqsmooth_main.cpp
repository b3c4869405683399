// Lossy FASTQ smoothing over the extended BWT of the reads.
//
//   fqsmooth reads.fastq -o smoothed.fastq -T 30 -Q @

#include <CLI11.hpp>
#include <iostream>

#include "fqsmooth/pipeline.hpp"

namespace {

int phred_to_byte(int phred) { return phred + 33; }

}  // namespace

int main(int argc, char** argv) {
  using namespace fqsmooth;

  CLI::App app{"Reference-free lossy FASTQ preprocessor: noise reduction and quality smoothing "
               "inside EBWT positional clusters"};
  PipelineConfig cfg;
  SmoothingConfig& sc = cfg.smoothing;

  std::string input, output, qual_const = "@", strategy = "const", backend = "store";
  std::string report, dump_index, import_index, compressed;
  int noise_phred = 20;
  bool keep_headers = false, no_base_edits = false;

  app.add_option("input", input, "Input FASTQ (plain or gzip)");
  app.add_option("-o,--output", output, "Output FASTQ")->required();
  app.add_option("-T,--min-context", sc.min_context, "Minimum context length k_m")
      ->default_val(30)
      ->check(CLI::PositiveNumber);
  app.add_option("-Q,--qual-const", qual_const, "Constant replacement quality character")
      ->default_val("@");
  app.add_option("--strategy", strategy, "Replacement quality strategy")
      ->default_val("const")
      ->check(CLI::IsMember({"const", "mean_err", "max", "avg"}));
  app.add_flag("--bin", sc.binning, "Apply Illumina 8-level binning to all qualities");
  app.add_option("--noise-qs", noise_phred,
                 "Phred value below which a base counts as low quality")
      ->default_val(20)
      ->check(CLI::Range(0, 93));
  app.add_option("--freq", sc.freq_threshold, "Frequent-symbol threshold (fraction)")
      ->default_val(0.40);
  app.add_option("--ell", sc.context_length, "Left-context length for two-symbol clusters")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  app.add_flag("--no-base-edits", no_base_edits, "Smooth qualities only");
  app.add_flag("--keep-headers", keep_headers, "Keep original headers (default: replace with '@')");
  app.add_option("--backend", backend, "Compressor: store, gzip, bzip2, xz or cmd:<template>")
      ->default_val("store");
  app.add_option("--report", report, "Write a JSON compression report");
  app.add_option("--compressed", compressed, "Write the output compressed with the backend");
  app.add_option("--dump-index", dump_index, "Export .ebwt/.ebwt.qs/.lcp/.docmap with this prefix");
  app.add_option("--import-index", import_index, "Use index files with this prefix instead of building");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (!input.empty()) cfg.input = input;
    cfg.output = output;
    if (qual_const.size() != 1) throw Error(ErrorKind::usage, "-Q expects a single character");
    sc.constant_quality = qual_const[0];
    sc.strategy = strategy == "const"      ? QualityStrategy::constant
                  : strategy == "mean_err" ? QualityStrategy::mean_error
                  : strategy == "max"      ? QualityStrategy::max
                                           : QualityStrategy::average;
    sc.noise_quality_threshold = static_cast<char>(phred_to_byte(noise_phred));
    sc.base_edits = !no_base_edits;
    sc.header_policy = keep_headers ? HeaderPolicy::keep : HeaderPolicy::strip;
    cfg.backend = BackendSpec::parse(backend);
    if (!report.empty()) cfg.report = report;
    if (!compressed.empty()) cfg.compressed_output = compressed;
    if (!dump_index.empty()) cfg.dump_index = dump_index;
    if (!import_index.empty()) cfg.import_index = import_index;

    const PipelineResult r = run_pipeline(cfg);
    if (r.parse.normalized_bases > 0) {
      std::cerr << "warning: " << r.parse.normalized_bases
                << " non-ACGTN bases were replaced by N\n";
    }
    std::cerr << "reads: " << r.reads << "  clusters: " << r.clusters
              << "  bases edited: " << r.smoothing.bases_edited
              << "  qualities smoothed: " << r.smoothing.qualities_smoothed << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
