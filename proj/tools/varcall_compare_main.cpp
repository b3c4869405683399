// Precision, sensitivity and F-measure of a query call set against a baseline.
//
//   varcall_compare baseline.vcf query.vcf

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "fqsmooth/pipeline.hpp"
#include "fqsmooth/varcall_metrics.hpp"

int main(int argc, char** argv) {
  using namespace fqsmooth;

  CLI::App app{"Compare two variant call sets by exact (chrom, pos, ref, alt) match"};
  std::string baseline_path, query_path;
  app.add_option("baseline", baseline_path, "Baseline VCF or chrom/pos/ref/alt TSV")->required();
  app.add_option("query", query_path, "Query VCF or chrom/pos/ref/alt TSV")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    auto load = [](const std::string& path) {
      std::ifstream in(path);
      if (!in) throw Error(ErrorKind::io, "cannot open '" + path + "'");
      return read_variants(in);
    };
    const VariantSet baseline = load(baseline_path);
    const VariantSet query = load(query_path);
    std::cout << compare(baseline, query).to_json() << "\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
