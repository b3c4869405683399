#pragma once

#include <cstdint>
#include <istream>
#include <set>
#include <string>
#include <tuple>

namespace fqsmooth {

struct Variant {
  std::string chrom;
  std::uint64_t pos = 0;  // 1-based
  std::string ref;
  std::string alt;

  friend auto operator<=>(const Variant& a, const Variant& b) {
    return std::tie(a.chrom, a.pos, a.ref, a.alt) <=> std::tie(b.chrom, b.pos, b.ref, b.alt);
  }
  friend bool operator==(const Variant&, const Variant&) = default;
};

using VariantSet = std::set<Variant>;

/// Throws Error(format) unless pos >= 1 and both alleles are non-empty ACGTN.
void validate_variant(const Variant& v);

/**
 * Reads either minimal `chrom pos ref alt` lines or VCF bodies (columns 1, 2,
 * 4 and 5), tab separated. Lines starting with '#' and blank lines are
 * skipped; a comma-separated ALT yields one record per allele.
 */
VariantSet read_variants(std::istream& in);

struct VariantComparison {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  double precision = 0.0;    // 1 when the query is empty
  double sensitivity = 0.0;  // 1 when the baseline is empty
  double f_measure = 0.0;    // 0 when precision + sensitivity == 0

  std::string to_json() const;
};

/// Exact (chrom, pos, ref, alt) matching.
VariantComparison compare(const VariantSet& baseline, const VariantSet& query);

}  // namespace fqsmooth
