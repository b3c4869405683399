#include "fqsmooth/varcall_metrics.hpp"

#include <algorithm>
#include <charconv>
#include <json.hpp>
#include <vector>

#include "fqsmooth/error.hpp"

namespace fqsmooth {

namespace {

bool is_allele(const std::string& a) {
  return !a.empty() && std::all_of(a.begin(), a.end(), [](char c) {
    return c == 'A' || c == 'C' || c == 'G' || c == 'T' || c == 'N';
  });
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    fields.push_back(line.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return fields;
}

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

}  // namespace

void validate_variant(const Variant& v) {
  if (v.chrom.empty()) throw Error(ErrorKind::format, "variant with empty chromosome");
  if (v.pos < 1) throw Error(ErrorKind::format, "variant position must be >= 1");
  if (!is_allele(v.ref) || !is_allele(v.alt)) {
    throw Error(ErrorKind::format, "alleles must be non-empty over ACGTN: " + v.ref + " > " + v.alt);
  }
}

VariantSet read_variants(std::istream& in) {
  VariantSet out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 4) {
      throw Error(ErrorKind::format, "line " + std::to_string(line_no) + ": expected at least 4 columns");
    }
    // Four columns: chrom pos ref alt. Otherwise VCF: chrom pos id ref alt ...
    const bool vcf = fields.size() >= 5;
    const std::string& ref = fields[vcf ? 3 : 2];
    const std::string& alts = fields[vcf ? 4 : 3];

    Variant v;
    v.chrom = fields[0];
    const auto& pos = fields[1];
    auto [ptr, ec] = std::from_chars(pos.data(), pos.data() + pos.size(), v.pos);
    if (ec != std::errc() || ptr != pos.data() + pos.size()) {
      throw Error(ErrorKind::format, "line " + std::to_string(line_no) + ": bad position '" + pos + "'");
    }
    v.ref = upper(ref);
    for (const auto& alt : split(alts, ',')) {
      v.alt = upper(alt);
      try {
        validate_variant(v);
      } catch (const Error& e) {
        throw Error(ErrorKind::format, "line " + std::to_string(line_no) + ": " + e.what());
      }
      out.insert(v);
    }
  }
  return out;
}

VariantComparison compare(const VariantSet& baseline, const VariantSet& query) {
  VariantComparison c;
  for (const auto& v : query) {
    if (baseline.contains(v)) ++c.true_positives;
  }
  c.false_positives = query.size() - c.true_positives;
  c.false_negatives = baseline.size() - c.true_positives;

  const auto tp = static_cast<double>(c.true_positives);
  c.precision = query.empty() ? 1.0 : tp / static_cast<double>(c.true_positives + c.false_positives);
  c.sensitivity =
      baseline.empty() ? 1.0 : tp / static_cast<double>(c.true_positives + c.false_negatives);
  const double sum = c.precision + c.sensitivity;
  c.f_measure = sum == 0.0 ? 0.0 : 2.0 * c.sensitivity * c.precision / sum;
  return c;
}

std::string VariantComparison::to_json() const {
  nlohmann::json j = {
      {"TP", true_positives}, {"FP", false_positives}, {"FN", false_negatives},
      {"PREC", precision},    {"SEN", sensitivity},    {"F", f_measure},
  };
  return j.dump(2);
}

}  // namespace fqsmooth
