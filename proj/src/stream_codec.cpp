#include "fqsmooth/stream_codec.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <json.hpp>
#include <stdexcept>

#include "fqsmooth/error.hpp"
#include "file_io.hpp"

namespace fqsmooth {

FastqStreams split_streams(const ReadCollection& reads) {
  FastqStreams s;
  for (const auto& r : reads) {
    s.headers += r.header;
    s.headers.push_back('\n');
    s.bases += r.bases;
    s.bases.push_back('\n');
    s.qualities += r.qualities;
    s.qualities.push_back('\n');
  }
  return s;
}

std::string join_streams(const FastqStreams& streams, HeaderPolicy policy) {
  std::string out;
  std::size_t h = 0, b = 0, q = 0;
  auto take_line = [](const std::string& s, std::size_t& pos) {
    const std::size_t eol = s.find('\n', pos);
    std::string_view line(s.data() + pos, (eol == std::string::npos ? s.size() : eol) - pos);
    pos = eol == std::string::npos ? s.size() : eol + 1;
    return line;
  };
  while (b < streams.bases.size()) {
    const auto header = take_line(streams.headers, h);
    out.push_back('@');
    if (policy == HeaderPolicy::keep) out += header;
    out.push_back('\n');
    out += take_line(streams.bases, b);
    out += "\n+\n";
    out += take_line(streams.qualities, q);
    out.push_back('\n');
  }
  return out;
}

BackendSpec BackendSpec::parse(std::string_view spec) {
  if (spec.empty() || spec == "store") return {};
  if (spec == "gzip") return {"gzip", "gzip -9 -c"};
  if (spec == "bzip2") return {"bzip2", "bzip2 -9 -c"};
  if (spec == "xz") return {"xz", "xz -9 -c"};
  if (spec.starts_with("cmd:") && spec.size() > 4) {
    return {std::string(spec), std::string(spec.substr(4))};
  }
  throw Error(ErrorKind::usage, "unknown backend '" + std::string(spec) +
                                    "' (expected store, gzip, bzip2, xz or cmd:<template>)");
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

class ScratchDir {
 public:
  ScratchDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "fqsmooth-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw Error(ErrorKind::io, "cannot create a temporary directory");
    path_ = tmpl;
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  std::filesystem::path operator/(const char* name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace

std::string compress(std::string_view data, const BackendSpec& backend) {
  if (backend.is_store()) return std::string(data);

  ScratchDir dir;
  const auto in = dir / "in";
  const auto out = dir / "out";
  const auto err = dir / "err";
  detail::write_file(in, data);

  std::string cmd = backend.command;
  if (cmd.find("{in}") != std::string::npos && cmd.find("{out}") != std::string::npos) {
    replace_all(cmd, "{in}", shell_quote(in.string()));
    replace_all(cmd, "{out}", shell_quote(out.string()));
    cmd = "( " + cmd + " ) </dev/null";
  } else {
    cmd = "( " + cmd + " ) <" + shell_quote(in.string()) + " >" + shell_quote(out.string());
  }
  cmd += " 2>" + shell_quote(err.string());

  const int status = std::system(cmd.c_str());
  const int code = status == -1 ? -1 : (WIFEXITED(status) ? WEXITSTATUS(status) : 128);
  if (code != 0) {
    std::string stderr_text;
    if (std::filesystem::exists(err)) stderr_text = detail::read_file(err);
    if (code == 127) {
      throw Error(ErrorKind::backend,
                  "backend '" + backend.name + "': executable not found: " + stderr_text);
    }
    throw Error(ErrorKind::backend, "backend '" + backend.name + "' exited with status " +
                                        std::to_string(code) + ": " + stderr_text);
  }
  if (!std::filesystem::exists(out)) {
    throw Error(ErrorKind::backend, "backend '" + backend.name + "' produced no output");
  }
  return detail::read_file(out);
}

double entropy0(std::string_view data) {
  if (data.empty()) throw std::invalid_argument("entropy0: empty stream");
  std::array<std::size_t, 256> hist{};
  for (char c : data) ++hist[static_cast<unsigned char>(c)];
  const double n = static_cast<double>(data.size());
  double h = 0.0;
  for (std::size_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h;
}

namespace {

std::string without_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '\n') out.push_back(c);
  }
  return out;
}

nlohmann::json size_json(const StreamSize& s) {
  return {{"original", s.original}, {"compressed", s.compressed}, {"ratio", s.ratio()}};
}

}  // namespace

std::string CompressionReport::to_json() const {
  nlohmann::json j;
  j["backend"] = backend;
  j["file"] = size_json(file);
  j["headers"] = size_json(headers);
  j["bases"] = size_json(bases);
  j["qualities"] = size_json(qualities);
  j["entropy0"] = {{"bases", bases_entropy}, {"qualities", qualities_entropy}};
  return j.dump(2);
}

CompressionReport compression_report(const ReadCollection& reads, HeaderPolicy policy,
                                     const BackendSpec& backend) {
  const std::string file = write_fastq(reads, policy);
  FastqStreams streams = split_streams(reads);
  if (policy == HeaderPolicy::strip) streams.headers.clear();

  auto run = [&backend](const std::string& data) {
    return std::async(std::launch::async, [&backend, &data] {
      return StreamSize{data.size(), compress(data, backend).size()};
    });
  };
  auto file_size = run(file);
  auto header_size = run(streams.headers);
  auto base_size = run(streams.bases);
  auto qual_size = run(streams.qualities);

  CompressionReport report;
  report.backend = backend.name;
  report.file = file_size.get();
  report.headers = header_size.get();
  report.bases = base_size.get();
  report.qualities = qual_size.get();
  if (!reads.empty()) {
    report.bases_entropy = entropy0(without_newlines(streams.bases));
    report.qualities_entropy = entropy0(without_newlines(streams.qualities));
  }
  return report;
}

}  // namespace fqsmooth
