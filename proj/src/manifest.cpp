#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "noisebench/manifest.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <httplib.h>
#include <openssl/evp.h>

#include "noisebench/arff.hpp"
#include "noisebench/builtin.hpp"
#include "noisebench/csv.hpp"

namespace noisebench {

namespace {

// RAII advisory lock on <cache>/.lock.
class CacheLock {
 public:
  explicit CacheLock(const std::filesystem::path& cache_dir) {
    std::filesystem::create_directories(cache_dir);
    const auto lock_path = cache_dir / ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
    if (fd_ < 0) throw Error("cannot open lock file " + lock_path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error("cannot lock " + lock_path.string());
    }
  }
  ~CacheLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  CacheLock(const CacheLock&) = delete;
  CacheLock& operator=(const CacheLock&) = delete;

 private:
  int fd_ = -1;
};

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void verify_checksum(const std::filesystem::path& path, const std::string& expected,
                     std::string_view bytes) {
  if (expected.empty()) return;
  constexpr std::string_view prefix = "sha256:";
  if (expected.substr(0, prefix.size()) != prefix) {
    throw Error("unsupported checksum format '" + expected + "' (want sha256:<hex>)");
  }
  const std::string got = "sha256:" + sha256_hex(bytes);
  if (got != expected) throw ChecksumMismatch(path.string(), expected, got);
}

struct ParsedUrl {
  bool https = false;
  std::string host;
  int port = 0;
  std::string target;
};

ParsedUrl parse_http_url(const std::string& url) {
  ParsedUrl out;
  std::string rest;
  if (url.rfind("https://", 0) == 0) {
    out.https = true;
    rest = url.substr(8);
  } else if (url.rfind("http://", 0) == 0) {
    rest = url.substr(7);
  } else {
    throw Error("unsupported url scheme: " + url);
  }
  const auto slash = rest.find('/');
  std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
  out.target = slash == std::string::npos ? "/" : rest.substr(slash);
  const auto colon = hostport.find(':');
  if (colon != std::string::npos) {
    out.host = hostport.substr(0, colon);
    out.port = std::stoi(hostport.substr(colon + 1));
  } else {
    out.host = hostport;
    out.port = out.https ? 443 : 80;
  }
  return out;
}

std::string download(const std::string& url) {
  const ParsedUrl u = parse_http_url(url);
  httplib::Result res = [&] {
    if (u.https) {
      httplib::SSLClient client(u.host, u.port);
      client.set_follow_location(true);
      client.set_read_timeout(60, 0);
      return client.Get(u.target);
    }
    httplib::Client client(u.host, u.port);
    client.set_follow_location(true);
    client.set_read_timeout(60, 0);
    return client.Get(u.target);
  }();
  if (!res) throw DownloadFailed(url, 0);
  if (res->status != 200) throw DownloadFailed(url, res->status);
  return res->body;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

DatasetManifest DatasetManifest::from_json(const nlohmann::json& j) {
  DatasetManifest manifest;
  std::unordered_set<std::string> seen;
  for (const auto& e : j.at("entries")) {
    ManifestEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.source_url = e.at("source_url").get<std::string>();
    entry.checksum = e.value("checksum", std::string{});
    const std::string format = e.value("format", std::string{"csv"});
    if (format == "csv") {
      entry.format = DataFormat::Csv;
    } else if (format == "arff") {
      entry.format = DataFormat::Arff;
    } else {
      throw Error("manifest entry '" + entry.id + "': unknown format '" + format + "'");
    }
    entry.label_column = e.at("label_column").get<std::string>();
    entry.positive_value = e.at("positive_value").get<std::string>();
    entry.dropped_columns = e.value("dropped_columns", std::vector<std::string>{});
    const std::string delim = e.value("delimiter", std::string{","});
    if (delim.size() != 1) throw Error("manifest entry '" + entry.id + "': bad delimiter");
    entry.delimiter = delim[0];
    entry.header = e.value("header", true);
    if (!seen.insert(entry.id).second) {
      throw Error("manifest has duplicate id '" + entry.id + "'");
    }
    if (entry.checksum.empty() && !is_builtin_url(entry.source_url)) {
      throw Error("manifest entry '" + entry.id + "': remote entries need a checksum");
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

DatasetManifest DatasetManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read manifest " + path.string());
  return from_json(nlohmann::json::parse(in));
}

nlohmann::json DatasetManifest::to_json() const {
  nlohmann::json j;
  auto& list = j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    list.push_back({{"id", e.id},
                    {"source_url", e.source_url},
                    {"checksum", e.checksum},
                    {"format", e.format == DataFormat::Csv ? "csv" : "arff"},
                    {"label_column", e.label_column},
                    {"positive_value", e.positive_value},
                    {"dropped_columns", e.dropped_columns},
                    {"delimiter", std::string(1, e.delimiter)},
                    {"header", e.header}});
  }
  return j;
}

const ManifestEntry& DatasetManifest::entry(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return e;
  }
  throw Error("manifest has no entry '" + std::string(id) + "'");
}

std::filesystem::path fetch(const ManifestEntry& entry, const std::filesystem::path& cache_dir) {
  const char* ext = entry.format == DataFormat::Csv ? "raw.csv" : "raw.arff";
  const auto dir = cache_dir / entry.id;
  const auto path = dir / ext;

  if (std::filesystem::exists(path)) {
    verify_checksum(path, entry.checksum, read_file(path));
    return path;
  }

  CacheLock lock(cache_dir);
  if (std::filesystem::exists(path)) {  // raced another fetcher
    verify_checksum(path, entry.checksum, read_file(path));
    return path;
  }
  std::filesystem::create_directories(dir);

  std::string bytes;
  if (is_builtin_url(entry.source_url)) {
    bytes = builtin_csv(builtin_name(entry.source_url));
  } else if (entry.source_url.rfind("file://", 0) == 0) {
    bytes = read_file(entry.source_url.substr(7));
  } else {
    bytes = download(entry.source_url);
  }
  verify_checksum(path, entry.checksum, bytes);
  write_file(path, bytes);
  return path;
}

Dataset prepare_dataset(const ManifestEntry& entry, const std::filesystem::path& cache_dir) {
  const auto dir = cache_dir / entry.id;
  const auto bin = dir / "dataset.bin";
  const auto schema = dir / "schema.json";
  if (std::filesystem::exists(bin) && std::filesystem::exists(schema)) {
    return load_dataset(bin, schema);
  }

  const auto raw_path = fetch(entry, cache_dir);
  const std::string bytes = read_file(raw_path);

  StandardizeSpec spec;
  spec.dataset_id = entry.id;
  spec.label_column = entry.label_column;
  spec.positive_value = entry.positive_value;
  spec.dropped_columns = entry.dropped_columns;

  Dataset ds = [&] {
    if (entry.format == DataFormat::Arff) {
      const ArffResult arff = parse_arff(bytes);
      return standardize(arff.table, arff.kinds, spec);
    }
    CsvOptions options;
    options.delimiter = entry.delimiter;
    options.header = entry.header;
    const RawTable table = parse_csv(bytes, options);
    const auto kinds = infer_kinds(table);
    return standardize(table, kinds, spec);
  }();

  CacheLock lock(cache_dir);
  save_dataset(ds, bin, schema);
  return ds;
}

}  // namespace noisebench
