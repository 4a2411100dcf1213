#include "cchain/store/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <boost/crc.hpp>
#include <cstdlib>

#include "cchain/core/error.hpp"
#include "cchain/store/serialize.hpp"

namespace cchain {

namespace {

const char* const kKinds[] = {"space", "orbits", "edges", "report", "plan"};

// RAII descriptor holding an flock.
class LockedFile {
 public:
  LockedFile(const std::filesystem::path& path, int flags, int lock) : fd_(::open(path.c_str(), flags, 0644)) {
    if (fd_ >= 0 && ::flock(fd_, lock) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~LockedFile() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  LockedFile(const LockedFile&) = delete;
  LockedFile& operator=(const LockedFile&) = delete;
  int fd() const { return fd_; }

 private:
  int fd_;
};

void check_kind(const std::string& kind) {
  for (const char* k : kKinds)
    if (kind == k) return;
  throw DomainError("unknown cache kind " + kind);
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

std::uint64_t payload_checksum(const std::string& payload) {
  boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, ~0ULL, ~0ULL, true, true> crc;  // CRC-64/XZ
  crc.process_bytes(payload.data(), payload.size());
  return crc.checksum();
}

CacheEntry make_entry(std::string kind, std::vector<std::string> params, std::string payload) {
  CacheEntry e{std::move(kind), std::move(params), std::move(payload), kFormatVersion, 0};
  e.checksum = payload_checksum(e.payload);
  return e;
}

Store::Store(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<std::filesystem::path> Store::resolve_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return std::filesystem::path(*flag);
  if (const char* env = std::getenv("CCHAIN_CACHE_DIR"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

std::filesystem::path Store::file_for(const std::string& kind, const std::vector<std::string>& params) const {
  check_kind(kind);
  std::string name = kind;
  for (const auto& p : params) {
    if (p.empty() || p.find_first_of("/\\_") != std::string::npos) throw DomainError("cache parameter '" + p + "' is not a plain token");
    name += "_" + p;
  }
  return dir_ / (name + ".json");
}

void Store::put(const CacheEntry& e) const {
  if (payload_checksum(e.payload) != e.checksum) throw DomainError("cache entry checksum does not match its payload");
  auto path = file_for(e.kind, e.params);
  Json doc = {{"kind", e.kind}, {"params", e.params}, {"version", e.version}, {"checksum", hex64(e.checksum)}, {"payload", e.payload}};
  std::string text = doc.dump(1) + "\n";
  LockedFile f(path, O_RDWR | O_CREAT, LOCK_EX);
  if (f.fd() < 0) throw DomainError("cannot open cache file " + path.string());
  if (::ftruncate(f.fd(), 0) != 0 || ::write(f.fd(), text.data(), text.size()) != static_cast<ssize_t>(text.size()))
    throw DomainError("cannot write cache file " + path.string());
}

std::optional<CacheEntry> Store::get(const std::string& kind, const std::vector<std::string>& params) const {
  auto path = file_for(kind, params);
  if (!std::filesystem::exists(path)) return std::nullopt;
  LockedFile f(path, O_RDONLY, LOCK_SH);
  if (f.fd() < 0) throw DomainError("cannot open cache file " + path.string());
  std::string text;
  char buf[1 << 16];
  for (ssize_t n; (n = ::read(f.fd(), buf, sizeof buf)) > 0;) text.append(buf, static_cast<std::size_t>(n));
  CacheEntry e;
  try {
    Json doc = Json::parse(text);
    e.kind = doc.at("kind").get<std::string>();
    e.params = doc.at("params").get<std::vector<std::string>>();
    e.version = doc.at("version").get<int>();
    e.payload = doc.at("payload").get<std::string>();
    e.checksum = std::stoull(doc.at("checksum").get<std::string>(), nullptr, 16);
  } catch (const std::exception&) {
    throw DomainError("corrupt cache file " + path.string());
  }
  if (payload_checksum(e.payload) != e.checksum) throw DomainError("checksum mismatch in cache file " + path.string());
  if (e.version != kFormatVersion) return std::nullopt;  // older format: recompute
  return e;
}

}  // namespace cchain
