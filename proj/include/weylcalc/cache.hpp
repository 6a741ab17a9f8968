#ifndef WEYLCALC_CACHE_HPP
#define WEYLCALC_CACHE_HPP

// On-disk cache of per-degree echelon data.
//
// One file per (type, rank, algebra kind, degree). The file name is the
// lowercase hex FNV-1a digest of those fields. Layout:
//
//   weylcalc-cache v1 type=B rank=2 kind=quad degree=3 generators=4 rows=20
//   <pivot>:1/1 <index>:<num>/<den> ...
//   ...
//
// Indices are positions of words among all words of the given degree in
// lexicographic order. Each row is a reduced echelon row of the relation
// ideal whose pivot is a non-standard word with a standard prefix; together
// with the lower degrees these rows determine the whole degree.
// Writes go to a temporary file that is renamed into place.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>
#include <thread>
#include <tuple>
#include <vector>

#include "weylcalc/linalg.hpp"
#include "weylcalc/rational.hpp"

namespace weylcalc::cache {

inline constexpr const char* kMagic = "weylcalc-cache";
inline constexpr const char* kVersion = "v1";

struct Key {
  std::string type;
  int rank = 0;
  std::string kind;
  std::size_t degree = 0;

  friend bool operator==(const Key&, const Key&) = default;
};

struct Entry {
  Key key;
  std::size_t generators = 0;
  std::vector<linalg::SparseVector> rows;
};

class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string digest(const Key& k) {
  std::string text = "type=" + k.type + ";rank=" + std::to_string(k.rank) + ";kind=" + k.kind +
                     ";degree=" + std::to_string(k.degree);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

inline std::string header_line(const Entry& e) {
  return std::string(kMagic) + " " + kVersion + " type=" + e.key.type +
         " rank=" + std::to_string(e.key.rank) + " kind=" + e.key.kind +
         " degree=" + std::to_string(e.key.degree) + " generators=" + std::to_string(e.generators) +
         " rows=" + std::to_string(e.rows.size());
}

inline std::string serialize(const Entry& e) {
  std::ostringstream out;
  out << header_line(e) << '\n';
  for (const auto& row : e.rows) {
    bool first = true;
    for (const auto& x : row) {
      if (!first) out << ' ';
      first = false;
      out << x.index << ':' << x.value.get_num().get_str() << '/' << x.value.get_den().get_str();
    }
    out << '\n';
  }
  return out.str();
}

struct Header {
  Key key;
  std::size_t generators = 0;
  std::size_t rows = 0;
};

inline std::optional<Header> parse_header(const std::string& line) {
  std::istringstream in(line);
  std::string magic, version;
  if (!(in >> magic >> version) || magic != kMagic || version != kVersion) return std::nullopt;
  Header h;
  std::string field;
  int seen = 0;
  try {
    while (in >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) return std::nullopt;
      std::string name = field.substr(0, eq);
      std::string value = field.substr(eq + 1);
      if (name == "type") {
        h.key.type = value;
      } else if (name == "rank") {
        h.key.rank = std::stoi(value);
      } else if (name == "kind") {
        h.key.kind = value;
      } else if (name == "degree") {
        h.key.degree = std::stoull(value);
      } else if (name == "generators") {
        h.generators = std::stoull(value);
      } else if (name == "rows") {
        h.rows = std::stoull(value);
      } else {
        return std::nullopt;
      }
      ++seen;
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (seen != 6) return std::nullopt;
  return h;
}

/// Parses file contents; nullopt when malformed.
inline std::optional<Entry> deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  auto h = parse_header(line);
  if (!h) return std::nullopt;
  Entry e{h->key, h->generators, {}};
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string tok;
      linalg::SparseVector row;
      while (ls >> tok) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) return std::nullopt;
        std::size_t idx = std::stoull(tok.substr(0, colon));
        row.push_back({idx, parse_rational(tok.substr(colon + 1))});
      }
      e.rows.push_back(std::move(row));
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (e.rows.size() != h->rows) return std::nullopt;
  return e;
}

inline std::filesystem::path path_for(const std::filesystem::path& dir, const Key& k) {
  return dir / digest(k);
}

inline void write_atomic(const std::filesystem::path& dir, const Entry& e) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CacheError("cannot create cache directory " + dir.string() + ": " + ec.message());
  static std::atomic<std::uint64_t> counter{0};
  auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  auto tid = std::hash<std::thread::id>{}(std::this_thread::get_id());
  fs::path final_path = path_for(dir, e.key);
  fs::path tmp = dir / (digest(e.key) + ".tmp." + std::to_string(stamp) + "." + std::to_string(tid) + "." +
                        std::to_string(counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp.string());
    out << serialize(e);
    if (!out) throw CacheError("write failed for " + tmp.string());
  }
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw CacheError("cannot rename into " + final_path.string());
  }
}

/// nullopt when the file is missing, unreadable, malformed or for another key.
inline std::optional<Entry> read(const std::filesystem::path& dir, const Key& k) {
  std::ifstream in(path_for(dir, k), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream buf;
  buf << in.rdbuf();
  auto e = deserialize(buf.str());
  if (!e || !(e->key == k)) return std::nullopt;
  return e;
}

struct Listing {
  std::filesystem::path file;
  Header header;
  std::uintmax_t bytes = 0;
};

/// Cache files in `dir`, sorted by (type, rank, kind, degree). Other files are ignored.
inline std::vector<Listing> list(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::vector<Listing> out;
  std::error_code ec;
  if (!fs::exists(dir, ec)) return out;
  fs::directory_iterator it(dir, ec);
  if (ec) throw CacheError("cannot read cache directory " + dir.string() + ": " + ec.message());
  for (const auto& ent : it) {
    if (!ent.is_regular_file()) continue;
    std::ifstream in(ent.path());
    std::string line;
    if (!std::getline(in, line)) continue;
    auto h = parse_header(line);
    if (!h || ent.path().filename().string() != digest(h->key)) continue;
    out.push_back({ent.path(), *h, ent.file_size()});
  }
  std::sort(out.begin(), out.end(), [](const Listing& a, const Listing& b) {
    const auto& x = a.header.key;
    const auto& y = b.header.key;
    return std::tie(x.type, x.rank, x.kind, x.degree) < std::tie(y.type, y.rank, y.kind, y.degree);
  });
  return out;
}

/// Removes every cache file in `dir`; returns how many were removed.
inline std::size_t clear(const std::filesystem::path& dir) {
  std::size_t n = 0;
  for (const auto& l : list(dir)) {
    std::error_code ec;
    if (std::filesystem::remove(l.file, ec)) ++n;
    if (ec) throw CacheError("cannot remove " + l.file.string() + ": " + ec.message());
  }
  return n;
}

}  // namespace weylcalc::cache

#endif  // WEYLCALC_CACHE_HPP
