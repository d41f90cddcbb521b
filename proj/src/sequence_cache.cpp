#include <zlib.h>

#include <charconv>
#include <fstream>
#include <sstream>

#include "df/special_numbers.hpp"

namespace df {

namespace {

constexpr std::string_view kMagic = "DFCACHE";
constexpr std::string_view kVersion = "v1";

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  constexpr std::size_t kChunk = 1U << 30;
  for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, bytes.size() - off);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), static_cast<uInt>(len));
  }
  return static_cast<std::uint32_t>(crc);
}

std::string record_line(const SequenceCache& cache, std::size_t i) {
  std::string line = std::to_string(cache.index_of(i));
  line += ' ';
  const ExactRational& v = cache.records[i];
  line += v.get_num().get_str();
  if (cache.kind == SequenceKind::bernoulli) {
    line += '/';
    line += v.get_den().get_str();
  }
  return line;
}

bool parse_u64(std::string_view s, std::uint64_t& out) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Canonical decimal: optional '-', no leading zeros, no "-0".
bool parse_integer(std::string_view s, mpz_class& out) {
  std::string_view digits = s;
  if (!digits.empty() && digits[0] == '-') digits.remove_prefix(1);
  if (digits.empty()) return false;
  for (char c : digits) {
    if (c < '0' || c > '9') return false;
  }
  if (digits.size() > 1 && digits[0] == '0') return false;
  if (digits == "0" && digits.size() != s.size()) return false;
  return out.set_str(std::string(s), 10) == 0;
}

[[noreturn]] void bad_record(std::size_t i, const SequenceCache& c, const std::string& why) {
  throw FormatError("cache record " + std::to_string(i) + " (index " +
                        std::to_string(c.index_of(i)) + "): " + why,
                    static_cast<std::int64_t>(i));
}

void check_value(const SequenceCache& c, std::size_t i) {
  const std::uint64_t index = c.index_of(i);
  const ExactRational& v = c.records[i];
  switch (c.kind) {
    case SequenceKind::bernoulli: {
      if (index == 0) {
        if (v != 1) bad_record(i, c, "B_0 must be 1");
        return;
      }
      const int expected = (index / 2) % 2 == 1 ? 1 : -1;
      if (sgn(v) != expected) bad_record(i, c, "sign does not alternate");
      if (v.get_den() != staudt_clausen_denominator(index)) {
        bad_record(i, c, "denominator violates von Staudt-Clausen");
      }
      return;
    }
    case SequenceKind::euler: {
      const int expected = (index / 2) % 2 == 0 ? 1 : -1;
      if (sgn(v) != expected) bad_record(i, c, "sign does not alternate");
      return;
    }
    case SequenceKind::partition:
      if (sgn(v) <= 0) bad_record(i, c, "partition counts are positive");
      return;
  }
}

}  // namespace

std::string_view to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::bernoulli:
      return "bernoulli";
    case SequenceKind::euler:
      return "euler";
    case SequenceKind::partition:
      return "partition";
  }
  return "?";
}

SequenceKind sequence_kind_from_string(std::string_view name) {
  if (name == "bernoulli") return SequenceKind::bernoulli;
  if (name == "euler") return SequenceKind::euler;
  if (name == "partition") return SequenceKind::partition;
  throw DomainError("unknown sequence kind '" + std::string(name) + "'");
}

std::uint64_t SequenceCache::index_of(std::size_t i) const {
  return kind == SequenceKind::partition ? i : 2 * static_cast<std::uint64_t>(i);
}

std::size_t SequenceCache::expected_records() const {
  return kind == SequenceKind::partition ? max_index + 1 : max_index / 2 + 1;
}

SequenceCache make_cache(SequenceKind kind, std::uint64_t max_index) {
  SequenceCache c;
  c.kind = kind;
  c.max_index = max_index;
  switch (kind) {
    case SequenceKind::bernoulli:
    case SequenceKind::euler:
      if (max_index % 2 != 0) throw DomainError("Bernoulli/Euler caches end on an even index");
      zigzag_table().ensure(max_index);
      for (std::uint64_t k = 0; k <= max_index; k += 2) {
        c.records.push_back(kind == SequenceKind::bernoulli ? bernoulli(k)
                                                            : ExactRational(euler(k)));
      }
      break;
    case SequenceKind::partition:
      partition_table().ensure(max_index);
      for (std::uint64_t n = 0; n <= max_index; ++n) c.records.emplace_back(partition(n));
      break;
  }
  return c;
}

void cache_store(const SequenceCache& cache, const std::filesystem::path& path) {
  if (cache.records.size() != cache.expected_records()) {
    throw DomainError("cache record count does not match max_index");
  }
  std::string body;
  for (std::size_t i = 0; i < cache.records.size(); ++i) {
    body += record_line(cache, i);
    body += '\n';
  }
  std::ostringstream header;
  header << kMagic << ' ' << kVersion << ' ' << to_string(cache.kind) << ' ' << cache.max_index
         << ' ' << crc_of(body) << '\n';
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << header.str() << body;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

SequenceCache cache_load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open cache file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  const std::size_t eol = text.find('\n');
  if (eol == std::string::npos) throw FormatError("missing cache header line");
  std::istringstream hs(text.substr(0, eol));
  std::string magic, version, kind_name, max_text, crc_text, extra;
  hs >> magic >> version >> kind_name >> max_text >> crc_text;
  if (magic != kMagic || version != kVersion || (hs >> extra)) {
    throw FormatError("bad cache header");
  }
  SequenceCache c;
  try {
    c.kind = sequence_kind_from_string(kind_name);
  } catch (const DomainError&) {
    throw FormatError("unknown kind '" + kind_name + "' in cache header");
  }
  std::uint64_t crc_expected = 0;
  if (!parse_u64(max_text, c.max_index) || !parse_u64(crc_text, crc_expected) ||
      crc_expected > 0xffffffffULL) {
    throw FormatError("bad numeric field in cache header");
  }
  // Only the canonical spelling is accepted, so no byte of the header can
  // change without failing here.
  std::ostringstream canonical;
  canonical << kMagic << ' ' << kVersion << ' ' << to_string(c.kind) << ' ' << c.max_index << ' '
            << crc_expected;
  if (text.compare(0, eol, canonical.str()) != 0) throw FormatError("non-canonical cache header");
  if (c.kind != SequenceKind::partition && c.max_index % 2 != 0) {
    throw FormatError("Bernoulli/Euler caches end on an even index");
  }

  const std::string_view body = std::string_view(text).substr(eol + 1);
  const std::size_t expected = c.expected_records();
  std::size_t pos = 0;
  for (std::size_t i = 0; i < expected; ++i) {
    const std::size_t end = body.find('\n', pos);
    if (end == std::string_view::npos) {
      throw FormatError("truncated cache: record " + std::to_string(i) + " missing",
                        static_cast<std::int64_t>(i));
    }
    const std::string_view line = body.substr(pos, end - pos);
    pos = end + 1;
    const std::size_t sp = line.find(' ');
    if (sp == std::string_view::npos) bad_record(i, c, "missing separator");
    std::uint64_t index = 0;
    const std::string_view index_text = line.substr(0, sp);
    if (!(index_text == "0" || parse_u64(index_text, index)) || index != c.index_of(i)) {
      bad_record(i, c, "non-contiguous index");
    }
    std::string_view value = line.substr(sp + 1);
    ExactRational v;
    if (c.kind == SequenceKind::bernoulli) {
      const std::size_t slash = value.find('/');
      mpz_class num, den;
      if (slash == std::string_view::npos || !parse_integer(value.substr(0, slash), num) ||
          !parse_integer(value.substr(slash + 1), den) || den <= 0) {
        bad_record(i, c, "malformed fraction");
      }
      v = ExactRational(num, den);
      if (v.get_den() != den) bad_record(i, c, "fraction not in lowest terms");
    } else {
      mpz_class num;
      if (!parse_integer(value, num)) bad_record(i, c, "malformed integer");
      v = ExactRational(num);
    }
    c.records.push_back(std::move(v));
    check_value(c, i);
  }
  if (pos != body.size()) {
    throw FormatError("trailing data after record " + std::to_string(expected - 1),
                      static_cast<std::int64_t>(expected));
  }
  if (crc_of(body) != crc_expected) throw FormatError("cache checksum mismatch");
  return c;
}

SequenceCache cache_load(const std::filesystem::path& path, SequenceKind expected) {
  SequenceCache c = cache_load(path);
  if (c.kind != expected) {
    throw KindMismatch("cache holds " + std::string(to_string(c.kind)) + ", expected " +
                       std::string(to_string(expected)));
  }
  return c;
}

std::filesystem::path cache_file_name(SequenceKind kind) {
  return std::string(to_string(kind)) + ".dfcache";
}

std::vector<std::string> seed_tables_from_directory(const std::filesystem::path& dir) {
  std::vector<std::string> warnings;
  for (SequenceKind kind : {SequenceKind::bernoulli, SequenceKind::euler, SequenceKind::partition}) {
    const auto path = dir / cache_file_name(kind);
    if (!std::filesystem::exists(path)) continue;
    try {
      const SequenceCache c = cache_load(path, kind);
      switch (kind) {
        case SequenceKind::bernoulli:
          zigzag_table().seed_bernoulli(c.records);
          break;
        case SequenceKind::euler: {
          std::vector<ExactInteger> ints;
          ints.reserve(c.records.size());
          for (const auto& r : c.records) ints.push_back(r.get_num());
          zigzag_table().seed_euler(ints);
          break;
        }
        case SequenceKind::partition: {
          std::vector<ExactInteger> ints;
          ints.reserve(c.records.size());
          for (const auto& r : c.records) ints.push_back(r.get_num());
          partition_table().seed(ints);
          break;
        }
      }
    } catch (const FormatError& e) {
      warnings.push_back("cache " + path.string() + " excluded: " + e.what());
    }
  }
  return warnings;
}

}  // namespace df
