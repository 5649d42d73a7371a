#include "dpa/io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dpa/errors.hpp"

namespace dpa {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw InternalError("double formatting failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ValidationError("not a number: '" + text + "'");
  }
  return value;
}

std::string CsvTable::to_string() const {
  std::string out;
  auto join = [&](const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) out += ',';
      out += fields[k];
    }
    out += '\n';
  };
  join(header);
  for (const auto& row : rows) join(row);
  return out;
}

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out.write(content.data(), std::streamsize(content.size()));
  if (!out) throw InternalError("short write: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int k = 15; k >= 0; --k) {
    buf[k] = digits[h & 0xf];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

void write_manifest(const std::filesystem::path& path,
                    const std::string& command,
                    const std::string& params_json,
                    const std::vector<ManifestOutput>& outputs) {
  using json = nlohmann::ordered_json;
  json j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["params"] = json::parse(params_json);
  const auto now = std::chrono::system_clock::now();
  j["created_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          now.time_since_epoch())
          .count();
  json outs = json::array();
  for (const auto& o : outputs) {
    outs.push_back(
        {{"path", o.path}, {"bytes", o.bytes}, {"fnv1a64", o.digest}});
  }
  j["outputs"] = std::move(outs);
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace dpa
