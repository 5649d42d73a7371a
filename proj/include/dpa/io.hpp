#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace dpa {

/// Shortest round-trip decimal representation of a double (std::to_chars).
std::string format_double(double value);

/// Strict double parse; throws ValidationError on trailing garbage.
double parse_double(const std::string& text);

/// Minimal CSV: header row, comma separators, '.' decimals, LF endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;
  static CsvTable parse(const std::string& text);
};

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// FNV-1a 64-bit content digest, as 16 hex chars.
std::string fnv1a64_hex(const std::string& bytes);

struct ManifestOutput {
  std::string path;
  std::uint64_t bytes = 0;
  std::string digest;
};

/// Writes the run manifest next to the outputs: tool version, exact command,
/// parameters/seed block, timestamp, and a digest per emitted artifact.
void write_manifest(const std::filesystem::path& path,
                    const std::string& command,
                    const std::string& params_json,
                    const std::vector<ManifestOutput>& outputs);

inline constexpr const char* kToolVersion = "dpa 0.1.0";

}  // namespace dpa
