#ifndef RADEULER_OUTPUT_HPP
#define RADEULER_OUTPUT_HPP

#include <string>
#include <vector>

#include "radeuler/model.hpp"
#include "radeuler/solver.hpp"

namespace radeuler {

/// Writes content to path.tmp in the same directory and renames it over path, so a reader
/// never sees a partial file. Creates parent directories. Throws IoError.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Lowercase hex SHA-256 digest.
std::string sha256_hex(const std::string& content);

/// %.17g formatting, so values round-trip exactly.
std::string fmt17(double v);

struct SnapshotHeader {
  double t = 0.0;
  double eps = 0.0;
  std::size_t N = 0;
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double rho_bar = 0.0;
};

/// Header line "t, epsilon, N, a, b, gamma, delta, rho_bar", its values, then "r, rho, m" rows.
std::string format_snapshot(const State& state, double eps, const GasModel& model, double rho_bar);

struct ParsedSnapshot {
  SnapshotHeader header;
  std::vector<double> r;
  std::vector<double> rho;
  std::vector<double> m;
};

ParsedSnapshot parse_snapshot(const std::string& text);

/// Collects the files of one output directory and writes manifest.json listing each with its
/// SHA-256. Paths are relative to the root and sorted, so the manifest is deterministic.
class OutputSet {
 public:
  explicit OutputSet(std::string root);

  const std::string& root() const noexcept { return root_; }
  /// Writes root/relative atomically and records its hash.
  void write(const std::string& relative, const std::string& content);
  /// Writes manifest.json with the given extra JSON members (a serialized object body).
  std::string write_manifest(const std::string& extra_json_object);

 private:
  std::string root_;
  std::vector<std::pair<std::string, std::string>> files_;  // relative path, hash
};

/// Simple CSV assembly: header names and rows of numbers at full precision.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

}  // namespace radeuler

#endif  // RADEULER_OUTPUT_HPP
