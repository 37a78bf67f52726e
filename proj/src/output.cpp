#include "radeuler/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "radeuler/errors.hpp"

namespace radeuler {

namespace fs = std::filesystem;

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + target.parent_path().string() + "': " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      throw IoError("write to '" + tmp.string() + "' failed");
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto '" + target.string() + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(const std::string& content) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, content.data(), content.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw IoError("SHA-256 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_snapshot(const State& s, double eps, const GasModel& model, double rho_bar) {
  std::string out = "t, epsilon, N, a, b, gamma, delta, rho_bar\n";
  out += fmt17(s.t) + ", " + fmt17(eps) + ", " + std::to_string(s.grid.cells()) + ", " + fmt17(s.grid.a()) + ", " +
         fmt17(s.grid.b()) + ", " + fmt17(model.gamma()) + ", " + fmt17(model.delta()) + ", " + fmt17(rho_bar) +
         "\n";
  out += "r, rho, m\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    out += fmt17(s.grid.r(i)) + ", " + fmt17(s.rho[i]) + ", " + fmt17(s.m[i]) + "\n";
  }
  return out;
}

ParsedSnapshot parse_snapshot(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto numbers = [](std::string l) {
    std::replace(l.begin(), l.end(), ',', ' ');
    std::istringstream ss(l);
    std::vector<double> v;
    double x;
    while (ss >> x) v.push_back(x);
    return v;
  };
  ParsedSnapshot p;
  if (!std::getline(in, line) || line.rfind("t, epsilon", 0) != 0) throw IoError("snapshot: missing header line");
  if (!std::getline(in, line)) throw IoError("snapshot: missing header values");
  const std::vector<double> h = numbers(line);
  if (h.size() != 8) throw IoError("snapshot: header needs 8 values");
  p.header = {h[0], h[1], static_cast<std::size_t>(h[2]), h[3], h[4], h[5], h[6], h[7]};
  if (!std::getline(in, line) || line.rfind("r, rho, m", 0) != 0) throw IoError("snapshot: missing column line");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<double> v = numbers(line);
    if (v.size() != 3) throw IoError("snapshot: row needs 3 values");
    p.r.push_back(v[0]);
    p.rho.push_back(v[1]);
    p.m.push_back(v[2]);
  }
  if (p.r.size() != p.header.N + 1) throw IoError("snapshot: row count does not match N");
  return p;
}

OutputSet::OutputSet(std::string root) : root_(std::move(root)) {}

void OutputSet::write(const std::string& relative, const std::string& content) {
  atomic_write((fs::path(root_) / relative).string(), content);
  files_.emplace_back(relative, sha256_hex(content));
}

std::string OutputSet::write_manifest(const std::string& extra_json_object) {
  nlohmann::ordered_json m = nlohmann::ordered_json::parse(extra_json_object);
  auto sorted = files_;
  std::sort(sorted.begin(), sorted.end());
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const auto& [path, hash] : sorted) files.push_back({{"path", path}, {"sha256", hash}});
  m["files"] = files;
  const std::string text = m.dump(2) + "\n";
  atomic_write((fs::path(root_) / "manifest.json").string(), text);
  return text;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + fmt17(row[j]);
    out += "\n";
  }
  return out;
}

}  // namespace radeuler
