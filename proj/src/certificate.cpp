#include "cuspcert/certificate.hpp"

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cuspcert/errors.hpp"

namespace cuspcert {

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return "fnv1a64:" + fnv1a64_hex(buf.str());
}

std::string results_digest(const Certificate& cert) {
  return "fnv1a64:" + fnv1a64_hex(cert.results.dump());
}

std::string iso8601_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Certificate make_certificate(std::string command, nlohmann::json parameters,
                             nlohmann::json results,
                             std::vector<std::string> one_sidedness,
                             std::string inputs_digest) {
  Certificate cert;
  cert.command = std::move(command);
  cert.parameters = std::move(parameters);
  cert.results = std::move(results);
  cert.one_sidedness = std::move(one_sidedness);
  cert.inputs_digest = std::move(inputs_digest);
  cert.timestamp = iso8601_utc_now();
  return cert;
}

nlohmann::json certificate_to_json(const Certificate& cert) {
  return nlohmann::json{{"toolVersion", cert.tool_version},
                        {"command", cert.command},
                        {"inputsDigest", cert.inputs_digest},
                        {"parameters", cert.parameters},
                        {"results", cert.results},
                        {"resultsDigest", results_digest(cert)},
                        {"oneSidednessFlags", cert.one_sidedness},
                        {"timestamp", cert.timestamp}};
}

}  // namespace cuspcert
