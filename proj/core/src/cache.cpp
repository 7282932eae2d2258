#include "nsbox/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "nsbox/errors.hpp"
#include "nsbox/json_io.hpp"

namespace nsbox {

namespace {

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

json load_checked(const std::filesystem::path& file, const char* kind,
                  const Setting& s) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::cache_corrupt, "missing cache file");
  std::stringstream buf;
  buf << in.rdbuf();
  const json j = parse_json_text(buf.str());
  if (!j.contains("kind") || j["kind"] != kind || !j.contains("setting") ||
      j["setting"] != s.str() || !j.contains("hash") || !j.contains("data"))
    throw Error(ErrorCode::cache_corrupt, "unexpected cache layout");
  if (fnv1a_hex(j["data"].dump()) != j["hash"].get<std::string>())
    throw Error(ErrorCode::cache_corrupt, "content hash mismatch");
  return j["data"];
}

void store_atomic(const std::filesystem::path& file, const char* kind, const Setting& s,
                  const json& data) {
  json j;
  j["kind"] = kind;
  j["setting"] = s.str();
  j["hash"] = fnv1a_hex(data.dump());
  j["data"] = data;
  std::filesystem::create_directories(file.parent_path());
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;  // unwritable cache is silently skipped
    out << j.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
}

}  // namespace

EnumerationCache EnumerationCache::from_environment() {
  const char* env = std::getenv("NSBOX_CACHE_DIR");
  if (env) {
    if (*env == '\0') return EnumerationCache();
    return EnumerationCache(std::filesystem::path(env));
  }
  const char* xdg = std::getenv("XDG_CACHE_HOME");
  if (xdg && *xdg) return EnumerationCache(std::filesystem::path(xdg) / "nsbox");
  const char* home = std::getenv("HOME");
  if (home && *home)
    return EnumerationCache(std::filesystem::path(home) / ".cache" / "nsbox");
  return EnumerationCache();
}

EnumerationCache::EnumerationCache(std::filesystem::path dir)
    : dir_(std::move(dir)), enabled_(true) {}

VertexSet EnumerationCache::vertices(const Setting& s, std::uint64_t cap) {
  if (deterministic_count(s) > cap)
    throw Error(ErrorCode::cap_exceeded, "deterministic points exceed cap");
  const std::filesystem::path file = dir_ / ("vertices-" + s.str() + ".json");
  if (enabled_) {
    try {
      const json data = load_checked(file, "vertices", s);
      VertexSet vs{s, {}, {}};
      for (const auto& d : data.at("points"))
        vs.points.push_back(deterministic_point_from_json(d));
      if (vs.points.size() != deterministic_count(s))
        throw Error(ErrorCode::cache_corrupt, "wrong vertex count");
      for (const auto& d : vs.points) vs.tables.push_back(d.table(s));
      return vs;
    } catch (const std::exception&) {
      // fall through and regenerate
    }
  }
  VertexSet vs = VertexSet::make(s, cap);
  if (enabled_) {
    json pts = json::array();
    for (const auto& d : vs.points) pts.push_back(deterministic_point_to_json(d));
    json data;
    data["points"] = std::move(pts);
    store_atomic(file, "vertices", s, data);
  }
  return vs;
}

std::vector<LocalWiring> EnumerationCache::wirings(const Setting& s, std::uint64_t cap) {
  if (wiring_count(s) > cap)
    throw Error(ErrorCode::cap_exceeded, "same-setting wirings exceed cap");
  const std::filesystem::path file = dir_ / ("wirings-" + s.str() + ".json");
  if (enabled_) {
    try {
      const json data = load_checked(file, "wirings", s);
      std::vector<LocalWiring> ws;
      for (const auto& wj : data.at("wirings")) {
        LocalWiring w = wiring_from_json(wj);
        if (!(w.setting == s)) throw Error(ErrorCode::cache_corrupt, "setting drift");
        ws.push_back(std::move(w));
      }
      if (ws.size() != wiring_count(s))
        throw Error(ErrorCode::cache_corrupt, "wrong wiring count");
      return ws;
    } catch (const std::exception&) {
      // fall through and regenerate
    }
  }
  std::vector<LocalWiring> ws = enumerate_wirings(s, cap);
  if (enabled_) {
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(wiring_to_json(w));
    json data;
    data["wirings"] = std::move(arr);
    store_atomic(file, "wirings", s, data);
  }
  return ws;
}

}  // namespace nsbox
