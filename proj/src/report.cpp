#include "wreath/output.hpp"

#include <cstdio>
#include <fstream>

#include "wreath/errors.hpp"

namespace wreath {

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

OutputMeta make_meta(const RunConfig& rc) {
  OutputMeta m;
  m.digest = hex64(fnv1a64(rc.text));
  m.seed = rc.seed;
  m.mode = rc.mode == ZeroMode::exact ? "exact" : "formal";
  return m;
}

nlohmann::json meta_json(const OutputMeta& m) {
  return nlohmann::json{{"config_digest", m.digest},
                        {"seed", m.seed},
                        {"mode", m.mode},
                        {"version", m.version}};
}

nlohmann::json report_json(const Report& r) {
  nlohmann::json j{{"name", r.name},
                   {"pass", r.pass},
                   {"checked", r.checked}};
  j["witnesses"] = r.witnesses;
  j["params"] = r.params;
  return j;
}

nlohmann::json series_json(const GrowthSeries& s) {
  nlohmann::json j;
  j["values"] = s.values;
  j["meta"] = s.meta;
  return j;
}

nlohmann::json wreath_json(const WreathContext& ctx, const WreathElement& x) {
  const Field& f = ctx.alg.field();
  nlohmann::json laurent = nlohmann::json::object();
  for (const auto& [k, c] : x.laurent)
    laurent[std::to_string(k)] = f.to_string(c);
  nlohmann::json mat = nlohmann::json::object();
  for (const auto& [ij, b] : x.mat)
    mat[std::to_string(ij.first) + "," + std::to_string(ij.second)] =
        ctx.alg.to_string(b);
  nlohmann::json tails = nlohmann::json::object();
  for (const auto& [ij, w] : x.tails)
    tails[std::to_string(ij.first) + "," + std::to_string(ij.second)] =
        ctx.alg.to_string(w);
  return nlohmann::json{{"laurent", laurent}, {"mat", mat}, {"tails", tails}};
}

std::string series_csv(
    const OutputMeta& m,
    const std::vector<std::pair<std::string, const GrowthSeries*>>& cols) {
  std::string out = "# digest=" + m.digest + " seed=" + std::to_string(m.seed) +
                    " mode=" + m.mode + " version=" + m.version + "\n";
  out += "n,quantity,value\n";
  for (const auto& [quantity, series] : cols)
    for (size_t i = 0; i < series->values.size(); ++i)
      out += std::to_string(i + 1) + "," + quantity + "," +
             std::to_string(series->values[i]) + "\n";
  return out;
}

std::string json_text(const nlohmann::json& j, const OutputMeta& m) {
  nlohmann::json root = j;
  root["meta"] = meta_json(m);
  return root.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrKind::resource, "cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrKind::resource, "short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    fail(ErrKind::resource, "cannot rename '" + tmp + "' to '" + path + "'");
}

} // namespace wreath
