#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wreath/funcdesc.hpp"
#include "wreath/semigroup.hpp"
#include "wreath/sequence.hpp"
#include "wreath/wreath.hpp"

namespace wreath {

// One parsed config value. Integers, rationals (p/q), booleans, quoted
// strings, and arrays; floating-point literals are rejected at lex time.
struct ConfigValue {
  enum class Kind { integer, rational, boolean, string, array };
  Kind kind = Kind::integer;
  int64_t int_v = 0;
  Rat rat_v;
  bool bool_v = false;
  std::string str_v;
  std::vector<ConfigValue> arr_v;
  int line = 0;
  int col = 0;
};

// Structured text config: bare top-level keys, [section] headers,
// key = value entries, # comments, multi-line arrays. Keys are marked as
// they are read so leftovers can be rejected after loading.
class ConfigFile {
public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_text(std::string text, std::string name);

  const std::string& name() const { return name_; }
  const std::string& text() const { return text_; }

  bool has_section(const std::string& s) const;
  // marks the key consumed; null when absent
  const ConfigValue* find(const std::string& s, const std::string& k) const;
  const ConfigValue& require(const std::string& s, const std::string& k) const;

  // every section must be declared and every key consumed
  void declare_section(const std::string& s) const;
  void reject_leftovers() const;

  [[noreturn]] void fail_at(const ConfigValue& v, const std::string& msg) const;
  [[noreturn]] void fail_here(const std::string& msg) const;

private:
  struct Entry {
    ConfigValue value;
    mutable bool consumed = false;
  };
  struct Section {
    std::map<std::string, Entry> keys;
    int line = 0;
    mutable bool declared = false;
  };

  std::string name_;
  std::string text_;
  std::map<std::string, Section> sections_;
};

struct GrowthParams {
  uint64_t horizon = 10;
  bool snapshots = false;
  bool emit_w = true;
};

struct VerifyParams {
  std::vector<std::string> checks;  // empty = all applicable
  uint64_t samples = 200;
  uint64_t degree = 6;
  uint64_t triples = 1000;
  uint64_t pairs = 500;
  uint64_t membership_n = 8;
  uint64_t shape_n = 12;
  uint64_t corollary_n = 14;
};

struct DiluteParams {
  std::vector<AlgElement> generators;
  std::vector<std::string> generator_names;
  std::optional<FuncDesc> f;
  std::vector<Rat> eps;
  std::vector<uint64_t> cs;  // explicit constants; skips the fit
  std::optional<FuncDesc> h;
  uint64_t horizon = 100;
  uint64_t fit_horizon = 12;
  uint64_t c_cap = 64;
  std::vector<FuncDesc> merge;
  std::optional<FuncDesc> superlin;
};

struct SemigroupParams {
  SemigroupSpec P;
  std::map<int64_t, AlgElement> entries;  // over P.to_algebra()
  uint64_t horizon = 8;
  uint64_t samples = 200;
  uint64_t degree = 4;
  uint64_t rees_triples = 0;  // 0 = exhaustive pool for tables
  int64_t unit_cell = 0;
};

// Everything a command needs, schema-validated up front.
struct RunConfig {
  std::string path;
  std::string text;  // raw bytes, digest input
  uint64_t seed = 1;
  ZeroMode mode = ZeroMode::formal;
  int64_t unit_cell = 0;
  std::string basename = "run";

  std::optional<AlgebraSpec> algebra;
  std::optional<GeneratingSequence> sequence;
  GrowthParams growth;
  VerifyParams verify;
  std::optional<DiluteParams> dilute;
  std::optional<SemigroupParams> semigroup;

  // [algebra] + [sequence] must both be present (config error otherwise)
  const AlgebraSpec& alg() const;
  const GeneratingSequence& seq() const;
};

struct CliOverrides {
  std::optional<uint64_t> seed;
  std::optional<uint64_t> horizon;
  std::optional<ZeroMode> mode;
};

RunConfig load_run_config(const std::string& path,
                          const CliOverrides& ov = {});
RunConfig load_run_config_text(std::string text, std::string name,
                               const CliOverrides& ov = {});

} // namespace wreath
