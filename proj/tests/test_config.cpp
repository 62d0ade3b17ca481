#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wreath/config.hpp"
#include "wreath/errors.hpp"

using namespace wreath;

namespace {

RunConfig load(const std::string& text, CliOverrides ov = {}) {
  return load_run_config_text(text, "test.toml", ov);
}

struct Caught {
  ErrKind kind = ErrKind::internal;
  std::string msg;
  int line = -1, col = -1;
};

Caught catch_load(const std::string& text, CliOverrides ov = {}) {
  try {
    (void)load(text, ov);
  } catch (const Error& e) {
    return {e.kind, e.what(), e.line, e.col};
  }
  FAIL("expected an error");
  return {};
}

const std::string kPolyBase = R"(
seed = 7
mode = "exact"

[field]
kind = "gf"
modulus = 2

[algebra]
kind = "polynomial"
vars = ["x"]

[sequence]
kind = "explicit"
entries = ["1: x"]

[growth]
horizon = 12
)";

} // namespace

TEST_CASE("full polynomial run config") {
  RunConfig rc = load(kPolyBase);
  CHECK(rc.seed == 7);
  CHECK(rc.mode == ZeroMode::exact);
  CHECK(rc.basename == "run");
  CHECK(rc.alg().kind() == AlgebraSpec::Kind::polynomial);
  CHECK(rc.alg().field().modulus() == 2);
  CHECK(rc.seq().finite_support());
  CHECK(rc.seq().entry(1) == parse_element(rc.alg(), "x"));
  CHECK(rc.growth.horizon == 12);
  CHECK(rc.growth.emit_w);
  CHECK(rc.verify.samples == 200);  // defaults
  CHECK(!rc.dilute.has_value());
  CHECK(!rc.semigroup.has_value());
}

TEST_CASE("output section and override precedence") {
  RunConfig rc = load(kPolyBase + "\n[output]\nbasename = \"poly-a_1\"\n");
  CHECK(rc.basename == "poly-a_1");

  CliOverrides ov;
  ov.seed = 99;
  ov.mode = ZeroMode::formal;
  ov.horizon = 5;
  RunConfig rc2 = load(kPolyBase, ov);
  CHECK(rc2.seed == 99);
  CHECK(rc2.mode == ZeroMode::formal);
  CHECK(rc2.growth.horizon == 5);

  Caught bad = catch_load(kPolyBase + "\n[output]\nbasename = \"a b\"\n");
  CHECK(bad.kind == ErrKind::config);
}

TEST_CASE("lexer errors carry position") {
  Caught c = catch_load("seed = 1.5\n");
  CHECK(c.kind == ErrKind::config);
  CHECK(c.msg.find("floating-point") != std::string::npos);
  CHECK(c.line == 1);

  Caught s = catch_load("mode = \"exact\nseed = 1\n");
  CHECK(s.kind == ErrKind::config);

  Caught big = catch_load("seed = 1234567890123456789012345\n");
  CHECK(big.kind == ErrKind::config);
}

TEST_CASE("unknown keys and sections are rejected") {
  Caught k = catch_load(kPolyBase + "\nbogus_key = 3\n");
  CHECK(k.kind == ErrKind::config);
  CHECK(k.msg.find("bogus_key") != std::string::npos);

  Caught s = catch_load(kPolyBase + "\n[mystery]\nx = 1\n");
  CHECK(s.kind == ErrKind::config);
  CHECK(s.msg.find("mystery") != std::string::npos);

  Caught d = catch_load("seed = 1\nseed = 2\n" + kPolyBase.substr(9));
  CHECK(d.kind == ErrKind::config);
}

TEST_CASE("value validation") {
  std::string zero_h = kPolyBase;
  zero_h.replace(zero_h.find("horizon = 12"), 12, "horizon = 0");
  CHECK(catch_load(zero_h).kind == ErrKind::config);

  std::string bad_mode = kPolyBase;
  bad_mode.replace(bad_mode.find("\"exact\""), 7, "\"loose\"");
  CHECK(catch_load(bad_mode).kind == ErrKind::config);

  Caught no_field = catch_load(
      "[algebra]\nkind = \"polynomial\"\nvars = [\"x\"]\n");
  CHECK(no_field.kind == ErrKind::config);

  // gf requires a modulus; rationals reject one
  Caught no_mod = catch_load("[field]\nkind = \"gf\"\n");
  CHECK(no_mod.kind == ErrKind::config);
  Caught extra_mod = catch_load("[field]\nkind = \"rationals\"\nmodulus = 3\n");
  CHECK(extra_mod.kind == ErrKind::config);
}

TEST_CASE("structure constants from config") {
  const std::string sc = R"(
[field]
kind = "rationals"

[algebra]
kind = "structure_constants"
basis = ["e", "f"]
unital = true
unit = "e"
products = [
  "e*e = e",
  "e*f = f",
  "f*e = f",
  "f*f = 1/2*e",
]

[sequence]
kind = "explicit"
entries = ["1: f"]
)";
  RunConfig rc = load(sc);
  AlgElement f = parse_element(rc.alg(), "f");
  CHECK(rc.alg().mul(f, f) == parse_element(rc.alg(), "1/2*e"));

  // corrupting one row breaks associativity and names the triple
  std::string bad = sc;
  bad.replace(bad.find("\"f*e = f\""), 9, "\"f*e = 0\"");
  Caught c = catch_load(bad);
  CHECK(c.kind == ErrKind::config);  // wrapped with the value's position
  CHECK(c.msg.find("not associative") != std::string::npos);
  CHECK(c.line > 1);

  Caught dup = catch_load(sc.substr(0, sc.find("]\n\n[sequence")) +
                          ",\n  \"e*e = e\",\n]\n");
  CHECK(dup.kind == ErrKind::config);
}

TEST_CASE("rule sequences over words and variables") {
  const std::string mq = R"(
mode = "formal"

[field]
kind = "gf"
modulus = 2

[algebra]
kind = "monomial_quotient"
alphabet = ["x", "y"]
forbidden = ["yy"]

[sequence]
kind = "rule_quadratic"
positions = [1, 0, 0]
element_rule = "var_power:x"
rule_horizon = 500
gap_mode = true
)";
  RunConfig rc = load(mq);
  CHECK(!rc.seq().finite_support());
  CHECK(rc.seq().gap_mode());
  CHECK(rc.seq().entry(4) == parse_element(rc.alg(), "xx"));

  std::string bad = mq;
  bad.replace(bad.find("var_power:x"), 11, "var_power:z");
  CHECK(catch_load(bad).kind == ErrKind::config);

  std::string cyc = mq;
  cyc.replace(cyc.find("element_rule = \"var_power:x\""), 28,
              "element_rule = \"cycle:x;xy\"");
  RunConfig rcc = load(cyc);
  CHECK(rcc.seq().entry(1) == parse_element(rcc.alg(), "x"));
  CHECK(rcc.seq().entry(4) == parse_element(rcc.alg(), "xy"));
  CHECK(rcc.seq().entry(9) == parse_element(rcc.alg(), "x"));
}

TEST_CASE("dilution section") {
  const std::string dil = R"(
[field]
kind = "gf"
modulus = 2

[algebra]
kind = "polynomial"
vars = ["x", "y"]

[dilute]
generators = ["x", "y"]
f = "power:2"
eps = [1, 1/2]
preset = "superlinear_surrogate"
horizon = 100
fit_horizon = 8
)";
  RunConfig rc = load(dil);
  REQUIRE(rc.dilute.has_value());
  CHECK(rc.dilute->generators.size() == 2);
  CHECK(rc.dilute->eps == std::vector<Rat>{Rat(1), Rat(1, 2)});
  CHECK(rc.dilute->h->family() == FuncDesc::Family::n_ceil_ln_n);
  CHECK(rc.dilute->fit_horizon == 8);

  std::string short_eps = dil;
  short_eps.replace(short_eps.find("eps = [1, 1/2]"), 14, "eps = [1]");
  CHECK(catch_load(short_eps).kind == ErrKind::config);

  std::string both_h = dil;
  both_h += "h = \"power:2\"\n";
  CHECK(catch_load(both_h).kind == ErrKind::config);

  std::string no_h(dil);
  no_h.replace(no_h.find("preset = \"superlinear_surrogate\"\n"), 33, "");
  CHECK(catch_load(no_h).kind == ErrKind::config);
}

TEST_CASE("semigroup section") {
  const std::string sg = R"(
[semigroup]
kind = "free_monoid"
alphabet = ["a", "b"]
cap = 6
entries = ["1: a"]
horizon = 4
)";
  RunConfig rc = load(sg);
  REQUIRE(rc.semigroup.has_value());
  CHECK(rc.semigroup->P.kind() == SemigroupSpec::Kind::free_monoid);
  CHECK(rc.semigroup->P.cap() == 6);
  CHECK(rc.semigroup->horizon == 4);
  CHECK(rc.semigroup->rees_triples == 1000);  // non-table default

  std::string no_cap = sg;
  no_cap.replace(no_cap.find("cap = 6\n"), 8, "");
  Caught c = catch_load(no_cap);
  CHECK(c.kind == ErrKind::config);
  CHECK(c.msg.find("cap") != std::string::npos);

  const std::string table = R"(
[semigroup]
kind = "table"
names = ["e"]
rows = ["e"]
entries = ["1: e"]
horizon = 3
)";
  RunConfig rct = load(table);
  CHECK(rct.semigroup->rees_triples == 0);  // exhaustive
  CHECK(rct.semigroup->P.size() == 1);
}

TEST_CASE("multiline arrays and comments") {
  const std::string text = R"(
# leading comment
seed = 3  # trailing comment

[field]
kind = "gf"
modulus = 2

[algebra]
kind = "polynomial"
vars = [
  "x",
  "y",
]

[sequence]
kind = "explicit"
entries = ["1: x", "2: y"]
)";
  RunConfig rc = load(text);
  CHECK(rc.seed == 3);
  CHECK(rc.alg().vars() == std::vector<std::string>{"x", "y"});
  CHECK(rc.seq().max_position() == 2);
}

TEST_CASE("sequence entry strings are validated") {
  Caught dup = catch_load(R"(
[field]
kind = "gf"
modulus = 2

[algebra]
kind = "polynomial"
vars = ["x"]

[sequence]
kind = "explicit"
entries = ["1: x", "1: x"]
)");
  CHECK(dup.kind == ErrKind::config);

  Caught pos = catch_load(R"(
[field]
kind = "gf"
modulus = 2

[algebra]
kind = "polynomial"
vars = ["x"]

[sequence]
kind = "explicit"
entries = ["0: x"]
)");
  CHECK(pos.kind == ErrKind::config);
}

TEST_CASE("unit cell bounds") {
  auto with_cell = [](const std::string& v) {
    std::string t = kPolyBase;
    size_t at = t.find("entries = [\"1: x\"]\n");
    t.insert(at + 19, "unit_cell = " + v + "\n");
    return t;
  };
  RunConfig rc = load(with_cell("-3"));
  CHECK(rc.unit_cell == -3);
  Caught far = catch_load(with_cell("9"));
  CHECK(far.kind == ErrKind::config);
}
