#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "wreath/asymptotics.hpp"
#include "wreath/config.hpp"
#include "wreath/errors.hpp"
#include "wreath/honest.hpp"
#include "wreath/output.hpp"
#include "wreath/semigroup.hpp"

namespace wreath {
namespace {

const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::config: return "config";
    case ErrKind::malformed: return "malformed";
    case ErrKind::precondition: return "precondition";
    case ErrKind::unsupported_mode: return "unsupported_mode";
    case ErrKind::horizon: return "horizon";
    case ErrKind::horizon_too_small: return "horizon_too_small";
    case ErrKind::range: return "range";
    case ErrKind::cap: return "cap";
    case ErrKind::fit_failure: return "fit_failure";
    case ErrKind::resource: return "resource";
    case ErrKind::internal: return "internal";
  }
  return "unknown";
}

int err_exit_code(ErrKind k) {
  switch (k) {
    case ErrKind::config:
    case ErrKind::malformed:
    case ErrKind::precondition:
    case ErrKind::unsupported_mode:
    case ErrKind::cap:
      return 2;
    case ErrKind::fit_failure:
      return 1;
    default:
      return 3;
  }
}

struct Args {
  std::string config;
  std::string out = ".";
  std::optional<int64_t> seed;
  std::optional<std::string> mode;
  std::optional<int64_t> horizon;
};

RunConfig load(const Args& a) {
  CliOverrides ov;
  if (a.seed) {
    if (*a.seed < 0) fail(ErrKind::config, "--seed must be nonnegative");
    ov.seed = static_cast<uint64_t>(*a.seed);
  }
  if (a.horizon) {
    if (*a.horizon < 1) fail(ErrKind::config, "--horizon must be at least 1");
    ov.horizon = static_cast<uint64_t>(*a.horizon);
  }
  if (a.mode) {
    if (*a.mode == "formal") {
      ov.mode = ZeroMode::formal;
    } else if (*a.mode == "exact") {
      ov.mode = ZeroMode::exact;
    } else {
      fail(ErrKind::config, "--mode must be formal or exact");
    }
  }
  return load_run_config(a.config, ov);
}

std::string out_path(const Args& a, const RunConfig& rc,
                     const std::string& suffix) {
  std::filesystem::create_directories(a.out);
  return (std::filesystem::path(a.out) / (rc.basename + suffix)).string();
}

nlohmann::json prec_json(const Prec& p) {
  return nlohmann::json{{"max_bits", p.max_bits},
                        {"indeterminate", p.indeterminate}};
}

nlohmann::json funcdesc_json(const FuncDesc& f) {
  nlohmann::json j{{"describe", f.describe()}};
  if (!f.pieces().empty()) {
    nlohmann::json pieces = nlohmann::json::object();
    for (const auto& [n, k] : f.pieces()) pieces[std::to_string(n)] = k;
    j["pieces"] = pieces;
  }
  return j;
}

int cmd_growth(const Args& a) {
  RunConfig rc = load(a);
  OutputMeta meta = make_meta(rc);
  WreathContext ctx{rc.alg(), rc.seq()};
  GrowthSeries g = growth_series(ctx, rc.growth.horizon, rc.mode,
                                 rc.unit_cell);
  nlohmann::json j;
  j["g"] = series_json(g);
  std::vector<std::pair<std::string, const GrowthSeries*>> cols{
      {"dimension", &g}};
  std::optional<GrowthSeries> w;
  if (rc.growth.emit_w) {
    w = w_series(ctx, rc.growth.horizon);
    j["w"] = series_json(*w);
    cols.emplace_back("w_rank", &*w);
  }
  write_file_atomic(out_path(a, rc, "_growth.csv"), series_csv(meta, cols));
  write_file_atomic(out_path(a, rc, "_growth.json"), json_text(j, meta));
  return 0;
}

int cmd_verify(const Args& a) {
  RunConfig rc = load(a);
  OutputMeta meta = make_meta(rc);
  WreathContext ctx{rc.alg(), rc.seq()};
  const VerifyParams& vp = rc.verify;

  std::vector<std::string> checks = vp.checks;
  if (checks.empty()) {
    checks = {"left_ideal", "associativity", "oracle", "membership", "shape",
              "corollary1"};
    if (rc.seq().finite_support()) checks.insert(checks.begin() + 1, "banded");
  }

  std::vector<Report> reports;
  for (const std::string& c : checks) {
    Report r;
    if (c == "left_ideal") {
      r = verify_left_ideal(ctx, vp.samples, vp.degree, rc.seed);
    } else if (c == "banded") {
      r = verify_two_sided_banded(ctx, vp.samples, vp.degree, rc.seed);
    } else if (c == "associativity") {
      r = verify_associativity(ctx, vp.triples, rc.seed);
    } else if (c == "oracle") {
      r = verify_oracle_equivalence(ctx, vp.pairs, rc.seed);
    } else if (c == "membership") {
      r = verify_filtration_membership(ctx, vp.membership_n);
    } else if (c == "shape") {
      r = verify_layer_shape(ctx, vp.shape_n);
    } else if (c == "corollary1") {
      GrowthSeries w = w_series(ctx, vp.corollary_n);
      GrowthSeries g =
          growth_series(ctx, 2 * vp.corollary_n + 1, rc.mode, rc.unit_cell);
      r = corollary1_check(w.values, g.values);
    } else {
      fail(ErrKind::internal, "unmapped check '" + c + "'");
    }
    reports.push_back(std::move(r));
  }

  bool all = true;
  nlohmann::json arr = nlohmann::json::array();
  for (const Report& r : reports) {
    all = all && r.pass;
    arr.push_back(report_json(r));
  }
  nlohmann::json j{{"checks", arr}, {"pass", all}};
  write_file_atomic(out_path(a, rc, "_verify.json"), json_text(j, meta));
  return all ? 0 : 1;
}

int cmd_dilute(const Args& a) {
  RunConfig rc = load(a);
  OutputMeta meta = make_meta(rc);
  if (!rc.dilute)
    fail(ErrKind::config, rc.path + ": this command needs a [dilute] section");
  const DiluteParams& dp = *rc.dilute;
  nlohmann::json j;
  bool ok = true;

  if (!dp.merge.empty()) {
    MergeResult mr = merge_subexponential(dp.merge, dp.horizon);
    j["merge"] = nlohmann::json{{"f", funcdesc_json(mr.f)},
                                {"thresholds", mr.thresholds},
                                {"prec", prec_json(mr.prec)}};
  }
  if (dp.superlin) {
    SuperlinResult sr = superlinearize(*dp.superlin, dp.horizon);
    j["superlinearize"] =
        nlohmann::json{{"mu_at_horizon", sr.mu_at_horizon},
                       {"thresholds", sr.thresholds},
                       {"prec", prec_json(sr.prec)}};
  }

  nlohmann::json seq_j;
  seq_j["entries"] = nlohmann::json::object();
  if (!dp.generators.empty()) {
    const AlgebraSpec& alg = rc.alg();
    std::vector<uint64_t> cs = dp.cs;
    if (cs.empty()) {
      FitResult fit =
          fit_eq1(alg, dp.generators, *dp.f, dp.eps, dp.fit_horizon, dp.c_cap);
      nlohmann::json fj;
      fj["all_ok"] = fit.all_ok;
      fj["notes"] = fit.notes;
      fj["prec"] = prec_json(fit.prec);
      nlohmann::json fcs = nlohmann::json::array();
      for (const auto& c : fit.cs)
        fcs.push_back(c ? nlohmann::json(*c) : nlohmann::json(nullptr));
      fj["cs"] = fcs;
      j["fit"] = fj;
      if (!fit.all_ok) {
        ok = false;
        j["plan"] = nullptr;
        write_file_atomic(out_path(a, rc, "_dilute.json"), json_text(j, meta));
        write_file_atomic(out_path(a, rc, "_sequence.json"),
                          json_text(seq_j, meta));
        return 1;
      }
      for (const auto& c : fit.cs) cs.push_back(*c);
    }
    DilutionPlan plan =
        build_dilution(alg, dp.generators, cs, dp.eps, *dp.h, dp.horizon);
    nlohmann::json pj;
    pj["cs"] = plan.cs;
    nlohmann::json eps = nlohmann::json::array();
    for (const Rat& e : plan.eps) eps.push_back(e.get_str());
    pj["eps"] = eps;
    pj["h"] = funcdesc_json(plan.h);
    pj["thresholds"] = plan.thresholds;
    pj["prec"] = prec_json(plan.prec);
    j["plan"] = pj;
    for (const auto& [pos, elem] : plan.sequence_entries)
      seq_j["entries"][std::to_string(pos)] = alg.to_string(elem);
  } else {
    j["plan"] = nullptr;
  }

  write_file_atomic(out_path(a, rc, "_dilute.json"), json_text(j, meta));
  write_file_atomic(out_path(a, rc, "_sequence.json"), json_text(seq_j, meta));
  return ok ? 0 : 1;
}

int cmd_semigroup(const Args& a) {
  RunConfig rc = load(a);
  OutputMeta meta = make_meta(rc);
  if (!rc.semigroup)
    fail(ErrKind::config,
         rc.path + ": this command needs a [semigroup] section");
  const SemigroupParams& sp = *rc.semigroup;
  AlgebraSpec alg = sp.P.to_algebra();
  GeneratingSequence seq =
      GeneratingSequence::explicit_list(alg, sp.entries);
  WreathContext ctx{alg, seq};

  SemigroupCounts counts = semigroup_growth(ctx, sp.horizon, sp.unit_cell);
  GrowthSeries dims = growth_series(ctx, sp.horizon, rc.mode, sp.unit_cell);

  Report li = verify_left_ideal_semigroup(ctx, sp.P, sp.samples, sp.degree,
                                          rc.seed, sp.unit_cell);
  Report rees = rees_associativity(sp.P, sp.rees_triples, rc.seed);
  Report closure = monomial_closure_check(ctx, sp.samples, rc.seed);

  nlohmann::json j;
  j["semigroup"] = sp.P.describe();
  j["counts"] = series_json(counts.series);
  j["zero_reached"] = counts.zero_seen;
  if (counts.zero_seen) j["zero_first_length"] = counts.zero_first_length;
  j["dimensions"] = series_json(dims);
  j["checks"] = nlohmann::json::array(
      {report_json(li), report_json(rees), report_json(closure)});
  bool all = li.pass && rees.pass && closure.pass;
  j["pass"] = all;

  write_file_atomic(
      out_path(a, rc, "_semigroup.csv"),
      series_csv(meta, {{"count", &counts.series}, {"dimension", &dims}}));
  write_file_atomic(out_path(a, rc, "_semigroup.json"), json_text(j, meta));
  return all ? 0 : 1;
}

int cmd_report(const Args& a) {
  RunConfig rc = load(a);
  OutputMeta meta = make_meta(rc);
  nlohmann::json j;
  nlohmann::json inst;
  if (rc.algebra) {
    const AlgebraSpec& alg = *rc.algebra;
    nlohmann::json aj;
    aj["field"] = alg.field().kind() == Field::Kind::gf
                      ? "gf(" + std::to_string(alg.field().modulus()) + ")"
                      : "rationals";
    switch (alg.kind()) {
      case AlgebraSpec::Kind::polynomial: {
        aj["kind"] = "polynomial";
        aj["vars"] = alg.vars();
        break;
      }
      case AlgebraSpec::Kind::structure_constants: {
        aj["kind"] = "structure_constants";
        aj["dim"] = alg.dim();
        aj["unitalized"] = alg.unitalized();
        break;
      }
      case AlgebraSpec::Kind::monomial_quotient: {
        aj["kind"] = "monomial_quotient";
        std::string letters;
        for (char c : alg.alphabet()) letters += c;
        aj["alphabet"] = letters;
        aj["domain_assumed"] = alg.domain_assumed();
        break;
      }
    }
    inst["algebra"] = aj;
  }
  if (rc.sequence) {
    const GeneratingSequence& s = *rc.sequence;
    nlohmann::json sj;
    sj["finite_support"] = s.finite_support();
    sj["gap_mode"] = s.gap_mode();
    if (s.finite_support()) {
      sj["support_size"] = s.support_size();
      nlohmann::json entries = nlohmann::json::object();
      for (const auto& [pos, elem] : s.known_entries())
        entries[std::to_string(pos)] = rc.alg().to_string(elem);
      sj["entries"] = entries;
    } else {
      sj["rule_horizon"] = s.horizon();
    }
    inst["sequence"] = sj;
  }
  if (rc.semigroup) inst["semigroup"] = rc.semigroup->P.describe();
  j["instance"] = inst;
  j["growth"] = nlohmann::json{{"horizon", rc.growth.horizon},
                               {"snapshots", rc.growth.snapshots},
                               {"w_series", rc.growth.emit_w}};
  j["unit_cell"] = rc.unit_cell;
  write_file_atomic(out_path(a, rc, "_report.json"), json_text(j, meta));
  return 0;
}

int dispatch(const std::string& verb, const Args& a) {
  try {
    if (verb == "growth") return cmd_growth(a);
    if (verb == "verify") return cmd_verify(a);
    if (verb == "dilute") return cmd_dilute(a);
    if (verb == "semigroup") return cmd_semigroup(a);
    if (verb == "report") return cmd_report(a);
    fail(ErrKind::internal, "unmapped verb '" + verb + "'");
  } catch (const Error& e) {
    nlohmann::json j{{"error",
                      {{"kind", err_kind_name(e.kind)},
                       {"message", e.what()}}},
                     {"version", kToolVersion}};
    std::cout << j.dump(2) << "\n";
    return err_exit_code(e.kind);
  } catch (const std::exception& e) {
    nlohmann::json j{{"error", {{"kind", "internal"}, {"message", e.what()}}},
                     {"version", kToolVersion}};
    std::cout << j.dump(2) << "\n";
    return 3;
  }
}

} // namespace
} // namespace wreath

int main(int argc, char** argv) {
  CLI::App app{"Exact growth series and dilution planning for the matrix "
               "wreath product of a coefficient algebra with Laurent shifts"};
  app.require_subcommand(1);

  wreath::Args args;
  std::string verb;
  const std::pair<const char*, const char*> verbs[] = {
      {"growth", "compute the growth series g(n) and filtration rank w(n)"},
      {"verify", "run the configured structural checks"},
      {"dilute", "fit constants and emit a diluted generating sequence"},
      {"semigroup", "count distinct semigroup words in the wreath product"},
      {"report", "echo the parsed instance as JSON"},
  };
  for (const auto& [name, blurb] : verbs) {
    CLI::App* sub = app.add_subcommand(name, blurb);
    sub->add_option("--config", args.config, "config file path")->required();
    sub->add_option("--out", args.out, "output directory");
    sub->add_option("--seed", args.seed, "override the config seed");
    sub->add_option("--mode", args.mode, "formal or exact");
    sub->add_option("--horizon", args.horizon, "override the config horizon");
    sub->callback([&verb, name] { verb = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return wreath::dispatch(verb, args);
}
