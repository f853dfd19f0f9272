// Command-line front end: parse/gen/summary/table/check/min-observers/
// bounds/coeffs/verify.  All results go to stdout with a stable ordering;
// exit codes: 0 done, 2 usage error, 3 cap/constraint error, 4 --expect
// mismatch.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bnobs/bnobs.hpp"

namespace {

using ojson = nlohmann::ordered_json;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string scheme_text(const bnobs::ObservationScheme& scheme) {
  std::string out;
  for (std::size_t j = 0; j < scheme.observed.size(); ++j) {
    if (j) out += ", ";
    out += "x" + std::to_string(scheme.observed[j]);
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

int resolve_cap(const std::optional<int>& flag, int fallback) {
  return flag ? *flag : fallback;
}

int run_parse(const std::string& file) {
  bnobs::ParsedNetwork parsed = bnobs::load_network(file);
  std::cout << bnobs::serialize(parsed.net, parsed.scheme);
  return 0;
}

int run_gen(const std::string& family, std::optional<int> n,
            std::optional<int> k, const std::string& out_path) {
  bnobs::FamilySpec spec = bnobs::make_family(family, n, k);
  const std::string text = bnobs::serialize(spec.net, spec.scheme);
  if (out_path.empty())
    std::cout << text;
  else
    write_text_file(out_path, text);
  return 0;
}

int run_summary(const std::string& file, bool json, std::optional<int> cap) {
  bnobs::ParsedNetwork parsed = bnobs::load_network(file);
  const bnobs::StateSpaceSummary summary =
      bnobs::summarize(parsed.net, resolve_cap(cap, bnobs::kDefaultEnumCap));
  const bnobs::InstanceBounds bounds = bnobs::instance_bounds(summary);
  const bnobs::Classification cls = bnobs::classify(parsed.net);
  const int n = summary.n;
  if (json) {
    ojson j;
    j["nodes"] = n;
    j["class"] = cls.name();
    j["image_count"] = summary.image_count;
    ojson counts = ojson::array();
    for (const auto& [state, c] : summary.counts)
      counts.push_back({bnobs::format_state(state, n), c});
    j["counts"] = std::move(counts);
    j["max_count"] = summary.max_count;
    j["count_bound"] = bounds.count_observers;
    ojson fixed = ojson::array();
    for (bnobs::State s : summary.fixed_points)
      fixed.push_back(bnobs::format_state(s, n));
    j["fixed_points"] = std::move(fixed);
    j["fixed_point_bound"] = bounds.fixed_point_observers;
    j["ones_frequency"] = summary.ones_frequency;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "nodes: " << n << "\n";
  std::cout << "class: " << cls.name() << "\n";
  std::cout << "image states r: " << summary.image_count << "\n";
  std::cout << "COUNT:";
  for (std::size_t i = 0; i < summary.counts.size(); ++i)
    std::cout << (i ? ", " : " ")
              << bnobs::format_state(summary.counts[i].first, n) << "="
              << summary.counts[i].second;
  std::cout << "\n";
  std::cout << "max COUNT " << summary.max_count << "; count bound m ≥ "
            << bounds.count_observers << "\n";
  std::cout << "fixed points:";
  if (summary.fixed_points.empty()) {
    std::cout << " none";
  } else {
    for (std::size_t i = 0; i < summary.fixed_points.size(); ++i)
      std::cout << (i ? ", " : " ")
                << bnobs::format_state(summary.fixed_points[i], n);
  }
  std::cout << " (" << summary.fixed_points.size()
            << " total); fixed-point bound m ≥ " << bounds.fixed_point_observers
            << "\n";
  std::cout << "ones frequency:";
  for (int i = 1; i <= n; ++i)
    std::cout << (i > 1 ? ", " : " ") << "x" << i << "="
              << summary.ones_frequency[i - 1];
  std::cout << "\n";
  return 0;
}

int run_table(const std::string& file, int steps, const std::string& csv_path,
              std::optional<int> cap) {
  bnobs::ParsedNetwork parsed = bnobs::load_network(file);
  const bnobs::TransitionTable table = bnobs::transition_table(
      parsed.net, steps, resolve_cap(cap, bnobs::kDefaultEnumCap));
  if (csv_path.empty()) {
    bnobs::write_transition_csv(std::cout, table);
  } else {
    std::ostringstream buf;
    bnobs::write_transition_csv(buf, table);
    write_text_file(csv_path, buf.str());
  }
  return 0;
}

int run_check(const std::string& file, const std::vector<int>& observe,
              const std::string& expect, bool json, std::optional<int> cap) {
  bnobs::ParsedNetwork parsed = bnobs::load_network(file);
  std::optional<bnobs::ObservationScheme> scheme = parsed.scheme;
  if (!observe.empty()) scheme = bnobs::ObservationScheme::of(observe);
  if (!scheme)
    throw std::invalid_argument(
        "no observation scheme: pass --observe or add an observe: line");
  bnobs::check_scheme(parsed.net, *scheme);
  const bnobs::ObservabilityVerdict verdict = bnobs::check(
      parsed.net, *scheme, resolve_cap(cap, bnobs::kDefaultEnumCap));
  const int n = parsed.net.node_count();
  if (json) {
    ojson j;
    j["observable"] = verdict.observable;
    if (verdict.observable) {
      j["horizon"] = verdict.horizon;
    } else {
      j["witness"] = {bnobs::format_state(verdict.witness->first, n),
                      bnobs::format_state(verdict.witness->second, n)};
    }
    std::cout << j.dump(2) << "\n";
  } else if (verdict.observable) {
    std::cout << "observable, horizon " << verdict.horizon << "\n";
  } else {
    std::cout << "not observable, witness "
              << bnobs::format_state(verdict.witness->first, n) << " "
              << bnobs::format_state(verdict.witness->second, n) << "\n";
  }
  if (!expect.empty()) {
    const bool want_observable = expect == "observable";
    if (verdict.observable != want_observable) return 4;
  }
  return 0;
}

int run_min_observers(const std::string& file, int budget, int jobs,
                      std::optional<int> cap) {
  bnobs::ParsedNetwork parsed = bnobs::load_network(file);
  bnobs::MinObserversOptions opts;
  opts.budget = budget;
  opts.jobs = jobs;
  opts.cap = resolve_cap(cap, bnobs::kDefaultSearchCap);
  const bnobs::MinObserversResult result =
      bnobs::min_observers(parsed.net, opts);
  if (result.found) {
    std::cout << "min observers: " << result.min_size << "\n";
    std::cout << "scheme: " << scheme_text(result.scheme) << "\n";
  } else {
    std::cout << "min observers: ≥ " << result.min_size << "\n";
  }
  std::cout << "schemes checked: " << result.schemes_checked << "\n";
  return 0;
}

int run_bounds_class(const std::string& cls, int k, int n) {
  const bool and_or = cls == "and-or";
  const double lower_coeff =
      and_or ? bnobs::andor_lower_coeff(k) : bnobs::nc_lower_coeff(k);
  const double best_coeff =
      and_or ? bnobs::andor_best_coeff(k) : bnobs::nc_best_coeff(k);
  const double lower = n * lower_coeff;
  std::cout << "class: " << k << (and_or ? "-AND-OR" : "-NC") << ", n = " << n
            << "\n";
  std::cout << "lower bound coefficient: " << fmt("%.6f", lower_coeff) << "\n";
  std::cout << "lower bound: m ≥ " << fmt("%.6f", lower) << " → m ≥ "
            << static_cast<long long>(std::ceil(lower - 1e-12)) << "\n";
  std::cout << "best construction coefficient: " << fmt("%.6f", best_coeff)
            << "\n";
  return 0;
}

int run_bounds_file(const std::string& file, std::optional<int> cap) {
  bnobs::ParsedNetwork parsed = bnobs::load_network(file);
  const bnobs::StateSpaceSummary summary =
      bnobs::summarize(parsed.net, resolve_cap(cap, bnobs::kDefaultEnumCap));
  const bnobs::InstanceBounds b = bnobs::instance_bounds(summary);
  std::cout << "nodes: " << summary.n << "\n";
  std::cout << "max COUNT " << b.max_count << "; count bound m ≥ "
            << b.count_observers << "\n";
  std::cout << "fixed points: " << b.fixed_points
            << "; fixed-point bound m ≥ " << b.fixed_point_observers << "\n";
  return 0;
}

int run_coeffs(int k_min, int k_max, const std::string& csv_path) {
  const std::vector<bnobs::CoefficientRow> rows =
      bnobs::coefficient_table(k_min, k_max);
  if (!csv_path.empty()) {
    std::ostringstream buf;
    bnobs::write_coefficient_csv(buf, rows);
    write_text_file(csv_path, buf.str());
    return 0;
  }
  for (const bnobs::CoefficientRow& row : rows) {
    std::cout << "K=" << row.k << ", " << fmt("%.4f", row.andor_lower_coeff)
              << ", " << fmt("%.4f", row.andor_best_coeff) << ", "
              << fmt("%.4f", row.nc_lower_coeff) << ", "
              << fmt("%.4f", row.nc_best_coeff) << ", "
              << (row.andor_best_exceeds_lower ? "true" : "false") << ", "
              << (row.nc_best_exceeds_lower ? "true" : "false") << "\n";
  }
  return 0;
}

const char* extremal_label(const std::string& claim) {
  if (claim == "claim2") return "minimum max COUNT";
  if (claim == "prop5") return "max COUNT";
  if (claim == "prop8") return "fixed points";
  return "extremal";
}

void print_claim_text(const bnobs::ClaimResult& r) {
  std::cout << "claim: " << r.claim << "\n";
  std::cout << "n: " << r.n << "\n";
  std::cout << "k: " << r.k << "\n";
  std::cout << "networks: " << r.networks << "\n";
  std::cout << "checks: " << r.checks << "\n";
  if (r.extremal)
    std::cout << extremal_label(r.claim) << ": " << *r.extremal << "\n";
  if (r.extremal_index) std::cout << "first network: " << *r.extremal_index << "\n";
  if (r.verdict) {
    if (r.verdict->observable)
      std::cout << "observable, horizon " << r.verdict->horizon << "\n";
    else
      std::cout << "not observable\n";
  }
  if (r.observers) {
    if (r.observers->found) {
      std::cout << "min observers: " << r.observers->min_size << "\n";
      std::cout << "scheme: " << scheme_text(r.observers->scheme) << "\n";
    } else {
      std::cout << "min observers: ≥ " << r.observers->min_size << "\n";
    }
  }
  if (r.counterexample) {
    std::cout << "counterexample: network " << r.counterexample->index;
    if (r.counterexample->observer)
      std::cout << ", observer x" << r.counterexample->observer;
    std::cout << "\n";
    std::cout << bnobs::serialize(r.counterexample->net);
  }
  std::cout << "verified: " << (r.verified ? "true" : "false") << "\n";
}

ojson claim_json(const bnobs::ClaimResult& r) {
  ojson j;
  j["claim"] = r.claim;
  j["n"] = r.n;
  j["k"] = r.k;
  j["networks"] = r.networks;
  j["checks"] = r.checks;
  if (r.extremal) j["extremal"] = *r.extremal;
  if (r.extremal_index) j["extremal_index"] = *r.extremal_index;
  if (r.verdict) {
    ojson v;
    v["observable"] = r.verdict->observable;
    if (r.verdict->observable) v["horizon"] = r.verdict->horizon;
    j["verdict"] = std::move(v);
  }
  if (r.observers) {
    ojson m;
    m["found"] = r.observers->found;
    m["size"] = r.observers->min_size;
    if (r.observers->found) m["scheme"] = r.observers->scheme.observed;
    m["schemes_checked"] = r.observers->schemes_checked;
    j["min_observers"] = std::move(m);
  }
  if (r.counterexample) {
    ojson c;
    c["index"] = r.counterexample->index;
    if (r.counterexample->observer) c["observer"] = r.counterexample->observer;
    c["network"] = bnobs::serialize(r.counterexample->net);
    j["counterexample"] = std::move(c);
  }
  j["verified"] = r.verified;
  return j;
}

int run_verify(const std::string& claim, std::optional<int> n,
               std::optional<int> k, int jobs, bool json,
               const std::string& expect) {
  auto need = [&](const std::optional<int>& v, const char* flag) {
    if (!v)
      throw CLI::ValidationError("--claim " + claim + " needs " + flag);
    return *v;
  };
  bnobs::ClaimResult result;
  if (claim == "prop3") {
    result = bnobs::verify_prop3(need(n, "--n"), jobs);
  } else if (claim == "claim2") {
    result = bnobs::verify_claim2(need(n, "--n"), jobs);
  } else if (claim == "prop1") {
    result = bnobs::verify_prop1(need(n, "--n"), jobs);
  } else if (claim == "prop5") {
    result = bnobs::verify_prop5(need(k, "--k"), jobs);
  } else if (claim == "theorem-bestK") {
    result = bnobs::verify_theorem_bestK(need(k, "--k"), n.value_or(0));
  } else if (claim == "theorem5") {
    result = bnobs::verify_theorem5(need(n, "--n"), need(k, "--k"), jobs);
  } else if (claim == "prop7") {
    result = bnobs::verify_prop7(need(n, "--n"));
  } else if (claim == "prop8") {
    result = bnobs::verify_prop8(need(k, "--k"), jobs);
  } else {  // prop11
    result = bnobs::verify_prop11(need(k, "--k"));
  }
  if (json)
    std::cout << claim_json(result).dump(2) << "\n";
  else
    print_claim_text(result);
  if (!expect.empty()) {
    const bool want_verified = expect == "verified";
    if (result.verified != want_verified) return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean network observability toolkit"};
  app.require_subcommand(1);

  std::string file, family, out_path, csv_path, cls, expect, claim;
  std::optional<int> n, k, cap;
  std::vector<int> observe;
  int steps = 1, budget = 0, jobs = 1, k_min = 2, k_max = 16;
  bool json = false;

  auto add_cap = [&cap](CLI::App* cmd) {
    cmd->add_option("--cap", cap, "enumeration cap on n")
        ->envname("BNOBS_ENUM_CAP");
  };

  CLI::App* parse_cmd =
      app.add_subcommand("parse", "validate a network file, echo canonical form");
  parse_cmd->add_option("file", file)->required();

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a family instance");
  gen_cmd->add_option("--family", family)
      ->required()
      ->check(CLI::IsMember(bnobs::family_ids()));
  gen_cmd->add_option("--n", n);
  gen_cmd->add_option("--k", k);
  gen_cmd->add_option("-o,--output", out_path);

  CLI::App* summary_cmd =
      app.add_subcommand("summary", "image counts, fixed points, bounds");
  summary_cmd->add_option("file", file)->required();
  summary_cmd->add_flag("--json", json);
  add_cap(summary_cmd);

  CLI::App* table_cmd = app.add_subcommand("table", "transition table CSV");
  table_cmd->add_option("file", file)->required();
  table_cmd->add_option("--steps", steps)->required()->check(CLI::Range(1, 62));
  table_cmd->add_option("--csv", csv_path);
  add_cap(table_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "observability verdict");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_option("--observe", observe)->delimiter(',');
  check_cmd->add_option("--expect", expect)
      ->check(CLI::IsMember({"observable", "unobservable"}));
  check_cmd->add_flag("--json", json);
  add_cap(check_cmd);

  CLI::App* min_cmd =
      app.add_subcommand("min-observers", "smallest observation scheme");
  min_cmd->add_option("file", file)->required();
  min_cmd->add_option("--budget", budget)->check(CLI::Range(0, 30));
  min_cmd->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  add_cap(min_cmd);

  CLI::App* bounds_cmd =
      app.add_subcommand("bounds", "formula bounds or instance bounds");
  bounds_cmd->add_option("file", file);
  bounds_cmd->add_option("--class", cls)
      ->check(CLI::IsMember({"and-or", "nc"}));
  bounds_cmd->add_option("--k", k);
  bounds_cmd->add_option("--n", n);
  add_cap(bounds_cmd);

  CLI::App* coeffs_cmd =
      app.add_subcommand("coeffs", "lower/best coefficient table");
  coeffs_cmd->add_option("--k-min", k_min)->check(CLI::Range(2, 60));
  coeffs_cmd->add_option("--k-max", k_max)->check(CLI::Range(2, 60));
  coeffs_cmd->add_option("--csv", csv_path);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "claim checks and construction validation");
  verify_cmd->add_option("--claim", claim)
      ->required()
      ->check(CLI::IsMember({"prop3", "claim2", "prop1", "prop5",
                             "theorem-bestK", "theorem5", "prop7", "prop8",
                             "prop11"}));
  verify_cmd->add_option("--n", n);
  verify_cmd->add_option("--k", k);
  verify_cmd->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  verify_cmd->add_option("--expect", expect)
      ->check(CLI::IsMember({"verified", "counterexample"}));
  verify_cmd->add_flag("--json", json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*parse_cmd) return run_parse(file);
    if (*gen_cmd) return run_gen(family, n, k, out_path);
    if (*summary_cmd) return run_summary(file, json, cap);
    if (*table_cmd) return run_table(file, steps, csv_path, cap);
    if (*check_cmd) return run_check(file, observe, expect, json, cap);
    if (*min_cmd) return run_min_observers(file, budget, jobs, cap);
    if (*bounds_cmd) {
      if (!file.empty()) return run_bounds_file(file, cap);
      if (cls.empty() || !k || !n)
        throw std::invalid_argument(
            "bounds needs a file or --class with --k and --n");
      return run_bounds_class(cls, *k, *n);
    }
    if (*coeffs_cmd) {
      if (k_min > k_max) throw std::invalid_argument("--k-min exceeds --k-max");
      return run_coeffs(k_min, k_max, csv_path);
    }
    if (*verify_cmd) return run_verify(claim, n, k, jobs, json, expect);
  } catch (const bnobs::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bnobs::ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bnobs::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
