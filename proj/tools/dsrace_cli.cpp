// dsrace: closed forms, recurrences, asymptotics, and Monte Carlo for the
// double-spend race: the probability that an attacker with hash share q ever
// ties an honest chain n confirmations ahead, and how long a winning
// catch-up race lasts.

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dsrace/asymptotics.hpp"
#include "dsrace/attack_model.hpp"
#include "dsrace/recurrence.hpp"
#include "dsrace/simulator.hpp"

using json = nlohmann::ordered_json;
using namespace dsrace;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 17 significant digits: enough to reproduce any double exactly, locale-free.
std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void emit_csv_row(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) std::fputc(',', stdout);
    std::fputs(csv_field(fields[i]).c_str(), stdout);
  }
  std::fputc('\n', stdout);
}

// q (and risk) inputs: a fraction string selects exact rational arithmetic,
// a decimal selects double arithmetic. --float downgrades a fraction.
struct ProbInput {
  std::string text;
  bool exact = false;
  Rational rational;
  double value = 0.0;
};

ProbInput parse_prob(const std::string& text, bool force_float) {
  ProbInput in;
  in.text = text;
  if (text.find('/') != std::string::npos) {
    in.rational = Rational::from_string(text);
    in.value = in.rational.to_double();
    in.exact = !force_float;
    return in;
  }
  char* end = nullptr;
  in.value = std::strtod(text.c_str(), &end);
  if (end == nullptr || *end != '\0' || text.empty()) {
    throw UsageError("cannot parse number '" + text + "'");
  }
  // integers ("0", "1") are exact rationals too
  if (text.find_first_of(".eE") == std::string::npos) {
    in.rational = Rational::from_string(text);
    in.exact = !force_float;
  } else {
    in.rational = Rational::from_double(in.value);
    in.exact = false;
  }
  return in;
}

void print_json(const json& j) { std::fputs((j.dump(2) + "\n").c_str(), stdout); }

// ---------------------------------------------------------------- prob ----

struct ProbOptions {
  std::string q_text;
  long n = 0;
  std::string method = "auto";
  int order = 4;
  bool force_float = false;
  std::string format = "text";
};

int cmd_prob(const ProbOptions& opt) {
  ProbInput q = parse_prob(opt.q_text, opt.force_float);
  std::string method = opt.method;
  if (method == "auto") method = opt.n <= 2000 ? "exact_sum" : "recurrence";
  if (method == "exact") method = "exact_sum";

  if (method == "asymptotic" && opt.n < 10) {
    std::fputs("warning: asymptotic expansion is unreliable for n < 10; using the exact sum\n",
               stderr);
    method = "exact_sum";
  }

  json rec;
  rec["command"] = "prob";
  rec["method"] = method;
  rec["q"] = q.text;
  rec["n"] = opt.n;

  std::string text_value;
  if (method == "exact_sum" || method == "recurrence") {
    if (q.exact) {
      Rational v = method == "exact_sum"
                       ? success_probability(q.rational, opt.n)
                       : (opt.n == 0 ? Rational(1)
                                     : success_probability_table(q.rational, opt.n).at(opt.n));
      rec["mode"] = "exact";
      rec["value"] = v.str();
      rec["value_float"] = v.to_double();
      text_value = v.str();
    } else {
      double v;
      if (method == "exact_sum" || opt.n == 0) {
        v = opt.n == 0 && method != "exact_sum" ? 1.0 : success_probability(q.value, opt.n);
      } else {
        const auto table = success_probability_table(q.value, opt.n);
        if (table.drift_flagged(opt.n)) {
          std::fputs(("warning: float recurrence drift bound exceeds 1e-9 at n = " +
                      std::to_string(opt.n) + "; prefer exact mode (fraction q) or the sum\n")
                         .c_str(),
                     stderr);
        }
        v = table.at(opt.n);
      }
      rec["mode"] = "float";
      rec["value"] = v;
      text_value = fmt17(v);
    }
  } else if (method == "beta") {
    const double v = success_probability_beta(q.value, opt.n);
    rec["mode"] = "float";
    rec["value"] = v;
    text_value = fmt17(v);
  } else if (method == "asymptotic") {
    const AsymptoticEval ev = success_probability_asymptotic(q.value, opt.n, opt.order);
    rec["mode"] = "float";
    rec["order"] = ev.order;
    rec["base"] = ev.base;
    rec["prefactor"] = ev.prefactor;
    rec["terms"] = ev.terms;
    rec["value"] = ev.value;
    text_value = fmt17(ev.value);
  } else {
    throw UsageError("unknown method '" + opt.method + "'");
  }

  if (opt.format == "json") {
    print_json(rec);
  } else {
    std::fputs((text_value + "\n").c_str(), stdout);
  }
  return kExitOk;
}

// ------------------------------------------------------------ duration ----

struct DurationOptions {
  std::string q_text;
  long n = 0;
  bool force_float = false;
  std::string format = "text";
};

int cmd_duration(const DurationOptions& opt) {
  ProbInput q = parse_prob(opt.q_text, opt.force_float);
  json rec;
  rec["command"] = "duration";
  rec["q"] = q.text;
  rec["n"] = opt.n;

  DurationStats stats;
  if (q.exact) {
    const ExactDurationStats exact = duration_stats(q.rational, opt.n);
    stats = exact.to_double();
    rec["mode"] = "exact";
    rec["expectation_exact"] = exact.expectation.str();
    rec["second_moment_exact"] = exact.second_moment.str();
    rec["variance_exact"] = exact.variance.str();
  } else {
    stats = duration_stats(q.value, opt.n);
    rec["mode"] = "float";
  }
  rec["expectation"] = stats.expectation;
  rec["second_moment"] = stats.second_moment;
  rec["variance"] = stats.variance;
  rec["std_dev"] = stats.std_dev;

  if (opt.format == "json") {
    print_json(rec);
  } else {
    std::fputs(("expectation " + fmt17(stats.expectation) + "\n").c_str(), stdout);
    std::fputs(("variance " + fmt17(stats.variance) + "\n").c_str(), stdout);
    std::fputs(("std_dev " + fmt17(stats.std_dev) + "\n").c_str(), stdout);
  }
  return kExitOk;
}

// --------------------------------------------------------------- table ----

struct TableOptions {
  std::string q_text;
  long max_n = -1;
  std::string risk_text;
  bool force_float = false;
  std::string format = "csv";
};

struct TableRow {
  long n;
  std::string probability;
  bool duration_defined;
  std::string expectation, variance, std_dev;
  json probability_json, expectation_json, variance_json, std_dev_json;
};

int cmd_table(const TableOptions& opt) {
  if (opt.max_n < 0 && opt.risk_text.empty()) {
    throw UsageError("table needs --max-n and/or --risk");
  }
  ProbInput q = parse_prob(opt.q_text, opt.force_float);
  std::optional<ProbInput> risk;
  if (!opt.risk_text.empty()) risk = parse_prob(opt.risk_text, opt.force_float);

  const bool q_is_zero = q.exact ? q.rational.is_zero() : q.value == 0.0;

  // Resolve the last row up front: --max-n if given, and/or the first n with
  // R_n <= risk (rows run through that n inclusive).
  long limit;
  if (q_is_zero) {
    limit = opt.max_n >= 0 ? opt.max_n : 1;  // R_n = 0 for every n >= 1
    if (risk) {
      const bool covers_all = q.exact ? risk->rational >= Rational(1) : risk->value >= 1.0;
      limit = std::min(limit, covers_all ? 0L : 1L);
    }
  } else {
    std::optional<long> stop_n;
    if (risk) {
      const bool risk_covers_all =
          q.exact ? risk->rational >= Rational(1) : risk->value >= 1.0;
      if (risk_covers_all) {
        stop_n = 0;
      } else if (q.exact) {
        stop_n = min_confirmations(q.rational, risk->rational);
      } else {
        stop_n = min_confirmations(q.value, risk->value);
      }
    }
    if (opt.max_n >= 0 && stop_n) {
      limit = std::min(opt.max_n, *stop_n);
    } else if (stop_n) {
      limit = *stop_n;
    } else {
      limit = opt.max_n;
    }
    if (q.exact && limit > 2000) {
      throw UsageError("exact tables are limited to n <= 2000; pass --float for larger tables");
    }
  }

  // Exact rows come from the fast recurrences (bit-exact). Float rows use
  // the drift-free direct sums instead; the float recurrence turns to noise
  // once R_n decays to the rounding floor. Variances need the direct
  // second-moment sum per row either way.
  std::vector<TableRow> rows;
  RecurrenceTable<Rational> exact_r, exact_a;
  if (!q_is_zero && q.exact) {
    const long table_n = limit < 2 ? 2 : limit;
    exact_r = success_probability_table(q.rational, table_n);
    exact_a = duration_numerator_table(q.rational, table_n);
  }

  for (long n = 0; n <= limit; ++n) {
    TableRow row;
    row.n = n;
    if (q_is_zero) {
      const bool one = n == 0;
      row.probability = one ? "1" : "0";
      row.probability_json = q.exact ? json(row.probability) : json(one ? 1.0 : 0.0);
      row.duration_defined = n == 0;
      if (row.duration_defined) {
        row.expectation = row.variance = row.std_dev = q.exact ? "0" : fmt17(0.0);
        row.expectation_json = row.variance_json = row.std_dev_json =
            q.exact ? json("0") : json(0.0);
      }
    } else if (q.exact) {
      const Rational r = exact_r.at(n);
      row.probability = r.str();
      row.probability_json = row.probability;
      row.duration_defined = true;
      Rational e(0), v(0);
      if (n >= 1) {
        e = exact_a.at(n) / r;
        const Rational m2 = second_moment_numerator(q.rational, n) / r;
        v = m2 - e * e;
      }
      row.expectation = e.str();
      row.variance = v.str();
      row.std_dev = fmt17(std::sqrt(v.to_double()));
      row.expectation_json = row.expectation;
      row.variance_json = row.variance;
      row.std_dev_json = std::sqrt(v.to_double());
    } else {
      const double r = success_probability(q.value, n);
      row.probability = fmt17(r);
      row.probability_json = r;
      row.duration_defined = true;
      double e = 0.0, v = 0.0;
      if (n >= 1) {
        e = duration_numerator(q.value, n) / r;
        v = second_moment_numerator(q.value, n) / r - e * e;
      }
      row.expectation = fmt17(e);
      row.variance = fmt17(v);
      row.std_dev = fmt17(std::sqrt(v));
      row.expectation_json = e;
      row.variance_json = v;
      row.std_dev_json = std::sqrt(v);
    }
    rows.push_back(std::move(row));
  }

  if (opt.format == "json") {
    json arr = json::array();
    for (const TableRow& row : rows) {
      json rec;
      rec["q"] = q.text;
      rec["n"] = row.n;
      rec["mode"] = q.exact ? "exact" : "float";
      rec["probability"] = row.probability_json;
      if (row.duration_defined) {
        rec["expectation"] = row.expectation_json;
        rec["variance"] = row.variance_json;
        rec["std_dev"] = row.std_dev_json;
      } else {
        rec["expectation"] = nullptr;
        rec["variance"] = nullptr;
        rec["std_dev"] = nullptr;
      }
      arr.push_back(std::move(rec));
    }
    print_json(arr);
  } else {
    emit_csv_row({"q", "n", "probability", "expectation", "variance", "std_dev"});
    for (const TableRow& row : rows) {
      emit_csv_row({q.text, std::to_string(row.n), row.probability,
                    row.duration_defined ? row.expectation : "",
                    row.duration_defined ? row.variance : "",
                    row.duration_defined ? row.std_dev : ""});
    }
  }
  return kExitOk;
}

// ------------------------------------------------------- confirmations ----

struct ConfirmOptions {
  std::string q_text;
  std::string risk_text;
  bool force_float = false;
  std::string format = "text";
};

int cmd_confirmations(const ConfirmOptions& opt) {
  ProbInput q = parse_prob(opt.q_text, opt.force_float);
  ProbInput risk = parse_prob(opt.risk_text, opt.force_float);
  long n;
  std::string achieved_text;
  json achieved_json;
  if (q.exact) {
    n = min_confirmations(q.rational, risk.exact ? risk.rational
                                                 : Rational::from_double(risk.value));
    const Rational r = success_probability(q.rational, n);
    achieved_text = r.str();
    achieved_json = achieved_text;
  } else {
    n = min_confirmations(q.value, risk.value);
    const double r = success_probability(q.value, n);
    achieved_text = fmt17(r);
    achieved_json = r;
  }
  if (opt.format == "json") {
    json rec;
    rec["command"] = "confirmations";
    rec["q"] = q.text;
    rec["risk"] = risk.text;
    rec["mode"] = q.exact ? "exact" : "float";
    rec["confirmations"] = n;
    rec["probability"] = achieved_json;
    print_json(rec);
  } else {
    std::fputs((std::to_string(n) + "\n").c_str(), stdout);
    std::fputs(("probability " + achieved_text + "\n").c_str(), stdout);
  }
  return kExitOk;
}

// ------------------------------------------------------------ simulate ----

struct SimulateOptions {
  std::string q_text;
  long n = 0;
  long trials = 0;
  std::uint64_t seed = 0;
  long shards = 1;
  long max_deficit = 0;
};

json outcome_json(const std::string& q_text, long n, const SimOutcome& out) {
  json rec;
  rec["command"] = "simulate";
  rec["method"] = "simulation";
  rec["q"] = q_text;
  rec["n"] = n;
  rec["trials"] = out.trials;
  rec["seed"] = out.seed;
  rec["shards"] = out.shards;
  rec["max_deficit"] = out.max_deficit;
  rec["successes"] = out.successes;
  rec["success_rate"] = out.success_rate;
  rec["rate_std_err"] = out.rate_std_err;
  rec["duration_mean"] = out.duration_mean;
  rec["duration_second_moment"] = out.duration_second_moment;
  rec["duration_variance"] = out.duration_variance;
  rec["duration_mean_std_err"] = out.duration_mean_std_err;
  rec["duration_variance_std_err"] = out.duration_variance_std_err;
  return rec;
}

int cmd_simulate(const SimulateOptions& opt) {
  ProbInput q = parse_prob(opt.q_text, true);
  SimConfig cfg{.q = q.value, .n = opt.n, .trials = opt.trials, .seed = opt.seed,
                .max_deficit = opt.max_deficit};
  const SimOutcome out = run_race_sharded(cfg, opt.shards);
  print_json(outcome_json(q.text, opt.n, out));
  return kExitOk;
}

// ------------------------------------------------------------- compare ----

struct CompareOptions {
  std::string q_text;
  std::vector<long> ns;
  std::vector<int> orders = {0, 1, 2, 3, 4};
  long trials = 0;
  std::uint64_t seed = 0;
  long shards = 1;
  bool force_float = false;
  std::string format = "csv";
};

int cmd_compare(const CompareOptions& opt) {
  if (opt.ns.empty()) throw UsageError("compare needs at least one --n");
  ProbInput q = parse_prob(opt.q_text, opt.force_float);

  struct Row {
    long n;
    std::string method;
    std::string order;  // empty unless asymptotic
    std::string value;
    json value_json;
    std::string deviation;
    json deviation_json;
  };
  std::vector<Row> rows;

  for (long n : opt.ns) {
    Rational exact_ref_rat;
    double exact_ref = 0.0;
    if (q.exact) {
      exact_ref_rat = success_probability(q.rational, n);
      exact_ref = exact_ref_rat.to_double();
      rows.push_back({n, "exact_sum", "", exact_ref_rat.str(), exact_ref_rat.str(), "0", "0"});
      const Rational rec_v =
          n == 0 ? Rational(1) : success_probability_table(q.rational, n).at(n);
      const Rational dev = exact_ref_rat.is_zero() ? Rational(0)
                                                   : (rec_v - exact_ref_rat) / exact_ref_rat;
      rows.push_back({n, "recurrence", "", rec_v.str(), rec_v.str(), dev.str(), dev.str()});
    } else {
      exact_ref = success_probability(q.value, n);
      rows.push_back({n, "exact_sum", "", fmt17(exact_ref), exact_ref, "0", 0.0});
      double rec_v = 1.0;
      if (n > 0) {
        const auto table = success_probability_table(q.value, n);
        rec_v = table.at(n);
        if (table.drift_flagged(n)) {
          std::fputs(("warning: float recurrence drift bound exceeds 1e-9 at n = " +
                      std::to_string(n) + "; its deviation column reflects that drift\n")
                         .c_str(),
                     stderr);
        }
      }
      const double dev = (rec_v - exact_ref) / exact_ref;
      rows.push_back({n, "recurrence", "", fmt17(rec_v), rec_v, fmt17(dev), dev});
    }

    if (n >= 1 && q.value > 0.0) {
      const double v = success_probability_beta(q.value, n);
      const double dev = (v - exact_ref) / exact_ref;
      rows.push_back({n, "beta", "", fmt17(v), v, fmt17(dev), dev});
    }

    if (n >= 10) {
      for (int order : opt.orders) {
        const double v = success_probability_asymptotic(q.value, n, order).value;
        const double dev = (v - exact_ref) / exact_ref;
        rows.push_back({n, "asymptotic", std::to_string(order), fmt17(v), v, fmt17(dev), dev});
      }
    } else if (!opt.orders.empty()) {
      std::fputs(("warning: skipping asymptotic rows for n = " + std::to_string(n) +
                  " (expansion unreliable below n = 10)\n")
                     .c_str(),
                 stderr);
    }

    if (opt.trials > 0) {
      SimConfig cfg{.q = q.value, .n = n, .trials = opt.trials, .seed = opt.seed};
      const SimOutcome out = run_race_sharded(cfg, opt.shards);
      const double dev = (out.success_rate - exact_ref) / exact_ref;
      rows.push_back({n, "simulation", "", fmt17(out.success_rate), out.success_rate,
                      fmt17(dev), dev});
    }
  }

  if (opt.format == "json") {
    json arr = json::array();
    for (const Row& r : rows) {
      json rec;
      rec["q"] = q.text;
      rec["n"] = r.n;
      rec["mode"] = q.exact ? "exact" : "float";
      rec["method"] = r.method;
      if (!r.order.empty()) rec["order"] = std::stoi(r.order);
      rec["value"] = r.value_json;
      rec["rel_deviation"] = r.deviation_json;
      if (r.method == "simulation") {
        rec["trials"] = opt.trials;
        rec["seed"] = opt.seed;
        rec["shards"] = opt.shards;
      }
      arr.push_back(std::move(rec));
    }
    print_json(arr);
  } else {
    emit_csv_row({"q", "n", "method", "order", "value", "rel_deviation"});
    for (const Row& r : rows) {
      emit_csv_row({q.text, std::to_string(r.n), r.method, r.order, r.value, r.deviation});
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-spend race analysis: exact probabilities, duration statistics,\n"
               "asymptotics, and a cross-validating Monte Carlo simulator"};
  app.require_subcommand(1);

  ProbOptions prob;
  auto* prob_cmd = app.add_subcommand("prob", "success probability of the catch-up race");
  prob_cmd->add_option("--q", prob.q_text, "attacker share: decimal or fraction a/b")->required();
  prob_cmd->add_option("--n", prob.n, "confirmation count (>= 0)")->required()
      ->check(CLI::NonNegativeNumber);
  prob_cmd->add_option("--method", prob.method,
                       "exact|recurrence|beta|asymptotic (default: exact for n <= 2000)")
      ->check(CLI::IsMember({"auto", "exact", "exact_sum", "recurrence", "beta", "asymptotic"}));
  prob_cmd->add_option("--order", prob.order, "asymptotic order 0..4")->check(CLI::Range(0, 4));
  prob_cmd->add_flag("--float", prob.force_float, "force float arithmetic");
  prob_cmd->add_option("--format", prob.format)->check(CLI::IsMember({"text", "json"}));

  DurationOptions dur;
  auto* dur_cmd = app.add_subcommand("duration", "conditional duration of a winning race");
  dur_cmd->add_option("--q", dur.q_text)->required();
  dur_cmd->add_option("--n", dur.n)->required()->check(CLI::NonNegativeNumber);
  dur_cmd->add_flag("--float", dur.force_float, "force float arithmetic");
  dur_cmd->add_option("--format", dur.format)->check(CLI::IsMember({"text", "json"}));

  TableOptions table;
  auto* table_cmd = app.add_subcommand("table", "risk table over confirmation counts");
  table_cmd->add_option("--q", table.q_text)->required();
  table_cmd->add_option("--max-n", table.max_n)->check(CLI::NonNegativeNumber);
  table_cmd->add_option("--risk", table.risk_text, "stop once probability <= risk");
  table_cmd->add_flag("--float", table.force_float, "force float arithmetic");
  table_cmd->add_option("--format", table.format)->check(CLI::IsMember({"csv", "json"}));

  ConfirmOptions conf;
  auto* conf_cmd = app.add_subcommand("confirmations", "confirmations needed to reach a risk");
  conf_cmd->add_option("--q", conf.q_text)->required();
  conf_cmd->add_option("--risk", conf.risk_text)->required();
  conf_cmd->add_flag("--float", conf.force_float, "force float arithmetic");
  conf_cmd->add_option("--format", conf.format)->check(CLI::IsMember({"text", "json"}));

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo race simulation");
  sim_cmd->add_option("--q", sim.q_text)->required();
  sim_cmd->add_option("--n", sim.n)->required()->check(CLI::NonNegativeNumber);
  sim_cmd->add_option("--trials", sim.trials)->required()->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "RNG seed (echoed in the output)");
  sim_cmd->add_option("--shards", sim.shards, "independent substreams")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--max-deficit", sim.max_deficit,
                      "hopelessness cutoff (default: auto from q)")
      ->check(CLI::NonNegativeNumber);

  CompareOptions cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "all methods side by side");
  cmp_cmd->add_option("--q", cmp.q_text)->required();
  cmp_cmd->add_option("--n", cmp.ns, "confirmation counts (repeatable)")->required();
  cmp_cmd->add_option("--order", cmp.orders, "asymptotic orders to include");
  cmp_cmd->add_option("--trials", cmp.trials, "add a simulation row with this many trials");
  cmp_cmd->add_option("--seed", cmp.seed);
  cmp_cmd->add_option("--shards", cmp.shards)->check(CLI::PositiveNumber);
  cmp_cmd->add_flag("--float", cmp.force_float, "force float arithmetic");
  cmp_cmd->add_option("--format", cmp.format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (prob_cmd->parsed()) return cmd_prob(prob);
    if (dur_cmd->parsed()) return cmd_duration(dur);
    if (table_cmd->parsed()) return cmd_table(table);
    if (conf_cmd->parsed()) return cmd_confirmations(conf);
    if (sim_cmd->parsed()) return cmd_simulate(sim);
    if (cmp_cmd->parsed()) return cmd_compare(cmp);
  } catch (const UsageError& e) {
    std::fputs(("error: " + std::string(e.what()) + "\n").c_str(), stderr);
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fputs(("error: " + std::string(e.what()) + "\n").c_str(), stderr);
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::fputs(("error: " + std::string(e.what()) + "\n").c_str(), stderr);
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fputs(("error: " + std::string(e.what()) + "\n").c_str(), stderr);
    return 1;
  }
  return kExitUsage;
}
