#include "wolffkit/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "wolffkit/asymptotics.hpp"
#include "wolffkit/constructions.hpp"
#include "wolffkit/core.hpp"
#include "wolffkit/error.hpp"
#include "wolffkit/parallel.hpp"
#include "wolffkit/wolff.hpp"

namespace wolffkit::cli {

using json = nlohmann::ordered_json;

std::string format_shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

// Raised for argument problems found after CLI11 has parsed the flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json number_or_null(double x) {
  return std::isfinite(x) ? json(x) : json(nullptr);
}

template <class T>
json optional_json(const std::optional<T>& x) {
  return x ? number_or_null(*x) : json(nullptr);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

// Flags shared by the commands that take a full parameter set.
struct ParamFlags {
  CLI::Option* n = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* gamma = nullptr;
  CLI::Option* p = nullptr;
  CLI::Option* q = nullptr;
  CLI::Option* s1 = nullptr;
  CLI::Option* s2 = nullptr;
  int n_value = 0;
  double beta_value = 0, gamma_value = 0, p_value = 0, q_value = 0, s1_value = 0, s2_value = 0;
  bool allow_nonconvention = false;

  void add_base(CLI::App* app) {
    n = app->add_option("--n", n_value, "Dimension (integer >= 3)");
    beta = app->add_option("--beta", beta_value, "beta > 0");
    gamma = app->add_option("--gamma", gamma_value, "gamma > 1");
  }
  void add_system(CLI::App* app) {
    add_base(app);
    p = app->add_option("--p", p_value, "Exponent p > 0");
    q = app->add_option("--q", q_value, "Exponent q > 0");
    add_sigmas(app);
  }
  void add_sigmas(CLI::App* app) {
    s1 = app->add_option("--s1", s1_value, "Weight exponent sigma1");
    s2 = app->add_option("--s2", s2_value, "Weight exponent sigma2");
    app->add_flag("--allow-nonconvention", allow_nonconvention,
                  "Accept sigma_i <= -beta*gamma; endpoint clauses become undecided");
  }

  static void require(const CLI::Option* opt) {
    if (opt && opt->count() == 0) throw UsageError("missing required flag " + opt->get_name());
  }
  void require_all() const {
    for (const CLI::Option* o : {n, beta, gamma, p, q, s1, s2}) require(o);
  }
  core::Convention convention() const {
    return allow_nonconvention ? core::Convention::AllowNonstrict : core::Convention::Strict;
  }
  core::SystemParams make() const {
    require_all();
    return core::SystemParams::make(n_value, beta_value, gamma_value, p_value, q_value, s1_value,
                                    s2_value, convention());
  }
};

json params_json(const core::SystemParams& s) {
  return json{{"n", s.n()},
              {"beta", s.beta()},
              {"gamma", s.gamma()},
              {"p", s.p()},
              {"q", s.q()},
              {"s1", s.sigma1()},
              {"s2", s.sigma2()},
              {"convention", s.convention() == core::Convention::Strict ? "strict" : "nonstrict"}};
}

json fast_case_json(const core::FastVRateCase& c) {
  json j{{"case", core::name_of(c)}, {"rate", core::rate_of(c)}, {"log_exponent", nullptr}};
  if (const auto* l = std::get_if<core::LogCorrected>(&c)) j["log_exponent"] = l->log_exponent;
  return j;
}

json classify_json(const core::SystemParams& s) {
  const core::RegimeReport rep = core::classify(s);
  const core::ExponentSet ex = core::exponents(s);
  const core::IntegrabilityThresholds th = core::optimal_integrability_thresholds(s);
  std::optional<double> exponent_gap;
  if (rep.criticality) exponent_gap = core::criticality_gap(s).exponent_form;
  return json{{"command", "classify"},
              {"params", params_json(s)},
              {"regime", core::to_string(rep.regime)},
              {"nonexistence", core::is_nonexistence(rep.regime)},
              {"condition", rep.condition},
              {"q0", optional_json(ex.q0)},
              {"p0", optional_json(ex.p0)},
              {"a0", ex.a0},
              {"max_rate", optional_json(rep.max_rate)},
              {"criticality_gap", optional_json(rep.criticality)},
              {"criticality_gap_exponent_form", optional_json(exponent_gap)},
              {"iter_ratio", ex.iter_ratio},
              {"eta0", ex.eta0},
              {"convention_holds", rep.convention_holds},
              {"fast_v_rate", fast_case_json(core::fast_v_rate(s))},
              {"integrability",
               {{"r0_int", optional_json(ex.r0_int)},
                {"s0_int", optional_json(ex.s0_int)},
                {"r_min", th.r_min},
                {"s_min", number_or_null(th.s_min)},
                {"s_branch_vacuous", th.s_branch_vacuous}}}};
}

void print_table(const json& j, std::ostream& out, const std::string& prefix = "") {
  for (const auto& [key, value] : j.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      print_table(value, out, name);
      continue;
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number_float()) {
      text = format_shortest(value.get<double>());
    } else {
      text = value.dump();
    }
    out << name << std::string(name.size() < 34 ? 34 - name.size() : 1, ' ') << text << '\n';
  }
}

wolff::QuadratureSpec quad_spec(double rel_tol) {
  wolff::QuadratureSpec q;
  q.rel_tol = rel_tol;
  q.validate();
  return q;
}

int resolve_threads(int requested) {
  if (requested == 0 || requested < -1) throw UsageError("--threads must be >= 1");
  return requested > 0 ? requested : default_thread_count();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    double x = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), x);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw UsageError("--radii: cannot parse '" + item + "'");
    }
    out.push_back(x);
  }
  return out;
}

// Grid value i of steps over [lo, hi].
double grid_value(double lo, double hi, int steps, int i) {
  if (i == steps - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::QuadratureFailure: return kQuadratureFailure;
    case ErrorKind::ModeUnavailable:
    case ErrorKind::NotAdmissible: return kModeUnavailable;
    case ErrorKind::IllConditioned: return kVerificationFailed;
    default: return kBadArguments;
  }
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wolff potentials and the regimes of the Wolff-type integral system", "wolffkit"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_doc;
  auto add_config_doc = [&config_doc](CLI::App* sub) {
    sub->add_option("--config", config_doc, "key=value file of default flags");
  };

  // classify
  ParamFlags cls;
  std::string cls_format = "json";
  CLI::App* classify = app.add_subcommand("classify", "Classify a parameter set");
  cls.add_system(classify);
  classify->add_option("--format", cls_format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  add_config_doc(classify);

  // eval
  ParamFlags ev;
  double ev_theta = 0, ev_sigma = 0, ev_power = 1, ev_rel = 1e-8, ev_rmin = 0, ev_rmax = 0;
  double ev_scale = 1, ev_ball = 0;
  int ev_count = 0, ev_threads = -1;
  std::string ev_radii, ev_format = "csv";
  CLI::App* eval = app.add_subcommand("eval", "Evaluate W of r^sigma (1+r^2)^{-theta*power}");
  ev.add_base(eval);
  CLI::Option* ev_theta_opt = eval->add_option("--theta", ev_theta, "Profile exponent theta");
  CLI::Option* ev_sigma_opt = eval->add_option("--sigma", ev_sigma, "Weight exponent sigma");
  eval->add_option("--power", ev_power, "Power applied to the profile (default 1)");
  eval->add_option("--scale", ev_scale, "Multiply the density by this factor (default 1)");
  CLI::Option* ev_ball_opt =
      eval->add_option("--ball-radius", ev_ball, "Use the indicator of this ball instead");
  CLI::Option* ev_radii_opt = eval->add_option("--radii", ev_radii, "Comma-separated radii");
  CLI::Option* ev_rmin_opt = eval->add_option("--r-min", ev_rmin, "Smallest radius of a range");
  eval->add_option("--r-max", ev_rmax, "Largest radius of a range");
  eval->add_option("--count", ev_count, "Number of log-spaced radii in the range");
  eval->add_option("--rel-tol", ev_rel, "Relative quadrature tolerance");
  eval->add_option("--threads", ev_threads, "Worker threads");
  eval->add_option("--format", ev_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  add_config_doc(eval);

  // verify
  ParamFlags vf;
  std::string vf_mode;
  double vf_rate_tol = 0.02, vf_log_tol = 0.10, vf_rel = 1e-8;
  int vf_threads = -1;
  CLI::App* verify = app.add_subcommand("verify", "Build an explicit pair and check it");
  vf.add_system(verify);
  CLI::Option* vf_mode_opt = verify->add_option("--mode", vf_mode, "slow or fast")
                                 ->check(CLI::IsMember({"slow", "fast"}));
  verify->add_option("--rate-tol", vf_rate_tol, "Relative tolerance on fitted rates");
  verify->add_option("--log-tol", vf_log_tol, "Tolerance on the fitted log exponent");
  verify->add_option("--rel-tol", vf_rel, "Relative quadrature tolerance");
  verify->add_option("--threads", vf_threads, "Worker threads");
  add_config_doc(verify);

  // atlas
  ParamFlags at;
  double p_lo = 0, p_hi = 0, q_lo = 0, q_hi = 0;
  int p_steps = 0, q_steps = 0, at_threads = -1;
  CLI::App* atlas = app.add_subcommand("atlas", "Regime of every cell of a (p, q) grid as CSV");
  at.add_base(atlas);
  at.add_sigmas(atlas);
  std::vector<CLI::Option*> at_ranges{
      atlas->add_option("--p-min", p_lo, "Lower end of the p range"),
      atlas->add_option("--p-max", p_hi, "Upper end of the p range"),
      atlas->add_option("--p-steps", p_steps, "Grid points in p (>= 2)"),
      atlas->add_option("--q-min", q_lo, "Lower end of the q range"),
      atlas->add_option("--q-max", q_hi, "Upper end of the q range"),
      atlas->add_option("--q-steps", q_steps, "Grid points in q (>= 2)")};
  atlas->add_option("--threads", at_threads, "Worker threads");
  add_config_doc(atlas);

  // iterate
  ParamFlags it;
  double it_start = 0;
  int it_max = asymptotics::kDefaultMaxIter;
  CLI::App* iterate = app.add_subcommand("iterate", "Trace the exponent recursion");
  it.add_system(iterate);
  CLI::Option* it_start_opt = iterate->add_option("--a-start", it_start, "Start (default a0)");
  iterate->add_option("--max-iter", it_max, "Iteration budget (default 200)");
  add_config_doc(iterate);

  try {
    // Splice config defaults in ahead of the explicit flags.
    std::vector<std::string> args;
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      const std::string& a = raw_args[i];
      if (a == "--config") {
        if (i + 1 >= raw_args.size()) throw UsageError("--config needs a file name");
        config_path = raw_args[++i];
      } else if (a.rfind("--config=", 0) == 0) {
        config_path = a.substr(9);
      } else {
        args.push_back(a);
      }
    }
    if (config_path && !args.empty()) {
      CLI::App* sub = nullptr;
      for (CLI::App* s : {classify, eval, verify, atlas, iterate}) {
        if (s->get_name() == args.front()) sub = s;
      }
      if (sub) {
        std::vector<std::string> injected;
        for (const auto& [key, value] : read_config(*config_path)) {
          if (key == "config" || !sub->get_option_no_throw("--" + key)) {
            err << "config: ignoring key '" << key << "' for " << sub->get_name() << '\n';
            continue;
          }
          injected.push_back("--" + key + "=" + value);
        }
        args.insert(args.begin() + 1, injected.begin(), injected.end());
      }
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  }

  try {
    if (classify->parsed()) {
      const json j = classify_json(cls.make());
      if (cls_format == "table") {
        print_table(j, out);
      } else {
        out << j.dump(2) << '\n';
      }
      return kOk;
    }

    if (eval->parsed()) {
      ParamFlags::require(ev.n);
      ParamFlags::require(ev.beta);
      ParamFlags::require(ev.gamma);
      const bool ball = ev_ball_opt->count() > 0;
      if (!ball) {
        ParamFlags::require(ev_theta_opt);
        ParamFlags::require(ev_sigma_opt);
      }
      std::vector<double> radii;
      if (ev_radii_opt->count() > 0) {
        radii = parse_list(ev_radii);
      } else if (ev_rmin_opt->count() > 0) {
        if (ev_count < 2) throw UsageError("--count must be >= 2 for a radius range");
        if (!(ev_rmin > 0) || !(ev_rmax > ev_rmin)) {
          throw UsageError("radius range needs 0 < --r-min < --r-max");
        }
        radii = asymptotics::log_spaced(ev_rmin, ev_rmax, ev_count);
      } else {
        throw UsageError("give --radii or --r-min/--r-max/--count");
      }
      for (double r : radii) {
        if (!(r >= 0) || !std::isfinite(r)) throw UsageError("radii must be finite and >= 0");
      }
      const int n = ev.n_value;
      if (n < 3) throw UsageError("n must be an integer >= 3");
      const auto f = (ball ? wolff::ball_indicator_density(ev_ball)
                           : wolff::power_pair_density(ev_theta, ev_sigma, ev_power))
                         .scaled(ev_scale);
      const auto quad = quad_spec(ev_rel);
      const auto values =
          parallel_map<double>(radii.size(), resolve_threads(ev_threads), [&](std::size_t i) {
            try {
              return wolff::wolff_potential(f, n, ev.beta_value, ev.gamma_value, radii[i], quad);
            } catch (const Error& e) {
              throw Error(e.kind(), "at r = " + format17(radii[i]) + ": " + e.what());
            }
          });
      if (ev_format == "csv") {
        out << "r,value\n";
        for (std::size_t i = 0; i < radii.size(); ++i) {
          out << format17(radii[i]) << ',' << format17(values[i]) << '\n';
        }
      } else {
        json rows = json::array();
        for (std::size_t i = 0; i < radii.size(); ++i) {
          rows.push_back({{"r", radii[i]}, {"value", number_or_null(values[i])}});
        }
        json j{{"command", "eval"},
               {"density",
                ball ? json{{"kind", "ball"}, {"radius", ev_ball}, {"scale", ev_scale}}
                     : json{{"kind", "power_pair"},
                            {"theta", ev_theta},
                            {"sigma", ev_sigma},
                            {"power", ev_power},
                            {"scale", ev_scale}}},
               {"n", n},
               {"beta", ev.beta_value},
               {"gamma", ev.gamma_value},
               {"rel_tol", ev_rel},
               {"values", rows}};
        out << j.dump(2) << '\n';
      }
      return kOk;
    }

    if (verify->parsed()) {
      const core::SystemParams s = vf.make();
      ParamFlags::require(vf_mode_opt);
      if (!(vf_rate_tol > 0) || !(vf_log_tol > 0)) {
        throw UsageError("--rate-tol and --log-tol must be > 0");
      }
      const auto quad = quad_spec(vf_rel);
      const int threads = resolve_threads(vf_threads);
      const auto mode = vf_mode == "slow" ? constructions::Mode::Slow : constructions::Mode::Fast;
      const auto pair = constructions::build_pair(s, mode);
      const auto rep =
          constructions::coefficient_ratios(pair, constructions::default_ratio_radii(), quad, threads);
      const auto decay =
          constructions::verify_decay_class(pair, quad, constructions::default_tail_radii(), threads);

      auto rel_err = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
      const bool theta_u_ok = rel_err(decay.u.theta, decay.expected_theta_u) <= vf_rate_tol;
      const bool theta_v_ok = rel_err(decay.v.theta, decay.expected_theta_v) <= vf_rate_tol;
      const bool kappa_v_ok = decay.expected_kappa_v != 0.0
                                  ? rel_err(decay.v.kappa, decay.expected_kappa_v) <= vf_log_tol
                                  : std::abs(decay.v.kappa) <= vf_log_tol;
      const bool bounded = constructions::is_double_bounded(rep.verdict);
      const bool rates_ok = theta_u_ok && theta_v_ok && kappa_v_ok;

      auto spread_json = [](const constructions::Spread& sp) {
        return json{{"min", sp.min}, {"max", sp.max}, {"full", sp.full},
                    {"inner", sp.inner}, {"outer", sp.outer}};
      };
      auto fit_json = [](const asymptotics::RateFit& f) {
        return json{{"theta", f.theta},       {"kappa", f.kappa},         {"log_amplitude", f.c},
                    {"residual", f.residual}, {"r_lo", f.r_lo},           {"r_hi", f.r_hi},
                    {"condition", f.condition}};
      };
      json samples = json::array();
      for (const auto& x : rep.samples) samples.push_back({{"r", x.r}, {"c1", x.c1}, {"c2", x.c2}});
      json j{{"command", "verify"},
             {"params", params_json(s)},
             {"mode", constructions::to_string(mode)},
             {"theta1", pair.theta1()},
             {"theta2", pair.theta2()},
             {"fast_sign_condition", pair.fast_sign_condition()},
             {"spread_c1", rep.c1.full},
             {"spread_c2", rep.c2.full},
             {"theta_u", decay.u.theta},
             {"theta_v", decay.v.theta},
             {"kappa_u", decay.u.kappa},
             {"kappa_v", decay.v.kappa},
             {"expected_theta_u", decay.expected_theta_u},
             {"expected_theta_v", decay.expected_theta_v},
             {"expected_kappa_v", decay.expected_kappa_v},
             {"rate_tol", vf_rate_tol},
             {"log_tol", vf_log_tol},
             {"rates_ok", rates_ok},
             {"verdict", bounded ? "DoubleBounded" : "SpreadExceeded"},
             {"window", {{"r_lo", rep.r_lo}, {"r_hi", rep.r_hi}, {"split", rep.split}}},
             {"c1", spread_json(rep.c1)},
             {"c2", spread_json(rep.c2)},
             {"fit_u", fit_json(decay.u)},
             {"fit_v", fit_json(decay.v)},
             {"samples", samples}};
      out << j.dump(2) << '\n';
      if (!bounded) err << "verification failed: coefficient spread does not plateau\n";
      if (!rates_ok) err << "verification failed: fitted rates outside tolerance\n";
      return bounded && rates_ok ? kOk : kVerificationFailed;
    }

    if (atlas->parsed()) {
      for (const CLI::Option* o : {at.n, at.beta, at.gamma, at.s1, at.s2}) ParamFlags::require(o);
      for (const CLI::Option* o : at_ranges) ParamFlags::require(o);
      if (p_steps < 2 || q_steps < 2) throw UsageError("--p-steps and --q-steps must be >= 2");
      if (!(p_lo > 0) || !(p_hi > p_lo) || !(q_lo > 0) || !(q_hi > q_lo)) {
        throw UsageError("ranges need 0 < min < max");
      }
      // Validate the fixed part once so a bad n or beta is reported as such.
      core::SystemParams::make(at.n_value, at.beta_value, at.gamma_value, p_lo, q_lo,
                               at.s1_value, at.s2_value, at.convention());
      const std::size_t cells = static_cast<std::size_t>(p_steps) * static_cast<std::size_t>(q_steps);
      struct Row {
        std::string text;
        core::Regime regime;
      };
      const auto rows = parallel_map<Row>(cells, resolve_threads(at_threads), [&](std::size_t k) {
        const int i = static_cast<int>(k / static_cast<std::size_t>(q_steps));
        const int jq = static_cast<int>(k % static_cast<std::size_t>(q_steps));
        const double p = grid_value(p_lo, p_hi, p_steps, i);
        const double q = grid_value(q_lo, q_hi, q_steps, jq);
        const auto s = core::SystemParams::make(at.n_value, at.beta_value, at.gamma_value, p, q,
                                                at.s1_value, at.s2_value, at.convention());
        const auto rep = core::classify(s);
        const auto ex = core::exponents(s);
        auto opt = [](const std::optional<double>& x) { return x ? format_shortest(*x) : ""; };
        std::string line = format_shortest(p) + ',' + format_shortest(q) + ',' +
                           std::string(core::to_string(rep.regime)) + ',' + opt(ex.q0) + ',' +
                           opt(ex.p0) + ',' + format_shortest(ex.a0) + ',' + opt(rep.criticality);
        return Row{line, rep.regime};
      });
      out << "p,q,regime,q0,p0,a0,criticality_gap\n";
      std::map<std::string, int> counts;
      for (const auto& r : rows) {
        out << r.text << '\n';
        ++counts[std::string(core::to_string(r.regime))];
      }
      err << "atlas: " << cells << " cells";
      for (const auto& [name, c] : counts) err << ", " << name << " " << c;
      err << '\n';
      return kOk;
    }

    if (iterate->parsed()) {
      const core::SystemParams s = it.make();
      if (it_max < 1) throw UsageError("--max-iter must be >= 1");
      std::optional<double> start;
      if (it_start_opt->count() > 0) start = it_start;
      const auto trace = asymptotics::iterate_liouville(s, start, it_max);
      const auto ex = core::exponents(s);
      json verdict{{"kind", asymptotics::name_of(trace.verdict)}};
      std::visit(
          [&verdict](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, asymptotics::DivergesNegative>) {
              verdict["index"] = v.index;
            } else if constexpr (std::is_same_v<V, asymptotics::ConvergesTo>) {
              verdict["limit"] = v.limit;
            } else {
              verdict["iterations"] = v.iterations;
            }
          },
          trace.verdict);
      json a = json::array();
      json b = json::array();
      for (double x : trace.a) a.push_back(number_or_null(x));
      for (double x : trace.b) b.push_back(number_or_null(x));
      json j{{"command", "iterate"},
             {"params", params_json(s)},
             {"a_start", trace.a.front()},
             {"iter_ratio", ex.iter_ratio},
             {"eta0", ex.eta0},
             {"q0", optional_json(ex.q0)},
             {"verdict", verdict},
             {"closed_form_check", number_or_null(trace.closed_form_check)},
             {"a", a},
             {"b", b}};
      out << j.dump(2) << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  err << "error: no command given\n";
  return kBadArguments;
}

}  // namespace wolffkit::cli
