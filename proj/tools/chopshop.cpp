// chopshop command-line front end. Results go to stdout, diagnostics to
// stderr. Exit 0 on success/PASS, 1 on FAIL verdicts or computational
// failure, 2 on usage errors.

#include <chopshop/formulas.hpp>
#include <chopshop/verify.hpp>
#include <chopshop/version.hpp>
#include <chopshop/waring.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace chopshop;

namespace {

enum class Format { table, json };

struct RunConfig {
  int n = 2;
  count_t r = 0;
  count_t r_from = 0;
  count_t r_to = 0;
  int D = 0;
  std::uint32_t prime = kDefaultPrime;
  std::uint64_t seed = 0;
  int trials = 1;
  std::optional<int> e_max;
  double tol = kDefaultWaringTol;
  unsigned workers = 0;
  std::string out;
  std::string input;
  std::vector<int> degrees;
  Format format = Format::table;
  bool no_timing = false;
};

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const RunConfig& cfg, const json& j, const std::string& table) {
  if (cfg.format == Format::json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << table;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f)
    throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

std::string join(const std::vector<count_t>& v, const char* sep = " ") {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? sep : "") << v[i];
  return os.str();
}

/// Degrees as columns, one row per function; '*' marks values above r.
std::string hf_table(const CaseParams& p, const std::vector<std::pair<std::string, std::vector<count_t>>>& rows,
                     int t_max, std::optional<count_t> mark_above) {
  std::ostringstream os;
  std::size_t label = 2;
  for (const auto& [name, v] : rows)
    label = std::max(label, name.size());
  os << std::left << std::setw(static_cast<int>(label)) << "t" << std::right;
  for (int t = 0; t <= t_max; ++t)
    os << std::setw(7) << t;
  os << '\n';
  for (const auto& [name, v] : rows) {
    os << std::left << std::setw(static_cast<int>(label)) << name << std::right;
    for (int t = 0; t <= t_max; ++t) {
      std::string cell = std::to_string(v[static_cast<std::size_t>(t)]);
      if (mark_above && t >= p.d && v[static_cast<std::size_t>(t)] > *mark_above)
        cell += '*';
      else
        cell += ' ';
      os << std::setw(7) << cell;
    }
    os << '\n';
  }
  return os.str();
}

CaseParams checked_params(const RunConfig& cfg) {
  if (cfg.r < 1)
    throw usage_error("--r must be positive");
  auto p = CaseParams::make(cfg.n, cfg.r);
  require_cuts_out(p, "chopshop");
  return p;
}

int cmd_hf(const RunConfig& cfg) {
  const auto p = checked_params(cfg);
  const auto g = predicted_gap(p);
  const int t_max = std::max(p.d + g.gap + 1, cfg.e_max ? p.d + *cfg.e_max : 0);
  const auto generic = generic_table(p, t_max).values;
  const auto chopped = expected_quotient_table(p, t_max).values;
  std::vector<count_t> fro;
  const bool have_fro = p.num_generators() >= 1;
  if (have_fro)
    fro = froberg_capped_table(p, t_max).values;
  json j{{"n", p.n}, {"r", p.r}, {"d", p.d}, {"t_max", t_max},
         {"generic", std::vector<count_t>(generic.begin(), generic.begin() + t_max + 1)},
         {"expected_chopped", chopped},
         {"froberg_capped", have_fro ? json(fro) : json(nullptr)},
         {"predicted_gap", g.gap}, {"gap_upper_bound", g.bound},
         {"status", g.status == ChopStatus::trivial ? "trivial" : "interesting"}};
  std::vector<std::pair<std::string, std::vector<count_t>>> rows{
      {"h_{S/I}", generic}, {"h_{S/I<d>}", chopped}};
  if (have_fro)
    rows.emplace_back("froberg", fro);
  std::ostringstream os;
  os << "n=" << p.n << " r=" << p.r << " d=" << p.d << "\n"
     << hf_table(p, rows, t_max, p.r) << "predicted gap " << g.gap << " (bound " << g.bound
     << ")\n";
  emit(cfg, j, os.str());
  return 0;
}

int cmd_gap(const RunConfig& cfg) {
  const auto p = checked_params(cfg);
  const auto g = predicted_gap(p);
  json j{{"n", p.n}, {"r", p.r}, {"d", p.d}, {"predicted_gap", g.gap},
         {"gap_upper_bound", g.bound}, {"overshoot", g.overshoot_table.values}};
  std::ostringstream os;
  os << "n=" << p.n << " r=" << p.r << " d=" << p.d << " predicted_gap=" << g.gap
     << " gap_upper_bound=" << g.bound << "\n";
  emit(cfg, j, os.str());
  return 0;
}

std::string certificate_line(const Certificate& c) {
  std::ostringstream os;
  os << "n=" << c.n << " r=" << c.r << " d=" << c.d << " " << to_string(c.verdict);
  if (c.verdict != Verdict::genericity_fail) {
    os << " gap=" << (c.observed_gap ? std::to_string(*c.observed_gap) : "none")
       << " expected_gap=" << c.expected_gap << " quotient=" << join(c.observed_quotient, ",");
    if (c.first_mismatch_degree)
      os << " first_mismatch=" << *c.first_mismatch_degree;
  } else {
    os << " retries=" << c.retries;
  }
  return os.str();
}

int cmd_verify(const RunConfig& cfg) {
  checked_params(cfg);
  VerifyOptions vo;
  vo.e_max = cfg.e_max;
  vo.timing = !cfg.no_timing;
  const auto c = verify_case(cfg.n, cfg.r, PrimeField(cfg.prime), cfg.seed, vo);
  const json j = to_json(c);
  if (!cfg.out.empty())
    write_json_file(cfg.out, j);
  emit(cfg, j, certificate_line(c) + "\n");
  return c.verdict == Verdict::pass ? 0 : 1;
}

int cmd_verify_range(const RunConfig& cfg) {
  if (cfg.r_from < 1 || cfg.r_to < cfg.r_from)
    throw usage_error("need 1 <= --r-from <= --r-to");
  if (cfg.trials < 1)
    throw usage_error("--trials must be positive");
  GridOptions g;
  g.n = cfg.n;
  g.r_from = cfg.r_from;
  g.r_to = cfg.r_to;
  g.prime = cfg.prime;
  g.base_seed = cfg.seed;
  g.trials = cfg.trials;
  g.workers = cfg.workers;
  g.e_max = cfg.e_max;
  g.timing = !cfg.no_timing;
  g.fail_dir = cfg.out.empty() ? std::filesystem::path("chopshop-failures")
                               : std::filesystem::path(cfg.out + ".failures");
  const auto rep = verify_grid(g);
  const json j = to_json(rep);
  if (!cfg.out.empty())
    write_json_file(cfg.out, j);
  std::ostringstream os;
  for (const auto& c : rep.certificates)
    os << certificate_line(c) << '\n';
  for (const auto& s : rep.skipped)
    os << "n=" << s.n << " r=" << s.r << " SKIP " << s.reason << '\n';
  os << "pass=" << rep.summary.pass << " fail=" << rep.summary.fail
     << " skip=" << rep.summary.skip;
  if (rep.summary.total_wall_ms)
    os << " wall_ms=" << std::fixed << std::setprecision(1) << *rep.summary.total_wall_ms;
  os << '\n' << kCharZeroNote << '\n';
  if (rep.summary.fail)
    std::cerr << "failure certificates written to " << g.fail_dir->string() << '\n';
  emit(cfg, j, os.str());
  return rep.summary.fail ? 1 : 0;
}

int cmd_liaison(const RunConfig& cfg) {
  if (cfg.degrees.size() != static_cast<std::size_t>(cfg.n))
    throw usage_error("--degrees needs exactly n entries");
  for (int d : cfg.degrees)
    if (d < 1)
      throw usage_error("--degrees entries must be positive");
  if (cfg.r < 1)
    throw usage_error("--r must be positive");
  const auto p = CaseParams::make(cfg.n, cfg.r);
  const auto dz = make_hvector(cfg.n, first_difference(generic_table(p, p.d + 1)).values);
  const auto dk = ci_delta(cfg.n, cfg.degrees);
  const auto dzp = liaison_delta(cfg.n, cfg.degrees, dz);
  const json j{{"n", cfg.n}, {"degrees", cfg.degrees}, {"r", cfg.r},
               {"delta_h_Z", dz.trimmed()}, {"delta_h_K", dk.trimmed()},
               {"delta_h_Zprime", dzp.trimmed()}};
  std::ostringstream os;
  os << "Delta h_Z   " << join(dz.trimmed()) << "\nDelta h_K   " << join(dk.trimmed())
     << "\nDelta h_Z'  " << join(dzp.trimmed()) << "\n";
  emit(cfg, j, os.str());
  return 0;
}

std::string decomposition_line(const DecompositionResult& res) {
  std::ostringstream os;
  os << std::setprecision(3) << "residual=" << res.residual
     << " catalecticant_rank=" << res.diagnostics.catalecticant_rank
     << " kernel_dim=" << res.diagnostics.kernel_dim
     << " macaulay_degree=" << res.diagnostics.macaulay_degree
     << " cokernel_condition=" << res.diagnostics.cokernel_condition
     << " eigen_offdiag_max=" << res.diagnostics.eigen_offdiag_max;
  return os.str();
}

int cmd_decompose(const RunConfig& cfg) {
  if (cfg.r < 1)
    throw usage_error("--r must be positive");
  std::ifstream in(cfg.input);
  if (!in)
    throw usage_error("cannot read form file " + cfg.input);
  json fj;
  try {
    fj = json::parse(in);
  } catch (const json::exception& e) {
    throw usage_error(std::string("form file: ") + e.what());
  }
  const auto F = form_from_json(fj);
  DecomposeOptions o;
  o.tol = cfg.tol;
  o.seed = cfg.seed;
  const auto res = decompose(F, cfg.r, o);
  const json j = to_json(res);
  if (!cfg.out.empty())
    write_json_file(cfg.out, j);
  emit(cfg, j, decomposition_line(res) + "\n");
  return 0;
}

int cmd_waring_demo(const RunConfig& cfg) {
  if (cfg.r < 1 || cfg.D < 1 || cfg.n < 1)
    throw usage_error("need positive --n, --D and --r");
  std::mt19937_64 rng(cfg.seed);
  const CMatrix Z = unit_circle_points(cfg.n, static_cast<std::size_t>(cfg.r), rng);
  const CVector c = CVector::Ones(static_cast<Eigen::Index>(cfg.r));
  const auto F = form_from_points(Z, c, cfg.D);
  DecomposeOptions o;
  o.tol = cfg.tol;
  o.seed = cfg.seed;
  const auto start = std::chrono::steady_clock::now();
  const auto res = decompose(F, cfg.r, o);
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const auto rec = recovery_error(Z, c, res, cfg.D);
  json j = to_json(res);
  j["point_error"] = rec.max_point_error;
  j["coefficient_error"] = rec.max_coefficient_error;
  j["wall_ms"] = cfg.no_timing ? json(nullptr) : json(ms);
  if (!cfg.out.empty())
    write_json_file(cfg.out, j);
  std::ostringstream os;
  os << "n=" << cfg.n << " D=" << cfg.D << " r=" << cfg.r << " " << decomposition_line(res)
     << std::setprecision(3) << " point_error=" << rec.max_point_error
     << " coefficient_error=" << rec.max_coefficient_error;
  if (!cfg.no_timing)
    os << " wall_ms=" << std::fixed << std::setprecision(1) << ms;
  os << '\n';
  emit(cfg, j, os.str());
  return 0;
}

int cmd_search_monomial(const RunConfig& cfg) {
  if (cfg.r < 1)
    throw usage_error("--r must be positive");
  const auto res = search_monomial_ideals(cfg.r);
  const auto reps = orbit_representatives(res.ideals);
  auto gens_json = [](const MonomialIdeal& I) {
    json g = json::array();
    for (const auto& e : I.generators())
      g.push_back(e.entries);
    return g;
  };
  json ideals = json::array(), orbit_reps = json::array();
  for (const auto& I : res.ideals)
    ideals.push_back(gens_json(I));
  for (const auto& I : reps)
    orbit_reps.push_back(gens_json(I));
  const json j{{"r", res.r},
               {"d", res.d},
               {"horizon", res.horizon},
               {"canonicalization", "S3 permutations of (x,y,z); least sorted generator list"},
               {"canonical_sets", res.canonical_sets},
               {"chopped_matches", res.chopped_matches},
               {"orbits", orbit_reps},
               {"ideals", ideals}};
  std::ostringstream os;
  os << "r=" << res.r << " d=" << res.d << " horizon=" << res.horizon
     << " degree-d sets (up to permutation)=" << res.canonical_sets
     << " chopped matches=" << res.chopped_matches << "\n"
     << reps.size() << " orbit(s), " << res.ideals.size() << " ideal(s)\n";
  for (const auto& I : reps)
    os << "  " << I << '\n';
  emit(cfg, j, os.str());
  return 0;
}

int cmd_sextic_demo(const RunConfig& cfg) {
  if (cfg.trials < 1)
    throw usage_error("--trials must be positive");
  json runs = json::array();
  std::ostringstream os;
  bool ok = true;
  for (int i = 0; i < cfg.trials; ++i) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
    const auto rec = missing_sextic_demo(PrimeField(cfg.prime), seed);
    runs.push_back(to_json(rec));
    const bool good = rec.g_in_I6 && !rec.g_in_chopped6 && rec.chopped6_dim == 9 && rec.I6_dim == 10;
    ok = ok && good;
    os << "seed=" << seed << " g_in_I6=" << rec.g_in_I6 << " g_in_chopped6=" << rec.g_in_chopped6
       << " chopped6_dim=" << rec.chopped6_dim << " I6_dim=" << rec.I6_dim
       << (good ? " PASS" : " FAIL") << '\n';
  }
  emit(cfg, cfg.trials == 1 ? runs[0] : json{{"runs", runs}}, os.str());
  return ok ? 0 : 1;
}

template <class T>
std::optional<T> env_default(const char* name) {
  const char* v = std::getenv(name);
  if (!v || !*v)
    return std::nullopt;
  std::istringstream is(v);
  T x{};
  if (!(is >> x) || !is.eof())
    throw usage_error(std::string("environment variable ") + name + " is not a valid number");
  return x;
}

} // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Chopped ideals of general points: Hilbert functions, gap certificates and "
               "Waring decomposition"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);

  try {
    if (auto p = env_default<std::uint32_t>("CHOPSHOP_PRIME"))
      cfg.prime = *p;
    if (auto s = env_default<std::uint64_t>("CHOPSHOP_SEED"))
      cfg.seed = *s;
  } catch (const usage_error& e) {
    std::cerr << "chopshop: " << e.what() << '\n';
    return 2;
  }

  std::map<std::string, Format> formats{{"table", Format::table}, {"json", Format::json}};
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--prime", cfg.prime, "Prime modulus (default 2147483647, env CHOPSHOP_PRIME)")
        ->check(CLI::Range(3u, 4294967291u));
    sub->add_option("--seed", cfg.seed, "Random seed (default 0, env CHOPSHOP_SEED)");
  };
  auto add_n = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Projective dimension")->required()->check(CLI::Range(1, 64));
  };
  auto add_r = [&](CLI::App* sub) {
    sub->add_option("--r", cfg.r, "Number of points / rank")->required()->check(CLI::PositiveNumber);
  };

  auto* hf = app.add_subcommand("hf", "Generic, expected chopped and Froberg tables with the gap");
  add_n(hf);
  add_r(hf);
  hf->add_option("--e-max", cfg.e_max, "Show degrees up to d + e-max")->check(CLI::NonNegativeNumber);
  common(hf);

  auto* gap = app.add_subcommand("gap", "Predicted gap and its upper bound");
  add_n(gap);
  add_r(gap);
  common(gap);

  auto* verify = app.add_subcommand("verify", "Verify one (n, r) case and write a certificate");
  add_n(verify);
  add_r(verify);
  verify->add_option("--e-max", cfg.e_max, "Scan limit past d")->check(CLI::PositiveNumber);
  verify->add_option("--out", cfg.out, "Certificate file");
  verify->add_flag("--no-timing", cfg.no_timing, "Null wall-time fields");
  common(verify);

  auto* range = app.add_subcommand("verify-range", "Verify every admissible r in a range");
  add_n(range);
  range->add_option("--r-from", cfg.r_from, "First r")->required()->check(CLI::PositiveNumber);
  range->add_option("--r-to", cfg.r_to, "Last r")->required()->check(CLI::PositiveNumber);
  range->add_option("--trials", cfg.trials, "Trials per case (default 1)")->check(CLI::PositiveNumber);
  range->add_option("--workers", cfg.workers, "Worker threads (default: all cores)");
  range->add_option("--e-max", cfg.e_max, "Scan limit past d")->check(CLI::PositiveNumber);
  range->add_option("--out", cfg.out, "Report file; failures go to <out>.failures/");
  range->add_flag("--no-timing", cfg.no_timing, "Null wall-time fields");
  common(range);

  auto* liaison = app.add_subcommand("liaison", "Delta h of Z, the complete intersection and Z'");
  add_n(liaison);
  add_r(liaison);
  liaison->add_option("--degrees", cfg.degrees, "Degrees of the n complete-intersection forms")
      ->required()
      ->delimiter(',');
  common(liaison);

  auto* dec = app.add_subcommand("decompose", "Waring decomposition of a form file");
  dec->add_option("form", cfg.input, "Form JSON file")->required();
  add_r(dec);
  dec->add_option("--tol", cfg.tol, "Relative rank tolerance (default 1e-8)")
      ->check(CLI::Range(0.0, 1.0));
  dec->add_option("--out", cfg.out, "Result file");
  common(dec);

  auto* demo = app.add_subcommand("waring-demo", "Random unit-circle form, decomposed and checked");
  add_n(demo);
  add_r(demo);
  demo->add_option("--D", cfg.D, "Form degree")->required()->check(CLI::PositiveNumber);
  demo->add_option("--tol", cfg.tol, "Relative rank tolerance (default 1e-8)")
      ->check(CLI::Range(0.0, 1.0));
  demo->add_option("--out", cfg.out, "Result file");
  demo->add_flag("--no-timing", cfg.no_timing, "Null wall-time fields");
  common(demo);

  auto* search = app.add_subcommand("search-monomial", "Monomial ideals satisfying the chopped conjecture (plane)");
  add_r(search);
  common(search);

  auto* sextic = app.add_subcommand("sextic-demo", "The sextic missing from <I(Z)_5> for 18 points");
  sextic->add_option("--trials", cfg.trials, "Consecutive seeds to run")->check(CLI::PositiveNumber);
  common(sextic);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*hf)
      return cmd_hf(cfg);
    if (*gap)
      return cmd_gap(cfg);
    if (*verify)
      return cmd_verify(cfg);
    if (*range)
      return cmd_verify_range(cfg);
    if (*liaison)
      return cmd_liaison(cfg);
    if (*dec)
      return cmd_decompose(cfg);
    if (*demo)
      return cmd_waring_demo(cfg);
    if (*search)
      return cmd_search_monomial(cfg);
    if (*sextic)
      return cmd_sextic_demo(cfg);
  } catch (const usage_error& e) {
    std::cerr << "chopshop: " << e.what() << '\n';
    return 2;
  } catch (const range_error& e) {
    std::cerr << "chopshop: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "chopshop: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "chopshop: " << e.what() << '\n';
    if (cfg.format == Format::json) {
      json err{{"error", e.what()}};
      if (const auto* w = dynamic_cast<const waring_error*>(&e)) {
        err["kind"] = to_string(w->kind());
        if (w->partial())
          err["partial"] = to_json(*w->partial());
      }
      if (const auto* g = dynamic_cast<const genericity_error*>(&e)) {
        err["kind"] = "GENERICITY_FAIL";
        err["retries"] = g->retries();
      }
      std::cout << err.dump(2) << '\n';
    }
    return 1;
  }
  return 2;
}
