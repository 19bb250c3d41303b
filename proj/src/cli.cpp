#include "decaylab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "decaylab/bounds.hpp"
#include "decaylab/codes.hpp"
#include "decaylab/decay_search.hpp"
#include "decaylab/io.hpp"
#include "decaylab/sequences.hpp"

namespace decaylab::cli {

namespace {

// Flag-level misuse that CLI11 cannot express (mutually required groups,
// value ranges). Mapped to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct OutputOptions {
  std::string format = "csv";
  std::string path;

  Format fmt() const { return format == "json" ? Format::json : Format::csv; }
};

void add_output_options(CLI::App* sub, OutputOptions& o) {
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.path, "Output path (default stdout)");
}

// Runs body with the selected output stream.
void with_output(const OutputOptions& o, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& body) {
  if (o.path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + o.path);
  body(file);
  if (!file) throw std::runtime_error("failed writing " + o.path);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input file " + path);
  return in;
}

std::uint64_t resolve_budget(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kBudgetEnv); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used != std::string_view(env).size() || v == 0) throw std::invalid_argument(env);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError(std::string(kBudgetEnv) + " must be a positive integer, got '" + env + "'");
    }
  }
  return kDefaultPairBudget;
}

// ------------------------------------------------------------------ decay

struct DecayArgs {
  OutputOptions out;
  std::optional<int> n1;
  std::optional<int> n2;
  std::string series;
  std::optional<int> nmax;
  unsigned workers = 1;
  std::optional<std::uint64_t> budget;
  bool force = false;
  std::string gamma = "i";
  std::optional<std::uint64_t> shuffle_seed;
};

void cmd_decay(const DecayArgs& a, std::ostream& out) {
  CodeConfig cfg;
  try {
    cfg.gamma = parse_ring_elem(a.gamma);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--gamma: ") + e.what());
  }
  if (a.workers < 1) throw UsageError("--workers must be >= 1");

  SearchOptions opts;
  opts.workers = a.workers;
  opts.budget = resolve_budget(a.budget);
  opts.override_budget = a.force;
  opts.shuffle_seed = a.shuffle_seed;

  std::vector<DecayRecord> records;
  if (!a.series.empty()) {
    if (a.n1 || a.n2) throw UsageError("--series cannot be combined with --n1/--n2");
    if (!a.nmax) throw UsageError("--series needs --nmax");
    if (*a.nmax < 1) throw UsageError("--nmax must be >= 1");
    const SeriesMode mode = a.series == "equal" ? SeriesMode::equal : SeriesMode::fixed_second;
    records = decay_series(*a.nmax, mode, cfg, opts);
  } else {
    if (!a.n1 || !a.n2) throw UsageError("decay needs --n1 and --n2, or --series with --nmax");
    if (*a.n1 < 1 || *a.n2 < 1) throw UsageError("--n1 and --n2 must be >= 1");
    records.push_back(decay(*a.n1, *a.n2, cfg, opts));
  }

  with_output(a.out, out, [&](std::ostream& os) {
    if (a.out.fmt() == Format::json) {
      write_decay_json(os, records);
    } else {
      write_decay_csv(os, records);
    }
  });
}

// --------------------------------------------------------------- sequence

struct SequenceArgs {
  OutputOptions out;
  bool table1 = false;
  std::optional<long> factor;
  std::optional<long> corollary;
};

void cmd_sequence(const SequenceArgs& a, std::ostream& out) {
  const int chosen = int(a.table1) + int(a.factor.has_value()) + int(a.corollary.has_value());
  if (chosen != 1) throw UsageError("sequence needs exactly one of --table1, --factor N, --corollary K");

  if (a.table1) {
    const auto rows = table_rows();
    with_output(a.out, out, [&](std::ostream& os) {
      if (a.out.fmt() == Format::json) {
        write_sequence_json(os, rows);
      } else {
        write_sequence_csv(os, rows);
      }
    });
    return;
  }

  if (a.factor) {
    if (*a.factor < 1) throw UsageError("--factor needs n >= 1");
    const auto n = static_cast<unsigned>(*a.factor);
    const Z5nFactorization f = factor_z5n(n);
    const RingElem z5n = z_element(5 * n);
    const bool holds = f.product() == z5n;
    with_output(a.out, out, [&](std::ostream& os) {
      const std::string lo = "m_" + std::to_string(f.j) + "(" + std::to_string(n) + ")";
      const std::string hi = "m_" + std::to_string(f.j + 2) + "(" + std::to_string(n) + ")";
      if (a.out.fmt() == Format::json) {
        Json j{{"n", n},        {"j", f.j},          {"z_n", to_json(f.z)}, {"m_j", to_json(f.m_low)},
               {"m_j_plus_2", to_json(f.m_high)}, {"z_5n", to_json(z5n)}, {"identity_holds", holds}};
        os << j.dump(2) << '\n';
      } else {
        os << "z_" << 5 * n << " = z_" << n << " * " << lo << " * " << hi << ": "
           << (holds ? "identity holds" : "IDENTITY FAILS") << '\n';
        os << "z_" << n << " = " << to_string(f.z) << '\n';
        os << lo << " = " << to_string(f.m_low) << '\n';
        os << hi << " = " << to_string(f.m_high) << '\n';
        os << "z_" << 5 * n << " = " << to_string(z5n) << '\n';
      }
    });
    if (!holds) throw std::runtime_error("factorization identity failed");
    return;
  }

  if (*a.corollary < 1) throw UsageError("--corollary needs k >= 1");
  const auto points = unbalanced_series(static_cast<unsigned>(*a.corollary));
  with_output(a.out, out, [&](std::ostream& os) {
    if (a.out.fmt() == Format::json) {
      Json arr = Json::array();
      for (const auto& p : points) arr.push_back(to_json(p));
      os << arr.dump(2) << '\n';
    } else {
      os << "n,size1,size2,log_size_ratio,detsq_p,detsq_q,detsq_float\n";
      for (const auto& p : points) {
        os << p.n << ',' << p.size1.get_str() << ',' << p.size2.get_str() << ','
           << std::setprecision(6) << p.log_size_ratio << ',' << p.detsq.p.get_str() << ','
           << p.detsq.q.get_str() << ',' << std::setprecision(17) << p.detsq.to_double() << '\n';
      }
    }
  });
}

// ----------------------------------------------------------------- bounds

struct LiouvilleArgs {
  OutputOptions out{"text", ""};
  std::string max_k = "1000000";
};

void cmd_liouville(const LiouvilleArgs& a, std::ostream& out) {
  BigInt k_max;
  try {
    k_max = BigInt(a.max_k);
  } catch (const std::invalid_argument&) {
    throw UsageError("--max-k must be an integer, got '" + a.max_k + "'");
  }
  if (k_max < 1) throw UsageError("--max-k must be >= 1");
  const auto conv = tau_convergents(k_max);
  const double c = liouville_effective_constant();
  std::size_t min_i = 0, max_i = 0;
  bool inside = true;
  for (std::size_t i = 0; i < conv.size(); ++i) {
    if (conv[i].quality < conv[min_i].quality) min_i = i;
    if (conv[i].quality > conv[max_i].quality) max_i = i;
    inside = inside && conv[i].quality > c && conv[i].quality < 1.0;
  }
  with_output(a.out, out, [&](std::ostream& os) {
    if (a.out.format == "json") {
      Json list = Json::array();
      for (const auto& cv : conv) list.push_back(to_json(cv));
      Json j{{"max_k", k_max.get_str()},
             {"count", conv.size()},
             {"min_quality", conv[min_i].quality},
             {"min_quality_at", to_json(conv[min_i])},
             {"max_quality", conv[max_i].quality},
             {"last_quality", conv.back().quality},
             {"liouville_constant", c},
             {"hurwitz_limit", golden_hurwitz_constant()},
             {"all_within_bounds", inside},
             {"convergents", std::move(list)}};
      os << j.dump(2) << '\n';
      return;
    }
    os << std::setprecision(6) << std::fixed;
    os << "convergents with k <= " << k_max.get_str() << ": " << conv.size() << '\n';
    os << "min quality: " << conv[min_i].quality << " at " << conv[min_i].h.get_str() << "/"
       << conv[min_i].k.get_str() << '\n';
    os << "max quality: " << conv[max_i].quality << " at " << conv[max_i].h.get_str() << "/"
       << conv[max_i].k.get_str() << '\n';
    os << "last quality: " << conv.back().quality << " at " << conv.back().h.get_str() << "/"
       << conv.back().k.get_str() << '\n';
    os << "limit 1/sqrt5: " << golden_hurwitz_constant() << '\n';
    os << "effective Liouville constant: " << c << '\n';
    os << "all qualities in (constant, 1): " << (inside ? "yes" : "no") << '\n';
  });
}

struct DmtArgs {
  OutputOptions out{"text", ""};
  std::string r;
  std::string delta;
  bool threshold = false;
};

void cmd_dmt(const DmtArgs& a, std::ostream& out) {
  if (a.r.empty() && !a.threshold) throw UsageError("bounds dmt needs --r or --threshold");
  DmtQuery q;
  if (!a.delta.empty()) {
    q.mode = DeltaMode::empirical;
    q.empirical_delta = parse_rational(a.delta);
  }
  std::optional<DmtResult> res;
  if (!a.r.empty()) {
    q.r = parse_rational(a.r);
    res = dmt_optimality(q);
  }
  std::optional<Rational> thr;
  if (a.threshold) thr = dmt_threshold(q.mode, q.empirical_delta);

  with_output(a.out, out, [&](std::ostream& os) {
    if (a.out.format == "json") {
      Json j = res ? to_json(q, *res) : Json::object();
      if (a.threshold) j["threshold"] = thr ? Json(to_string(*thr)) : Json(nullptr);
      os << j.dump(2) << '\n';
      return;
    }
    if (res) {
      os << to_string(res->lhs) << (res->optimal ? " \xE2\x89\xA4 " : " > ") << to_string(res->rhs)
         << " : " << (res->optimal ? "optimal" : "condition violated") << '\n';
    }
    if (a.threshold) os << "threshold: " << (thr ? to_string(*thr) : std::string("none")) << '\n';
  });
}

struct FitArgs {
  OutputOptions out{"text", ""};
  std::string input;
};

void cmd_fit(const FitArgs& a, std::ostream& out) {
  auto in = open_input(a.input);
  std::vector<std::pair<double, double>> points;
  try {
    points = read_points_csv(in);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  const ExponentFit fit = fit_exponent(points);
  with_output(a.out, out, [&](std::ostream& os) {
    if (a.out.format == "json") {
      os << to_json(fit).dump(2) << '\n';
      return;
    }
    os << std::fixed << std::setprecision(3) << "delta = " << fit.delta << '\n'
       << std::setprecision(6) << "constant = " << fit.constant << '\n'
       << "residual = " << fit.residual << '\n'
       << "samples = " << fit.sample_count << '\n';
  });
}

struct VerifyArgs {
  OutputOptions out{"json", ""};
  std::string input;
  long witnesses = 0;
};

void cmd_verify(const VerifyArgs& a, std::ostream& out) {
  auto in = open_input(a.input);
  std::vector<DecayRecord> records;
  try {
    records = read_decay_csv(in);
  } catch (const FormatError& e) {
    throw UsageError(e.what());
  }
  if (records.empty()) throw UsageError("no records in " + a.input);
  if (a.witnesses < 0) throw UsageError("--witnesses must be >= 0");
  std::vector<UnbalancedSplit> pts;
  if (a.witnesses > 0) pts = unbalanced_series(static_cast<unsigned>(a.witnesses));
  const BoundsReport rep = verify_bounds(records, pts);
  with_output(a.out, out, [&](std::ostream& os) {
    if (a.out.format == "json") {
      os << to_json(rep, records).dump(2) << '\n';
      return;
    }
    os << std::setprecision(6) << "all positive: " << (rep.all_positive ? "yes" : "no") << '\n'
       << "K_emp = " << rep.k_emp << " at (" << records[rep.k_emp_index].n1 << ", "
       << records[rep.k_emp_index].n2 << ")\n";
    if (rep.c_emp) {
      os << "C_emp = " << *rep.c_emp << " at (" << records[rep.c_emp_index].n1 << ", 1)\n";
    }
    for (const auto& w : rep.witnesses) {
      os << "witness n=" << w.n << " size1*size2*|det| = " << w.scaled << " exponent = " << w.exponent
         << '\n';
    }
  });
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  std::uint64_t seed = 1;
  int trials = 1000;
};

}  // namespace

CheckSummary run_property_checks(std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-1'000'000, 1'000'000);
  auto elem = [&] { return RingElem(coord(rng), coord(rng), coord(rng), coord(rng)); };

  CheckSummary s;
  s.trials = trials;
  auto report = [&](const std::string& name, int failed) {
    s.failures += failed;
    s.lines.push_back(name + ": " + (failed == 0 ? "pass" : std::to_string(failed) + " failures"));
  };

  int ring = 0, galois = 0, norm = 0, order = 0;
  const GaloisMap maps[] = {GaloisMap::rho, GaloisMap::sigma, GaloisMap::mu};
  for (int t = 0; t < trials; ++t) {
    const RingElem x = elem(), y = elem(), z = elem();
    if (!((x * y) * z == x * (y * z) && x * y == y * x && x * (y + z) == x * y + x * z &&
          (x + y) + z == x + (y + z))) {
      ++ring;
    }
    for (GaloisMap g : maps) {
      if (!(apply_galois(g, x * y) == apply_galois(g, x) * apply_galois(g, y) &&
            apply_galois(g, x + y) == apply_galois(g, x) + apply_galois(g, y))) {
        ++galois;
      }
    }
    if (!(abs_squared(x * y) == abs_squared(x) * abs_squared(y))) ++norm;
    const QuadInt u = abs_squared(x) - abs_squared(y);
    const double uf = u.to_double();
    const int exact = sign(u);
    if (std::abs(uf) > 1e-9 * (1.0 + std::abs(abs_squared(x).to_double())) &&
        exact != (uf > 0 ? 1 : -1)) {
      ++order;
    }
  }
  report("ring laws", ring);
  report("galois homomorphism", galois);
  report("norm multiplicativity", norm);
  report("exact vs float ordering", order);
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact decay-function experiments for a two-user lattice code", "decaylab"};
  app.require_subcommand(1);

  DecayArgs decay_args;
  auto* decay_cmd = app.add_subcommand("decay", "Minimum |det|^2 over constellation pairs");
  add_output_options(decay_cmd, decay_args.out);
  decay_cmd->add_option("--n1", decay_args.n1, "User 1 coordinate range N1");
  decay_cmd->add_option("--n2", decay_args.n2, "User 2 coordinate range N2");
  decay_cmd->add_option("--series", decay_args.series, "Series mode")
      ->check(CLI::IsMember({"equal", "fixed_second"}));
  decay_cmd->add_option("--nmax", decay_args.nmax, "Largest N of a series");
  decay_cmd->add_option("--workers", decay_args.workers, "Worker threads");
  decay_cmd->add_option("--budget", decay_args.budget, "Reduced pair budget")
      ->check(CLI::PositiveNumber);
  decay_cmd->add_flag("--force", decay_args.force, "Ignore the pair budget");
  decay_cmd->add_option("--gamma", decay_args.gamma, "Twist for user 2, e.g. i or 1");
  decay_cmd->add_option("--shuffle-seed", decay_args.shuffle_seed, "Shuffle traversal order");

  SequenceArgs seq_args;
  auto* seq_cmd = app.add_subcommand("sequence", "Small-determinant sequence and table rows");
  add_output_options(seq_cmd, seq_args.out);
  seq_cmd->add_flag("--table1", seq_args.table1, "Balanced splits for n = 5..25");
  seq_cmd->add_option("--factor", seq_args.factor, "Verify z_{5n} = z_n m_j(n) m_{j+2}(n)");
  seq_cmd->add_option("--corollary", seq_args.corollary, "Unbalanced witness pairs n = 1..K");

  auto* bounds_cmd = app.add_subcommand("bounds", "Approximation, fitting and DMT checks");
  bounds_cmd->require_subcommand(1);

  LiouvilleArgs liou_args;
  auto* liou_cmd = bounds_cmd->add_subcommand("liouville", "Convergents of tau");
  liou_cmd->add_option("--max-k", liou_args.max_k, "Largest denominator");
  liou_cmd->add_option("--format", liou_args.out.format)->check(CLI::IsMember({"text", "json"}));
  liou_cmd->add_option("--out", liou_args.out.path);

  DmtArgs dmt_args;
  auto* dmt_cmd = bounds_cmd->add_subcommand("dmt", "MAC-DMT optimality condition");
  dmt_cmd->add_option("--r", dmt_args.r, "Per-user multiplexing gain, e.g. 1/5");
  dmt_cmd->add_option("--delta", dmt_args.delta, "Empirical delta instead of 2r");
  dmt_cmd->add_flag("--threshold", dmt_args.threshold, "Solve for the largest optimal r");
  dmt_cmd->add_option("--format", dmt_args.out.format)->check(CLI::IsMember({"text", "json"}));
  dmt_cmd->add_option("--out", dmt_args.out.path);

  FitArgs fit_args;
  auto* fit_cmd = bounds_cmd->add_subcommand("fit", "Fit D ~ C N^-delta");
  fit_cmd->add_option("--input", fit_args.input, "CSV with n,d columns or decay records")->required();
  fit_cmd->add_option("--format", fit_args.out.format)->check(CLI::IsMember({"text", "json"}));
  fit_cmd->add_option("--out", fit_args.out.path);

  VerifyArgs verify_args;
  auto* verify_cmd = bounds_cmd->add_subcommand("verify", "Empirical bound constants from records");
  verify_cmd->add_option("--input", verify_args.input, "Decay-record CSV")->required();
  verify_cmd->add_option("--witnesses", verify_args.witnesses, "Include sequence witnesses 1..K");
  verify_cmd->add_option("--format", verify_args.out.format)->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--out", verify_args.out.path);

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Randomized exact-arithmetic property checks");
  check_cmd->add_option("--seed", check_args.seed, "Random seed");
  check_cmd->add_option("--trials", check_args.trials, "Trials per property")->check(CLI::PositiveNumber);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "decaylab: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (decay_cmd->parsed()) {
      cmd_decay(decay_args, out);
    } else if (seq_cmd->parsed()) {
      cmd_sequence(seq_args, out);
    } else if (liou_cmd->parsed()) {
      cmd_liouville(liou_args, out);
    } else if (dmt_cmd->parsed()) {
      cmd_dmt(dmt_args, out);
    } else if (fit_cmd->parsed()) {
      cmd_fit(fit_args, out);
    } else if (verify_cmd->parsed()) {
      cmd_verify(verify_args, out);
    } else if (check_cmd->parsed()) {
      const CheckSummary s = run_property_checks(check_args.seed, check_args.trials);
      for (const auto& line : s.lines) out << line << '\n';
      return s.failures == 0 ? kExitOk : kExitFailure;
    }
  } catch (const BudgetExceeded& e) {
    err << "decaylab: " << e.what() << " (raise --budget or pass --force)\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    err << "decaylab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "decaylab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "decaylab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "decaylab: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace decaylab::cli
