// Command-line front end: pmf, rate, sample, profile, verify.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "ginoe/acceptance.hpp"
#include "ginoe/asymptotics.hpp"
#include "ginoe/errors.hpp"
#include "ginoe/exact.hpp"
#include "ginoe/io.hpp"
#include "ginoe/kernel.hpp"
#include "ginoe/precision.hpp"
#include "ginoe/profile.hpp"
#include "ginoe/sampler.hpp"

namespace {

using namespace ginoe;

constexpr int kExitOk = 0;
constexpr int kExitAcceptance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

constexpr const char* kPrecisionEnv = "GINOE_PRECISION_BITS";

struct Options {
  std::optional<double> tau, alpha;
  std::optional<int> n, dim;
  std::string n_list;
  std::string precision;  // "auto" or a tier
  std::string out = "-";
  std::string format = "csv";
  std::string grid;
  std::string window;
  std::string dump_matrix;
  long trials = 100000;
  std::uint64_t seed = 1;
  int workers = 0;
  bool binomial = false;
  bool quick = false;
  std::string criterion;
};

int parse_precision(const std::string& s, const char* source) {
  if (s.empty() || s == "auto") return kAutoPrecision;
  int bits = 0;
  std::istringstream is(s);
  if (!(is >> bits) || !is.eof())
    throw UsageError(std::string(source) + ": precision must be 'auto' or one of " + supported_precision_list());
  validate_precision_bits(bits);
  return bits;
}

// Flag beats environment beats the built-in schedule.
int requested_precision(const Options& o) {
  if (!o.precision.empty()) return parse_precision(o.precision, "--precision-bits");
  if (const char* env = std::getenv(kPrecisionEnv)) return parse_precision(env, kPrecisionEnv);
  return kAutoPrecision;
}

Regime regime_of(const Options& o) {
  if (o.tau.has_value() == o.alpha.has_value()) throw UsageError("exactly one of --tau or --alpha is required");
  return o.tau ? Regime::strong(*o.tau) : Regime::weak(*o.alpha);
}

// Kernel side from --n or --dim.
int kernel_side(const Options& o) {
  if (o.n && o.dim) throw UsageError("--n and --dim cannot be combined");
  if (o.n) {
    if (*o.n < 1) throw UsageError("--n must be >= 1");
    return *o.n;
  }
  if (o.dim) {
    if (*o.dim < 2 || *o.dim % 2) throw UsageError("--dim must be even and >= 2, got " + std::to_string(*o.dim));
    return *o.dim / 2;
  }
  throw UsageError("one of --n or --dim is required");
}

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("--n: expected a comma-separated list of integers, got '" + s + "'");
    }
    if (pos != item.size() || v < 1) throw UsageError("--n: entries must be positive integers");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--n: empty list");
  return out;
}

std::vector<double> split_numbers(const std::string& s, char sep, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": cannot parse '" + s + "'");
    }
    if (pos != item.size() || !std::isfinite(v)) throw UsageError(std::string(flag) + ": cannot parse '" + s + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_grid(const std::string& s) {
  const auto v = split_numbers(s, ':', "--grid");
  if (v.size() != 3) throw UsageError("--grid: expected a:b:h");
  const double a = v[0], b = v[1], h = v[2];
  if (!(h > 0) || !(a <= b)) throw UsageError("--grid: need a <= b and h > 0");
  const long count = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
  if (count > 1000000) throw UsageError("--grid: more than 10^6 points");
  std::vector<double> xs;
  // Snap to 15 significant digits so 0.1 + 1*0.05 prints as 0.15.
  char buf[32];
  for (long i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof buf, "%.15g", a + i * h);
    xs.push_back(std::strtod(buf, nullptr));
  }
  return xs;
}

// Opens the destination before any computation so an unwritable path fails fast.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool is_file() const { return static_cast<bool>(file_); }
  const std::string& path() const { return path_; }
  void finish() {
    stream().flush();
    if (!stream()) throw UsageError("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

OutputHeader make_header(const CLI::App& sub, int precision_bits) {
  OutputHeader h;
  h.command = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_name();
    while (!name.empty() && name.front() == '-') name.erase(name.begin());
    std::string value;
    for (const std::string& r : opt->results()) value += (value.empty() ? "" : ",") + r;
    h.flags.emplace_back(name, value.empty() ? "true" : value);
  }
  if (const char* env = std::getenv(kPrecisionEnv)) h.flags.emplace_back(kPrecisionEnv, env);
  h.precision_bits = precision_bits;
  return h;
}

void apply_workers(int workers) {
  if (workers < 0) throw UsageError("--workers must be >= 0");
  if (workers > 0) omp_set_num_threads(workers);
}

void check_format(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
}

int cmd_pmf(const CLI::App& sub, const Options& o) {
  const Regime regime = regime_of(o);
  const int n = kernel_side(o);
  regime.check_at(n);
  check_format(o);
  apply_workers(o.workers);
  const int bits = resolve_precision_bits(requested_precision(o), n);
  Output out(o.out);
  std::unique_ptr<Output> matrix_out;
  if (!o.dump_matrix.empty()) matrix_out = std::make_unique<Output>(o.dump_matrix);
  const OutputHeader header = make_header(sub, bits);

  const KernelMatrix m = build(n, regime, bits);
  if (matrix_out) {
    write_matrix_csv(matrix_out->stream(), m, header);
    matrix_out->finish();
  }
  const RealEigPmf d = pmf_from_kernel(m, regime);
  if (o.format == "csv") write_pmf_csv(out.stream(), d, header);
  else write_pmf_json(out.stream(), d, header);
  out.finish();
  return kExitOk;
}

int cmd_rate(const CLI::App& sub, const Options& o) {
  const Regime regime = regime_of(o);
  check_format(o);
  apply_workers(o.workers);
  if (o.grid.empty()) throw UsageError("--grid a:b:h is required");
  const std::vector<double> xs = parse_grid(o.grid);
  const Interval dom = rate_domain(regime);
  for (double x : xs)
    if (!(x > dom.lo && x < dom.hi))
      throw RangeError("--grid: x = " + format_double(x) + " lies outside the admissible interval", dom.lo, dom.hi);
  Output out(o.out);
  std::unique_ptr<Output> summary;
  if (out.is_file() && o.format == "csv") summary = std::make_unique<Output>(o.out + ".summary.json");
  const OutputHeader header = make_header(sub, 0);

  const std::vector<RateEval> curve = rate_curve(xs, regime);
  if (o.format == "csv") {
    const Minimiser mm = minimiser(regime);
    const TailConstants t = tail_constants(regime);
    write_csv_header(out.stream(), header);
    out.stream() << "# regime: " << regime.describe() << '\n'
                 << "# x_min: " << format_double(mm.x_min) << '\n'
                 << "# curvature: " << format_double(mm.curvature) << '\n'
                 << "# tail_left: " << format_double(t.left) << '\n'
                 << "# tail_right: " << format_double(t.right)
                 << (t.right_kind == RightTail::CubicCoefficient ? " (cubic coefficient)" : " (limit at x=1)") << '\n';
    write_csv_row(out.stream(), {"x", "u_star", "phi"});
    for (const RateEval& r : curve)
      write_csv_row(out.stream(), {format_double(r.x), format_double(r.u_star), format_double(r.phi)});
    if (summary) {
      write_rate_json(summary->stream(), {}, regime, header);
      summary->finish();
    }
  } else {
    write_rate_json(out.stream(), curve, regime, header);
  }
  out.finish();
  return kExitOk;
}

int cmd_sample(const CLI::App& sub, const Options& o) {
  SampleConfig c;
  c.regime = regime_of(o);
  c.dim = 2 * kernel_side(o);
  c.trials = o.trials;
  c.seed = o.seed;
  c.workers = o.workers;
  c.validate();
  check_format(o);
  apply_workers(o.workers);
  Output out(o.out);
  const OutputHeader header = make_header(sub, 0);
  const EmpiricalPmf e = empirical_pmf(c);
  if (o.format == "csv") write_sample_csv(out.stream(), e, header);
  else write_sample_json(out.stream(), e, header);
  out.finish();
  if (e.exclusions > 0) std::cerr << "ginoe: " << e.exclusions << " samples excluded (Schur iteration failed)\n";
  return kExitOk;
}

int cmd_profile(const CLI::App& sub, const Options& o) {
  check_format(o);
  apply_workers(o.workers);
  const std::vector<int> ns = parse_n_list(o.n_list);
  std::optional<Window> window;
  if (!o.window.empty()) {
    const auto v = split_numbers(o.window, ':', "--window");
    if (v.size() != 2 || !(v[0] < v[1])) throw UsageError("--window: expected a:b with a < b");
    window = Window{v[0], v[1]};
  }
  std::vector<ProfileReport> reports;
  int bits = 0;
  if (o.binomial) {
    if (o.tau || o.alpha) throw UsageError("--binomial takes no --tau/--alpha");
    Output out(o.out);
    for (int n : ns)
      reports.push_back(profile_report(CoeffPoly::binomial(n), entropy_profile, window.value_or(Window{0.2, 0.8})));
    const OutputHeader header = make_header(sub, 0);
    if (o.format == "csv") write_profile_csv(out.stream(), reports, header);
    else write_profile_json(out.stream(), reports, header);
    out.finish();
  } else {
    const Regime regime = regime_of(o);
    const int requested = requested_precision(o);
    int max_n = 0;
    for (int n : ns) {
      regime.check_at(n);
      max_n = std::max(max_n, n);
    }
    bits = resolve_precision_bits(requested, max_n);
    Output out(o.out);
    for (int n : ns) {
      const RealEigPmf d = pmf(n, regime, resolve_precision_bits(requested, n));
      reports.push_back(regime_profile(d, window.value_or(default_window(regime, n))));
    }
    const OutputHeader header = make_header(sub, bits);
    if (o.format == "csv") write_profile_csv(out.stream(), reports, header);
    else write_profile_json(out.stream(), reports, header);
    out.finish();
  }
  if (o.out != "-") {
    std::cout << "n,sup_error\n";
    for (const ProfileReport& r : reports) std::cout << r.degree << ',' << format_double(r.sup_error) << '\n';
  }
  return kExitOk;
}

int cmd_verify(const CLI::App& sub, const Options& o) {
  check_format(o);
  apply_workers(o.workers);
  std::unique_ptr<Output> out;
  if (o.out != "-") out = std::make_unique<Output>(o.out);
  AcceptanceOptions opt;
  opt.quick = o.quick;
  opt.only = o.criterion;
  if (sub.count("--seed")) opt.seed = o.seed;
  opt.on_result = [](const CriterionResult& r) { std::cout << format_result_line(r) << std::endl; };
  const auto results = run_acceptance(opt);
  const int passed = static_cast<int>(std::count_if(results.begin(), results.end(), [](auto& r) { return r.passed; }));
  std::cout << passed << '/' << results.size() << " criteria passed\n";
  if (out) {
    const OutputHeader header = make_header(sub, kAutoPrecision);
    if (o.format == "csv") {
      write_csv_header(out->stream(), header);
      write_csv_row(out->stream(), {"number", "id", "passed", "measured", "expected", "seconds"});
      for (const auto& r : results)
        write_csv_row(out->stream(), {std::to_string(r.number), r.id, r.passed ? "1" : "0", r.measured, r.expected,
                                      format_double(r.seconds)});
    } else {
      nlohmann::json j;
      j["header"] = header_json(header);
      for (const auto& r : results)
        j["criteria"].push_back({{"number", r.number},
                                 {"id", r.id},
                                 {"passed", r.passed},
                                 {"measured", r.measured},
                                 {"expected", r.expected},
                                 {"seconds", r.seconds}});
      out->stream() << j.dump(2) << '\n';
    }
    out->finish();
  }
  return all_passed(results) ? kExitOk : kExitAcceptance;
}

void add_regime(CLI::App* sub, Options& o) {
  auto* tau = sub->add_option("--tau", o.tau, "strong asymmetry, tau in [0,1)");
  auto* alpha = sub->add_option("--alpha", o.alpha, "weak asymmetry, tau = 1 - alpha^2/(2n)");
  tau->excludes(alpha);
}

void add_output(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "output file ('-' for stdout)");
  sub->add_option("--format", o.format, "csv or json");
  sub->add_option("--workers", o.workers, "OpenMP threads (0: runtime default)");
}

void add_size(CLI::App* sub, Options& o) {
  auto* n = sub->add_option("--n", o.n, "kernel side n (matrix dimension 2n)");
  auto* dim = sub->add_option("--dim", o.dim, "matrix dimension 2n");
  n->excludes(dim);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Real-eigenvalue statistics of the elliptic real Ginibre ensemble", "ginoe"};
  app.set_version_flag("--version", ginoe::version_string());
  app.require_subcommand(1);
  Options o;
  const std::string precision_help =
      "working precision in bits: auto or one of " + ginoe::supported_precision_list() + " (default from " +
      kPrecisionEnv + ", else auto)";

  auto* pmf = app.add_subcommand("pmf", "exact law of the number of real eigenvalues");
  add_regime(pmf, o);
  add_size(pmf, o);
  pmf->add_option("--precision-bits", o.precision, precision_help);
  pmf->add_option("--dump-matrix", o.dump_matrix, "also write the kernel matrix to this file");
  add_output(pmf, o);

  auto* rate = app.add_subcommand("rate", "large-deviation rate function on an x-grid");
  add_regime(rate, o);
  rate->add_option("--grid", o.grid, "a:b:h");
  add_output(rate, o);

  auto* sample = app.add_subcommand("sample", "Monte Carlo histogram of the real-eigenvalue count");
  add_regime(sample, o);
  add_size(sample, o);
  sample->add_option("--trials", o.trials, "number of matrices");
  sample->add_option("--seed", o.seed, "64-bit seed");
  add_output(sample, o);

  auto* profile = app.add_subcommand("profile", "exponential profile of log p against the rate function");
  add_regime(profile, o);
  profile->add_option("--n", o.n_list, "comma-separated kernel sides")->required();
  profile->add_option("--window", o.window, "a:b in the rescaled variable");
  profile->add_flag("--binomial", o.binomial, "profile ((1+z)/2)^n against the entropy instead");
  profile->add_option("--precision-bits", o.precision, precision_help);
  add_output(profile, o);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", o.quick, "cap n at 64");
  verify->add_option("--criterion", o.criterion, "run a single criterion by id");
  verify->add_option("--seed", o.seed, "Monte Carlo seed");
  add_output(verify, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*pmf) return cmd_pmf(*pmf, o);
    if (*rate) return cmd_rate(*rate, o);
    if (*sample) return cmd_sample(*sample, o);
    if (*profile) return cmd_profile(*profile, o);
    return cmd_verify(*verify, o);
  } catch (const ginoe::UsageError& e) {
    std::cerr << "ginoe: error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ginoe::NumericalError& e) {
    std::cerr << "ginoe: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "ginoe: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
