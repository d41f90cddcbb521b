#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>

#include "df/approximants.hpp"
#include "df/digit_engine.hpp"
#include "df/oracle.hpp"
#include "df/selftest.hpp"
#include "df/special_numbers.hpp"

#ifdef DF_HAVE_OPENMP
#include <omp.h>
#endif

namespace df::cli {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kLog10Pi = 0.49714987269413385435;

// Thrown for bad flag combinations found after parsing.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
void put(ojson& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get(const nlohmann::json& j, const char* key, std::optional<T>& v) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) v = it->get<T>();
}

ojson record_json(const Record& r) {
  ojson j;
  j["kind"] = r.kind;
  put(j, "target", r.target);
  put(j, "method", r.method);
  put(j, "variant", r.variant);
  put(j, "index", r.index);
  put(j, "terms", r.terms);
  put(j, "apriori_exponent", r.apriori_exponent);
  put(j, "measured_exponent", r.measured_exponent);
  put(j, "below_certification_floor", r.below_certification_floor);
  put(j, "position", r.position);
  put(j, "base", r.base);
  put(j, "digit", r.digit);
  put(j, "stable", r.stable);
  put(j, "value", r.value);
  put(j, "precision_bits", r.precision_bits);
  put(j, "name", r.name);
  put(j, "passed", r.passed);
  put(j, "detail", r.detail);
  return j;
}

Record record_from(const nlohmann::json& j) {
  Record r;
  r.kind = j.at("kind").get<std::string>();
  get(j, "target", r.target);
  get(j, "method", r.method);
  get(j, "variant", r.variant);
  get(j, "index", r.index);
  get(j, "terms", r.terms);
  get(j, "apriori_exponent", r.apriori_exponent);
  get(j, "measured_exponent", r.measured_exponent);
  get(j, "below_certification_floor", r.below_certification_floor);
  get(j, "position", r.position);
  get(j, "base", r.base);
  get(j, "digit", r.digit);
  get(j, "stable", r.stable);
  get(j, "value", r.value);
  get(j, "precision_bits", r.precision_bits);
  get(j, "name", r.name);
  get(j, "passed", r.passed);
  get(j, "detail", r.detail);
  return r;
}

std::string target_name(TargetKind k, std::uint64_t power) {
  switch (k) {
    case TargetKind::pi:
      return "pi";
    case TargetKind::pi_power:
      return "pi-power " + std::to_string(power);
    case TargetKind::inv_pi:
      return "inv-pi";
    case TargetKind::pi_squared:
      return "pi-squared";
    case TargetKind::factorial:
      return "factorial";
  }
  return "?";
}

DigitTarget parse_target(const std::vector<std::string>& t) {
  if (t.empty()) return DigitTarget::pi();
  const std::string& name = t[0];
  if (name == "pi-power" || name == "pi_power") {
    if (t.size() != 2) throw ValidationError("--target pi-power needs an exponent, e.g. --target pi-power 1000");
    std::uint64_t k = 0;
    try {
      k = std::stoull(t[1]);
    } catch (const std::exception&) {
      throw ValidationError("pi-power exponent must be a positive integer");
    }
    return DigitTarget::pi_power(k);
  }
  if (t.size() != 1) throw ValidationError("only pi-power takes an exponent");
  if (name == "pi") return DigitTarget::pi();
  if (name == "inv-pi" || name == "inv_pi") return DigitTarget::inv_pi();
  if (name == "pi-squared" || name == "pi_squared") return DigitTarget::pi_squared();
  throw ValidationError("unknown target '" + name + "' (pi, pi-power K, inv-pi, pi-squared)");
}

struct Range {
  std::uint64_t start = 0, end = 0, step = 1;
  std::vector<std::uint64_t> values() const {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n = start; n <= end; n += step) v.push_back(n);
    return v;
  }
};

Range parse_range(const std::string& s) {
  Range r;
  std::vector<std::uint64_t> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw ValidationError("range '" + s + "' must be N or START:END[:STEP] with non-negative integers");
    }
    parts.push_back(std::stoull(item));
  }
  if (parts.empty() || parts.size() > 3) throw ValidationError("range '" + s + "' must be N or START:END[:STEP]");
  r.start = parts[0];
  r.end = parts.size() >= 2 ? parts[1] : parts[0];
  r.step = parts.size() == 3 ? parts[2] : 1;
  if (r.step == 0) throw ValidationError("range step must be positive");
  if (r.end < r.start) throw ValidationError("range end is below its start");
  return r;
}

struct Globals {
  std::string format = "table";
  std::string cache_dir;
  std::uint64_t max_index = 20000;
  std::uint64_t max_digits = 20000;
  bool no_timing = false;
};

void check_index_cap(std::uint64_t n, const Globals& g) {
  if (n > g.max_index) {
    throw ResourceCapExceeded("index " + std::to_string(n) + " exceeds --max-index " +
                              std::to_string(g.max_index));
  }
}

// --- digit -----------------------------------------------------------------

struct DigitArgs {
  std::vector<std::string> target;
  std::uint64_t n = 0;
  int base = 10;
  std::string method;
};

void run_digit(const DigitArgs& a, const Globals& g, Report& rep) {
  const DigitTarget t = parse_target(a.target);
  if (a.base < 2 || a.base > 36) throw ValidationError("--base must be in [2, 36]");
  if (a.n > g.max_digits) {
    throw ResourceCapExceeded("position " + std::to_string(a.n) + " exceeds --max-digits " +
                              std::to_string(g.max_digits));
  }
  std::optional<MethodId> m;
  if (!a.method.empty() && a.method != "auto") m = method_from_name(a.method);
  if (t.kind == TargetKind::pi_power) check_index_cap(t.power, g);
  DigitOptions opt;
  opt.max_index = g.max_index;
  const DigitResult d = digit_of(t, a.n, a.base, m, opt);
  Record r;
  r.kind = "digit";
  r.target = target_name(t.kind, t.power);
  r.method = std::string(method_info(d.method).name);
  r.index = d.index_n;
  r.position = static_cast<std::int64_t>(d.position);
  r.base = d.base;
  r.digit = std::string(1, digit_char(d.digit));
  r.stable = d.stable;
  r.precision_bits = static_cast<std::int64_t>(d.precision_used);
  rep.records.push_back(std::move(r));
}

// --- approx / sweep ----------------------------------------------------------

struct ApproxArgs {
  std::string method;
  std::string n;
  int terms = -1;
  std::string variant;
  bool report_error = false;
  std::uint64_t digits = 0;
  bool fit_slope = false;
  bool serial = false;
};

struct Point {
  Record record;
  std::optional<double> log10_error;  // unrounded, for slope fitting
};

Point approx_point(MethodId m, std::uint64_t n, unsigned terms, Variant variant, bool measure,
                   std::uint64_t digits) {
  ApproxResult a = evaluate(m, n, terms, variant);
  Point p;
  Record& r = p.record;
  const MethodInfo& info = method_info(m);
  r.kind = "approx";
  r.target = target_name(info.target, oracle::constant_for(a).k);
  r.method = std::string(info.name);
  r.index = a.index_n;
  r.terms = a.correction_terms;
  if (a.variant != Variant::none) r.variant = std::string(to_string(a.variant));
  r.apriori_exponent = a.apriori_error_log10;
  r.precision_bits = static_cast<std::int64_t>(a.value.precision());
  if (measure) {
    const oracle::Reference ref = oracle::reference_for(a);
    oracle::measured_error_log10(a, ref);
    const oracle::ErrorMeasure em = oracle::measure_error(a, ref);
    if (em.below_floor()) {
      r.below_certification_floor = true;
    } else {
      r.measured_exponent = em.log10;
      p.log10_error = em.error.log10_abs();
    }
  }
  if (digits > 0) {
    // The formula error is below 10^(apriori+1); one more order covers rounding.
    const std::int64_t cert = a.apriori_error_log10 + 2;
    RenderedDigits rd;
    if (info.error_kind == ErrorKind::relative) {
      rd = render_significant(a.value, 10, digits, cert);
    } else if (info.target == TargetKind::pi_power) {
      const auto k = static_cast<double>(oracle::constant_for(a).k);
      const auto mag = static_cast<std::int64_t>(std::floor(k * kLog10Pi));
      rd = render_significant(a.value, 10, digits, cert - mag);
    } else {
      rd = render(a.value, 10, digits, cert);
    }
    r.value = rd.to_string();
  }
  return p;
}

unsigned resolve_terms(MethodId m, int terms) {
  return terms < 0 ? default_terms(m) : static_cast<unsigned>(terms);
}

Variant resolve_variant(MethodId m, const std::string& v) {
  return v.empty() ? default_variant(m) : variant_from_name(v);
}

void run_approx(const ApproxArgs& a, const Globals& g, Report& rep) {
  const MethodId m = method_from_name(a.method);
  const Range range = parse_range(a.n);
  if (range.start != range.end) throw ValidationError("approx takes a single --n; use sweep for ranges");
  check_index_cap(range.start, g);
  validate_request(m, range.start, resolve_terms(m, a.terms), resolve_variant(m, a.variant));
  if (a.digits > g.max_digits) throw ResourceCapExceeded("--digits exceeds --max-digits");
  Point p = approx_point(m, range.start, resolve_terms(m, a.terms), resolve_variant(m, a.variant),
                         a.report_error, a.digits);
  rep.records.push_back(std::move(p.record));
}

std::string axis_for(MethodId m) {
  switch (m) {
    case MethodId::euler_basic:
    case MethodId::euler_corrected:
    case MethodId::euler_power_odd:
    case MethodId::euler_inverse:
      return "2n+1";
    case MethodId::factorial_stirling:
    case MethodId::pi_stirling:
    case MethodId::pi_partition:
    case MethodId::pi_binomial_basic:
    case MethodId::pi_binomial_series:
      return "log10(n)";
    default:
      return "index";
  }
}

double axis_value(const std::string& axis, std::uint64_t n) {
  if (axis == "2n+1") return 2.0 * static_cast<double>(n) + 1.0;
  if (axis == "log10(n)") return std::log10(static_cast<double>(n));
  return static_cast<double>(n);
}

void run_sweep(const ApproxArgs& a, const Globals& g, Report& rep) {
  const MethodId m = method_from_name(a.method);
  const Range range = parse_range(a.n);
  check_index_cap(range.end, g);
  const unsigned terms = resolve_terms(m, a.terms);
  const Variant variant = resolve_variant(m, a.variant);
  const std::vector<std::uint64_t> ns = range.values();
  // Reject bad indices before any heavy work.
  for (std::uint64_t n : ns) validate_request(m, n, terms, variant);
  prepare_tables(m, ns.back());

  std::vector<Point> points(ns.size());
  std::vector<std::string> failures(ns.size());
  auto one = [&](std::size_t i) {
    try {
      points[i] = approx_point(m, ns[i], terms, variant, true, 0);
    } catch (const std::exception& e) {
      failures[i] = "n=" + std::to_string(ns[i]) + ": " + e.what();
    }
  };
  const auto count = static_cast<std::int64_t>(ns.size());
  if (a.serial) {
    for (std::int64_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) one(static_cast<std::size_t>(i));
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw PrecisionError("sweep point failed, " + f);
  }

  for (const Point& p : points) rep.records.push_back(p.record);
  if (a.fit_slope) {
    const std::string axis = axis_for(m);
    std::vector<std::pair<double, double>> xy;
    for (std::size_t i = 0; i < ns.size(); ++i) {
      if (points[i].log10_error) xy.emplace_back(axis_value(axis, ns[i]), *points[i].log10_error);
    }
    if (xy.size() < 2) throw PrecisionError("slope fit needs two measured points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : xy) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const auto k = static_cast<double>(xy.size());
    Fit fit;
    fit.x_axis = axis;
    fit.points = static_cast<std::int64_t>(xy.size());
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / k;
    rep.fit = fit;
  }
}

// --- numbers -----------------------------------------------------------------

struct NumbersArgs {
  std::string kind = "bernoulli";
  std::string n;
};

void run_numbers(const NumbersArgs& a, const Globals& g, Report& rep) {
  const Range range = parse_range(a.n);
  check_index_cap(range.end, g);
  std::string kind = a.kind;
  std::replace(kind.begin(), kind.end(), '_', '-');
  if (kind != "bernoulli" && kind != "euler" && kind != "partition" && kind != "central-binomial") {
    throw ValidationError("--kind must be bernoulli, euler, partition or central-binomial");
  }
  for (std::uint64_t n : range.values()) {
    Record r;
    r.kind = "number";
    r.name = kind;
    r.index = static_cast<std::int64_t>(n);
    if (kind == "bernoulli") {
      r.value = bernoulli(n).get_str();
    } else if (kind == "euler") {
      r.value = euler(n).get_str();
    } else if (kind == "partition") {
      r.value = partition(n).get_str();
    } else {
      r.value = central_binomial(n).get_str();
    }
    rep.records.push_back(std::move(r));
  }
}

// --- cache -------------------------------------------------------------------

struct CacheArgs {
  std::string kind;
  std::uint64_t n = 2000;
};

fs::path require_cache_dir(const Globals& g) {
  if (g.cache_dir.empty()) throw ValidationError("no cache directory: pass --cache-dir or set DF_CACHE_DIR");
  return g.cache_dir;
}

std::vector<SequenceKind> kinds_for(const std::string& k) {
  if (k.empty() || k == "all") return {SequenceKind::bernoulli, SequenceKind::euler, SequenceKind::partition};
  try {
    return {sequence_kind_from_string(k)};
  } catch (const std::exception&) {
    throw ValidationError("--kind must be bernoulli, euler, partition or all");
  }
}

Record cache_record(const fs::path& path, const SequenceCache& c) {
  Record r;
  r.kind = "cache";
  r.name = path.filename().string();
  r.detail = std::string(to_string(c.kind));
  r.index = static_cast<std::int64_t>(c.max_index);
  r.passed = true;
  return r;
}

void run_cache_build(const CacheArgs& a, const Globals& g, Report& rep) {
  const fs::path dir = require_cache_dir(g);
  check_index_cap(a.n, g);
  const auto kinds = kinds_for(a.kind);
  fs::create_directories(dir);
  for (SequenceKind k : kinds) {
    const SequenceCache c = make_cache(k, a.n);
    const fs::path p = dir / cache_file_name(k);
    cache_store(c, p);
    rep.records.push_back(cache_record(p, c));
  }
}

void run_cache_verify(const CacheArgs& a, const Globals& g, Report& rep, bool info_only) {
  const fs::path dir = require_cache_dir(g);
  if (!fs::is_directory(dir)) throw ValidationError("cache directory " + dir.string() + " does not exist");
  std::vector<fs::path> files;
  for (SequenceKind k : kinds_for(a.kind)) {
    const fs::path p = dir / cache_file_name(k);
    if (fs::exists(p)) files.push_back(p);
  }
  bool bad = false;
  for (const fs::path& p : files) {
    try {
      rep.records.push_back(cache_record(p, cache_load(p)));
    } catch (const FormatError& e) {
      Record r;
      r.kind = "cache";
      r.name = p.filename().string();
      r.passed = false;
      r.detail = e.what();
      if (e.record_index()) r.index = *e.record_index();
      rep.records.push_back(std::move(r));
      bad = true;
    }
  }
  if (files.empty()) rep.warnings.push_back("no cache files in " + dir.string());
  if (bad && !info_only) throw FormatError("cache verification failed");
}

// --- selftest ----------------------------------------------------------------

void run_selftest_cmd(const Globals& g, Report& rep) {
  SelftestOptions opt;
  if (!g.cache_dir.empty()) opt.cache_dir = fs::path(g.cache_dir);
  const SelftestReport s = run_selftest(opt);
  for (const auto& c : s.checks) {
    Record r;
    r.kind = "check";
    r.name = c.name;
    r.passed = c.passed;
    if (!c.detail.empty()) r.detail = c.detail;
    rep.records.push_back(std::move(r));
  }
  rep.warnings.insert(rep.warnings.end(), s.warnings.begin(), s.warnings.end());
  if (!s.passed()) {
    std::string names;
    for (const auto& c : s.checks) {
      if (!c.passed) names += (names.empty() ? "" : ", ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    }
    throw InternalInconsistency("selftest failed: " + names);
  }
}

// --- output ------------------------------------------------------------------

std::string cell(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render_table(const Report& rep) {
  std::ostringstream os;
  std::vector<ojson> rows;
  for (const Record& r : rep.records) rows.push_back(record_json(r));
  if (rows.size() == 1) {
    std::size_t w = 0;
    for (const auto& [k, v] : rows[0].items()) w = std::max(w, k.size());
    for (const auto& [k, v] : rows[0].items()) {
      os << k << std::string(w - k.size() + 2, ' ') << cell(v) << "\n";
    }
  } else if (!rows.empty()) {
    std::vector<std::string> cols;
    for (const auto& row : rows) {
      for (const auto& [k, v] : row.items()) {
        if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
      }
    }
    std::vector<std::size_t> width;
    for (const auto& c : cols) {
      std::size_t w = c.size();
      for (const auto& row : rows) {
        if (row.contains(c)) w = std::max(w, cell(row[c]).size());
      }
      width.push_back(w);
    }
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << cols[i] << (i + 1 < cols.size() ? std::string(width[i] - cols[i].size() + 2, ' ') : "");
    }
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const std::string s = row.contains(cols[i]) ? cell(row[cols[i]]) : "-";
        os << s << (i + 1 < cols.size() ? std::string(width[i] - s.size() + 2, ' ') : "");
      }
      os << "\n";
    }
  }
  if (rep.fit) {
    os << "slope " << rep.fit->slope << " per " << rep.fit->x_axis << " (" << rep.fit->points
       << " points, intercept " << rep.fit->intercept << ")\n";
  }
  if (rep.elapsed_seconds) os << "elapsed " << *rep.elapsed_seconds << " s\n";
  return os.str();
}

}  // namespace

nlohmann::ordered_json to_json(const Report& rep) {
  ojson j;
  j["schema"] = rep.schema;
  j["command"] = rep.command;
  j["arguments"] = rep.arguments;
  ojson recs = ojson::array();
  for (const Record& r : rep.records) recs.push_back(record_json(r));
  j["records"] = std::move(recs);
  if (rep.fit) {
    j["fit"] = ojson{{"x_axis", rep.fit->x_axis},
                     {"slope", rep.fit->slope},
                     {"intercept", rep.fit->intercept},
                     {"points", rep.fit->points}};
  }
  j["warnings"] = rep.warnings;
  if (rep.error) {
    ojson e{{"kind", rep.error->kind}, {"message", rep.error->message}, {"exit_code", rep.error->exit_code}};
    put(e, "fractional_part", rep.error->fractional_part);
    j["error"] = std::move(e);
  }
  put(j, "elapsed_seconds", rep.elapsed_seconds);
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report rep;
  rep.schema = j.at("schema").get<std::string>();
  if (rep.schema != kSchema) throw std::runtime_error("unsupported report schema '" + rep.schema + "'");
  rep.command = j.at("command").get<std::string>();
  rep.arguments = j.at("arguments").get<std::vector<std::string>>();
  for (const auto& r : j.at("records")) rep.records.push_back(record_from(r));
  if (auto it = j.find("fit"); it != j.end()) {
    Fit f;
    f.x_axis = it->at("x_axis").get<std::string>();
    f.slope = it->at("slope").get<double>();
    f.intercept = it->at("intercept").get<double>();
    f.points = it->at("points").get<std::int64_t>();
    rep.fit = f;
  }
  rep.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (auto it = j.find("error"); it != j.end()) {
    ErrorInfo e;
    e.kind = it->at("kind").get<std::string>();
    e.message = it->at("message").get<std::string>();
    e.exit_code = it->at("exit_code").get<std::int64_t>();
    get(*it, "fractional_part", e.fractional_part);
    rep.error = e;
  }
  get(j, "elapsed_seconds", rep.elapsed_seconds);
  return rep;
}

Outcome run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Digits and approximations of pi from Bernoulli and Euler numbers", "dfpi"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  if (const char* env = std::getenv("DF_CACHE_DIR")) g.cache_dir = env;
  app.add_option("--format", g.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--cache-dir", g.cache_dir, "directory of verified special-number caches (or DF_CACHE_DIR)");
  app.add_option("--max-index", g.max_index, "largest formula index a request may use");
  app.add_option("--max-digits", g.max_digits, "largest digit position or digit count a request may use");
  app.add_flag("--no-timing", g.no_timing, "omit timing so output is byte-for-byte reproducible");

  DigitArgs da;
  auto* digit = app.add_subcommand("digit", "one certified digit of a constant");
  digit->add_option("--target", da.target, "pi, pi-power K, inv-pi or pi-squared")->expected(1, 2);
  digit->add_option("--n", da.n, "position; 0 is the first digit after the point (for pi-power K, the leading digit)")
      ->required();
  digit->add_option("--base", da.base, "output base, 2..36");
  digit->add_option("--method", da.method, "formula (default picks one per target)");

  ApproxArgs aa;
  auto* approx = app.add_subcommand("approx", "evaluate one formula");
  approx->add_option("--method", aa.method)->required();
  approx->add_option("--n", aa.n, "formula index")->required();
  approx->add_option("--terms", aa.terms, "correction primes or series terms");
  approx->add_option("--variant", aa.variant, "as-printed, beta-series or reciprocal-factor");
  approx->add_flag("--report-error", aa.report_error, "measure the error against the reference");
  approx->add_option("--digits", aa.digits, "print this many certified digits of the value");

  ApproxArgs sa;
  auto* sweep = app.add_subcommand("sweep", "measured errors over a range of indices");
  sweep->add_option("--method", sa.method)->required();
  sweep->add_option("--n", sa.n, "START:END:STEP")->required();
  sweep->add_option("--terms", sa.terms);
  sweep->add_option("--variant", sa.variant);
  sweep->add_flag("--fit-slope", sa.fit_slope, "least-squares slope of log10(error)");
  sweep->add_flag("--serial", sa.serial, "evaluate points one after another");

  NumbersArgs na;
  auto* numbers = app.add_subcommand("numbers", "exact Bernoulli, Euler, partition or central binomial values");
  numbers->add_option("--kind", na.kind, "bernoulli, euler, partition, central-binomial");
  numbers->add_option("--n", na.n, "index or START:END:STEP")->required();

  CacheArgs ca;
  auto* cache = app.add_subcommand("cache", "build or check special-number cache files");
  cache->require_subcommand(1);
  auto* cbuild = cache->add_subcommand("build", "write cache files");
  cbuild->add_option("--kind", ca.kind, "bernoulli, euler, partition or all");
  cbuild->add_option("--n", ca.n, "largest index to store");
  auto* cverify = cache->add_subcommand("verify", "check every cache file");
  cverify->add_option("--kind", ca.kind);
  auto* cinfo = cache->add_subcommand("info", "list cache files");
  cinfo->add_option("--kind", ca.kind);

  auto* selftest = app.add_subcommand("selftest", "fast built-in consistency checks");

  Outcome out;
  std::ostringstream os, es;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    out.exit_code = app.exit(e, os, es);
    if (out.exit_code != 0) out.exit_code = 2;
    out.out = os.str();
    out.err = es.str();
    return out;
  }

  Report rep;
  rep.arguments = args;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (digit->parsed()) {
      rep.command = "digit";
      run_digit(da, g, rep);
    } else if (approx->parsed()) {
      rep.command = "approx";
      run_approx(aa, g, rep);
    } else if (sweep->parsed()) {
      rep.command = "sweep";
      run_sweep(sa, g, rep);
    } else if (numbers->parsed()) {
      rep.command = "numbers";
      run_numbers(na, g, rep);
    } else if (cache->parsed()) {
      rep.command = cbuild->parsed() ? "cache build" : cverify->parsed() ? "cache verify" : "cache info";
      if (!g.cache_dir.empty() && !cbuild->parsed() && !fs::exists(g.cache_dir)) {
        throw ValidationError("cache directory " + g.cache_dir + " does not exist");
      }
      if (cbuild->parsed()) {
        run_cache_build(ca, g, rep);
      } else {
        run_cache_verify(ca, g, rep, cinfo->parsed());
      }
    } else if (selftest->parsed()) {
      rep.command = "selftest";
      run_selftest_cmd(g, rep);
    }
  } catch (const ValidationError& e) {
    rep.error = ErrorInfo{"validation", e.what(), 2, std::nullopt};
  } catch (const DomainError& e) {
    rep.error = ErrorInfo{"validation", e.what(), 2, std::nullopt};
  } catch (const FormatError& e) {
    rep.error = ErrorInfo{"format", e.what(), 2, std::nullopt};
  } catch (const BoundaryHazard& e) {
    rep.error = ErrorInfo{"boundary_hazard", e.what(), 3, e.fractional_part()};
  } catch (const PrecisionError& e) {
    rep.error = ErrorInfo{"precision", e.what(), 3, std::nullopt};
  } catch (const RangeError& e) {
    rep.error = ErrorInfo{"precision", e.what(), 3, std::nullopt};
  } catch (const ResourceCapExceeded& e) {
    rep.error = ErrorInfo{"resource_cap", e.what(), 4, std::nullopt};
  } catch (const std::exception& e) {
    rep.error = ErrorInfo{"internal", e.what(), 5, std::nullopt};
  }
  if (!g.no_timing) {
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  for (const auto& w : rep.warnings) es << "dfpi: warning: " << w << "\n";
  if (rep.error) {
    es << "dfpi: " << rep.error->kind << " error: " << rep.error->message << "\n";
    if (rep.error->fractional_part) es << "  fractional part near " << *rep.error->fractional_part << "\n";
    out.exit_code = static_cast<int>(rep.error->exit_code);
  }
  if (g.format == "json") {
    os << to_json(rep).dump(2) << "\n";
  } else {
    os << render_table(rep);
  }
  out.out = os.str();
  out.err = es.str();
  return out;
}

}  // namespace df::cli
