#include "expcensus/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "expcensus/characteristic.hpp"
#include "expcensus/census.hpp"
#include "expcensus/counting.hpp"
#include "expcensus/errors.hpp"
#include "expcensus/iterates.hpp"
#include "expcensus/parallel.hpp"
#include "expcensus/verify.hpp"

namespace expcensus {
namespace {

using json = nlohmann::ordered_json;

enum class Format { Csv, Jsonl };

double parse_number(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw Error(ErrorKind::Parse, "not a number: '" + text + "'");
  }
  return value;
}

std::string provenance(int argc, const char* const* argv) {
  std::string line = std::string("# expcensus ") + EXPCENSUS_VERSION;
  for (int n = 1; n < argc; ++n) line += std::string(" ") + argv[n];
  return line;
}

// Writes to `path`, or to `fallback` when no path was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw Error(ErrorKind::Domain, "cannot open " + path + " for writing");
    stream_ = &file_;
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string value_text(const std::variant<LevelIndex, ComplexIterateValue>& v) {
  if (const auto* li = std::get_if<LevelIndex>(&v)) return li->str();
  const auto& c = std::get<ComplexIterateValue>(v);
  if (c.is_exact()) {
    const auto z = c.value();
    return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
  }
  return "exp(" + format_double(c.log_modulus()) + ")*e^(i*" + format_double(c.argument()) + ")";
}

json count_json(const CountReport& c) {
  json j;
  j["r"] = c.r;
  j["k"] = c.k;
  j["l"] = c.l;
  j["n_A"] = c.n_A;
  j["n_B"] = c.n_B;
  j["n"] = c.n;
  j["n_paper_formula"] = c.n_paper_formula;
  j["N"] = c.N;
  j["N_A_bar"] = c.N_A_bar;
  j["method"] = "both";
  j["contour_radius_used"] = c.contour_radius_used;
  return j;
}

json check_json(const CheckResult& row) {
  json j;
  j["suite"] = row.suite;
  j["name"] = row.name;
  j["params"] = row.params_text();
  j["observed"] = format_quantity(row.observed);
  j["target"] = format_quantity(row.target);
  j["relation"] = row.relation_text();
  j["pass"] = std::string(to_string(row.status));
  j["notes"] = row.notes;
  return j;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  for (std::string part; std::getline(stream, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw Error(ErrorKind::Parse, "grid must look like A:B:STEP");
  const double a = parse_number(parts[0]);
  const double b = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0) || b < a) throw Error(ErrorKind::Parse, "grid needs A <= B and STEP > 0");
  std::vector<double> grid;
  const long count = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
  for (long n = 0; n < count; ++n) grid.push_back(a + step * static_cast<double>(n));
  return grid;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counting Misiurewicz-type parameters of the exponential family"};
  app.require_subcommand(1);
  app.set_version_flag("--version", EXPCENSUS_VERSION);

  unsigned threads = 0;
  std::string format_name = "csv";
  app.add_option("--threads", threads, "Worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
  app.fallthrough();

  int m = 2, k = 1, l = 1;
  double r = 1.0;
  double theta = 0.0;
  std::string method = "direct";
  std::string grid_text;
  std::string out_path;
  std::vector<std::string> suites;
  int seed_density = 64;
  long node_budget = QuadratureOptions{}.node_budget;
  bool timings = false;

  auto* iterate_cmd = app.add_subcommand("iterate", "f_m and f_m' at r e^{i theta}");
  iterate_cmd->add_option("--m", m, "Iterate depth")->required()->check(CLI::PositiveNumber);
  iterate_cmd->add_option("--r", r, "Radius")->required();
  iterate_cmd->add_option("--theta", theta, "Angle in radians, in (-pi, pi]");

  auto* char_cmd = app.add_subcommand("characteristic", "Nevanlinna characteristic T(r, f_m)");
  char_cmd->add_option("--m", m, "Iterate depth (ignored for ee)")->check(CLI::PositiveNumber);
  char_cmd->add_option("--r", r, "Radius")->required();
  char_cmd->add_option("--method", method, "direct, split or ee")->check(CLI::IsMember({"direct", "split", "ee"}));
  char_cmd->add_option("--node-budget", node_budget, "Quadrature node budget")->check(CLI::PositiveNumber);

  auto* count_cmd = app.add_subcommand("count", "Parameter count n(r) for (k, l)");
  auto* census_cmd = app.add_subcommand("census", "Every root of the A- and pair-equations in |lambda| <= r");
  for (auto* cmd : {count_cmd, census_cmd}) {
    cmd->add_option("--k", k, "Preperiod")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--l", l, "Period")->required()->check(CLI::PositiveNumber);
    cmd->add_option("--r", r, "Radius")->required();
    cmd->add_option("--seed-density", seed_density, "Initial Newton seed grid per side")->check(CLI::PositiveNumber);
  }
  census_cmd->add_option("--out", out_path, "JSONL output file (default: stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Counting table over a radius grid");
  sweep_cmd->add_option("--k", k, "Preperiod")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--l", l, "Period")->required()->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--grid", grid_text, "Radii as A:B:STEP")->required();
  sweep_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  sweep_cmd->add_option("--seed-density", seed_density, "Initial Newton seed grid per side")->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Run the verification suites");
  verify_cmd->add_option("--suite", suites, "Suite to run (repeatable; default: all)");
  verify_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  verify_cmd->add_flag("--timings", timings, "Fill the runtime_ms column");

  std::vector<double> grid;
  try {
    app.parse(argc, argv);
    if (!grid_text.empty()) grid = parse_grid(grid_text);
    for (const auto& name : suites) {
      if (!is_suite(name)) throw CLI::ValidationError("--suite", "unknown suite " + name);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 2;
  }

  set_thread_count(threads);
  const Format format = format_name == "jsonl" ? Format::Jsonl : Format::Csv;
  const std::string header = provenance(argc, argv);

  try {
    if (*iterate_cmd) {
      const IterateProfile p = eval_f(m, FamilyPoint::polar(r, theta));
      if (format == Format::Jsonl) {
        json j;
        j["m"] = m;
        j["r"] = r;
        j["theta"] = theta;
        j["value"] = value_text(p.value);
        j["derivative"] = value_text(p.derivative);
        j["log_value"] = p.log_value ? json(p.log_value->str()) : json(nullptr);
        out << j.dump() << '\n';
      } else {
        out << "m,r,theta,value,derivative,log_value\n"
            << m << ',' << format_double(r) << ',' << format_double(theta) << ',' << value_text(p.value) << ','
            << value_text(p.derivative) << ',' << (p.log_value ? p.log_value->str() : "") << '\n';
      }
      return 0;
    }

    if (*char_cmd) {
      QuadratureOptions options;
      options.node_budget = node_budget;
      QuadratureReport q;
      if (method == "ee") q = characteristic_ee(r, options);
      else if (method == "split") q = characteristic_split(m, r, options);
      else q = characteristic_direct(m, r, options);
      if (format == Format::Jsonl) {
        json j;
        j["r"] = q.r;
        j["m"] = q.m;
        j["method"] = std::string(to_string(q.method));
        j["T"] = q.value;
        j["abs_error"] = q.abs_error_estimate;
        j["nodes"] = q.nodes_used;
        j["kinks"] = q.kinks;
        if (q.method == CharacteristicMethod::Split) {
          j["delta"] = q.delta_r;
          j["inner"] = q.inner;
          j["outer"] = q.outer;
          j["outer_bound"] = q.outer_bound.str();
        }
        out << j.dump() << '\n';
      } else {
        out << "r,m,method,T,abs_error,nodes,kinks,delta,inner,outer,outer_bound\n"
            << format_double(q.r) << ',' << q.m << ',' << to_string(q.method) << ',' << format_double(q.value) << ','
            << format_double(q.abs_error_estimate) << ',' << q.nodes_used << ',' << q.kinks << ',';
        if (q.method == CharacteristicMethod::Split) {
          out << format_double(q.delta_r) << ',' << format_double(q.inner) << ',' << format_double(q.outer) << ','
              << q.outer_bound.str();
        } else {
          out << ",,,";
        }
        out << '\n';
      }
      return 0;
    }

    CensusOptions census_options;
    census_options.grid = seed_density;
    census_options.max_grid = std::max(census_options.max_grid, 4 * seed_density);

    if (*count_cmd) {
      const CountReport c = count_parameters(k, l, r, census_options);
      if (format == Format::Jsonl) {
        out << count_json(c).dump() << '\n';
      } else {
        out << "r=" << format_double(c.r) << " k=" << c.k << " l=" << c.l << " n_A=" << c.n_A << " n_B=" << c.n_B
            << " n=" << c.n << " n_paper_formula=" << c.n_paper_formula << " N=" << format_double(c.N)
            << " N_A_bar=" << format_double(c.N_A_bar) << '\n';
      }
      return 0;
    }

    if (*census_cmd) {
      std::vector<RootRecord> roots = newton_census(BranchEquation::a(k, l), r, census_options).roots;
      for (const BranchEquation& eq : pair_equations(k, l)) {
        const Census pair = newton_census(eq, r, census_options);
        roots.insert(roots.end(), pair.roots.begin(), pair.roots.end());
      }
      Sink sink(out_path, out);
      *sink << header << '\n';
      write_jsonl(*sink, roots);
      return 0;
    }

    if (*sweep_cmd) {
      const std::vector<CountReport> reports = count_sweep(k, l, grid, census_options);
      Sink sink(out_path, out);
      *sink << header << '\n';
      if (format == Format::Jsonl) {
        for (const CountReport& c : reports) {
          json j = count_json(c);
          j["T"] = c.T;
          j["theorem_rhs"] = c.theorem_rhs;
          j["e4_rhs"] = c.e4_rhs;
          j["r_g_prime"] = c.r_g_prime;
          *sink << j.dump() << '\n';
        }
      } else {
        write_count_csv(*sink, reports);
      }
      return 0;
    }

    if (*verify_cmd) {
      VerifyConfig config;
      config.suites = suites.empty() ? all_suites() : suites;
      const std::vector<CheckResult> rows = run_all(config);
      Sink sink(out_path, out);
      *sink << header << '\n';
      if (format == Format::Jsonl) {
        for (const CheckResult& row : rows) *sink << check_json(row).dump() << '\n';
      } else {
        write_check_csv(*sink, rows, timings);
      }
      return any_failed(rows) ? 1 : 0;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace expcensus
