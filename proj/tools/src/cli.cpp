#include "shifteq_tools/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "shifteq/errors.hpp"
#include "shifteq/lindep.hpp"
#include "shifteq/pit.hpp"
#include "shifteq/set_solver.hpp"
#include "shifteq_tools/instance.hpp"
#include "shifteq_tools/report.hpp"

namespace shifteq::tools {
namespace {

struct Options {
  std::string command;
  std::string file;
  std::string field;
  double epsilon = 1e-9;
  std::uint64_t seed = 0;
  long long degree_bound = -1;
  std::string algorithm = "main";
  bool verify_dense = false;
  bool json = false;
  std::string shift;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::kInvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Runner {
 public:
  Runner(const Options& opt, const Instance& inst) : opt_(opt), inst_(inst) {}

  template <Field F>
  Json execute(const F& field) {
    SetConfig<F> cfg;
    cfg.epsilon = opt_.epsilon;
    cfg.seed = opt_.seed;
    cfg.verify_with_dense = opt_.verify_dense;
    cfg.algorithm = opt_.command == "set-alt" || opt_.algorithm == "alt" ? Algorithm::kAlt : Algorithm::kMain;
    Json r = base_report(opt_.command, field, cfg);
    const auto start = std::chrono::steady_clock::now();

    const std::optional<unsigned> bound =
        opt_.degree_bound >= 0 ? std::optional<unsigned>(static_cast<unsigned>(opt_.degree_bound)) : inst_.degree;
    const Oracle<F> f = make_oracle(*inst_.f, inst_.n, field, bound);
    const auto need_g = [&] {
      if (!inst_.g) throw Error(Errc::kInvalidArgument, "'" + opt_.command + "' needs a 'g:' line");
      return make_oracle(*inst_.g, inst_.n, field, bound);
    };

    if (opt_.command == "set" || opt_.command == "set-alt") {
      const Oracle<F> g = need_g();
      ShiftResult<F> res;
      shift_space(f, g, cfg, &res);
      return shift_report(opt_.command, field, cfg, res);
    }

    Rng rng(cfg.seed);
    if (opt_.command == "pit") {
      const Oracle<F> target = inst_.g ? difference(f, need_g()) : f;
      const bool zero = SchwartzZippel<F>(cfg.epsilon, rng).is_zero(target);
      r["status"] = zero ? "zero" : "nonzero";
      r["queries_used"] = target.queries();
    } else if (opt_.command == "degree") {
      const auto d = exact_degree(f, f.degree_bound(), cfg);
      r["status"] = "ok";
      r["degree"] = d ? Json(*d) : Json("zero");
      r["queries_used"] = f.queries();
    } else if (opt_.command == "stabilizer") {
      const auto d = exact_degree(f, f.degree_bound(), cfg);
      const auto s = stabilizer_basis(f, d.value_or(0), cfg);
      r["status"] = "ok";
      r["degree"] = d ? Json(*d) : Json("zero");
      r["stabilizer_dim"] = s.dim();
      r["stabilizer_basis"] = basis_to_json(field, s.basis);
      r["queries_used"] = f.queries();
    } else if (opt_.command == "essential-vars") {
      const auto d = exact_degree(f, f.degree_bound(), cfg);
      const auto ev = essential_variables(f, d.value_or(0), cfg);
      Json rows = Json::array();
      for (std::size_t i = 0; i < ev.a.rows(); ++i) {
        const auto row = ev.a.row(i);
        rows.push_back(to_json(field, Vec<F>(row.begin(), row.end())));
      }
      r["status"] = "ok";
      r["degree"] = d ? Json(*d) : Json("zero");
      r["essential_count"] = ev.m;
      r["transform"] = rows;
      r["queries_used"] = f.queries();
    } else if (opt_.command == "lindep") {
      SpanQuery<F> q{f, {}};
      for (const auto& h : inst_.h) q.generators.push_back(make_oracle(h, inst_.n, field, bound));
      const auto res = solve_span_randomized(q, cfg.epsilon, rng);
      r["status"] = res.has_solution() ? "in_span" : "not_in_span";
      if (res.solution) {
        r["coefficients"] = to_json(field, res.solution->point);
        r["solution_dim"] = res.solution->dim();
      }
      std::uint64_t queries = f.queries();
      for (const auto& h : q.generators) queries += h.queries();
      r["queries_used"] = queries;
    } else if (opt_.command == "verify") {
      const Oracle<F> g = need_g();
      const Vec<F> a = parse_vector(opt_.shift, field);
      if (a.size() != inst_.n) {
        throw Error(Errc::kDimensionMismatch,
                    "--shift has " + std::to_string(a.size()) + " entries, instance has n = " + std::to_string(inst_.n));
      }
      const PitEngine<F> engine = SchwartzZippel<F>(cfg.epsilon, rng);
      bool ok = verify_shift(f, g, std::span<const typename F::Element>(a), engine);
      if (ok && cfg.verify_with_dense) {
        std::optional<bool> dense;
        ok = detail::dense_check(f, g, a, dense);
        if (dense) r["dense_verified"] = *dense;
      }
      r["status"] = ok ? "valid" : "invalid";
      r["shift"] = to_json(field, a);
      r["queries_used"] = total_queries<F>({&f, &g});
    }
    r["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

 private:
  const Options& opt_;
  const Instance& inst_;
};

void add_common(CLI::App* sub, Options& opt) {
  sub->add_option("instance", opt.file, "Instance file")->required()->check(CLI::ExistingFile);
  sub->add_option("--field", opt.field, "Override the field: p=<prime> or rational");
  sub->add_option("--epsilon", opt.epsilon, "Total error budget")->capture_default_str();
  sub->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  sub->add_option("--degree-bound", opt.degree_bound, "Degree bound for the inputs")->check(CLI::NonNegativeNumber);
  sub->add_option("--algorithm", opt.algorithm, "SET algorithm")
      ->check(CLI::IsMember({"main", "alt"}))
      ->capture_default_str();
  sub->add_flag("--verify-dense", opt.verify_dense, "Cross-check shifts by dense expansion");
  sub->add_flag("--json", opt.json, "Emit a JSON report");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Shift equivalence testing for black-box polynomials", "shifteq"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"set", "Find a with f(x+a) = g(x)"},
      {"set-alt", "Same, with the essential-variables recursion"},
      {"pit", "Test f (or f - g) for being identically zero"},
      {"stabilizer", "Basis of {a : f(x+a) = f(x)}"},
      {"degree", "Exact total degree of f"},
      {"essential-vars", "Essential variable count of the top component of f"},
      {"lindep", "Is f in the span of the h: polynomials?"},
      {"verify", "Check a given shift"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, opt);
    if (name == "verify") sub->add_option("--shift", opt.shift, "Comma-separated shift vector")->required();
    sub->callback([&opt, name = name] { opt.command = name; });
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    Instance inst = parse_instance(read_file(opt.file));
    if (!opt.field.empty()) inst.field = FieldSpec::parse(opt.field);
    Runner runner(opt, inst);
    const Json report =
        inst.field.is_prime() ? runner.execute(PrimeField(inst.field.modulus())) : runner.execute(RationalField{});
    out << (opt.json ? report.dump(2) + "\n" : human_readable(report));
    return kExitOk;
  } catch (const ParseError& e) {
    err << "shifteq: " << opt.file << ":" << e.position() << ": " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "shifteq: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "shifteq: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace shifteq::tools
