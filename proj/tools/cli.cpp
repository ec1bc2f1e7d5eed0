#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "freecsk/conv.hpp"
#include "freecsk/csk.hpp"
#include "freecsk/errors.hpp"
#include "freecsk/limits.hpp"
#include "freecsk/measure.hpp"
#include "freecsk/transforms.hpp"
#include "freecsk/verify.hpp"

namespace freecsk::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) { return fmt::format("{:.17g}", v); }

// Error texts end up in CSV cells.
std::string csv_text(const std::string& text) {
  if (text.empty()) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

double parse_number(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::vector<std::size_t> parse_schedule(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_grid(text)) {
    if (!(v >= 1.0) || v != std::floor(v)) throw std::invalid_argument("n schedule needs positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct Options {
  std::vector<std::string> specs;
  std::string out_path;
  std::size_t order = 40;
  std::string grid;
  std::string which = "G";
  std::string op;
  std::optional<double> power;
  std::string side = "two_sided";
  std::string kind = "uplus";
  std::string n_schedule = "1,2,4,8,16,32,64";
  std::size_t reported = 6;
  std::string variance_grid = "0.6,0.8,0.9";
  std::string suite = "all";
};

class Table {
 public:
  explicit Table(std::ostream& os) : os_(os) {}
  void comment(const std::string& key, const std::string& value) { os_ << "# " << key << ": " << value << '\n'; }
  void header(const std::string& columns) { os_ << columns << '\n'; }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

Measure load_single(const Options& o) {
  if (o.specs.size() != 1) throw std::invalid_argument("expected exactly one --spec");
  return load_measure_spec(o.specs.front());
}

Side parse_side(const std::string& s) {
  if (s == "plus") return Side::plus;
  if (s == "minus") return Side::minus;
  return Side::two_sided;
}

// ---------------------------------------------------------------- subcommands

int cmd_transform(const Options& o, std::ostream& os) {
  const Measure nu = load_single(o);
  if (o.grid.empty()) throw std::invalid_argument("transform needs --grid");
  const std::vector<double> grid = parse_grid(o.grid);

  std::function<double(double, std::string&)> eval;
  if (o.which == "G") {
    eval = [&](double x, std::string& note) {
      const TransformPoint p = cauchy_transform(nu, x);
      if (p.outside_validity) note = "outside the validity radius of the truncated Laurent series";
      return p.value.real();
    };
  } else {
    using Fn = double (*)(const Measure&, double);
    const Fn fn = o.which == "M"       ? static_cast<Fn>(m_transform)
                  : o.which == "Psi"   ? static_cast<Fn>(psi_transform)
                  : o.which == "S"     ? static_cast<Fn>(s_transform)
                  : o.which == "Sigma" ? static_cast<Fn>(sigma_transform)
                  : o.which == "R"     ? static_cast<Fn>(r_transform)
                                       : static_cast<Fn>(k_transform);
    eval = [&nu, fn](double x, std::string&) { return fn(nu, x); };
  }

  Table t(os);
  t.comment("command", "transform");
  t.comment("spec", o.specs.front());
  t.comment("measure", nu.describe());
  t.comment("which", o.which);
  t.comment("grid", o.grid);
  t.header("argument,value,error");
  for (double x : grid) {
    std::string note;
    double value = kNaN;
    try {
      value = eval(x, note);
    } catch (const Error& e) {
      note = e.what();
    }
    t.row({num(x), num(value), csv_text(note)});
  }
  return kOk;
}

int cmd_convolve(const Options& o, std::ostream& os) {
  if (o.specs.empty() || o.specs.size() > 2) throw std::invalid_argument("convolve takes one or two --spec");
  const bool binary = o.specs.size() == 2;
  if (binary == o.power.has_value()) {
    throw std::invalid_argument("convolve needs either a second --spec or --power");
  }
  if (o.op == "bt" && binary) throw std::invalid_argument("bt takes one --spec and --power t");

  const Measure a = load_measure_spec(o.specs[0]);
  const MomentSeq ma = moments(a, o.order);
  MomentSeq result;
  if (binary) {
    const MomentSeq mb = moments(load_measure_spec(o.specs[1]), o.order);
    result = o.op == "boxplus" ? boxplus(ma, mb) : o.op == "uplus" ? uplus(ma, mb) : boxtimes(ma, mb);
  } else {
    const double p = *o.power;
    result = o.op == "boxplus"  ? boxplus_power(ma, p)
             : o.op == "uplus"  ? uplus_power(ma, p)
             : o.op == "boxtimes" ? boxtimes_power(ma, p)
                                : bp_transform(ma, p);
  }

  Table t(os);
  t.comment("command", "convolve");
  t.comment("op", o.op);
  for (const std::string& s : o.specs) t.comment("spec", s);
  if (o.power) t.comment(o.op == "bt" ? "t" : "power", num(*o.power));
  t.comment("order", std::to_string(o.order));
  t.comment("positive", result.positive() ? "true" : "false");
  t.comment("formal", result.formal() ? "true" : "false");
  t.header("order,moment");
  for (std::size_t k = 1; k <= result.order(); ++k) t.row({std::to_string(k), num(result.moment(k))});
  return kOk;
}

int cmd_csk(const Options& o, std::ostream& os) {
  const Measure nu = load_single(o);
  if (o.grid.empty()) throw std::invalid_argument("csk needs --at");
  const std::vector<double> grid = parse_grid(o.grid);

  Table t(os);
  t.comment("command", "csk");
  t.comment("spec", o.specs.front());
  t.comment("measure", nu.describe());
  t.comment("side", o.side);

  if (const MomentSeq* seq = nu.moment_seq()) {
    // No family without a measure; fall back to the S-series reconstruction.
    const MomentSeq mom = seq->truncated(std::min(o.order, seq->order()));
    t.comment("mean", num(mom.mean()));
    t.comment("mean_domain", "unknown (moment sequence; values from the S-series)");
    t.header("m,theta,pseudo_variance,variance,error");
    for (double m : grid) {
      std::string note;
      double pv = kNaN;
      double v = kNaN;
      try {
        v = variance_from_moments(mom, m);
        pv = pseudo_variance_from_moments(mom, m);
      } catch (const Error& e) {
        note = e.what();
      }
      t.row({num(m), num(kNaN), num(pv), num(v), csv_text(note)});
    }
    return kOk;
  }

  const CskFamily family(nu, parse_side(o.side));
  t.comment("mean", num(family.mean()));
  t.comment("mean_domain", "(" + num(family.mean_domain().lo) + ", " + num(family.mean_domain().hi) + ")");
  t.header("m,theta,pseudo_variance,variance,error");
  for (double m : grid) {
    std::string note;
    auto attempt = [&](auto&& fn) {
      try {
        return fn();
      } catch (const Error& e) {
        if (note.empty()) note = e.what();
        return kNaN;
      }
    };
    const double theta = attempt([&] { return family.psi(m); });
    const double pv = attempt([&] { return family.pseudo_variance(m); });
    const double v = attempt([&] { return family.variance(m); });
    t.row({num(m), num(theta), num(pv), num(v), csv_text(note)});
  }
  return kOk;
}

int cmd_limit(const Options& o, std::ostream& os) {
  const Measure nu = load_single(o);
  ConvergenceOptions co;
  co.n_schedule = parse_schedule(o.n_schedule);
  co.series_order = o.order;
  co.reported_orders = o.reported;
  co.variance_grid = parse_grid(o.variance_grid);
  const ScalingKind kind = o.kind == "boxplus" ? ScalingKind::boxplus : ScalingKind::uplus;
  const ConvergenceReport report = convergence_report(nu, kind, co);

  Table t(os);
  t.comment("command", "limit");
  t.comment("spec", o.specs.front());
  t.comment("measure", report.measure);
  t.comment("kind", to_string(report.kind));
  t.comment("limit", to_string(report.limit) + "(gamma=" + num(report.gamma) + ")");
  t.comment("n_schedule", o.n_schedule);
  t.comment("series_order", std::to_string(report.series_order));
  t.comment("reported_orders", std::to_string(report.reported_orders));
  t.comment("variance_grid", o.variance_grid);
  t.header("quantity,n,order,m,value,limit,abs_error,error");
  for (const ConvergenceRow& r : report.rows) {
    t.row({"moment", std::to_string(r.n), std::to_string(r.order), "", num(r.value), num(r.limit), num(r.abs_error),
           ""});
  }
  for (const VarianceRow& r : report.variance_rows) {
    t.row({"variance", std::to_string(r.n), "", num(r.m), num(r.value), num(r.limit), num(r.abs_error),
           csv_text(r.error)});
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& os) {
  const std::vector<SuiteReport> reports = run_verification(o.suite);
  Table t(os);
  t.comment("command", "verify");
  t.comment("suite", o.suite);
  t.header("suite,check,deviation,tolerance,status,note");
  bool all = true;
  for (const SuiteReport& s : reports) {
    for (const Check& c : s.checks) {
      t.row({s.suite, csv_text(c.name), num(c.deviation), num(c.tolerance), c.passed ? "PASS" : "FAIL", csv_text(c.note)});
    }
    all = all && s.passed();
  }
  for (const SuiteReport& s : reports) t.comment(s.suite, s.passed() ? "PASS" : "FAIL");
  return all ? kOk : kFailure;
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const std::size_t first = text.find(':');
    const std::size_t second = text.find(':', first + 1);
    if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
      throw std::invalid_argument("grid range must be a:b:step");
    }
    const double a = parse_number(text.substr(0, first));
    const double b = parse_number(text.substr(first + 1, second - first - 1));
    const double step = parse_number(text.substr(second + 1));
    if (!(step > 0.0) || !(b >= a)) throw std::invalid_argument("grid range needs b >= a and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (count > 1000000) throw std::invalid_argument("grid has too many points");
    for (std::size_t i = 0; i < count; ++i) out.push_back(a + static_cast<double>(i) * step);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(parse_number(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Free-probability transforms, convolutions and Cauchy-Stieltjes kernel families"};
  app.name("freecsk");
  app.require_subcommand(1);
  Options o;

  auto add_spec = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--spec", o.specs, many ? "Measure-spec file (twice for a binary operation)"
                                                        : "Measure-spec file")
                    ->required();
    if (many) {
      opt->expected(1, 2)->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    } else {
      opt->expected(1);
    }
  };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out_path, "Output file (default: standard output)"); };
  auto add_order = [&](CLI::App* sub) {
    sub->add_option("--order", o.order, "Number of moments / series order")
        ->capture_default_str()
        ->check(CLI::Range(std::size_t{1}, std::size_t{400}));
  };

  CLI::App* transform = app.add_subcommand("transform", "Evaluate G, M, Psi, S, Sigma, R or K on a grid");
  add_spec(transform, false);
  transform->add_option("--which", o.which, "Transform")
      ->capture_default_str()
      ->check(CLI::IsMember({"G", "M", "Psi", "S", "Sigma", "R", "K"}));
  transform->add_option("--grid", o.grid, "Arguments: a:b:step or x1,x2,...")->required();
  add_out(transform);

  CLI::App* convolve = app.add_subcommand("convolve", "Moments of a convolution, power or B_t transform");
  add_spec(convolve, true);
  convolve->add_option("--op", o.op, "Operation")->required()->check(CLI::IsMember({"boxplus", "uplus", "boxtimes", "bt"}));
  convolve->add_option("--power", o.power, "Convolution power alpha (t for bt)");
  add_order(convolve);
  add_out(convolve);

  CLI::App* csk = app.add_subcommand("csk", "Kernel family: psi, pseudo-variance and variance on a mean grid");
  add_spec(csk, false);
  csk->add_option("--at", o.grid, "Means: a:b:step or m1,m2,...")->required();
  csk->add_option("--side", o.side, "Half of the family")
      ->capture_default_str()
      ->check(CLI::IsMember({"two_sided", "plus", "minus"}));
  add_order(csk);
  add_out(csk);

  CLI::App* limit = app.add_subcommand("limit", "Convergence of the scaled sequence to eta_gamma or sigma_gamma");
  add_spec(limit, false);
  limit->add_option("--kind", o.kind, "Additive step (boxplus -> eta, uplus -> sigma)")
      ->capture_default_str()
      ->check(CLI::IsMember({"boxplus", "uplus"}));
  limit->add_option("--n-schedule", o.n_schedule, "Strictly increasing n values")->capture_default_str();
  limit->add_option("--moments", o.reported, "Moment orders reported per n")->capture_default_str();
  limit->add_option("--grid", o.variance_grid, "Means for the variance-function rows")->capture_default_str();
  add_order(limit);
  add_out(limit);

  CLI::App* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--suite", o.suite, "all, " + [] {
    std::string names;
    for (const std::string& s : suite_names()) names += (names.empty() ? "" : ", ") + s;
    return names;
  }())->capture_default_str();
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "freecsk: " << e.what() << "\n";
    return kUsage;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* os = &out;
  if (!o.out_path.empty()) {
    file = std::make_unique<std::ofstream>(o.out_path, std::ios::binary);
    if (!*file) {
      err << "freecsk: cannot open " << o.out_path << " for writing\n";
      return kFailure;
    }
    os = file.get();
  }

  try {
    if (*transform) return cmd_transform(o, *os);
    if (*convolve) return cmd_convolve(o, *os);
    if (*csk) return cmd_csk(o, *os);
    if (*limit) return cmd_limit(o, *os);
    return cmd_verify(o, *os);
  } catch (const std::invalid_argument& e) {
    err << "freecsk: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "freecsk: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace freecsk::cli
