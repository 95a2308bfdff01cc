// fractal_calc: evaluate staircase calculus on a grid, reproduce the figure
// datasets and run the acceptance suite.
//
// Exit status: 0 success, 1 verification or I/O failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fractal/fractal.hpp"

namespace {

using namespace fractal;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string alpha_mode = "cantor";
  int depth = 53;
  std::vector<double> grid;
  std::string kernel = "beta1";
  std::string quadrature = "de";
  std::optional<double> tol;
  std::string output;
  std::string format = "csv";

  // operator and function arguments
  double beta = 0.5;
  std::string f = "S(x)^2";
  double terminal = 0.0;
  std::string side = "left";
  double eta = 1.0;
  double nu = 1.0;
  double w = 1.0;
  std::string gamma_mode = "composed";
  int example = 1;
  double lambda = example4_default_lambda;
};

StaircaseFn make_staircase(const Config& c) {
  return c.alpha_mode == "identity" ? StaircaseFn::identity() : StaircaseFn::cantor(c.depth);
}

std::vector<double> make_grid(const Config& c, double start, double stop, int count) {
  if (!c.grid.empty()) {
    start = c.grid[0];
    stop = c.grid[1];
    const double n = c.grid[2];
    if (n != std::floor(n)) throw UsageError("--grid count must be an integer");
    count = static_cast<int>(n);
  }
  if (count < 2) throw UsageError("--grid count must be >= 2");
  if (!(start < stop)) throw UsageError("--grid requires start < stop");
  return linspace(start, stop, count);
}

OperatorSpec make_spec(const Config& c, OperatorKind kind) {
  OperatorSpec s;
  s.kind = kind;
  s.side = c.side == "right" ? Side::Right : Side::Left;
  s.terminal = c.terminal;
  s.beta = c.beta;
  s.convention =
      c.kernel == "shifted" ? KernelConvention::DimensionShifted : KernelConvention::ConjugacyBeta1;
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return s;
}

OperatorOptions make_options(const Config& c) {
  OperatorOptions o;
  o.rule = c.quadrature == "product" ? KernelRule::ProductTrapezoid : KernelRule::DoubleExponential;
  return o;
}

void emit(const Config& c, const Table& t, const std::string& title, PlotStyle style) {
  std::ostringstream os;
  if (c.format == "svg") {
    write_svg(os, t, title, style);
  } else {
    write_csv(os, t);
  }
  if (c.output.empty() || c.output == "-") {
    std::cout << os.str();
  } else {
    write_file(c.output, os.str());
  }
}

Table one_column(const std::vector<double>& xs, const std::function<double(double)>& fn) {
  Table t{xs, {{}}, {"value"}};
  for (double x : xs) t.columns[0].push_back(fn(x));
  return t;
}

int run_operator(const Config& c, OperatorKind kind) {
  const auto sf = make_staircase(c);
  const auto spec = make_spec(c, kind);
  const auto opt = make_options(c);
  const auto f = Expression::parse(c.f).to_fractal_fn(sf);
  const auto xs = make_grid(c, 0.0, 1.0, 101);
  const auto t = one_column(xs, [&](double x) { return apply_operator(spec, f, sf, x, opt); });
  emit(c, t, c.f, PlotStyle::Line);
  return 0;
}

int run_figures(const Config& c) {
  FigureOptions fo;
  fo.depth = c.depth;
  if (!c.grid.empty()) fo.count = static_cast<int>(make_grid(c, 0.0, 1.0, 2).size());
  const std::string dir = c.output.empty() ? "figures" : c.output;
  std::filesystem::create_directories(dir);
  const std::string ext = c.format == "svg" ? ".svg" : ".csv";
  for (const auto& fig : figure_datasets(fo)) {
    std::ostringstream os;
    if (c.format == "svg") {
      write_svg(os, fig.table, fig.title, fig.style);
    } else {
      write_csv(os, fig.table);
    }
    const auto path = (std::filesystem::path(dir) / (fig.name + ext)).string();
    write_file(path, os.str());
    std::cerr << "wrote " << path << '\n';
  }
  return 0;
}

int run_verify(const Config& c) {
  AcceptanceOptions o;
  o.depth = c.depth;
  bool ok = true;
  for (const auto& r : run_all(o)) {
    std::cout << format_result(r) << '\n';
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all criteria passed" : "verification FAILED") << '\n';
  return ok ? 0 : 1;
}

int run_solve(const Config& c) {
  if (c.example < 1 || c.example > 4) throw UsageError("--example must be 1..4");
  const auto sf = make_staircase(c);
  std::vector<double> xs;
  if (c.grid.empty()) {
    xs = example_grid(c.example, sf, 16);
  } else {
    xs = make_grid(c, 0.0, 1.0, 2);
  }
  const auto r = solve_example(c.example, sf, c.lambda, xs, make_options(c));
  Table t{xs, {r.solution.values, r.reference_solution.values}, {"value", "value2"}};
  emit(c, t, "Example " + std::to_string(c.example), PlotStyle::Line);
  std::cerr << "derived: " << r.derived_text << '\n'
            << "reference: " << r.reference_text << '\n'
            << "max residual: " << r.max_residual << '\n'
            << "reference-formula discrepancy: " << r.reference_discrepancy << '\n';
  for (const auto& cand : r.candidates) {
    std::cerr << "candidate residual " << cand.max_residual << "  " << cand.label << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractal_calc: calculus on the triadic Cantor set"};
  app.require_subcommand(1);
  Config c;
  if (const char* env = std::getenv("FRACTAL_CALC_TOL")) {
    try {
      c.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "FRACTAL_CALC_TOL is not a number: " << env << '\n';
      return 2;
    }
  }

  app.add_option("--alpha-mode", c.alpha_mode, "cantor or identity")
      ->check(CLI::IsMember({"cantor", "identity"}));
  app.add_option("--depth", c.depth, "ternary digit depth")->check(CLI::Range(1, 64));
  app.add_option("--grid", c.grid, "start stop count")->expected(3);
  app.add_option("--kernel", c.kernel, "kernel convention: beta1 or shifted")
      ->check(CLI::IsMember({"beta1", "shifted"}));
  app.add_option("--quadrature", c.quadrature, "kernel quadrature: de or product")
      ->check(CLI::IsMember({"de", "product"}));
  app.add_option("--tol", c.tol, "series / tail tolerance (overrides FRACTAL_CALC_TOL)");
  app.add_option("--output", c.output, "output file (directory for figures)");
  app.add_option("--format", c.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));

  auto* staircase = app.add_subcommand("staircase", "S(x) on the grid");
  auto* gamma = app.add_subcommand("gamma", "fractal and classical Gamma");
  gamma->add_option("--mode", c.gamma_mode, "composed (Gamma(S(x))) or raw (Gamma(x))")
      ->check(CLI::IsMember({"composed", "raw"}));
  auto* beta = app.add_subcommand("beta", "B(r, w) over r: closed form and quadrature");
  beta->add_option("--w", c.w, "second argument");
  auto* ml = app.add_subcommand("ml", "E_{eta,nu}(S(x))");
  ml->add_option("--eta", c.eta);
  ml->add_option("--nu", c.nu);
  std::vector<CLI::App*> ops;
  for (const char* name : {"rl-int", "rl-der", "caputo"}) {
    auto* sub = app.add_subcommand(name, std::string(name) + " of --f");
    sub->add_option("--beta", c.beta, "order");
    sub->add_option("--f", c.f, "function of x and S(x)");
    sub->add_option("--terminal", c.terminal, "terminal point a (left) or b (right)");
    sub->add_option("--side", c.side, "left or right")->check(CLI::IsMember({"left", "right"}));
    ops.push_back(sub);
  }
  auto* laplace = app.add_subcommand("laplace", "forward transform over sigma = grid");
  laplace->add_option("--f", c.f, "function of x and S(x)");
  auto* solve = app.add_subcommand("solve", "solve an example equation");
  solve->add_option("--example", c.example, "1..4");
  solve->add_option("--lambda", c.lambda, "lambda for example 4");
  auto* figures = app.add_subcommand("figures", "write all figure datasets");
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (c.tol && !(*c.tol > 0.0)) {
    std::cerr << "tolerance must be positive\n";
    return 2;
  }

  try {
    if (staircase->parsed()) {
      const auto sf = make_staircase(c);
      emit(c, one_column(make_grid(c, 0.0, 1.0, 1001), [&](double x) { return cantor_eval(sf, x); }),
           "S(x)", PlotStyle::Step);
    } else if (gamma->parsed()) {
      const auto sf = make_staircase(c);
      const auto mode = c.gamma_mode == "raw" ? GammaMode::RawArgument : GammaMode::StaircaseComposed;
      const auto xs = make_grid(c, 0.1, 3.0, 101);
      Table t{xs, {{}, {}}, {"value", "value2"}};
      for (double x : xs) {
        t.columns[0].push_back(gamma_fractal(x, mode, sf));
        t.columns[1].push_back(gamma_classical(x));
      }
      emit(c, t, "Gamma", PlotStyle::Line);
    } else if (beta->parsed()) {
      const auto sf = make_staircase(c);
      const auto xs = make_grid(c, 0.5, 2.0, 4);
      Table t{xs, {{}, {}}, {"value", "value2"}};
      for (double r : xs) {
        t.columns[0].push_back(beta_fractal(r, c.w));
        t.columns[1].push_back(beta_fractal_quadrature(r, c.w, sf));
      }
      emit(c, t, "Beta", PlotStyle::Line);
    } else if (ml->parsed()) {
      const auto sf = make_staircase(c);
      MLParams p{c.eta, c.nu};
      if (c.tol) p.tol = *c.tol;
      const MittagLeffler e(p);
      emit(c, one_column(make_grid(c, 0.0, 1.0, 101), [&](double x) { return e(cantor_eval(sf, x)); }),
           "Mittag-Leffler", PlotStyle::Line);
    } else if (ops[0]->parsed()) {
      return run_operator(c, OperatorKind::RLIntegral);
    } else if (ops[1]->parsed()) {
      return run_operator(c, OperatorKind::RLDerivative);
    } else if (ops[2]->parsed()) {
      return run_operator(c, OperatorKind::Caputo);
    } else if (laplace->parsed()) {
      const auto sf = make_staircase(c);
      const auto f = Expression::parse(c.f).to_fractal_fn(sf);
      const auto xs = make_grid(c, 1.0, 5.0, 5);
      Table t{xs, {{}, {}}, {"value", "value2"}};
      for (double sigma : xs) {
        const auto r = laplace_numeric(f, sf, sigma, c.tol.value_or(1e-10));
        t.columns[0].push_back(r.value);
        t.columns[1].push_back(r.tail_bound);
      }
      emit(c, t, "Laplace", PlotStyle::Line);
    } else if (solve->parsed()) {
      return run_solve(c);
    } else if (figures->parsed()) {
      return run_figures(c);
    } else if (verify->parsed()) {
      return run_verify(c);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
