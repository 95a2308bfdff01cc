#pragma once

/// Datasets behind the seven figures: prefractal intervals, the staircase,
/// fractal vs classical Gamma, x^2 and S^2 with their order-1/2 nonlocal
/// derivatives and integrals, and the example solutions on the real line
/// and on the Cantor set.

#include <string>
#include <utility>
#include <vector>

#include "fractal/falpha.hpp"
#include "fractal/operators.hpp"
#include "fractal/output.hpp"
#include "fractal/solutions.hpp"
#include "fractal/special_functions.hpp"
#include "fractal/staircase.hpp"

namespace fractal {

struct FigureOptions {
  int depth = 53;
  int count = 201;         // points per curve
  int prefractal_levels = 5;
};

struct FigureData {
  std::string name;  // file stem, e.g. "fig2_staircase"
  std::string title;
  Table table;
  PlotStyle style = PlotStyle::Line;
};

/// Every figure dataset, in a fixed order.
inline std::vector<FigureData> figure_datasets(const FigureOptions& opt = {}) {
  const auto cantor = StaircaseFn::cantor(opt.depth);
  const auto identity = StaircaseFn::identity();
  std::vector<FigureData> out;

  {
    // one row per interval: left end, right end, construction level
    Table t{{}, {{}, {}}, {"right", "level"}};
    for (int level = 0; level <= opt.prefractal_levels; ++level) {
      for (const auto& [l, r] : prefractal_intervals(level)) {
        t.xs.push_back(l);
        t.columns[0].push_back(r);
        t.columns[1].push_back(level);
      }
    }
    out.push_back({"fig1_prefractal", "Prefractal intervals", std::move(t), PlotStyle::Step});
  }
  {
    Table t{linspace(0.0, 1.0, opt.count), {{}}, {"value"}};
    for (double x : t.xs) t.columns[0].push_back(cantor_eval(cantor, x));
    out.push_back({"fig2_staircase", "Cantor staircase", std::move(t), PlotStyle::Step});
  }
  {
    Table t{linspace(0.1, 3.0, opt.count), {{}, {}}, {"fractal", "classical"}};
    for (double x : t.xs) {
      t.columns[0].push_back(gamma_fractal(x, GammaMode::StaircaseComposed, cantor));
      t.columns[1].push_back(gamma_classical(x));
    }
    out.push_back({"fig3_gamma", "Fractal and classical Gamma", std::move(t), PlotStyle::Line});
  }

  const auto sq = FractalFn::of_staircase([](double u) { return u * u; });
  const OperatorSpec der{OperatorKind::RLDerivative, Side::Left, 0.0, 0.5};
  const OperatorSpec integ{OperatorKind::RLIntegral, Side::Left, 0.0, 0.5};
  const auto xs01 = linspace(0.0, 1.0, opt.count);
  {
    Table t{xs01, {{}, {}}, {"x2", "S2"}};
    for (double x : xs01) {
      t.columns[0].push_back(x * x);
      t.columns[1].push_back(sq.at_x(cantor, x));
    }
    out.push_back({"fig4_functions", "x^2 and S(x)^2", t, PlotStyle::Line});
    out.push_back({"fig5_functions", "x^2 and S(x)^2", std::move(t), PlotStyle::Line});
  }
  {
    Table d{xs01, {{}, {}}, {"classical", "fractal"}};
    Table i{xs01, {{}, {}}, {"classical", "fractal"}};
    for (double x : xs01) {
      d.columns[0].push_back(rl_derivative(der, sq, identity, x));
      d.columns[1].push_back(rl_derivative(der, sq, cantor, x));
      i.columns[0].push_back(rl_integral(integ, sq, identity, x));
      i.columns[1].push_back(rl_integral(integ, sq, cantor, x));
    }
    out.push_back({"fig4_derivative", "Order-1/2 RL derivative", std::move(d), PlotStyle::Line});
    out.push_back({"fig5_integral", "Order-1/2 RL integral", std::move(i), PlotStyle::Line});
  }

  const auto solution_figure = [&](int id, const std::string& name) {
    const double a = example_problem(id).op.terminal;
    // examples 1 and 2 are regular at the terminal, example 3 is not
    const double start = id == 3 ? a + 0.01 : a;
    Table t{linspace(start, a + 1.0, opt.count), {{}, {}}, {"real_line", "cantor"}};
    const auto real = example_solution(id, identity);
    const auto fractal = example_solution(id, cantor);
    for (double x : t.xs) {
      t.columns[0].push_back(real(x));
      t.columns[1].push_back(fractal(x));
    }
    out.push_back({name, "Example " + std::to_string(id) + " solution", std::move(t),
                   PlotStyle::Line});
  };
  solution_figure(1, "fig6_example1");
  solution_figure(2, "fig6_example2");
  solution_figure(3, "fig7_example3");
  return out;
}

}  // namespace fractal
