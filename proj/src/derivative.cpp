#include "suitegen/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "suitegen/engines.hpp"

namespace suitegen {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      const std::size_t subst = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      row[j] = std::min({above + 1, row[j - 1] + 1, subst});
      diag = above;
    }
  }
  return row[b.size()];
}

double absolute_distance(double a, double b) { return std::fabs(a - b); }

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("euclidean distance needs vectors of equal length");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(sum);
}

double program_derivative(double d_in, double d_out) {
  if (!(d_in > 0.0)) {
    throw std::invalid_argument("program derivative needs distinct inputs (d_in > 0)");
  }
  if (!(d_out >= 0.0)) throw std::invalid_argument("output distance must be >= 0");
  return d_out / d_in;
}

std::vector<std::int64_t> ScanAxis::values() const {
  if (step <= 0) throw ScanError("axis " + parameter + ": step must be positive");
  if (last < first) throw ScanError("axis " + parameter + ": range is empty");
  std::vector<std::int64_t> out;
  for (std::int64_t v = first; v <= last; v += step) {
    out.push_back(v);
    if (last - v < step) break;
  }
  if (out.size() < 2) {
    throw ScanError("axis " + parameter + " has " + std::to_string(out.size()) +
                    " point(s); at least 2 are needed");
  }
  return out;
}

namespace {

using minipy::ScriptCall;
using minipy::Value;

struct Layout {
  std::vector<std::string> names;
  std::size_t ctor_arity = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  std::vector<std::int64_t> base;
};

Layout plan(const minipy::Program& program, const BoundaryScanSpec& spec) {
  const int method = program.find_method(spec.method);
  if (method < 0 || spec.method == "__init__") {
    throw ScanError("\"" + spec.method + "\" is not a method of " + program.class_name);
  }
  Layout layout;
  if (const minipy::Method* ctor = program.constructor()) layout.names = ctor->params;
  layout.ctor_arity = layout.names.size();
  for (const auto& p : program.methods[static_cast<std::size_t>(method)].params) {
    layout.names.push_back(p);
  }

  auto position = [&](const std::string& name) -> std::size_t {
    auto it = std::find(layout.names.begin(), layout.names.end(), name);
    if (it == layout.names.end()) throw ScanError("unknown parameter \"" + name + "\"");
    // Constructor and method may share a parameter name; the first wins.
    return static_cast<std::size_t>(it - layout.names.begin());
  };
  layout.x = position(spec.x.parameter);
  layout.y = position(spec.y.parameter);
  if (layout.x == layout.y) throw ScanError("axes must vary distinct parameters");
  for (const auto& [name, value] : spec.fixed) {
    const std::size_t at = position(name);
    if (at == layout.x || at == layout.y) {
      throw ScanError("parameter \"" + name + "\" is both fixed and on an axis");
    }
  }
  layout.base.assign(layout.names.size(), 0);
  for (std::size_t i = 0; i < layout.names.size(); ++i) {
    if (i == layout.x || i == layout.y) continue;
    auto it = spec.fixed.find(layout.names[i]);
    if (it == spec.fixed.end()) {
      throw ScanError("no value given for parameter \"" + layout.names[i] + "\"");
    }
    layout.base[i] = it->second;
  }
  return layout;
}

std::string evaluate(const minipy::Program& program, const std::string& method,
                     const Layout& layout, const std::vector<std::int64_t>& input) {
  std::vector<ScriptCall> script(2);
  script[0].kind = ScriptCall::Kind::Construct;
  script[1].kind = ScriptCall::Kind::Method;
  script[1].name = method;
  for (std::size_t i = 0; i < input.size(); ++i) {
    (i < layout.ctor_arity ? script[0] : script[1]).args.push_back(Value::integer(input[i]));
  }
  const minipy::ExecutionTrace trace = minipy::run_script(program, script);
  return trace.outcomes.back().text();
}

DerivativePoint derive(std::vector<std::int64_t> a, std::vector<std::int64_t> b, std::size_t axis,
                       const std::string& out_a, const std::string& out_b) {
  DerivativePoint p;
  p.d_in = absolute_distance(static_cast<double>(a[axis]), static_cast<double>(b[axis]));
  p.d_out = static_cast<double>(edit_distance(out_a, out_b));
  p.pd = program_derivative(p.d_in, p.d_out);
  p.input_a = std::move(a);
  p.input_b = std::move(b);
  return p;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

ScanGrid boundary_scan(const minipy::Program& program, const BoundaryScanSpec& spec) {
  ScanGrid grid;
  grid.xs = spec.x.values();
  grid.ys = spec.y.values();
  const Layout layout = plan(program, spec);
  grid.inputs = layout.names;

  const std::size_t cells = grid.xs.size() * grid.ys.size();
  std::vector<std::vector<std::int64_t>> inputs;
  inputs.reserve(cells);
  grid.outputs.reserve(cells);
  for (std::int64_t y : grid.ys) {
    for (std::int64_t x : grid.xs) {
      std::vector<std::int64_t> input = layout.base;
      input[layout.x] = x;
      input[layout.y] = y;
      grid.outputs.push_back(evaluate(program, spec.method, layout, input));
      inputs.push_back(std::move(input));
    }
  }

  grid.right.resize(cells);
  grid.up.resize(cells);
  for (std::size_t yi = 0; yi < grid.ys.size(); ++yi) {
    for (std::size_t xi = 0; xi < grid.xs.size(); ++xi) {
      const std::size_t here = grid.index(xi, yi);
      if (xi + 1 < grid.xs.size()) {
        const std::size_t there = grid.index(xi + 1, yi);
        grid.right[here] = derive(inputs[here], inputs[there], layout.x, grid.outputs[here],
                                  grid.outputs[there]);
      }
      if (yi + 1 < grid.ys.size()) {
        const std::size_t there = grid.index(xi, yi + 1);
        grid.up[here] = derive(inputs[here], inputs[there], layout.y, grid.outputs[here],
                               grid.outputs[there]);
      }
    }
  }
  return grid;
}

std::string scan_csv(const ScanGrid& grid) {
  std::ostringstream out;
  out << "x,y,output,pd_right,pd_up\n";
  for (std::size_t yi = 0; yi < grid.ys.size(); ++yi) {
    for (std::size_t xi = 0; xi < grid.xs.size(); ++xi) {
      const std::size_t i = grid.index(xi, yi);
      out << grid.xs[xi] << ',' << grid.ys[yi] << ',' << csv_field(grid.outputs[i]) << ',';
      if (grid.right[i]) out << format_number(grid.right[i]->pd);
      out << ',';
      if (grid.up[i]) out << format_number(grid.up[i]->pd);
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace suitegen
