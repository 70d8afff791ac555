#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "suitegen/minipy.hpp"

namespace suitegen {

class ScanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DistanceKind { EditDistance, AbsoluteNumeric, Euclidean };

/// Levenshtein distance: insertions, deletions and substitutions cost 1.
std::size_t edit_distance(std::string_view a, std::string_view b);
double absolute_distance(double a, double b);
double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// d_out / d_in. Throws std::invalid_argument unless d_in > 0 and d_out >= 0.
double program_derivative(double d_in, double d_out);

/// Derivative between two inputs that differ only along one axis.
struct DerivativePoint {
  std::vector<std::int64_t> input_a;
  std::vector<std::int64_t> input_b;
  double d_in = 0.0;
  double d_out = 0.0;
  double pd = 0.0;
};

struct ScanAxis {
  std::string parameter;
  std::int64_t first = 0;
  std::int64_t last = 0;
  std::int64_t step = 1;

  std::vector<std::int64_t> values() const;
};

/// Construct the class, then call `method`. Inputs are named after the
/// constructor and method parameters; each is either on an axis or fixed.
struct BoundaryScanSpec {
  std::string method;
  ScanAxis x;
  ScanAxis y;
  std::map<std::string, std::int64_t> fixed;
};

struct ScanGrid {
  std::vector<std::string> inputs;  // constructor params, then method params
  std::vector<std::int64_t> xs;
  std::vector<std::int64_t> ys;
  std::vector<std::string> outputs;                // row-major, y outer
  std::vector<std::optional<DerivativePoint>> right;  // towards x + step
  std::vector<std::optional<DerivativePoint>> up;     // towards y + step

  std::size_t index(std::size_t xi, std::size_t yi) const { return yi * xs.size() + xi; }
  const std::string& output_at(std::size_t xi, std::size_t yi) const {
    return outputs[index(xi, yi)];
  }
};

ScanGrid boundary_scan(const minipy::Program& program, const BoundaryScanSpec& spec);

/// `x,y,output,pd_right,pd_up`, one row per grid point, row-major.
std::string scan_csv(const ScanGrid& grid);

}  // namespace suitegen
