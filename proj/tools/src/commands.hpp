#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "divergence.hpp"
#include "phyllo/tessellation.hpp"
#include "phyllo/verify.hpp"

namespace phyllo::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

struct PlotRange {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
};

PlotRange parse_range(std::string_view text);

/// [-R, R]^2 with R = 36^(2 alpha): 1296, 36 and 6 for alpha = 1, 1/2, 1/4.
PlotRange default_range(double alpha);

struct RunConfig {
  double alpha = 0.5;
  std::string divergence = "2*pi*golden";
  std::optional<std::int64_t> j_min;
  std::optional<std::int64_t> j_max;
  std::optional<PlotRange> range;
  std::string out;  // empty: stdout
  std::uint64_t seed = 2024;
  unsigned threads = 0;
  std::size_t samples = 1000;
  double bound_scale = 1.0;
  std::optional<double> mu;
  std::optional<std::int64_t> j;
  bool json = false;
};

/// Shortest decimal string that reads back to the same double.
std::string format_real(double value);

void write_areas_csv(std::ostream& os, const std::vector<CellRecord>& cells);

/// Cells of `cfg` meeting `range`, clipped to it.
void write_tessellation_svg(std::ostream& os, const SpiralConfig& cfg, const PlotRange& range,
                            std::int64_t j_min, std::int64_t j_max, unsigned threads);
/// Largest index whose cell can meet `range`.
std::int64_t last_index_reaching(const SpiralConfig& cfg, const PlotRange& range);

int cmd_tessellate(const RunConfig& rc, std::ostream& os);
int cmd_areas(const RunConfig& rc, std::ostream& os);
int cmd_verify(const RunConfig& rc, std::ostream& os);
int cmd_parastichy(const RunConfig& rc, std::ostream& os);

}  // namespace phyllo::cli
