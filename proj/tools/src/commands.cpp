#include "commands.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "phyllo/parallel.hpp"

namespace phyllo::cli {

PlotRange parse_range(std::string_view text) {
  std::array<double, 4> v{};
  std::size_t pos = 0;
  for (std::size_t n = 0; n < 4; ++n) {
    const std::size_t end = n < 3 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw std::invalid_argument("--range needs x0,x1,y0,y1");
    const std::string_view field = text.substr(pos, end - pos);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v[n]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v[n]))
      throw std::invalid_argument("--range: bad number '" + std::string(field) + "'");
    pos = end + 1;
  }
  if (!(v[0] < v[1]) || !(v[2] < v[3])) throw std::invalid_argument("--range must be nonempty (x0 < x1, y0 < y1)");
  return {v[0], v[1], v[2], v[3]};
}

PlotRange default_range(double alpha) {
  const double r = std::pow(36.0, 2.0 * alpha);
  return {-r, r, -r, r};
}

std::string format_real(double value) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string fixed3(double value) {
  std::array<char, 48> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 3);
  std::string s(buf.data(), res.ptr);
  if (s == "-0.000") s = "0.000";
  return s;
}

ConvexPolygon clip_to_range(const ConvexPolygon& poly, const PlotRange& r) {
  ConvexPolygon out = clip_by_line(poly, {r.x1, 0.0}, {1.0, 0.0});
  out = clip_by_line(out, {r.x0, 0.0}, {-1.0, 0.0});
  out = clip_by_line(out, {0.0, r.y1}, {0.0, 1.0});
  return clip_by_line(out, {0.0, r.y0}, {0.0, -1.0});
}

const char* fill_for_sides(std::size_t sides) {
  switch (sides) {
    case 4: return "#9ecae1";
    case 5: return "#fdae6b";
    case 6: return "#f7f7f7";
    case 7: return "#a1d99b";
    default: return "#bcbddc";
  }
}


}  // namespace

void write_areas_csv(std::ostream& os, const std::vector<CellRecord>& cells) {
  os << "j,area,normalized_area\n";
  for (const auto& c : cells) os << c.j << ',' << format_real(c.area) << ',' << format_real(c.normalized_area) << '\n';
}

std::int64_t last_index_reaching(const SpiralConfig& cfg, const PlotRange& range) {
  const double reach = std::max(std::hypot(range.x0, range.y0),
                                std::max(std::hypot(range.x0, range.y1),
                                         std::max(std::hypot(range.x1, range.y0), std::hypot(range.x1, range.y1))));
  const SpiralPointSet set = SpiralPointSet::standard(cfg);
  constexpr std::int64_t kLimit = 50'000'000;
  for (std::int64_t j = 1; j < kLimit; ++j) {
    if (set.modulus(j) - 6.0 * std::sqrt(set.local_area_scale(j)) > reach) return j;
  }
  throw std::invalid_argument("plot range needs more than 5e7 cells");
}

void write_tessellation_svg(std::ostream& os, const SpiralConfig& cfg, const PlotRange& range, std::int64_t j_min,
                            std::int64_t j_max, unsigned threads) {
  const double w = range.x1 - range.x0;
  const double h = range.y1 - range.y0;
  const double px = 800.0 / std::max(w, h);
  const SpiralPointSet set = SpiralPointSet::standard(cfg);

  const auto n = static_cast<std::size_t>(j_max - j_min + 1);
  // Each worker renders its own path element; the coordinator writes them in index order.
  const auto paths = parallel_map(n, threads, [&](std::size_t i) -> std::string {
    const CellRecord rec = cell_in_set(set, j_min + static_cast<std::int64_t>(i));
    const ConvexPolygon clipped = clip_to_range(rec.cell, range);
    if (clipped.empty() || !(area(clipped) > 0.0)) return {};
    std::string d;
    for (std::size_t k = 0; k < clipped.size(); ++k) {
      const PlanarPoint p = clipped.vertices[k];
      d += (k == 0 ? "M" : " L");
      d += fixed3((p.re - range.x0) * px);
      d += ',';
      d += fixed3((range.y1 - p.im) * px);
    }
    std::ostringstream el;
    el << "<path id=\"c" << rec.j << "\" fill=\"" << fill_for_sides(rec.cell.size()) << "\" d=\"" << d << " Z\"/>";
    return el.str();
  });

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
     << "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fixed3(w * px) << "\" height=\""
     << fixed3(h * px) << "\" viewBox=\"0 0 " << fixed3(w * px) << ' ' << fixed3(h * px) << "\">\n"
     << "<title>Voronoi cells, alpha=" << format_real(cfg.alpha()) << ", theta/2pi=" << format_real(cfg.turns())
     << "</title>\n"
     << "<g stroke=\"#252525\" stroke-width=\"0.5\" stroke-linejoin=\"round\">\n";
  for (const auto& p : paths)
    if (!p.empty()) os << p << '\n';
  os << "</g>\n</svg>\n";
}

int cmd_tessellate(const RunConfig& rc, std::ostream& os) {
  const SpiralConfig cfg = parse_divergence(rc.divergence).config(rc.alpha);
  const PlotRange range = rc.range.value_or(default_range(rc.alpha));
  const std::int64_t j_min = rc.j_min.value_or(0);
  const std::int64_t j_max = rc.j_max.value_or(last_index_reaching(cfg, range));
  if (j_min < 0 || j_max < j_min) throw std::invalid_argument("need 0 <= jmin <= jmax");
  write_tessellation_svg(os, cfg, range, j_min, j_max, rc.threads);
  return kOk;
}

int cmd_areas(const RunConfig& rc, std::ostream& os) {
  const SpiralConfig cfg = parse_divergence(rc.divergence).config(rc.alpha);
  const std::int64_t j_min = rc.j_min.value_or(1);
  const std::int64_t j_max = rc.j_max.value_or(10000);
  if (j_min < 0 || j_max < j_min) throw std::invalid_argument("need 0 <= jmin <= jmax");
  const auto cells = area_sweep(cfg, j_min, j_max, SweepOptions{rc.threads, false});
  write_areas_csv(os, cells);
  return kOk;
}

int cmd_verify(const RunConfig& rc, std::ostream& os) {
  VerifyOptions o;
  o.seed = rc.seed;
  o.samples = rc.samples;
  o.threads = rc.threads;
  o.bound_scale = rc.bound_scale;
  o.alpha = rc.alpha;
  const Divergence div = parse_divergence(rc.divergence);
  if (const auto* surd = std::get_if<QuadraticSurd>(&div.value))
    o.turns = *surd;
  else
    throw std::invalid_argument("verify needs a quadratic-irrational divergence (2*pi*golden or 2*pi*sqrt2)");
  if (rc.j_min) o.rate_j_min = *rc.j_min;
  if (rc.j_max) o.rate_j_max = *rc.j_max;

  const auto reports = run_all_checks(o);
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  bool all = true;
  for (const auto& r : reports) {
    nlohmann::ordered_json entry;
    entry["passed"] = r.passed;
    entry["samples"] = r.samples;
    entry["worst_margin"] = r.worst_margin;
    entry["seed"] = r.seed;
    entry["violations"] = r.violations;
    if (r.empirical_constant) entry["empirical_constant"] = *r.empirical_constant;
    doc[r.name] = std::move(entry);
    all = all && r.passed;
  }
  os << doc.dump(2) << '\n';
  return all ? kOk : kCheckFailed;
}

int cmd_parastichy(const RunConfig& rc, std::ostream& os) {
  if (rc.mu.has_value() == rc.j.has_value()) throw std::invalid_argument("parastichy needs exactly one of --mu, --j");
  const double mu = rc.mu ? *rc.mu : static_cast<double>(*rc.j);
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("index must be positive");
  const SpiralConfig cfg = parse_divergence(rc.divergence).config(rc.alpha);
  if (cfg.rational())
    throw std::domain_error("theta/2pi is rational; parastichy numbers need an irrational divergence");

  const LinearizationState ls = linearization(cfg, mu);
  const std::vector<std::int64_t>& predicted = ls.parastichy_numbers;

  const SpiralPointSet set = SpiralPointSet::shifted(cfg, mu);
  const CellRecord rec = cell_in_set(set, 0);
  std::vector<std::int64_t> empirical;
  for (auto n : rec.neighbors)
    if (!set.is_origin(n)) empirical.push_back(n < 0 ? -n : n);
  std::sort(empirical.begin(), empirical.end());
  empirical.erase(std::unique(empirical.begin(), empirical.end()), empirical.end());

  // On a transition the vanishing edge may survive numerically; two predicted
  // numbers then only need to be present.
  const bool rectangle = ls.state.shape == CellShape::rectangle;
  const bool agree = rectangle ? std::includes(empirical.begin(), empirical.end(), predicted.begin(), predicted.end())
                               : empirical == predicted;
  const std::string regime = rectangle ? "rectangle" : "hexagon";

  if (rc.json) {
    nlohmann::ordered_json doc;
    doc["alpha"] = rc.alpha;
    doc["divergence"] = rc.divergence;
    doc["mu"] = mu;
    doc["regime"] = regime;
    doc["i"] = ls.state.i;
    doc["k"] = static_cast<long long>(ls.state.k);
    doc["predicted"] = predicted;
    doc["empirical"] = empirical;
    doc["agree"] = agree;
    os << doc.dump(2) << '\n';
  } else {
    auto list = [](const std::vector<std::int64_t>& v) {
      std::string s;
      for (auto n : v) s += (s.empty() ? "" : " ") + std::to_string(n);
      return s;
    };
    os << "mu " << format_real(mu) << '\n'
       << "regime " << regime << " (i=" << ls.state.i << ", k=" << to_string(ls.state.k) << ")\n"
       << "predicted " << list(predicted) << '\n'
       << "empirical " << list(empirical) << '\n'
       << "agree " << (agree ? "yes" : "NO") << '\n';
  }
  return agree ? kOk : kCheckFailed;
}

}  // namespace phyllo::cli
