#include "difflearn/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "difflearn/errors.hpp"

namespace difflearn {

using nlohmann::json;

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Typed access to a JSON config with field paths and line numbers in errors.
class ConfigReader {
 public:
  explicit ConfigReader(const std::string& text) : text_(text) {}

  int line_of(const std::string& path) const {
    std::size_t pos = 0;
    std::size_t start = 0;
    while (start <= path.size()) {
      std::size_t dot = path.find('.', start);
      if (dot == std::string::npos) dot = path.size();
      const std::string needle = "\"" + path.substr(start, dot - start) + "\"";
      const std::size_t found = text_.find(needle, pos);
      if (found == std::string::npos) return 0;
      pos = found;
      start = dot + 1;
    }
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + pos, '\n'));
  }

  [[noreturn]] void fail(const std::string& path, const std::string& reason) const {
    throw ConfigInvalid(path, reason, line_of(path));
  }

  void allow(const json& obj, const std::string& prefix,
             std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(prefix, "must be an object");
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; }))
        fail(join(prefix, key), "unknown key");
    }
  }

  double real(const json& obj, const std::string& prefix, const char* key, double fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj[key];
    if (!v.is_number()) fail(join(prefix, key), "must be a number");
    return v.get<double>();
  }

  std::uint64_t whole(const json& obj, const std::string& prefix, const char* key,
                      std::uint64_t fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj[key];
    if (!v.is_number_unsigned()) fail(join(prefix, key), "must be a non-negative integer");
    return v.get<std::uint64_t>();
  }

  std::uint64_t required_whole(const json& obj, const std::string& prefix, const char* key) const {
    if (!obj.contains(key)) fail(join(prefix, key), "required");
    return whole(obj, prefix, key, 0);
  }

  bool boolean(const json& obj, const std::string& prefix, const char* key, bool fallback) const {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) fail(join(prefix, key), "must be a boolean");
    return obj[key].get<bool>();
  }

  std::string text(const json& obj, const std::string& prefix, const char* key,
                   const std::string& fallback) const {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) fail(join(prefix, key), "must be a string");
    return obj[key].get<std::string>();
  }

  std::array<double, 2> pair(const json& obj, const std::string& prefix, const char* key,
                             std::array<double, 2> fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      fail(join(prefix, key), "must be a two-element numeric array");
    return {v[0].get<double>(), v[1].get<double>()};
  }

 private:
  const std::string& text_;
};

KernelConfig read_kernel(const ConfigReader& r, const json& obj, const KernelConfig& fallback) {
  const std::string p = "kernel";
  r.allow(obj, p, {"kind", "bandwidth"});
  if (r.text(obj, p, "kind", "box") != "box") r.fail("kernel.kind", "only \"box\" is supported");
  if (!obj.contains("bandwidth")) return fallback;
  const json& bw = obj["bandwidth"];
  const std::string bp = "kernel.bandwidth";
  r.allow(bw, bp, {"mode", "h", "h_min", "h_max", "search"});
  const std::string mode = r.text(bw, bp, "mode", "per_query_optimal");
  if (mode == "fixed") {
    if (!bw.contains("h")) r.fail(bp + ".h", "required");
    return KernelConfig::fixed(r.real(bw, bp, "h", 0.0));
  }
  if (mode != "per_query_optimal") r.fail(bp + ".mode", "must be \"fixed\" or \"per_query_optimal\"");
  const std::string search = r.text(bw, bp, "search", "breakpoint");
  BandwidthSearch s = BandwidthSearch::Breakpoint;
  if (search == "golden_section")
    s = BandwidthSearch::GoldenSection;
  else if (search != "breakpoint")
    r.fail(bp + ".search", "must be \"breakpoint\" or \"golden_section\"");
  return KernelConfig::optimal(r.real(bw, bp, "h_min", 0.01), r.real(bw, bp, "h_max", 2.0), s);
}

TopologySpec read_topology(const ConfigReader& r, const json& obj, TopologySpec spec) {
  const std::string p = "topology";
  r.allow(obj, p, {"kind", "radius", "edge_probability", "max_attempts"});
  const std::string kind = r.text(obj, p, "kind", "random_geometric");
  if (kind == "random_geometric")
    spec.kind = TopologyKind::RandomGeometric;
  else if (kind == "erdos_renyi")
    spec.kind = TopologyKind::ErdosRenyi;
  else if (kind == "star")
    spec.kind = TopologyKind::Star;
  else if (kind == "ring")
    spec.kind = TopologyKind::Ring;
  else
    r.fail("topology.kind", "must be random_geometric, erdos_renyi, star or ring");
  spec.radius = r.real(obj, p, "radius", spec.radius);
  spec.edge_probability = r.real(obj, p, "edge_probability", spec.edge_probability);
  spec.max_attempts = r.whole(obj, p, "max_attempts", spec.max_attempts);
  return spec;
}

Phenomenon read_phenomenon(const ConfigReader& r, const json& obj, double lipschitz) {
  const std::string p = "phenomenon";
  r.allow(obj, p, {"kind", "a", "b", "c", "points", "lipschitz"});
  Phenomenon out;
  out.lipschitz = r.real(obj, p, "lipschitz", lipschitz);
  const std::string kind = r.text(obj, p, "kind", "sin_exp_offset");
  if (kind == "sin_exp_offset") {
    out.shape = SinExpOffset{r.real(obj, p, "a", 1.0), r.real(obj, p, "b", -0.2),
                             r.real(obj, p, "c", 3.0)};
  } else if (kind == "tabulated") {
    if (!obj.contains("points") || !obj["points"].is_array())
      r.fail("phenomenon.points", "required array of [x, m] pairs");
    TabulatedLipschitz table;
    for (const auto& pt : obj["points"]) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
        r.fail("phenomenon.points", "entries must be [x, m] pairs");
      table.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    out.shape = std::move(table);
  } else {
    r.fail("phenomenon.kind", "must be \"sin_exp_offset\" or \"tabulated\"");
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto end = text.begin() + static_cast<long>(std::min(e.byte, text.size()));
    const int line = 1 + static_cast<int>(std::count(text.begin(), end, '\n'));
    throw ConfigInvalid("<document>", "malformed JSON", line);
  }

  const ConfigReader r(text);
  r.allow(root, "",
          {"node_count", "horizon", "domain", "delta", "lipschitz", "seed", "kernel", "topology",
           "input", "noise", "request", "phenomenon", "store_capacity", "metrics", "outputs"});

  ScenarioConfig c;
  c.seed = r.required_whole(root, "", "seed");
  c.node_count = r.whole(root, "", "node_count", c.node_count);
  const std::uint64_t horizon = r.whole(root, "", "horizon", c.horizon);
  if (horizon > 100'000'000) r.fail("horizon", "too large");
  c.horizon = static_cast<Round>(horizon);
  const auto domain = r.pair(root, "", "domain", {c.domain.lo, c.domain.hi});
  c.domain = {domain[0], domain[1]};
  c.delta = r.real(root, "", "delta", c.delta);
  c.lipschitz = r.real(root, "", "lipschitz", c.lipschitz);
  c.store_capacity = r.whole(root, "", "store_capacity", c.store_capacity);

  if (root.contains("kernel")) c.kernel = read_kernel(r, root["kernel"], c.kernel);
  if (root.contains("topology")) c.topology = read_topology(r, root["topology"], c.topology);

  if (root.contains("input")) {
    const json& in = root["input"];
    r.allow(in, "input", {"mean_range", "std_range"});
    c.input.mean_range = r.pair(in, "input", "mean_range", c.input.mean_range);
    c.input.std_range = r.pair(in, "input", "std_range", c.input.std_range);
  }
  if (root.contains("noise")) {
    const json& nz = root["noise"];
    r.allow(nz, "noise", {"kind", "scale_range"});
    const std::string kind = r.text(nz, "noise", "kind", "gaussian");
    if (kind == "gaussian")
      c.noise.kind = NoiseKind::Gaussian;
    else if (kind == "uniform_bounded")
      c.noise.kind = NoiseKind::UniformBounded;
    else
      r.fail("noise.kind", "must be \"gaussian\" or \"uniform_bounded\"");
    c.noise.scale_range = r.pair(nz, "noise", "scale_range", c.noise.scale_range);
  }
  if (root.contains("request")) {
    const json& rq = root["request"];
    r.allow(rq, "request", {"strategy", "grid_size"});
    const std::string s = r.text(rq, "request", "strategy", "uniform");
    if (s == "uniform")
      c.request.kind = RequestStrategyKind::UniformOverD;
    else if (s == "max_bound_point")
      c.request.kind = RequestStrategyKind::MaxBoundPoint;
    else
      r.fail("request.strategy", "must be \"uniform\" or \"max_bound_point\"");
    c.request.grid_size = r.whole(rq, "request", "grid_size", c.request.grid_size);
  }
  c.phenomenon = root.contains("phenomenon")
                     ? read_phenomenon(r, root["phenomenon"], c.lipschitz)
                     : Phenomenon{SinExpOffset{}, c.lipschitz};

  if (root.contains("metrics")) {
    const json& m = root["metrics"];
    const std::string p = "metrics";
    r.allow(m, p, {"grid_rounds", "evolution_every", "grid_size", "evolution_deltas"});
    if (m.contains("grid_rounds")) {
      if (!m["grid_rounds"].is_array()) r.fail("metrics.grid_rounds", "must be an array");
      c.metrics.grid_rounds.clear();
      for (const auto& v : m["grid_rounds"]) {
        if (!v.is_number_unsigned()) r.fail("metrics.grid_rounds", "entries must be round indices");
        c.metrics.grid_rounds.push_back(v.get<Round>());
      }
    }
    c.metrics.evolution_every = static_cast<Round>(r.whole(m, p, "evolution_every", c.metrics.evolution_every));
    c.metrics.grid_size = r.whole(m, p, "grid_size", c.metrics.grid_size);
    if (m.contains("evolution_deltas")) {
      if (!m["evolution_deltas"].is_array()) r.fail("metrics.evolution_deltas", "must be an array");
      c.metrics.evolution_deltas.clear();
      for (const auto& v : m["evolution_deltas"]) {
        if (!v.is_number()) r.fail("metrics.evolution_deltas", "entries must be numbers");
        c.metrics.evolution_deltas.push_back(v.get<double>());
      }
    }
  }
  if (root.contains("outputs")) {
    const json& o = root["outputs"];
    const std::string p = "outputs";
    r.allow(o, p, {"grid_csv", "evolution_csv", "topology", "message_log", "plots"});
    c.outputs.grid_csv = r.text(o, p, "grid_csv", c.outputs.grid_csv);
    c.outputs.evolution_csv = r.text(o, p, "evolution_csv", c.outputs.evolution_csv);
    c.outputs.topology = r.text(o, p, "topology", c.outputs.topology);
    c.outputs.message_log = r.text(o, p, "message_log", c.outputs.message_log);
    c.outputs.plots = r.boolean(o, p, "plots", c.outputs.plots);
  }

  try {
    c.validate();
  } catch (const ConfigInvalid& e) {
    throw ConfigInvalid(e.field(), e.reason(), r.line_of(e.field()));
  }
  return c;
}

ScenarioConfig load_config(const std::string& path) { return parse_config(read_text(path)); }

std::string config_to_json(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["node_count"] = c.node_count;
  j["horizon"] = c.horizon;
  j["domain"] = {c.domain.lo, c.domain.hi};
  j["delta"] = c.delta;
  j["lipschitz"] = c.lipschitz;
  j["seed"] = c.seed;

  nlohmann::ordered_json bw;
  if (const auto* f = std::get_if<FixedBandwidth>(&c.kernel.bandwidth)) {
    bw["mode"] = "fixed";
    bw["h"] = f->h;
  } else {
    const auto& o = std::get<OptimalBandwidth>(c.kernel.bandwidth);
    bw["mode"] = "per_query_optimal";
    bw["h_min"] = o.h_min;
    bw["h_max"] = o.h_max;
    bw["search"] = o.search == BandwidthSearch::Breakpoint ? "breakpoint" : "golden_section";
  }
  j["kernel"] = {{"kind", "box"}, {"bandwidth", bw}};

  static constexpr const char* kTopologyNames[] = {"random_geometric", "erdos_renyi", "star", "ring"};
  j["topology"] = {{"kind", kTopologyNames[static_cast<int>(c.topology.kind)]},
                   {"radius", c.topology.radius},
                   {"edge_probability", c.topology.edge_probability},
                   {"max_attempts", c.topology.max_attempts}};
  j["input"] = {{"mean_range", c.input.mean_range}, {"std_range", c.input.std_range}};
  j["noise"] = {{"kind", c.noise.kind == NoiseKind::Gaussian ? "gaussian" : "uniform_bounded"},
                {"scale_range", c.noise.scale_range}};
  j["request"] = {
      {"strategy", c.request.kind == RequestStrategyKind::UniformOverD ? "uniform" : "max_bound_point"},
      {"grid_size", c.request.grid_size}};

  nlohmann::ordered_json ph;
  if (const auto* s = std::get_if<SinExpOffset>(&c.phenomenon.shape)) {
    ph["kind"] = "sin_exp_offset";
    ph["a"] = s->a;
    ph["b"] = s->b;
    ph["c"] = s->c;
  } else {
    ph["kind"] = "tabulated";
    ph["points"] = nlohmann::ordered_json::array();
    for (const auto& [x, m] : std::get<TabulatedLipschitz>(c.phenomenon.shape).points)
      ph["points"].push_back({x, m});
  }
  ph["lipschitz"] = c.phenomenon.lipschitz;
  j["phenomenon"] = ph;
  j["store_capacity"] = c.store_capacity;
  j["metrics"] = {{"grid_rounds", c.metrics.grid_rounds},
                  {"evolution_every", c.metrics.evolution_every},
                  {"grid_size", c.metrics.grid_size},
                  {"evolution_deltas", c.metrics.evolution_deltas}};
  j["outputs"] = {{"grid_csv", c.outputs.grid_csv},
                  {"evolution_csv", c.outputs.evolution_csv},
                  {"topology", c.outputs.topology},
                  {"message_log", c.outputs.message_log},
                  {"plots", c.outputs.plots}};
  return j.dump(2) + "\n";
}

void save_config(const ScenarioConfig& config, const std::string& path) {
  write_text(path, config_to_json(config));
}

// ---- CSV ----

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const char* source_name(const GridPoint& p) {
  if (!p.usable) return "none";
  return p.source == ExploitSource::Local ? "local" : "acquired";
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw IOFailure("bad numeric field: " + s);
  return v;
}

std::uint64_t parse_whole(const std::string& s) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) throw IOFailure("bad integer field: " + s);
  return v;
}

// Lines after a header that must match exactly.
std::vector<std::string> body_lines(const std::string& text, const char* header) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != header) throw IOFailure("unexpected CSV header");
  std::vector<std::string> lines;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

}  // namespace

std::string grid_csv(std::span<const GridReport> reports) {
  std::string out = std::string(kGridHeader) + "\n";
  for (const auto& r : reports) {
    for (const auto& p : r.points) {
      out += std::to_string(r.round) + "," + std::to_string(r.agent) + "," + format_real(p.x) +
             "," + format_real(p.m_true) + "," + format_real(p.m_hat) + "," +
             format_real(p.bound) + "," + source_name(p) + "," + format_real(p.abs_error) + "\n";
    }
  }
  return out;
}

std::string evolution_csv(std::span<const EvolutionRow> rows) {
  std::string out = std::string(kEvolutionHeader) + "\n";
  for (const auto& r : rows) {
    out += std::to_string(r.round) + "," + std::to_string(r.agent) + "," + format_real(r.delta) +
           "," + format_real(r.mean_bound) + "," + format_real(r.max_bound) + "\n";
  }
  return out;
}

std::vector<GridReport> parse_grid_csv(const std::string& text) {
  std::vector<GridReport> reports;
  for (const auto& line : body_lines(text, kGridHeader)) {
    const auto cells = split(line);
    if (cells.size() != 8) throw IOFailure("grid row needs 8 fields: " + line);
    const auto round = static_cast<Round>(parse_whole(cells[0]));
    const auto agent = static_cast<AgentId>(parse_whole(cells[1]));
    if (reports.empty() || reports.back().round != round || reports.back().agent != agent)
      reports.push_back({round, agent, {}});
    GridPoint p;
    p.x = parse_real(cells[2]);
    p.m_true = parse_real(cells[3]);
    p.m_hat = parse_real(cells[4]);
    p.bound = parse_real(cells[5]);
    if (cells[6] == "local") {
      p.source = ExploitSource::Local;
    } else if (cells[6] == "acquired") {
      p.source = ExploitSource::Acquired;
    } else if (cells[6] == "none") {
      p.source = ExploitSource::Local;
      p.usable = false;
    } else {
      throw IOFailure("unknown source tag: " + cells[6]);
    }
    p.abs_error = parse_real(cells[7]);
    reports.back().points.push_back(p);
  }
  return reports;
}

std::vector<EvolutionRow> parse_evolution_csv(const std::string& text) {
  std::vector<EvolutionRow> rows;
  for (const auto& line : body_lines(text, kEvolutionHeader)) {
    const auto cells = split(line);
    if (cells.size() != 5) throw IOFailure("evolution row needs 5 fields: " + line);
    rows.push_back({static_cast<Round>(parse_whole(cells[0])),
                    static_cast<AgentId>(parse_whole(cells[1])), parse_real(cells[2]),
                    parse_real(cells[3]), parse_real(cells[4])});
  }
  return rows;
}

namespace {

std::string optional_real(double v) { return std::isnan(v) ? "" : format_real(v); }

std::string lab_parameters(const LabRow& r) {
  return r.test + "," + optional_real(r.t) + "," + optional_real(r.sigma) + "," +
         optional_real(r.delta) + "," + optional_real(r.lambda) + "," + optional_real(r.x) + "," +
         optional_real(r.h) + "," + std::to_string(r.replications) + "," + std::to_string(r.seed);
}

}  // namespace

std::string LabRow::config_hash() const {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : lab_parameters(*this)) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string lab_csv(std::span<const LabRow> rows) {
  std::string out = std::string(kLabHeader) + "\n";
  for (const auto& r : rows)
    out += r.config_hash() + "," + lab_parameters(r) + "," + optional_real(r.value) + "," +
           optional_real(r.std_error) + "\n";
  return out;
}

void write_text(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IOFailure("cannot open " + path + " for writing");
  file << content;
  if (!file) throw IOFailure("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IOFailure("cannot open " + path);
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

// ---- plots ----

namespace {

struct Series {
  std::vector<std::pair<double, double>> points;
  const char* color;
  const char* label;
};

std::string line_chart(const std::string& title, const std::vector<Series>& series) {
  constexpr double kWidth = 640, kHeight = 400, kMargin = 50;
  double x_lo = kInfinity, x_hi = -kInfinity, y_lo = kInfinity, y_hi = -kInfinity;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  if (!(x_lo < x_hi)) x_hi = x_lo + 1.0;
  if (!(y_lo < y_hi)) y_hi = y_lo + 1.0;
  auto sx = [&](double x) { return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin); };
  auto sy = [&](double y) {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kMargin << "\" y=\"20\" font-size=\"14\">" << title << "</text>\n"
      << "<text x=\"" << kMargin << "\" y=\"" << kHeight - 10 << "\" font-size=\"11\">x: "
      << format_real(x_lo) << " .. " << format_real(x_hi) << "   y: " << format_real(y_lo)
      << " .. " << format_real(y_hi) << "</text>\n";
  int legend = 0;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" points=\"";
    for (const auto& [x, y] : s.points)
      if (std::isfinite(x) && std::isfinite(y)) svg << sx(x) << ',' << sy(y) << ' ';
    svg << "\"/>\n<text x=\"" << kWidth - 150 << "\" y=\"" << 20 + 14 * legend++
        << "\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

std::string grid_plot_svg(const GridReport& report) {
  Series truth{{}, "black", "m(x)"}, estimate{{}, "steelblue", "estimate"},
      upper{{}, "darkorange", "estimate + bound"}, lower{{}, "darkorange", "estimate - bound"};
  for (const auto& p : report.points) {
    truth.points.emplace_back(p.x, p.m_true);
    if (!p.usable) continue;
    estimate.points.emplace_back(p.x, p.m_hat);
    upper.points.emplace_back(p.x, p.m_hat + p.bound);
    lower.points.emplace_back(p.x, p.m_hat - p.bound);
  }
  return line_chart("agent " + std::to_string(report.agent) + ", round " +
                        std::to_string(report.round),
                    {truth, estimate, upper, lower});
}

std::string evolution_plot_svg(std::span<const EvolutionRow> rows, AgentId agent) {
  static constexpr const char* kColors[] = {"steelblue", "darkorange", "seagreen", "crimson",
                                            "purple"};
  std::vector<double> deltas;
  for (const auto& r : rows)
    if (r.agent == agent && std::find(deltas.begin(), deltas.end(), r.delta) == deltas.end())
      deltas.push_back(r.delta);
  std::vector<Series> series;
  std::vector<std::string> labels;
  labels.reserve(deltas.size());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    labels.push_back("delta=" + format_real(deltas[i]));
    Series s{{}, kColors[i % 5], labels.back().c_str()};
    for (const auto& r : rows)
      if (r.agent == agent && r.delta == deltas[i]) s.points.emplace_back(r.round, r.max_bound);
    series.push_back(std::move(s));
  }
  return line_chart("max bound over grid, agent " + std::to_string(agent), series);
}

}  // namespace difflearn
