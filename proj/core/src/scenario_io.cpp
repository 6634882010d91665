#include "dsavoid/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace dsavoid {

namespace {

struct Entry {
  std::string value;
  std::size_t line;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, Entry> keys;
  std::vector<Entry> items;
};

using Document = std::map<std::string, Section>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> kSchema = {
      {"workspace", {"center", "axes", "power"}},
      {"obstacle", {"center", "axes", "power", "margin"}},
      {"ds", {"type", "gain", "target", "row0", "row1", "row2"}},
      {"flow", {"v_th", "sign_pref", "beta1", "beta2", "method"}},
      {"modulation", {"lambda_w", "eps_weight", "lambda_sign"}},
      {"integrator", {"dt", "max_steps", "goal_tol", "guard", "record_stride"}},
      {"grid", {"min", "max", "resolution"}},
      {"starts", {}},
  };
  return kSchema;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<long long> to_integer(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<std::vector<std::string_view>> to_tuple(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return std::nullopt;
  s = s.substr(1, s.size() - 2);
  std::vector<std::string_view> parts;
  while (true) {
    const auto comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

// Typed accessors over a parsed document. Syntax problems become ParseError at
// the entry's line; range problems are raised by the caller as ValidationError.
class Reader {
 public:
  Reader(const Section& section) : section_(section) {}

  bool has(const std::string& key) const { return section_.keys.count(key) != 0; }

  const Entry& entry(const std::string& key) const {
    const auto it = section_.keys.find(key);
    if (it == section_.keys.end()) throw ValidationError(key, "is required");
    return it->second;
  }

  double real(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }
  double real(const std::string& key) const {
    const Entry& e = entry(key);
    const auto v = to_real(e.value);
    if (!v || !std::isfinite(*v)) throw ParseError(e.line, key + ": expected a finite number");
    return *v;
  }

  long long integer(const std::string& key, long long fallback) const {
    if (!has(key)) return fallback;
    const Entry& e = entry(key);
    const auto v = to_integer(e.value);
    if (!v) throw ParseError(e.line, key + ": expected an integer");
    return *v;
  }

  Vec3 vec3(const std::string& key, const Vec3& fallback) const {
    return has(key) ? vec3(key) : fallback;
  }
  Vec3 vec3(const std::string& key) const { return parse_vec3(entry(key), key); }

  std::array<long long, 3> int3(const std::string& key) const {
    const Entry& e = entry(key);
    const auto parts = to_tuple(e.value);
    if (!parts || parts->size() != 3) throw ParseError(e.line, key + ": expected (i, j, k)");
    std::array<long long, 3> out{};
    for (int i = 0; i < 3; ++i) {
      const auto v = to_integer((*parts)[i]);
      if (!v) throw ParseError(e.line, key + ": expected integer components");
      out[i] = *v;
    }
    return out;
  }

  std::string word(const std::string& key, const std::string& fallback) const {
    return has(key) ? std::string(trim(entry(key).value)) : fallback;
  }

  static Vec3 parse_vec3(const Entry& e, const std::string& key) {
    const auto parts = to_tuple(e.value);
    if (!parts || parts->size() != 3) throw ParseError(e.line, key + ": expected (x, y, z)");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      const auto v = to_real((*parts)[i]);
      if (!v || !std::isfinite(*v)) throw ParseError(e.line, key + ": expected finite components");
      out[i] = *v;
    }
    return out;
  }

 private:
  const Section& section_;
};

Document parse_document(std::string_view text) {
  Document doc;
  std::string current;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!schema().count(current)) throw ParseError(line_no, "unknown section [" + current + "]");
      if (doc.count(current)) throw ParseError(line_no, "duplicate section [" + current + "]");
      doc[current].line = line_no;
      continue;
    }
    if (current.empty()) throw ParseError(line_no, "content before the first section");

    Section& section = doc[current];
    if (current == "starts") {
      section.items.push_back({std::string(line), line_no});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!schema().at(current).count(key)) {
      throw ParseError(line_no, "unknown key '" + key + "' in [" + current + "]");
    }
    if (section.keys.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
    section.keys[key] = {value, line_no};
  }
  return doc;
}

void apply_overrides(Document& doc, const std::vector<Override>& overrides) {
  for (const Override& o : overrides) {
    const auto dot = o.key.find('.');
    if (dot == std::string::npos) throw ValidationError(o.key, "override key must be section.key");
    const std::string section = o.key.substr(0, dot);
    const std::string key = o.key.substr(dot + 1);
    const auto it = schema().find(section);
    if (it == schema().end() || !it->second.count(key)) {
      throw ValidationError(o.key, "not a scenario key");
    }
    doc[section].keys[key] = {o.value, 0};
  }
}

Superquadric read_body(const Section& section, bool obstacle) {
  Reader r(section);
  Superquadric body;
  body.center = obstacle ? r.vec3("center") : r.vec3("center", Vec3::Zero());
  body.axes = r.vec3("axes");
  const long long power = r.integer("power", 1);
  body.margin = obstacle ? r.real("margin", 0.0) : 0.0;
  if (power < 1) throw ValidationError("power", "must be ≥ 1");
  body.power = static_cast<int>(power);
  if ((body.axes.array() <= 0.0).any()) throw ValidationError("axes", "must be positive");
  if (body.margin < 0.0) throw ValidationError("margin", "must be non-negative");
  return body;
}

OriginalDs read_ds(const Section& section) {
  Reader r(section);
  const std::string type = r.word("type", "");
  if (type.empty()) throw ValidationError("type", "is required (radial or linear)");
  const Vec3 target = r.vec3("target");
  if (type == "radial") {
    for (const char* k : {"row0", "row1", "row2"}) {
      if (r.has(k)) throw ValidationError(k, "only valid for type = linear");
    }
    const double gain = r.real("gain", 1.0);
    if (!(gain > 0.0)) throw ValidationError("gain", "must be positive");
    return OriginalDs(ScaledRadial{gain, target});
  }
  if (type == "linear") {
    if (r.has("gain")) throw ValidationError("gain", "only valid for type = radial");
    Mat3 a;
    a.row(0) = r.vec3("row0").transpose();
    a.row(1) = r.vec3("row1").transpose();
    a.row(2) = r.vec3("row2").transpose();
    if (!is_hurwitz_stable_gain(a)) {
      throw ValidationError("ds", "gain matrix must have eigenvalues with positive real parts");
    }
    return OriginalDs(LinearAttractor{a, target});
  }
  throw ValidationError("type", "must be radial or linear");
}

FlowParams read_flow(const Section& section) {
  Reader r(section);
  FlowParams p;
  p.v_th = r.real("v_th", p.v_th);
  p.beta1 = r.real("beta1", p.beta1);
  p.beta2 = r.real("beta2", p.beta2);
  const std::string sign = r.word("sign_pref", "along");
  if (sign == "along") {
    p.sign_pref = SignPref::Along;
  } else if (sign == "opposite") {
    p.sign_pref = SignPref::Opposite;
  } else {
    throw ValidationError("sign_pref", "must be along or opposite");
  }
  const std::string method = r.word("method", "full");
  if (method == "full") {
    p.method = Method::Full;
  } else if (method == "obstacle_only") {
    p.method = Method::ObstacleOnly;
  } else if (method == "original") {
    p.method = Method::Original;
  } else {
    throw ValidationError("method", "must be full, obstacle_only or original");
  }
  if (!(p.v_th > 0.0)) throw ValidationError("v_th", "must be positive");
  if (!(p.beta1 > 0.0 && p.beta1 <= 1.0)) throw ValidationError("beta1", "must lie in (0, 1]");
  if (!(p.beta2 >= 1.0)) throw ValidationError("beta2", "must be ≥ 1");
  return p;
}

ModulationParams read_modulation(const Section& section) {
  Reader r(section);
  ModulationParams p;
  p.lambda_w = r.real("lambda_w", p.lambda_w);
  p.eps_weight = r.real("eps_weight", p.eps_weight);
  p.lambda_sign = r.real("lambda_sign", p.lambda_sign);
  if (!(p.lambda_w > 0.0 && p.lambda_w < 1.0)) throw ValidationError("lambda_w", "must lie in (0, 1)");
  if (!(p.eps_weight > 0.0)) throw ValidationError("eps_weight", "must be positive");
  if (p.lambda_sign != 1.0 && p.lambda_sign != -1.0) {
    throw ValidationError("lambda_sign", "must be 1 or -1");
  }
  return p;
}

IntegratorConfig read_integrator(const Section& section) {
  Reader r(section);
  IntegratorConfig c;
  c.dt = r.real("dt", c.dt);
  c.goal_tol = r.real("goal_tol", c.goal_tol);
  const long long max_steps = r.integer("max_steps", static_cast<long long>(c.max_steps));
  const long long stride = r.integer("record_stride", static_cast<long long>(c.record_stride));
  const std::string guard = r.word("guard", "on");
  if (guard == "on" || guard == "true") {
    c.guard = true;
  } else if (guard == "off" || guard == "false") {
    c.guard = false;
  } else {
    throw ValidationError("guard", "must be on or off");
  }
  if (!(c.dt > 0.0)) throw ValidationError("dt", "must be positive");
  if (!(c.goal_tol > 0.0)) throw ValidationError("goal_tol", "must be positive");
  if (max_steps < 1) throw ValidationError("max_steps", "must be ≥ 1");
  if (stride < 1) throw ValidationError("record_stride", "must be ≥ 1");
  c.max_steps = static_cast<std::size_t>(max_steps);
  c.record_stride = static_cast<std::size_t>(stride);
  return c;
}

GridSpec read_grid(const Section& section) {
  Reader r(section);
  GridSpec g;
  g.min = r.vec3("min", g.min);
  g.max = r.vec3("max", g.max);
  if (r.has("resolution")) {
    const auto res = r.int3("resolution");
    for (int i = 0; i < 3; ++i) {
      if (res[i] < 1) throw ValidationError("resolution", "components must be ≥ 1");
      g.resolution[i] = static_cast<std::size_t>(res[i]);
    }
  }
  for (int i = 0; i < 3; ++i) {
    if (g.max[i] < g.min[i]) throw ValidationError("max", "must be ≥ min componentwise");
  }
  return g;
}

std::string vec_text(const Vec3& v) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", v[0], v[1], v[2]);
  return buf;
}

std::string real_text(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

double csv_real(std::string_view s, std::size_t line) {
  const auto v = to_real(s);
  if (!v) throw ParseError(line, "expected a number, got '" + std::string(s) + "'");
  return *v;
}

}  // namespace

Override parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw ValidationError(std::string(text), "override must be key=value");
  }
  Override o{std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
  if (o.key.empty() || o.value.empty()) {
    throw ValidationError(std::string(text), "override must be key=value");
  }
  return o;
}

Scenario parse_scenario(std::string_view text, const std::vector<Override>& overrides) {
  Document doc = parse_document(text);
  apply_overrides(doc, overrides);

  if (!doc.count("workspace")) throw ValidationError("workspace", "section is required");
  if (!doc.count("ds")) throw ValidationError("ds", "section is required");

  Scenario sc;
  sc.workspace = read_body(doc.at("workspace"), false);
  if (doc.count("obstacle")) sc.obstacle = read_body(doc.at("obstacle"), true);
  sc.ds = read_ds(doc.at("ds"));
  if (doc.count("flow")) sc.flow = read_flow(doc.at("flow"));
  if (doc.count("modulation")) sc.modulation = read_modulation(doc.at("modulation"));
  if (doc.count("integrator")) sc.integrator = read_integrator(doc.at("integrator"));
  if (doc.count("grid")) sc.grid = read_grid(doc.at("grid"));

  if (doc.count("starts")) {
    for (const Entry& item : doc.at("starts").items) {
      sc.starts.push_back(Reader::parse_vec3(item, "starts"));
    }
  }
  if (sc.starts.empty()) throw ValidationError("starts", "at least one start is required");
  for (std::size_t i = 0; i < sc.starts.size(); ++i) {
    const std::string field = "starts[" + std::to_string(i) + "]";
    if (gamma(sc.workspace, sc.starts[i]) > 1.0) throw ValidationError(field, "outside workspace");
    if (sc.obstacle && gamma(*sc.obstacle, sc.starts[i]) < 1.0) {
      throw ValidationError(field, "inside obstacle");
    }
  }
  return sc;
}

std::string write_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "[workspace]\n"
      << "center = " << vec_text(sc.workspace.center) << "\n"
      << "axes = " << vec_text(sc.workspace.axes) << "\n"
      << "power = " << sc.workspace.power << "\n";
  if (sc.obstacle) {
    out << "\n[obstacle]\n"
        << "center = " << vec_text(sc.obstacle->center) << "\n"
        << "axes = " << vec_text(sc.obstacle->axes) << "\n"
        << "power = " << sc.obstacle->power << "\n"
        << "margin = " << real_text(sc.obstacle->margin) << "\n";
  }
  out << "\n[ds]\n";
  if (const auto* la = std::get_if<LinearAttractor>(&sc.ds.variant())) {
    out << "type = linear\n"
        << "target = " << vec_text(la->target) << "\n";
    for (int i = 0; i < 3; ++i) {
      out << "row" << i << " = " << vec_text(la->gain_matrix.row(i).transpose()) << "\n";
    }
  } else {
    const auto& sr = std::get<ScaledRadial>(sc.ds.variant());
    out << "type = radial\n"
        << "target = " << vec_text(sr.target) << "\n"
        << "gain = " << real_text(sr.gain) << "\n";
  }
  out << "\n[flow]\n"
      << "v_th = " << real_text(sc.flow.v_th) << "\n"
      << "sign_pref = " << to_token(sc.flow.sign_pref) << "\n"
      << "beta1 = " << real_text(sc.flow.beta1) << "\n"
      << "beta2 = " << real_text(sc.flow.beta2) << "\n"
      << "method = " << to_token(sc.flow.method) << "\n";
  out << "\n[modulation]\n"
      << "lambda_w = " << real_text(sc.modulation.lambda_w) << "\n"
      << "eps_weight = " << real_text(sc.modulation.eps_weight) << "\n"
      << "lambda_sign = " << real_text(sc.modulation.lambda_sign) << "\n";
  out << "\n[integrator]\n"
      << "dt = " << real_text(sc.integrator.dt) << "\n"
      << "max_steps = " << sc.integrator.max_steps << "\n"
      << "goal_tol = " << real_text(sc.integrator.goal_tol) << "\n"
      << "guard = " << (sc.integrator.guard ? "on" : "off") << "\n"
      << "record_stride = " << sc.integrator.record_stride << "\n";
  if (sc.grid) {
    out << "\n[grid]\n"
        << "min = " << vec_text(sc.grid->min) << "\n"
        << "max = " << vec_text(sc.grid->max) << "\n"
        << "resolution = (" << sc.grid->resolution[0] << ", " << sc.grid->resolution[1] << ", "
        << sc.grid->resolution[2] << ")\n";
  }
  out << "\n[starts]\n";
  for (const Vec3& s : sc.starts) out << vec_text(s) << "\n";
  return out.str();
}

std::vector<std::string> scenario_warnings(const Scenario& sc) {
  std::vector<std::string> warnings;
  const Vec3& target = sc.ds.target();
  if (gamma(sc.workspace, target) > 1.0) {
    warnings.emplace_back("target lies outside the workspace and cannot be reached");
  }
  if (sc.obstacle && gamma(*sc.obstacle, target) < 1.0) {
    warnings.emplace_back("target lies inside the obstacle and cannot be reached");
  }
  return warnings;
}

std::string format_real(double value) {
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  const double rounded = std::strtod(buf, nullptr);
  char shortest[32];
  const auto [ptr, ec] = std::to_chars(shortest, shortest + sizeof shortest, rounded);
  if (ec != std::errc()) return buf;
  return std::string(shortest, ptr);
}

void write_trajectory(const Trajectory& traj, std::ostream& sink) {
  sink << "t,x,y,z,vx,vy,vz,mode,gamma_o,gamma_w\n";
  for (const TrajectorySample& s : traj.samples) {
    sink << format_real(s.t) << ',' << format_real(s.xi[0]) << ',' << format_real(s.xi[1]) << ','
         << format_real(s.xi[2]) << ',' << format_real(s.v[0]) << ',' << format_real(s.v[1]) << ','
         << format_real(s.v[2]) << ',' << to_token(s.mode) << ','
         << (s.gamma_o ? format_real(*s.gamma_o) : std::string()) << ',' << format_real(s.gamma_w)
         << '\n';
  }
  if (!sink) throw Error(ErrorCode::IoError, "failed to write trajectory CSV");
}

void write_field(const std::vector<FieldSample>& samples, std::ostream& sink) {
  sink << "x,y,z,vx,vy,vz,mode\n";
  for (const FieldSample& s : samples) {
    sink << format_real(s.xi[0]) << ',' << format_real(s.xi[1]) << ',' << format_real(s.xi[2])
         << ',' << format_real(s.v[0]) << ',' << format_real(s.v[1]) << ',' << format_real(s.v[2])
         << ',' << (s.mode ? to_token(*s.mode) : std::string_view("invalid")) << '\n';
  }
  if (!sink) throw Error(ErrorCode::IoError, "failed to write field CSV");
}

Mode parse_mode_token(std::string_view token) {
  if (token == "free") return Mode::Free;
  if (token == "combined") return Mode::Combined;
  if (token == "intersect") return Mode::Intersection;
  throw Error(ErrorCode::InvalidInput, "unknown mode token '" + std::string(token) + "'");
}

std::vector<TrajectorySample> read_trajectory(std::istream& source) {
  std::vector<TrajectorySample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "t,x,y,z,vx,vy,vz,mode,gamma_o,gamma_w") throw ParseError(1, "unexpected header");
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 10) throw ParseError(line_no, "expected 10 fields");
    TrajectorySample s;
    s.t = csv_real(f[0], line_no);
    s.xi = Vec3(csv_real(f[1], line_no), csv_real(f[2], line_no), csv_real(f[3], line_no));
    s.v = Vec3(csv_real(f[4], line_no), csv_real(f[5], line_no), csv_real(f[6], line_no));
    s.mode = parse_mode_token(f[7]);
    if (!f[8].empty()) s.gamma_o = csv_real(f[8], line_no);
    s.gamma_w = csv_real(f[9], line_no);
    out.push_back(s);
  }
  return out;
}

std::vector<FieldSample> read_field(std::istream& source) {
  std::vector<FieldSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line_no == 1) {
      if (line != "x,y,z,vx,vy,vz,mode") throw ParseError(1, "unexpected header");
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 7) throw ParseError(line_no, "expected 7 fields");
    FieldSample s;
    s.xi = Vec3(csv_real(f[0], line_no), csv_real(f[1], line_no), csv_real(f[2], line_no));
    s.v = Vec3(csv_real(f[3], line_no), csv_real(f[4], line_no), csv_real(f[5], line_no));
    s.raw = s.v;
    if (f[6] != "invalid") s.mode = parse_mode_token(f[6]);
    out.push_back(s);
  }
  return out;
}

}  // namespace dsavoid
