#include "planar_em/scene_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "planar_em/errors.hpp"

namespace pem {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct KvLine {
  std::string key, value;
};

bool parse_kv(const std::string& line, KvLine& out) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) return false;
  out.key = trim(line.substr(0, eq));
  out.value = trim(line.substr(eq + 1));
  return true;
}

double to_double(const std::string& s, const std::string& ctx) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("scene: bad number '" + s + "' in " + ctx);
  }
}

}  // namespace

std::string serialize_scene(const Layout& layout) {
  std::ostringstream os;
  os << "# planar-em scene v1\n";
  os << "[stackup]\n";
  os << "eps_r = " << fmt(layout.stackup.eps_r) << "\n";
  os << "loss_tangent = " << fmt(layout.stackup.loss_tangent) << "\n";
  os << "thickness_mm = " << fmt(layout.stackup.thickness_mm) << "\n";
  os << "metal = " << (layout.stackup.pec_metal ? "pec" : "thin") << "\n";
  os << "\n[bounds]\n";
  os << "min_mm = " << fmt(layout.bounds.x0) << " " << fmt(layout.bounds.y0)
     << "\n";
  os << "max_mm = " << fmt(layout.bounds.x1) << " " << fmt(layout.bounds.y1)
     << "\n";
  for (const auto& s : layout.shapes) {
    os << "\n[shape]\n";
    os << "name = " << s.name << "\n";
    os << "layer = " << layer_name(s.layer) << "\n";
    os << "vertices_mm =";
    for (size_t i = 0; i < s.polygon.size(); ++i) {
      if (i) os << " ;";
      os << " " << fmt(s.polygon[i].x) << " " << fmt(s.polygon[i].y);
    }
    os << "\n";
  }
  for (const auto& p : layout.ports) {
    os << "\n[port]\n";
    os << "id = " << p.id << "\n";
    os << "position_mm = " << fmt(p.position.x) << " " << fmt(p.position.y)
       << "\n";
    os << "polarity = " << (p.polarity >= 0 ? "+1" : "-1") << "\n";
    os << "impedance_ohm = " << fmt(p.impedance_ohm) << "\n";
  }
  return os.str();
}

Layout parse_scene(const std::string& text) {
  Layout layout;
  layout.shapes.clear();
  layout.ports.clear();

  enum class Section { None, Stackup, Bounds, Shape, Port };
  Section section = Section::None;
  LayerShape shape;
  PortSpec port;
  bool have_shape = false, have_port = false;
  bool saw_stackup = false, saw_bounds = false;

  auto flush = [&]() {
    if (have_shape) {
      layout.shapes.push_back(shape);
      shape = LayerShape{};
      have_shape = false;
    }
    if (have_port) {
      layout.ports.push_back(port);
      port = PortSpec{};
      have_port = false;
    }
  };

  std::istringstream is(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      flush();
      const std::string name = line.substr(1, line.size() - 2);
      if (name == "stackup") {
        section = Section::Stackup;
        saw_stackup = true;
      } else if (name == "bounds") {
        section = Section::Bounds;
        saw_bounds = true;
      } else if (name == "shape") {
        section = Section::Shape;
        have_shape = true;
      } else if (name == "port") {
        section = Section::Port;
        have_port = true;
      } else {
        throw IoError("scene: unknown section [" + name + "] at line " +
                      std::to_string(lineno));
      }
      continue;
    }
    KvLine kv;
    if (!parse_kv(line, kv))
      throw IoError("scene: expected key = value at line " +
                    std::to_string(lineno));
    const std::string ctx = "line " + std::to_string(lineno);
    switch (section) {
      case Section::Stackup:
        if (kv.key == "eps_r") layout.stackup.eps_r = to_double(kv.value, ctx);
        else if (kv.key == "loss_tangent")
          layout.stackup.loss_tangent = to_double(kv.value, ctx);
        else if (kv.key == "thickness_mm")
          layout.stackup.thickness_mm = to_double(kv.value, ctx);
        else if (kv.key == "metal") layout.stackup.pec_metal = (kv.value == "pec");
        else throw IoError("scene: unknown stackup key '" + kv.key + "'");
        break;
      case Section::Bounds: {
        std::istringstream vs(kv.value);
        double a, c;
        if (!(vs >> a >> c)) throw IoError("scene: bad bounds at " + ctx);
        if (kv.key == "min_mm") {
          layout.bounds.x0 = a;
          layout.bounds.y0 = c;
        } else if (kv.key == "max_mm") {
          layout.bounds.x1 = a;
          layout.bounds.y1 = c;
        } else {
          throw IoError("scene: unknown bounds key '" + kv.key + "'");
        }
        break;
      }
      case Section::Shape:
        if (kv.key == "name") shape.name = kv.value;
        else if (kv.key == "layer") shape.layer = layer_from_name(kv.value);
        else if (kv.key == "vertices_mm") {
          shape.polygon.clear();
          std::string item;
          std::istringstream vs(kv.value);
          while (std::getline(vs, item, ';')) {
            std::istringstream ps(item);
            Point p;
            if (!(ps >> p.x >> p.y))
              throw IoError("scene: bad vertex '" + item + "' at " + ctx);
            shape.polygon.push_back(p);
          }
          if (shape.polygon.size() < 3)
            throw IoError("scene: shape needs >= 3 vertices at " + ctx);
        } else {
          throw IoError("scene: unknown shape key '" + kv.key + "'");
        }
        break;
      case Section::Port:
        if (kv.key == "id") port.id = static_cast<int>(to_double(kv.value, ctx));
        else if (kv.key == "position_mm") {
          std::istringstream vs(kv.value);
          if (!(vs >> port.position.x >> port.position.y))
            throw IoError("scene: bad port position at " + ctx);
        } else if (kv.key == "polarity")
          port.polarity = to_double(kv.value, ctx) >= 0 ? +1 : -1;
        else if (kv.key == "impedance_ohm")
          port.impedance_ohm = to_double(kv.value, ctx);
        else throw IoError("scene: unknown port key '" + kv.key + "'");
        break;
      case Section::None:
        throw IoError("scene: data before any section at " + ctx);
    }
  }
  flush();
  if (!saw_stackup || !saw_bounds)
    throw IoError("scene: missing [stackup] or [bounds] section");
  layout.validate();
  return layout;
}

void write_scene(const std::string& path, const Layout& layout) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write scene file: " + path);
  f << serialize_scene(layout);
}

Layout read_scene(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read scene file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_scene(ss.str());
}

}  // namespace pem
