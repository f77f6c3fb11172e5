// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/shape.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mvd/errors.hpp"

namespace mvd {

namespace {

using nlohmann::json;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

void require_unit(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string("shape ") + what + " outside the unit cube");
  }
}

ShapeSpec random_primitive(std::mt19937_64& rng) {
  ShapeSpec s;
  switch (rng() % 3) {
    case 0: {
      s.kind = ShapeSpec::Kind::box;
      for (int a = 0; a < 3; ++a) {
        double lo = uniform(rng, 0.05, 0.6);
        double hi = lo + uniform(rng, 0.2, 0.9 - lo);
        s.min[a] = lo;
        s.max[a] = hi;
      }
      break;
    }
    case 1: {
      s.kind = ShapeSpec::Kind::sphere;
      s.radius = uniform(rng, 0.12, 0.38);
      for (int a = 0; a < 3; ++a) {
        s.center[a] = uniform(rng, s.radius + 0.02, 0.98 - s.radius);
      }
      break;
    }
    default: {
      s.kind = ShapeSpec::Kind::ellipsoid;
      for (int a = 0; a < 3; ++a) {
        s.radii[a] = uniform(rng, 0.1, 0.4);
        s.center[a] = uniform(rng, s.radii[a] + 0.02, 0.98 - s.radii[a]);
      }
      break;
    }
  }
  return s;
}

json point_to_json(const Point3& p) { return json::array({p[0], p[1], p[2]}); }

Point3 point_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument(std::string("shape spec: ") + what +
                                " must be an array of three numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json shape_to_json_impl(const ShapeSpec& s) {
  json j;
  switch (s.kind) {
    case ShapeSpec::Kind::box:
      j["kind"] = "box";
      j["min"] = point_to_json(s.min);
      j["max"] = point_to_json(s.max);
      break;
    case ShapeSpec::Kind::sphere:
      j["kind"] = "sphere";
      j["center"] = point_to_json(s.center);
      j["radius"] = s.radius;
      break;
    case ShapeSpec::Kind::ellipsoid:
      j["kind"] = "ellipsoid";
      j["center"] = point_to_json(s.center);
      j["radii"] = point_to_json(s.radii);
      break;
    case ShapeSpec::Kind::union_:
    case ShapeSpec::Kind::difference:
      j["kind"] = s.kind == ShapeSpec::Kind::union_ ? "union" : "difference";
      j["children"] = json::array();
      for (const ShapeSpec& c : s.children) {
        j["children"].push_back(shape_to_json_impl(c));
      }
      break;
  }
  return j;
}

ShapeSpec shape_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("shape spec: expected an object with a \"kind\" field");
  }
  const std::string kind = j["kind"].get<std::string>();
  ShapeSpec s;
  if (kind == "box") {
    s.kind = ShapeSpec::Kind::box;
    s.min = point_from_json(j.at("min"), "min");
    s.max = point_from_json(j.at("max"), "max");
  } else if (kind == "sphere") {
    s.kind = ShapeSpec::Kind::sphere;
    s.center = point_from_json(j.at("center"), "center");
    s.radius = j.at("radius").get<double>();
  } else if (kind == "ellipsoid") {
    s.kind = ShapeSpec::Kind::ellipsoid;
    s.center = point_from_json(j.at("center"), "center");
    s.radii = point_from_json(j.at("radii"), "radii");
  } else if (kind == "union" || kind == "difference") {
    s.kind = kind == "union" ? ShapeSpec::Kind::union_ : ShapeSpec::Kind::difference;
    if (!j.contains("children") || !j["children"].is_array()) {
      throw std::invalid_argument("shape spec: " + kind + " requires a children array");
    }
    for (const json& c : j["children"]) {
      s.children.push_back(shape_from_json(c));
    }
  } else {
    throw std::invalid_argument("shape spec: unknown kind \"" + kind + "\"");
  }
  return s;
}

}  // namespace

void validate(const ShapeSpec& spec) {
  switch (spec.kind) {
    case ShapeSpec::Kind::box:
      for (int a = 0; a < 3; ++a) {
        require_unit(spec.min[a], "box corner");
        require_unit(spec.max[a], "box corner");
        if (spec.min[a] > spec.max[a]) {
          throw std::invalid_argument("shape box min exceeds max");
        }
      }
      break;
    case ShapeSpec::Kind::sphere:
      if (spec.radius < 0.0) {
        throw std::invalid_argument("shape sphere radius negative");
      }
      for (int a = 0; a < 3; ++a) {
        require_unit(spec.center[a] - spec.radius, "sphere extent");
        require_unit(spec.center[a] + spec.radius, "sphere extent");
      }
      break;
    case ShapeSpec::Kind::ellipsoid:
      for (int a = 0; a < 3; ++a) {
        if (spec.radii[a] < 0.0) {
          throw std::invalid_argument("shape ellipsoid radius negative");
        }
        require_unit(spec.center[a] - spec.radii[a], "ellipsoid extent");
        require_unit(spec.center[a] + spec.radii[a], "ellipsoid extent");
      }
      break;
    case ShapeSpec::Kind::union_:
      if (spec.children.empty()) {
        throw std::invalid_argument("shape union requires at least one child");
      }
      for (const ShapeSpec& c : spec.children) {
        validate(c);
      }
      break;
    case ShapeSpec::Kind::difference:
      if (spec.children.size() < 2) {
        throw std::invalid_argument("shape difference requires at least two children");
      }
      for (const ShapeSpec& c : spec.children) {
        validate(c);
      }
      break;
  }
}

bool inside(const ShapeSpec& spec, const Point3& p) {
  switch (spec.kind) {
    case ShapeSpec::Kind::box:
      return p[0] >= spec.min[0] && p[0] <= spec.max[0] && p[1] >= spec.min[1] &&
             p[1] <= spec.max[1] && p[2] >= spec.min[2] && p[2] <= spec.max[2];
    case ShapeSpec::Kind::sphere: {
      const double dx = p[0] - spec.center[0];
      const double dy = p[1] - spec.center[1];
      const double dz = p[2] - spec.center[2];
      return dx * dx + dy * dy + dz * dz <= spec.radius * spec.radius;
    }
    case ShapeSpec::Kind::ellipsoid: {
      double q = 0.0;
      for (int a = 0; a < 3; ++a) {
        if (spec.radii[a] == 0.0) {
          if (p[a] != spec.center[a]) {
            return false;
          }
          continue;
        }
        const double t = (p[a] - spec.center[a]) / spec.radii[a];
        q += t * t;
      }
      return q <= 1.0;
    }
    case ShapeSpec::Kind::union_:
      for (const ShapeSpec& c : spec.children) {
        if (inside(c, p)) {
          return true;
        }
      }
      return false;
    case ShapeSpec::Kind::difference:
      if (!inside(spec.children[0], p)) {
        return false;
      }
      for (std::size_t i = 1; i < spec.children.size(); ++i) {
        if (inside(spec.children[i], p)) {
          return false;
        }
      }
      return true;
  }
  return false;
}

VoxelGrid rasterize(const ShapeSpec& spec, std::uint32_t resolution) {
  if (resolution < 1) {
    throw std::invalid_argument("rasterize resolution must be >= 1");
  }
  validate(spec);
  VoxelGrid grid(resolution);
  const double inv = 1.0 / resolution;
  for (std::uint32_t z = 0; z < resolution; ++z) {
    for (std::uint32_t y = 0; y < resolution; ++y) {
      std::uint8_t* row = grid.data() + grid.index(0, y, z);
      const double cy = (y + 0.5) * inv;
      const double cz = (z + 0.5) * inv;
      for (std::uint32_t x = 0; x < resolution; ++x) {
        row[x] = inside(spec, {(x + 0.5) * inv, cy, cz}) ? 1 : 0;
      }
    }
  }
  return grid;
}

ShapeSpec random_shape(std::mt19937_64& rng) {
  switch (rng() % 5) {
    case 0:
    case 1:
    case 2:
      return random_primitive(rng);
    case 3: {
      ShapeSpec s;
      s.kind = ShapeSpec::Kind::union_;
      const std::size_t count = 2 + rng() % 2;
      for (std::size_t i = 0; i < count; ++i) {
        s.children.push_back(random_primitive(rng));
      }
      return s;
    }
    default: {
      ShapeSpec s;
      s.kind = ShapeSpec::Kind::difference;
      s.children.push_back(random_primitive(rng));
      s.children.push_back(random_primitive(rng));
      return s;
    }
  }
}

ShapeSpec parse_shape_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("shape spec: invalid JSON: ") + e.what());
  }
  ShapeSpec s = shape_from_json(j);
  validate(s);
  return s;
}

std::string shape_to_json(const ShapeSpec& spec) { return shape_to_json_impl(spec).dump(2); }

ShapeSpec load_shape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open shape spec file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_shape_json(buf.str());
}

}  // namespace mvd
