#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "csaot/errors.hpp"
#include "csaot/harness/trace.hpp"
#include "csaot/sim/maps.hpp"

namespace csaot::harness {

namespace {

std::string num(double v) { return format_double(v); }

// World (x, y) to SVG user space, y pointing down.
std::string pt(double x, double y) { return num(x) + "," + num(0.0 - y); }

sim::Vec2 read_vec(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(where + ": expected [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

struct Frame {
  double min_x = -20, min_y = -20, max_x = 20, max_y = 20;
  double hfov = std::numbers::pi / 2.0;
  double d_max = 20.0;
  double frame_w = 128.0, frame_h = 96.0;
};

}  // namespace

std::string render_frame_svg(const Trace& trace, std::size_t index) {
  if (index >= trace.steps.size()) throw InputError("render_frame_svg: step index out of range");
  const json& s = trace.steps[index];
  const std::string where = "step[" + std::to_string(index) + "]";
  Frame f;
  std::optional<sim::MapSpec> map;
  if (trace.header) {
    if (auto it = trace.header->find("map_spec"); it != trace.header->end()) map = sim::map_from_json(*it);
    if (auto it = trace.header->find("camera"); it != trace.header->end()) {
      f.hfov = need_number(*it, "hfov", "header.camera");
      f.d_max = need_number(*it, "d_max", "header.camera");
      f.frame_w = need_number(*it, "frame_w", "header.camera");
      f.frame_h = need_number(*it, "frame_h", "header.camera");
    }
  }
  const json& tracker = need(s, "tracker", where);
  const double tx = need_number(tracker, "x", where + ".tracker");
  const double ty = need_number(tracker, "y", where + ".tracker");
  const double th = need_number(tracker, "heading", where + ".tracker");
  const json& target = need(s, "target", where);
  const double gx = need_number(target, "x", where + ".target");
  const double gy = need_number(target, "y", where + ".target");
  if (map) {
    f.min_x = map->bounds.lo.x;
    f.min_y = map->bounds.lo.y;
    f.max_x = map->bounds.hi.x;
    f.max_y = map->bounds.hi.y;
  } else {
    f.min_x = std::min(tx, gx) - 20;
    f.max_x = std::max(tx, gx) + 20;
    f.min_y = std::min(ty, gy) - 20;
    f.max_y = std::max(ty, gy) + 20;
  }
  const double w = f.max_x - f.min_x, h = f.max_y - f.min_y;

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(f.min_x) << " " << num(0.0 - f.max_y) << " " << num(w)
    << " " << num(h) << "\" width=\"800\" height=\"" << num(800.0 * h / w) << "\">\n";
  o << "<rect class=\"bounds\" x=\"" << num(f.min_x) << "\" y=\"" << num(0.0 - f.max_y) << "\" width=\"" << num(w)
    << "\" height=\"" << num(h) << "\" fill=\"#fafafa\" stroke=\"#333\" stroke-width=\"0.2\"/>\n";

  if (map) {
    o << "<polyline class=\"path\" fill=\"none\" stroke=\"#9ab\" stroke-width=\"0.3\" points=\"";
    for (std::size_t i = 0; i < map->waypoints.size(); ++i)
      o << (i ? " " : "") << pt(map->waypoints[i].x, map->waypoints[i].y);
    o << "\"/>\n";
  }

  if (auto it = s.find("obstacles"); it != s.end()) {
    for (std::size_t i = 0; i < it->size(); ++i) {
      const json& ob = (*it)[i];
      const std::string ow = where + ".obstacles[" + std::to_string(i) + "]";
      const std::string kind = need_string(ob, "kind", ow);
      if (kind == "circle") {
        const sim::Vec2 c = read_vec(need(ob, "center", ow), ow + ".center");
        o << "<circle class=\"obstacle\" cx=\"" << num(c.x) << "\" cy=\"" << num(0.0 - c.y) << "\" r=\""
          << num(need_number(ob, "radius", ow)) << "\" fill=\"#c66\"/>\n";
      } else {
        const sim::Vec2 lo = read_vec(need(ob, "min", ow), ow + ".min");
        const sim::Vec2 hi = read_vec(need(ob, "max", ow), ow + ".max");
        o << "<rect class=\"obstacle\" x=\"" << num(lo.x) << "\" y=\"" << num(0.0 - hi.y) << "\" width=\""
          << num(hi.x - lo.x) << "\" height=\"" << num(hi.y - lo.y) << "\" fill=\"#c66\"/>\n";
      }
    }
  }

  // Camera frustum out to the sensing range.
  const double half = f.hfov / 2.0;
  o << "<polygon class=\"frustum\" fill=\"#fd6\" fill-opacity=\"0.25\" stroke=\"#db4\" stroke-width=\"0.1\" points=\""
    << pt(tx, ty) << " " << pt(tx + f.d_max * std::cos(th + half), ty + f.d_max * std::sin(th + half)) << " "
    << pt(tx + f.d_max * std::cos(th - half), ty + f.d_max * std::sin(th - half)) << "\"/>\n";

  o << "<circle class=\"target\" data-x=\"" << num(gx) << "\" data-y=\"" << num(gy) << "\" cx=\"" << num(gx)
    << "\" cy=\"" << num(0.0 - gy) << "\" r=\"0.5\" fill=\"#2a7\"/>\n";

  const double deg = -th * 180.0 / std::numbers::pi;
  o << "<g class=\"tracker\" data-x=\"" << num(tx) << "\" data-y=\"" << num(ty) << "\" data-heading=\"" << num(th)
    << "\" transform=\"translate(" << num(tx) << " " << num(0.0 - ty) << ") rotate(" << num(deg) << ")\">"
    << "<circle r=\"0.8\" fill=\"#36c\"/><line x1=\"0\" y1=\"0\" x2=\"1.6\" y2=\"0\" stroke=\"#fff\" "
       "stroke-width=\"0.2\"/></g>\n";

  // Camera frame inset with the ground-truth box.
  const double iw = w * 0.3, ih = iw * f.frame_h / f.frame_w;
  o << "<svg class=\"inset\" x=\"" << num(f.max_x - iw) << "\" y=\"" << num(0.0 - f.max_y) << "\" width=\"" << num(iw)
    << "\" height=\"" << num(ih) << "\" viewBox=\"0 0 " << num(f.frame_w) << " " << num(f.frame_h) << "\">"
    << "<rect width=\"" << num(f.frame_w) << "\" height=\"" << num(f.frame_h)
    << "\" fill=\"#222\" stroke=\"#000\"/>";
  if (auto it = s.find("bbox"); it != s.end() && it->is_array() && it->size() == 4) {
    const double xl = (*it)[0].get<double>(), yl = (*it)[1].get<double>();
    const double xr = (*it)[2].get<double>(), yr = (*it)[3].get<double>();
    o << "<rect class=\"bbox\" x=\"" << num(xl) << "\" y=\"" << num(yl) << "\" width=\"" << num(xr - xl)
      << "\" height=\"" << num(yr - yl) << "\" fill=\"none\" stroke=\"#2e8\" stroke-width=\"1.5\"/>";
  }
  o << "</svg>\n</svg>\n";
  return o.str();
}

std::vector<std::string> render_trace(const Trace& trace, const std::string& out_dir) {
  ensure_directory(out_dir);
  std::vector<std::string> paths;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.svg", i);
    const std::string path = out_dir + "/" + name;
    write_text_file(path, render_frame_svg(trace, i));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace csaot::harness
