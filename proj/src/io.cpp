#include "packdens/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "packdens/errors.hpp"

namespace packdens {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Scalar parse_at(std::string_view text, std::size_t line) {
  try {
    return parse_scalar(trim(text));
  } catch (const std::invalid_argument&) {
    throw ParseError(line, "bad number '" + std::string(trim(text)) + "'");
  }
}

std::string approx(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') {
      out += '\\';
      out += ch;
    } else if (static_cast<unsigned char>(ch) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", ch);
      out += buf;
    } else {
      out += ch;
    }
  }
  return out + "\"";
}

std::string exact(const Scalar& v) { return quoted(to_string(v)); }

}  // namespace

PointFile read_point_file(std::istream& in) {
  PointFile file;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    if (text.starts_with("window")) {
      if (file.window) throw ParseError(line, "second window header");
      if (!file.points.empty()) throw ParseError(line, "window header after points");
      std::istringstream fields{std::string(text.substr(6))};
      std::vector<std::string> parts;
      for (std::string part; fields >> part;) parts.push_back(part);
      if (parts.size() != 4) throw ParseError(line, "window needs four numbers");
      try {
        file.window = make_window(parse_at(parts[0], line), parse_at(parts[1], line),
                                  parse_at(parts[2], line), parse_at(parts[3], line));
      } catch (const InvalidWindow& e) {
        throw ParseError(line, e.what());
      }
      continue;
    }

    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
      throw ParseError(line, "expected 'x,y'");
    file.points.push_back({parse_at(text.substr(0, comma), line), parse_at(text.substr(comma + 1), line)});
    file.lines.push_back(line);
  }
  return file;
}

void write_point_file(std::ostream& out, const Configuration& c, const std::string& comment,
                      std::size_t first_inserted, const std::vector<Insertion>& insertions) {
  if (!comment.empty()) out << "# " << comment << '\n';
  const Window& w = c.window;
  out << "window " << to_string(w.xmin) << ' ' << to_string(w.ymin) << ' ' << to_string(w.xmax)
      << ' ' << to_string(w.ymax) << '\n';
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    out << to_string(c.points[i].x) << ',' << to_string(c.points[i].y);
    if (i >= first_inserted) {
      const std::size_t k = i - first_inserted;
      out << "  # inserted " << k + 1;
      if (k < insertions.size() && insertions[k].witness.clearance_squared)
        out << " clearance_squared " << to_string(*insertions[k].witness.clearance_squared);
    }
    out << '\n';
  }
}

void write_report(std::ostream& out, const CertificationReport& r) {
  const DensityReport* d = r.density ? &*r.density : nullptr;
  auto num = [&](auto member) { return d ? approx(d->*member) : std::string("null"); };
  auto flag = [&](bool DensityReport::*member) {
    return d && d->*member ? std::string("true") : std::string("false");
  };

  out << "{\n";
  out << "  \"schema_version\": 1,\n";
  out << "  \"n_points\": " << r.n_points << ",\n";
  out << "  \"n_inserted\": " << r.n_inserted << ",\n";
  out << "  \"n_triangles\": " << r.n_triangles << ",\n";
  out << "  \"min_pairwise_distance_squared\": "
      << (r.min_pairwise_distance_squared ? exact(*r.min_pairwise_distance_squared) : "null") << ",\n";
  out << "  \"max_circumradius_squared\": " << (d ? exact(d->max_circumradius_squared) : "null")
      << ",\n";
  out << "  \"max_largest_angle\": " << num(&DensityReport::max_largest_angle) << ",\n";
  out << "  \"min_density\": " << num(&DensityReport::min_density) << ",\n";
  out << "  \"max_density\": " << num(&DensityReport::max_density) << ",\n";
  out << "  \"overall_density\": " << num(&DensityReport::overall_density) << ",\n";
  out << "  \"bound\": " << approx(density_bound()) << ",\n";
  out << "  \"lemma1_ok\": " << flag(&DensityReport::lemma1_ok) << ",\n";
  out << "  \"lemma2_ok\": " << flag(&DensityReport::lemma2_ok) << ",\n";
  out << "  \"bound_ok\": " << flag(&DensityReport::bound_ok) << ",\n";
  out << "  \"witnesses\": [";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    const Witness& w = r.witnesses[i];
    out << (i ? ",\n    " : "\n    ") << "{\"x\": " << exact(w.location.x)
        << ", \"y\": " << exact(w.location.y) << ", \"clearance_squared\": "
        << (w.clearance_squared ? exact(*w.clearance_squared) : "null") << "}";
  }
  out << (r.witnesses.empty() ? "],\n" : "\n  ],\n");
  out << "  \"mode\": " << quoted(r.mode) << ",\n";
  out << "  \"interior_margin\": " << exact(r.interior_margin) << ",\n";
  out << "  \"n_analyzed\": " << r.n_analyzed << ",\n";
  out << "  \"mean_density\": " << num(&DensityReport::mean_density) << ",\n";
  out << "  \"saturated\": " << (r.saturated ? "true" : "false") << ",\n";
  out << "  \"delaunay_ok\": " << (r.delaunay_ok ? "true" : "false") << ",\n";
  out << "  \"violations\": [";
  for (std::size_t i = 0; i < r.violations.size(); ++i)
    out << (i ? ", " : "") << quoted(r.violations[i]);
  out << "],\n";
  out << "  \"error\": " << (r.error ? quoted(*r.error) : "null") << "\n";
  out << "}\n";
}

}  // namespace packdens
