#pragma once

// The catbend command-line tool. run() is the whole program minus main(), so
// tests can drive it with string streams.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 I/O, parse, or (under --strict) row error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "catbend/catenary.hpp"
#include "catbend/errors.hpp"
#include "catbend/gudermann.hpp"
#include "catbend/projections.hpp"
#include "catbend/render.hpp"
#include "catbend/verify.hpp"
#include "records.hpp"

namespace catbend::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

inline constexpr int kDefaultPrecision = 12;
inline constexpr int kMaxPrecision = 17;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Row failed under --strict.
struct RowAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

struct IoOptions {
  std::string input;   // empty: stdin
  std::string output;  // empty: stdout
  std::string format = "csv";
  std::optional<int> precision;
  bool strict = false;

  void add_to(CLI::App* cmd, bool with_input) {
    if (with_input) {
      cmd->add_option("-i,--input", input, "Input file (default: stdin)");
      cmd->add_flag("--strict", strict, "Abort on the first bad row");
    }
    cmd->add_option("-o,--output", output, "Output file (default: stdout)");
    cmd->add_option("--format", format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--precision", precision, "Significant digits (1-17)")
        ->check(CLI::Range(1, kMaxPrecision));
  }

  Format record_format() const { return format == "jsonl" ? Format::kJsonl : Format::kCsv; }
};

/// --precision, then CATBEND_PRECISION, then 12.
inline int resolve_precision(const std::optional<int>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CATBEND_PRECISION"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > kMaxPrecision) {
      throw UsageError("CATBEND_PRECISION must be an integer in [1, 17]");
    }
    return static_cast<int>(v);
  }
  return kDefaultPrecision;
}

/// Runs body with the input and output streams selected by opts.
template <class Body>
void with_streams(const IoOptions& opts, Streams io, bool needs_input, Body&& body) {
  std::ifstream file_in;
  std::istream* in = &io.in;
  if (needs_input && !opts.input.empty()) {
    file_in.open(opts.input);
    if (!file_in) throw IoError("cannot open input file " + opts.input);
    in = &file_in;
  }
  std::ostringstream buffer;
  body(*in, buffer);
  if (opts.output.empty()) {
    io.out << buffer.str();
  } else {
    std::ofstream file_out(opts.output, std::ios::binary);
    if (!file_out || !(file_out << buffer.str()) || !file_out.flush()) {
      throw IoError("cannot write output file " + opts.output);
    }
  }
}

/// Per-row failure: reported on stderr, fatal only under --strict.
inline void row_error(const IoOptions& opts, std::ostream& err, std::size_t index,
                      const Record& row, const std::string& what) {
  err << "row " << index << " (line " << row.line << "): " << what << '\n';
  if (opts.strict) throw RowAbort("aborting batch at row " + std::to_string(index));
}

// ---------------------------------------------------------------- project

struct ProjectOptions {
  IoOptions io;
  std::string projection = "mercator";
  double radius = 1;
};

inline void cmd_project(const ProjectOptions& o, Streams io) {
  if (!(o.radius > 0) || !std::isfinite(o.radius)) throw UsageError("--radius must be positive");
  const int precision = resolve_precision(o.io.precision);
  const bool mercator = o.projection == "mercator";
  with_streams(o.io, io, true, [&](std::istream& in, std::ostream& out) {
    const auto batch = read_records(in, Schema::kGeo, o.io.record_format());
    RecordWriter writer(out, Schema::kPlane, o.io.record_format(), precision);
    for (std::size_t i = 0; i < batch.rows.size(); ++i) {
      const auto& row = batch.rows[i];
      if (!(std::fabs(row.first) < 90)) {
        row_error(o.io, io.err, i + 1, row, "lat_deg must lie strictly between -90 and 90");
        continue;
      }
      try {
        const GeoPoint p{deg_to_rad(row.first), deg_to_rad(row.second)};
        const PlanePoint q = mercator ? mercator_forward(p, o.radius)
                                      : central_cylindrical_forward(p, o.radius);
        writer.write(q.x, q.y);
      } catch (const Error& e) {
        row_error(o.io, io.err, i + 1, row, e.what());
      }
    }
  });
}

// ---------------------------------------------------------------- bend

struct BendOptions {
  IoOptions io;
  double alpha_deg = 0;
  double height = 0;
  std::string direction = "bend";
};

inline BendSpec sheet_from_degrees(double alpha_deg, double height) {
  if (!(alpha_deg > 0 && alpha_deg < 90)) {
    throw UsageError("--alpha-deg must lie strictly between 0 and 90 degrees (the sheet "
                     "spans latitudes -alpha..alpha)");
  }
  if (!(height > 0) || !std::isfinite(height)) throw UsageError("--height must be positive");
  try {
    return bend_params(deg_to_rad(alpha_deg), height);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

inline void cmd_bend(const BendOptions& o, Streams io) {
  const BendSpec sheet = sheet_from_degrees(o.alpha_deg, o.height);
  const int precision = resolve_precision(o.io.precision);
  const bool bend = o.direction == "bend";
  with_streams(o.io, io, true, [&](std::istream& in, std::ostream& out) {
    const auto batch = read_records(in, Schema::kPlane, o.io.record_format());
    RecordWriter writer(out, Schema::kPlane, o.io.record_format(), precision);
    for (std::size_t i = 0; i < batch.rows.size(); ++i) {
      const auto& row = batch.rows[i];
      try {
        const PlanePoint q{row.first, row.second};
        const PlanePoint r = bend ? bend_map_point(q, sheet) : unbend_map_point(q, sheet);
        writer.write(r.x, r.y);
      } catch (const Error& e) {
        row_error(o.io, io.err, i + 1, row, e.what());
      }
    }
  });
}

// ---------------------------------------------------------------- params

struct ParamsOptions {
  double alpha_deg = 0;
  double height = 0;
  std::string format = "text";
  std::optional<int> precision;
};

inline void cmd_params(const ParamsOptions& o, Streams io) {
  const BendSpec sheet = sheet_from_degrees(o.alpha_deg, o.height);
  const int precision = resolve_precision(o.precision);
  const auto num = [&](double v) { return format_number(v, precision); };
  if (o.format == "json") {
    io.out << "{\"R\":" << num(sheet.radius) << ",\"D\":" << num(sheet.edge_distance)
           << ",\"psi_max\":" << num(sheet.psi_max()) << "}\n";
  } else {
    io.out << "R=" << num(sheet.radius) << '\n'
           << "D=" << num(sheet.edge_distance) << '\n'
           << "psi_max=" << num(sheet.psi_max()) << '\n';
  }
}

// ---------------------------------------------------------------- loxodrome

struct LoxodromeOptions {
  IoOptions io;
  double bearing_deg = 0;
  double start_lon_deg = 0;
  double lat_min_deg = 0;
  double lat_max_deg = 0;
  std::size_t n = 2;
};

inline Loxodrome loxodrome_from_degrees(double bearing_deg, double start_lon_deg,
                                        double lat_min_deg, double lat_max_deg) {
  if (!(std::fabs(lat_min_deg) < 90 && std::fabs(lat_max_deg) < 90)) {
    throw UsageError("latitudes must lie strictly between -90 and 90 degrees");
  }
  if (!(lat_min_deg < lat_max_deg)) throw UsageError("--lat-min-deg must be below --lat-max-deg");
  if (!(bearing_deg >= 0 && bearing_deg <= 180)) {
    throw UsageError("--bearing-deg must lie in [0, 180]");
  }
  // Snap the compass meridians so 0 and 180 degrees give exact meridians.
  const double bearing = bearing_deg == 180 ? kPi : deg_to_rad(bearing_deg);
  const Loxodrome lox{deg_to_rad(start_lon_deg), bearing, deg_to_rad(lat_min_deg),
                      deg_to_rad(lat_max_deg)};
  try {
    validate(lox);
  } catch (const DegenerateBearingError&) {
    throw UsageError("bearing 90 degrees follows a parallel and has no latitude span");
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return lox;
}

inline void cmd_loxodrome(const LoxodromeOptions& o, Streams io) {
  if (o.n < 2) throw UsageError("--n must be at least 2");
  const Loxodrome lox =
      loxodrome_from_degrees(o.bearing_deg, o.start_lon_deg, o.lat_min_deg, o.lat_max_deg);
  const int precision = resolve_precision(o.io.precision);
  with_streams(o.io, io, false, [&](std::istream&, std::ostream& out) {
    RecordWriter writer(out, Schema::kGeo, o.io.record_format(), precision);
    for (const auto& g : loxodrome_points(lox, o.n)) {
      writer.write(rad_to_deg(g.lat), rad_to_deg(g.lon));
    }
  });
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::string level = "quick";
  std::string format = "text";
};

inline int cmd_verify(const VerifyOptions& o, Streams io) {
  const auto report =
      run_verification(o.level == "full" ? VerifyLevel::kFull : VerifyLevel::kQuick);
  const auto num = [](double v) { return format_number(v, 3); };
  if (o.format == "json") {
    nlohmann::ordered_json doc;
    doc["level"] = o.level;
    doc["overall"] = report.overall();
    for (const auto& c : report.checks) {
      doc["checks"].push_back({{"name", c.name},
                               {"max_error", std::isfinite(c.max_error) ? nlohmann::ordered_json(c.max_error) : nlohmann::ordered_json("inf")},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
    }
    io.out << doc.dump() << '\n';
  } else {
    for (const auto& c : report.checks) {
      char line[160];
      std::snprintf(line, sizeof line, "%-28s max_error=%-10s tolerance=%-8s %s\n",
                    c.name.c_str(), num(c.max_error).c_str(), num(c.tolerance).c_str(),
                    c.pass ? "PASS" : "FAIL");
      io.out << line;
    }
    io.out << "overall: " << (report.overall() ? "PASS" : "FAIL") << '\n';
  }
  return report.overall() ? kExitOk : kExitVerifyFailed;
}

// ---------------------------------------------------------------- render

struct RenderOptions {
  std::string kind;
  std::optional<double> phi_deg;
  double alpha_deg = 60;
  double height = 2;
  std::vector<double> bearings_deg;
  double start_lon_deg = 0;
  int samples = 256;
  double canvas_width = 800;
  double canvas_height = 600;
  std::string out;
};

/// <kind>_<angle in millidegrees>.svg; the angle is phi for construction
/// figures and alpha for loxodrome_compare.
inline std::string figure_file_name(FigureKind kind, double angle_deg) {
  return std::string(to_string(kind)) + "_" +
         std::to_string(std::llround(angle_deg * 1000)) + ".svg";
}

inline void cmd_render(const RenderOptions& o, Streams io) {
  FigureSpec spec;
  try {
    spec.kind = parse_figure_kind(o.kind);
  } catch (const SpecError& e) {
    throw UsageError(e.what());
  }
  spec.samples = o.samples;
  spec.width = o.canvas_width;
  spec.height = o.canvas_height;

  double name_angle = 0;
  if (spec.kind == FigureKind::kLoxodromeCompare) {
    const BendSpec sheet = sheet_from_degrees(o.alpha_deg, o.height);
    spec.bend = sheet;
    const std::vector<double> bearings =
        o.bearings_deg.empty() ? std::vector<double>{45} : o.bearings_deg;
    for (const double b : bearings) {
      spec.loxodromes.push_back(
          loxodrome_from_degrees(b, o.start_lon_deg, -o.alpha_deg, o.alpha_deg));
    }
    name_angle = o.alpha_deg;
  } else {
    const double phi_deg = o.phi_deg.value_or(45);
    if (!(phi_deg > 0 && phi_deg < 90)) {
      throw UsageError("--phi-deg must lie strictly between 0 and 90 degrees");
    }
    spec.phi = deg_to_rad(phi_deg);
    name_angle = phi_deg;
  }

  SvgDocument doc;
  try {
    doc = render_figure(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }

  namespace fs = std::filesystem;
  fs::path path = o.out.empty() ? fs::path(figure_file_name(spec.kind, name_angle))
                                : fs::path(o.out);
  std::error_code ec;
  if (!o.out.empty() && fs::is_directory(path, ec)) {
    path /= figure_file_name(spec.kind, name_angle);
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << doc.content) || !file.flush()) {
    throw IoError("cannot write " + path.string());
  }
  io.out << path.string() << '\n';
}

// ---------------------------------------------------------------- main

inline int run(int argc, const char* const* argv, Streams io) {
  CLI::App app{"Bend a central cylindrical map along a catenary into a Mercator map",
               "catbend"};
  app.require_subcommand(1);

  ProjectOptions project;
  auto* project_cmd = app.add_subcommand("project", "Project lat/lon rows onto the plane");
  project_cmd->add_option("--projection", project.projection, "mercator or central")
      ->check(CLI::IsMember({"mercator", "central"}));
  project_cmd->add_option("--radius", project.radius, "Sphere radius (default 1)");
  project.io.add_to(project_cmd, true);

  BendOptions bend;
  auto* bend_cmd = app.add_subcommand("bend", "Bend or unbend x,y rows of a printed sheet");
  bend_cmd->add_option("--alpha-deg", bend.alpha_deg, "Half latitude extent of the sheet")
      ->required();
  bend_cmd->add_option("--height", bend.height, "Physical sheet height")->required();
  bend_cmd->add_option("--direction", bend.direction, "bend or unbend")
      ->check(CLI::IsMember({"bend", "unbend"}));
  bend.io.add_to(bend_cmd, true);

  ParamsOptions params;
  auto* params_cmd = app.add_subcommand("params", "Sphere radius R and edge distance D");
  params_cmd->add_option("--alpha-deg", params.alpha_deg, "Half latitude extent")->required();
  params_cmd->add_option("--height", params.height, "Physical sheet height")->required();
  params_cmd->add_option("--format", params.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  params_cmd->add_option("--precision", params.precision, "Significant digits (1-17)")
      ->check(CLI::Range(1, kMaxPrecision));

  LoxodromeOptions lox;
  auto* lox_cmd = app.add_subcommand("loxodrome", "Sample a constant-bearing track");
  lox_cmd->add_option("--bearing-deg", lox.bearing_deg, "Clockwise from north, [0, 180]")
      ->required();
  lox_cmd->add_option("--start-lon-deg", lox.start_lon_deg, "Longitude at lat-min");
  lox_cmd->add_option("--lat-min-deg", lox.lat_min_deg, "Southern latitude")->required();
  lox_cmd->add_option("--lat-max-deg", lox.lat_max_deg, "Northern latitude")->required();
  lox_cmd->add_option("-n,--n", lox.n, "Number of samples (>= 2)");
  lox.io.add_to(lox_cmd, false);

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every identity against its oracle");
  verify_cmd->add_option("--level", verify.level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--format", verify.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Write an SVG figure");
  render_cmd->add_option("--kind", render.kind,
                         "mercator_construction, gudermann_construction, "
                         "catenary_construction or loxodrome_compare")
      ->required();
  render_cmd->add_option("--phi-deg", render.phi_deg, "Latitude for construction figures");
  render_cmd->add_option("--alpha-deg", render.alpha_deg, "Sheet half extent (loxodrome_compare)");
  render_cmd->add_option("--height", render.height, "Sheet height (loxodrome_compare)");
  render_cmd->add_option("--bearing-deg", render.bearings_deg, "Loxodrome bearing; repeatable");
  render_cmd->add_option("--start-lon-deg", render.start_lon_deg, "Loxodrome start longitude");
  render_cmd->add_option("--samples", render.samples, "Polyline samples (>= 16)");
  render_cmd->add_option("--canvas-width", render.canvas_width, "SVG width");
  render_cmd->add_option("--canvas-height", render.canvas_height, "SVG height");
  render_cmd->add_option("--out", render.out, "Output file or directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, io.out, io.err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, io.out, io.err);
    return kExitUsage;
  }

  try {
    if (*project_cmd) cmd_project(project, io);
    else if (*bend_cmd) cmd_bend(bend, io);
    else if (*params_cmd) cmd_params(params, io);
    else if (*lox_cmd) cmd_loxodrome(lox, io);
    else if (*verify_cmd) return cmd_verify(verify, io);
    else if (*render_cmd) cmd_render(render, io);
  } catch (const UsageError& e) {
    io.err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    io.err << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    io.err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const RowAbort& e) {
    io.err << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace catbend::cli
