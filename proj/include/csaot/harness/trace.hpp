#pragma once

#include <optional>
#include <string>
#include <vector>

#include "csaot/harness/json_io.hpp"
#include "csaot/learn/episode.hpp"
#include "csaot/sensing/camera.hpp"
#include "csaot/sim/world.hpp"

namespace csaot::harness {

// A trace is JSON Lines: one header, one line per step, one summary.
json trace_header(const learn::EpisodeRecord& record, const sim::MapSpec& map, const sensing::CameraModel& camera);
json trace_step(const learn::StepEntry& entry);
json trace_summary(const learn::EpisodeRecord& record);
std::string trace_text(const learn::EpisodeRecord& record, const sim::MapSpec& map,
                       const sensing::CameraModel& camera);
void write_trace(const std::string& path, const learn::EpisodeRecord& record, const sim::MapSpec& map,
                 const sensing::CameraModel& camera);

struct Trace {
  std::optional<json> header;
  std::vector<json> steps;
  std::optional<json> summary;
};

// Each line parses on its own; ParseError names the line number.
Trace parse_trace(const std::string& text, const std::string& where = "trace");
Trace read_trace(const std::string& path);

// Top-down frame for one step line.
std::string render_frame_svg(const Trace& trace, std::size_t index);
// One frame_NNNN.svg per step into out_dir; returns the written paths.
std::vector<std::string> render_trace(const Trace& trace, const std::string& out_dir);

}  // namespace csaot::harness
