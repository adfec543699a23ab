#include "csaot/sensing/observation.hpp"

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace csaot::sensing {

namespace {

struct CellContext {
  const sim::WorldState& state;
  const RasterSpec& spec;
  sim::Vec2 target_local;
};

void fill_cell(const CellContext& ctx, int row, int col, Vector& out) {
  const sim::Vec2 local = ctx.spec.cell_center(row, col);
  const std::size_t idx = static_cast<std::size_t>(row) * ctx.spec.cells + col;
  const std::size_t n = ctx.spec.channel_size();

  const sim::Vec2 world = sim::to_world(local, ctx.state.tracker_pos, ctx.state.tracker_heading);
  bool obstacle = false;
  for (const auto& ob : ctx.state.obstacles) {
    if (ob.contains(world)) {
      obstacle = true;
      break;
    }
  }
  const bool target = (local - ctx.target_local).norm() <= ctx.spec.target_radius;
  out[idx] = obstacle ? 1.0 : 0.0;
  out[n + idx] = target ? 1.0 : 0.0;
  out[2 * n + idx] = (!obstacle && !target) ? 1.0 : 0.0;
}

CellContext context(const sim::WorldState& state, const RasterSpec& spec) {
  return {state, spec, sim::to_local(state.target_pos, state.tracker_pos, state.tracker_heading)};
}

}  // namespace

sim::Vec2 RasterSpec::cell_center(int row, int col) const {
  const double s = cell_size();
  return {(row + 0.5) * s, -window / 2.0 + (col + 0.5) * s};
}

Vector render_raster_serial(const sim::WorldState& state, const RasterSpec& spec) {
  Vector out(spec.size(), 0.0);
  const CellContext ctx = context(state, spec);
  for (int row = 0; row < spec.cells; ++row)
    for (int col = 0; col < spec.cells; ++col) fill_cell(ctx, row, col, out);
  return out;
}

Vector render_raster(const sim::WorldState& state, const RasterSpec& spec) {
  Vector out(spec.size(), 0.0);
  const CellContext ctx = context(state, spec);
  const std::int64_t total = static_cast<std::int64_t>(spec.cells) * spec.cells;
#pragma omp parallel for schedule(static) if (total * static_cast<std::int64_t>(state.obstacles.size() + 1) > 8192)
  for (std::int64_t k = 0; k < total; ++k) {
    fill_cell(ctx, static_cast<int>(k / spec.cells), static_cast<int>(k % spec.cells), out);
  }
  return out;
}

}  // namespace csaot::sensing
