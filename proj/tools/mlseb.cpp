#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "mlseb/commands.hpp"

namespace {

bool parse_resolution(const std::string& text, int& width, int& height) {
  int w = 0, h = 0;
  if (std::sscanf(text.c_str(), "%dx%d", &w, &h) != 2 || w <= 0 || h <= 0) return false;
  width = w;
  height = h;
  return true;
}

void add_shared_options(CLI::App* cmd, mlseb::RunConfig& cfg, std::string& resolution) {
  cmd->add_option("--resolution", resolution, "drawing size WxH")->capture_default_str();
  cmd->add_option("--threads", cfg.threads, "worker thread cap (0 = hardware)");
}

void add_bundle_options(CLI::App* cmd, mlseb::RunConfig& cfg, std::string& cell_mode) {
  cmd->add_option("--rho", cfg.rho, "sampling step as fraction of the drawing extent")
      ->capture_default_str();
  cmd->add_option("--bandwidth", cfg.r0, "initial bandwidth as fraction of the drawing extent")
      ->capture_default_str();
  cmd->add_option("--lambda", cfg.lambda, "bandwidth reduction factor per iteration")
      ->capture_default_str();
  cmd->add_option("--iterations", cfg.iterations, "bundling iterations")->capture_default_str();
  cmd->add_option("--order", cfg.order, "regression polynomial order")
      ->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  cmd->add_option("--pin-endpoints", cfg.pin_endpoints, "keep edge endpoints fixed")
      ->capture_default_str();
  cmd->add_option("--cell-mode", cell_mode, "neighbor grid cell sizing: exact or paper")
      ->check(CLI::IsMember({"exact", "paper"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MLSEB: moving-least-squares edge bundling"};
  app.require_subcommand(1);

  mlseb::RunConfig cfg;
  std::string resolution = "400x400";
  std::string cell_mode = "exact";

  auto* bundle = app.add_subcommand("bundle", "bundle an edge CSV into polylines");
  bundle->add_option("--input", cfg.input, "edges CSV (x1,y1,x2,y2)")->required();
  bundle->add_option("--output", cfg.output, "bundled polylines CSV")->required();
  add_shared_options(bundle, cfg, resolution);
  add_bundle_options(bundle, cfg, cell_mode);

  auto* render = app.add_subcommand("render", "rasterize a polylines CSV to a PPM image");
  render->add_option("--input", cfg.input, "polylines CSV (edge_id,point_index,x,y)")->required();
  render->add_option("--output", cfg.output, "PPM (P6) image path")->required();
  render->add_option("--alpha", cfg.alpha, "overall edge transparency")->capture_default_str();
  render
      ->add_option("--spline-samples", cfg.spline_samples,
                   "B-spline samples per segment (0 draws raw polylines)")
      ->capture_default_str();
  add_shared_options(render, cfg, resolution);

  auto* quality = app.add_subcommand("quality", "clutter/distortion report for a bundling run");
  quality->add_option("--input", cfg.input, "original edges CSV")->required();
  quality->add_option("--bundled", cfg.bundled, "bundled polylines CSV")->required();
  quality->add_option("--output", cfg.output, "report CSV path");
  quality->add_flag("--count-on-spline", cfg.count_on_spline,
                    "count pixels on smoothed curves instead of raw polylines");
  quality->add_option("--spline-samples", cfg.spline_samples,
                      "B-spline samples per segment when counting on splines")
      ->capture_default_str();
  quality->add_option("--alpha", cfg.alpha, "overall edge transparency")->capture_default_str();
  add_shared_options(quality, cfg, resolution);

  auto* synth = app.add_subcommand("synth", "generate a reproducible synthetic edge CSV");
  synth->add_option("generator", cfg.generator, "parallel-pairs | radial-hub | random-uniform")
      ->required();
  synth->add_option("--n", cfg.synth_n, "edge count")->capture_default_str();
  synth->add_option("--gap", cfg.synth_gap, "spacing in pixels (parallel-pairs)")
      ->capture_default_str();
  synth->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  synth->add_option("--output", cfg.output, "edges CSV path")->required();
  add_shared_options(synth, cfg, resolution);

  CLI11_PARSE(app, argc, argv);

  if (!parse_resolution(resolution, cfg.width, cfg.height)) {
    std::fprintf(stderr, "error: bad --resolution '%s' (expected WxH)\n", resolution.c_str());
    return 1;
  }
  cfg.cell_mode = cell_mode == "paper" ? mlseb::CellMode::kPaper : mlseb::CellMode::kExact;

  if (bundle->parsed()) return mlseb::cmd_bundle(cfg);
  if (render->parsed()) return mlseb::cmd_render(cfg);
  if (quality->parsed()) return mlseb::cmd_quality(cfg);
  return mlseb::cmd_synth(cfg);
}
