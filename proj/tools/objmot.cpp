// objmot: generate synthetic tracking datasets, run reference trackers and
// evaluate mask predictions.
//
//   objmot generate --family vmds --variant occlusion --num 100 --seed 7 --out data/
//   objmot track --baseline oracle --data data/ --out pred/
//   objmot evaluate --gt data/ --pred pred/ --format markdown

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "objmot/baselines.hpp"
#include "objmot/datasets.hpp"
#include "objmot/evaluation.hpp"
#include "objmot/parallel.hpp"
#include "objmot/storage.hpp"

namespace {

using namespace objmot;

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitGeneration = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenerateFlags {
  std::string family = "vmds";
  std::string variant = "standard";
  std::string split = "test";
  std::optional<int> num;
  std::optional<int> length;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool black_background = false;
  int workers = 1;
};

struct TrackFlags {
  std::string baseline;
  std::string data;
  std::string out;
  int workers = 1;
};

struct EvaluateFlags {
  std::string gt;
  std::string pred;
  double iou = 0.5;
  double bg_iou = 0.2;
  int eval_start = 0;
  std::string breakdown = "none";
  std::string format = "json";
  std::string output;
  bool exclude_background = false;
  bool reset_state = false;
  int workers = 1;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("OBJMOT_SEED")) {
    try {
      std::size_t pos = 0;
      const auto v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("OBJMOT_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

int cmd_generate(const GenerateFlags& f) {
  DatasetConfig config;
  try {
    config = default_config(family_from_string(f.family), variant_from_string(f.variant), split_from_string(f.split));
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  if (f.num) config.num_sequences = *f.num;
  if (f.length) config.length = *f.length;
  config.seed = resolve_seed(f.seed);
  if (f.black_background) config.black_background = true;
  try {
    config.validate();
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
  const Manifest m = generate_and_write(config, f.out, f.workers);
  std::cout << "wrote " << m.sequences.size() << " sequences to " << f.out << " (config " << m.config_hash.substr(0, 12)
            << ")\n";
  return 0;
}

int cmd_track(const TrackFlags& f) {
  if (f.baseline != "oracle" && f.baseline != "color") throw UsageError("unknown baseline '" + f.baseline + "'");
  const Manifest m = read_manifest(f.data);
  ColorTrackerParams params;
  if (m.config && (m.config->family == Family::spmot || m.config->black_background)) params.fixed_background = Rgb::Zero();

  parallel_for(m.sequences.size(), f.workers, [&](std::size_t i) {
    const auto& entry = m.sequences[i];
    const SequenceRecord rec = read_sequence(f.data, entry);
    const PredictionSet p = f.baseline == "oracle" ? oracle_tracker(rec.video, rec.meta.background_ids)
                                                   : color_tracker(rec.video.frames, params);
    write_prediction_sequence(f.out, entry, p);
  });
  std::cout << "tracked " << m.sequences.size() << " sequences with '" << f.baseline << "' into " << f.out << "\n";
  return 0;
}

int cmd_evaluate(const EvaluateFlags& f) {
  if (!(f.iou > 0.0 && f.iou <= 1.0)) throw UsageError("--iou must be in (0, 1]");
  if (!(f.bg_iou > 0.0 && f.bg_iou <= 1.0)) throw UsageError("--bg-iou must be in (0, 1]");
  if (f.eval_start < 0) throw UsageError("--eval-start must be >= 0");
  if (f.breakdown != "none" && f.breakdown != "object-count") throw UsageError("--breakdown must be none|object-count");
  ReportFormat format;
  try {
    format = report_format_from_string(f.format);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }

  EvalOptions options;
  options.match.iou_threshold = f.iou;
  options.match.background_iou_threshold = f.bg_iou;
  options.eval_start = f.eval_start;
  options.reset_state_at_window = f.reset_state;

  const Manifest m = read_manifest(f.gt);
  if (!fs::is_directory(f.pred)) throw ValidationError("prediction directory " + f.pred + " does not exist");
  std::vector<SequenceStats> stats(m.sequences.size());
  parallel_for(m.sequences.size(), f.workers, [&](std::size_t i) {
    const auto& entry = m.sequences[i];
    const SequenceRecord rec = read_sequence(f.gt, entry);
    const PredictionSet p = read_prediction_sequence(f.pred, entry);
    SequenceEvalInput in;
    in.key = entry.index;
    in.object_count = rec.meta.object_count();
    in.gt = &rec.video.gt;
    in.pred = &p.labels;
    in.frames = &rec.video.frames;
    in.reconstructions = p.reconstructions.empty() ? nullptr : &p.reconstructions;
    in.gt_background_ids = rec.meta.background_ids;
    in.pred_background_ids = p.meta.background_ids;
    EvalOptions local = options;
    local.exclude_background = f.exclude_background || p.meta.exclude_background;
    stats[i] = evaluate_sequence(in, local);
  });

  const MetricsReport report = make_report(stats, f.breakdown == "object-count", options.lifespan_threshold);
  const std::string doc = write_report(report, format);
  const std::string ext = format == ReportFormat::json ? "json" : format == ReportFormat::csv ? "csv" : "md";
  const fs::path out = f.output.empty() ? fs::path(f.pred) / ("report." + ext) : fs::path(f.output);
  std::ofstream os(out, std::ios::binary | std::ios::trunc);
  if (!os || !(os << doc)) throw IoError("cannot write report " + out.string());

  std::cout << write_report(report, ReportFormat::markdown);
  std::cout << "report: " << out.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"objmot: synthetic multi-object tracking benchmark"};
  app.require_subcommand(1);

  GenerateFlags gen;
  auto* g = app.add_subcommand("generate", "Generate a dataset split");
  g->add_option("--family", gen.family, "vmds | spmot")->check(CLI::IsMember({"vmds", "spmot"}));
  g->add_option("--variant", gen.variant, "standard | occlusion | small | large | same_color | rotation | color_change | size_change")
      ->check(CLI::IsMember({"standard", "occlusion", "small", "large", "same_color", "rotation", "color_change", "size_change"}));
  g->add_option("--split", gen.split, "train | val | test")->check(CLI::IsMember({"train", "val", "test"}));
  g->add_option("--num", gen.num, "Number of sequences")->check(CLI::NonNegativeNumber);
  g->add_option("--length", gen.length, "Frames per sequence")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Dataset seed (falls back to $OBJMOT_SEED, then 0)");
  g->add_option("--out", gen.out, "Output directory")->required();
  g->add_flag("--black-background", gen.black_background, "Render VMDS on a black background");
  g->add_option("--workers", gen.workers, "Worker threads")->check(CLI::PositiveNumber);

  TrackFlags trk;
  auto* t = app.add_subcommand("track", "Run a reference tracker over a dataset");
  t->add_option("--baseline", trk.baseline, "oracle | color")->required();
  t->add_option("--data", trk.data, "Dataset directory")->required();
  t->add_option("--out", trk.out, "Prediction output directory")->required();
  t->add_option("--workers", trk.workers, "Worker threads")->check(CLI::PositiveNumber);

  EvaluateFlags ev;
  auto* e = app.add_subcommand("evaluate", "Evaluate predictions against ground truth");
  e->add_option("--gt", ev.gt, "Dataset directory")->required();
  e->add_option("--pred", ev.pred, "Prediction directory")->required();
  e->add_option("--iou", ev.iou, "Match IoU threshold");
  e->add_option("--bg-iou", ev.bg_iou, "Background-exclusion IoU threshold");
  e->add_option("--eval-start", ev.eval_start, "First counted frame (warm start)");
  e->add_option("--breakdown", ev.breakdown, "none | object-count");
  e->add_option("--format", ev.format, "json | csv | markdown");
  e->add_option("--output", ev.output, "Report path (default: <pred>/report.<ext>)");
  e->add_flag("--exclude-background", ev.exclude_background, "Drop predictions overlapping gt background (IoU > --bg-iou)");
  e->add_flag("--reset-state-at-window", ev.reset_state, "Start matching at --eval-start instead of frame 0");
  e->add_option("--workers", ev.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*t) return cmd_track(trk);
    if (*e) return cmd_evaluate(ev);
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const GenerationExhausted& err) {
    std::cerr << "generation failed: " << err.what() << "\n";
    return kExitGeneration;
  } catch (const NumericalError& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kExitGeneration;
  } catch (const ValidationError& err) {
    std::cerr << "validation error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const IoError& err) {
    std::cerr << "i/o error: " << err.what() << "\n";
    return kExitValidation;
  } catch (const InvalidParameter& err) {
    std::cerr << "invalid parameter: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
