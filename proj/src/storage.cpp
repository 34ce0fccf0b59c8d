#include "objmot/storage.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "objmot/digest.hpp"
#include "objmot/parallel.hpp"

namespace objmot {

using nlohmann::json;

namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

std::vector<std::uint8_t> frame_bytes(const Frame& frame) {
  const int h = frame.height(), w = frame.width();
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(h) * w * 3);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < 3; ++k)
        buf[(static_cast<std::size_t>(r) * w + c) * 3 + k] = to_byte(frame.channels[k](r, c));
  return buf;
}

std::vector<std::uint8_t> label_bytes(const LabelMap& labels) {
  std::vector<std::uint8_t> buf(static_cast<std::size_t>(labels.size()));
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    const auto v = labels.data()[i];
    if (v < 0 || v > 255) throw InvalidParameter("label " + std::to_string(v) + " does not fit in 8 bits");
    buf[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  return buf;
}

void write_png_bytes(const fs::path& path, int height, int width, png_uint_32 format,
                     const std::vector<std::uint8_t>& buf) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(width);
  img.height = static_cast<png_uint_32>(height);
  img.format = format;
  if (!png_image_write_to_file(&img, path.c_str(), 0, buf.data(), 0, nullptr))
    throw IoError("cannot write " + path.string() + ": " + img.message);
}

std::string rel(const fs::path& root, const fs::path& path) {
  return path.lexically_relative(root).generic_string();
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("missing file " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

json rgb_json(const Rgb& c) { return json::array({c[0], c[1], c[2]}); }
Rgb rgb_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

json crossing_json(const Crossing& c) {
  return {{"frame", c.frame},
          {"position", json::array({c.position.x(), c.position.y()})},
          {"objects", json::array({SceneSpec::object_id(static_cast<std::size_t>(c.first)),
                                   SceneSpec::object_id(static_cast<std::size_t>(c.second))})}};
}

Crossing crossing_from(const json& j) {
  Crossing c;
  c.frame = j.at("frame").get<int>();
  c.position = {j.at("position").at(0).get<double>(), j.at("position").at(1).get<double>()};
  c.first = j.at("objects").at(0).get<int>() - 1;
  c.second = j.at("objects").at(1).get<int>() - 1;
  return c;
}

json scene_json(const SceneSpec& s) {
  json objects = json::array();
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const auto& o = s.objects[i];
    json traj = json::array();
    for (const auto& p : o.trajectory.points) traj.push_back(json::array({p.x(), p.y()}));
    objects.push_back({
        {"id", SceneSpec::object_id(i)},
        {"shape", to_string(o.sprite.shape)},
        {"scale_index", o.sprite.scale_index},
        {"orientation", o.sprite.orientation},
        {"color", rgb_json(o.sprite.color)},
        {"rotation_rate", o.rotation_rate},
        {"hue_rate", o.hue_rate},
        {"size_schedule", o.size_schedule},
        {"depth_rank", o.depth_rank},
        {"trajectory", traj},
        {"trajectory_offset", json::array({o.trajectory.offset.x(), o.trajectory.offset.y()})},
    });
  }
  return {{"canvas", {{"height", s.canvas.height}, {"width", s.canvas.width}}},
          {"length", s.length},
          {"background", rgb_json(s.background)},
          {"objects", objects}};
}

SceneSpec scene_from(const json& j) {
  SceneSpec s;
  s.canvas = {j.at("canvas").at("height").get<int>(), j.at("canvas").at("width").get<int>()};
  s.length = j.at("length").get<int>();
  s.background = rgb_from(j.at("background"));
  for (const auto& oj : j.at("objects")) {
    ScheduledObject o;
    o.sprite.shape = shape_from_string(oj.at("shape").get<std::string>());
    o.sprite.scale_index = oj.at("scale_index").get<int>();
    o.sprite.orientation = oj.at("orientation").get<double>();
    o.sprite.color = rgb_from(oj.at("color"));
    o.rotation_rate = oj.at("rotation_rate").get<double>();
    o.hue_rate = oj.at("hue_rate").get<double>();
    o.size_schedule = oj.at("size_schedule").get<std::vector<int>>();
    o.depth_rank = oj.at("depth_rank").get<int>();
    for (const auto& p : oj.at("trajectory")) o.trajectory.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    o.trajectory.offset = {oj.at("trajectory_offset").at(0).get<double>(), oj.at("trajectory_offset").at(1).get<double>()};
    s.objects.push_back(std::move(o));
  }
  return s;
}

DatasetConfig config_from(const json& j) {
  DatasetConfig c;
  c.family = family_from_string(j.at("family").get<std::string>());
  c.variant = variant_from_string(j.at("variant").get<std::string>());
  c.split = split_from_string(j.at("split").get<std::string>());
  c.num_sequences = j.at("num_sequences").get<int>();
  c.length = j.at("length").get<int>();
  const int canvas = j.at("canvas").get<int>();
  c.canvas = {canvas, canvas};
  c.output_size = j.at("output_size").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.black_background = j.at("black_background").get<bool>();
  return c;
}

json entry_json(const SequenceEntry& e) {
  return {{"index", e.index}, {"name", e.name},   {"length", e.length},
          {"height", e.height}, {"width", e.width}, {"digest", e.digest}};
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json row_json(const MetricsRow& r) {
  return {{"sequences", r.sequences},
          {"objects", r.objects},
          {"matches", r.matches},
          {"misses", r.misses},
          {"false_positives", r.false_positives},
          {"id_switches", r.switches},
          {"tracks", r.tracks},
          {"mota", optional_json(r.mota)},
          {"motp", optional_json(r.motp)},
          {"md", optional_json(r.md)},
          {"mt", optional_json(r.mt)},
          {"match", optional_json(r.match)},
          {"miss", optional_json(r.miss)},
          {"idsw", optional_json(r.idsw)},
          {"fp", optional_json(r.fp)},
          {"mse", optional_json(r.mse)}};
}

MetricsRow row_from(const json& j) {
  MetricsRow r;
  r.sequences = j.at("sequences").get<std::int64_t>();
  r.objects = j.at("objects").get<std::int64_t>();
  r.matches = j.at("matches").get<std::int64_t>();
  r.misses = j.at("misses").get<std::int64_t>();
  r.false_positives = j.at("false_positives").get<std::int64_t>();
  r.switches = j.at("id_switches").get<std::int64_t>();
  r.tracks = j.at("tracks").get<std::int64_t>();
  r.mota = optional_from(j.at("mota"));
  r.motp = optional_from(j.at("motp"));
  r.md = optional_from(j.at("md"));
  r.mt = optional_from(j.at("mt"));
  r.match = optional_from(j.at("match"));
  r.miss = optional_from(j.at("miss"));
  r.idsw = optional_from(j.at("idsw"));
  r.fp = optional_from(j.at("fp"));
  r.mse = optional_from(j.at("mse"));
  return r;
}

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string csv_value(const std::optional<double>& v) { return v ? fmt("%.17g", *v) : "NA"; }
std::string pct(const std::optional<double>& v) { return v ? fmt("%.1f", *v * 100.0) : "—"; }

}  // namespace

void write_png(const fs::path& path, const Frame& frame) {
  write_png_bytes(path, frame.height(), frame.width(), PNG_FORMAT_RGB, frame_bytes(frame));
}

void write_png(const fs::path& path, const LabelMap& labels) {
  write_png_bytes(path, static_cast<int>(labels.rows()), static_cast<int>(labels.cols()), PNG_FORMAT_GRAY,
                  label_bytes(labels));
}

Frame read_png_frame(const fs::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str()))
    throw ValidationError("cannot read " + path.string() + ": " + img.message);
  img.format = PNG_FORMAT_RGB;
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr))
    throw ValidationError("cannot decode " + path.string() + ": " + img.message);
  const int h = static_cast<int>(img.height), w = static_cast<int>(img.width);
  Frame frame(h, w);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < 3; ++k)
        frame.channels[k](r, c) = buf[(static_cast<std::size_t>(r) * w + c) * 3 + k] / 255.0;
  return frame;
}

LabelMap read_png_labels(const fs::path& path) {
  png_image img{};
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&img, path.c_str()))
    throw ValidationError("cannot read " + path.string() + ": " + img.message);
  if (img.format != PNG_FORMAT_GRAY) {
    png_image_free(&img);
    throw ValidationError("non-hard label map " + path.string() + ": expected 8-bit single-channel PNG");
  }
  std::vector<std::uint8_t> buf(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, buf.data(), 0, nullptr))
    throw ValidationError("cannot decode " + path.string() + ": " + img.message);
  LabelMap labels(static_cast<Eigen::Index>(img.height), static_cast<Eigen::Index>(img.width));
  for (Eigen::Index i = 0; i < labels.size(); ++i) labels.data()[i] = buf[static_cast<std::size_t>(i)];
  return labels;
}

std::string sequence_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "seq_%06zu", index);
  return buf;
}

std::string frame_name(std::string_view stem, int t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*s_%03d.png", static_cast<int>(stem.size()), stem.data(), t);
  return buf;
}

std::string content_digest(const std::vector<Frame>& frames, const std::vector<LabelMap>& gt) {
  Sha256 h;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    const auto fb = frame_bytes(frames[t]);
    h.update(std::span<const std::uint8_t>(fb));
    if (t < gt.size()) {
      const auto lb = label_bytes(gt[t]);
      h.update(std::span<const std::uint8_t>(lb));
    }
  }
  return h.hex();
}

DatasetWriter::DatasetWriter(fs::path root, std::optional<DatasetConfig> config)
    : root_(std::move(root)), config_(std::move(config)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw IoError("cannot create " + root_.string() + ": " + ec.message());
}

SequenceEntry DatasetWriter::write_sequence(std::size_t index, const VideoSample& video) const {
  SequenceEntry e;
  e.index = index;
  e.name = sequence_name(index);
  e.length = video.length();
  e.height = video.length() ? video.frames.front().height() : 0;
  e.width = video.length() ? video.frames.front().width() : 0;
  e.digest = content_digest(video.frames, video.gt);

  const fs::path dir = root_ / e.name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (int t = 0; t < e.length; ++t) {
    write_png(dir / frame_name("frame", t), video.frames[static_cast<std::size_t>(t)]);
    write_png(dir / frame_name("mask", t), video.gt[static_cast<std::size_t>(t)]);
  }

  json object_ids = json::array();
  for (std::size_t i = 0; i < video.scene.objects.size(); ++i) object_ids.push_back(SceneSpec::object_id(i));
  json meta{
      {"format_version", kFormatVersion},
      {"generator_version", kGeneratorVersion},
      {"config_hash", config_ ? config_->hash() : ""},
      {"index", index},
      {"seed", video.seed},
      {"length", e.length},
      {"height", e.height},
      {"width", e.width},
      {"object_ids", object_ids},
      {"background_ids", json::array()},
      {"visibility", video.visibility},
      {"crossing", video.scene.crossing ? crossing_json(*video.scene.crossing) : json(nullptr)},
      {"scene", scene_json(video.scene)},
  };
  write_text(dir / "meta.json", meta.dump(2) + "\n");
  return e;
}

Manifest DatasetWriter::finish(std::vector<SequenceEntry> entries) const {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  Manifest m;
  m.generator_version = std::string(kGeneratorVersion);
  m.config = config_;
  m.config_hash = config_ ? config_->hash() : "";
  m.sequences = std::move(entries);

  json seqs = json::array();
  for (const auto& e : m.sequences) seqs.push_back(entry_json(e));
  json j{
      {"format_version", m.format_version},
      {"generator_version", m.generator_version},
      {"config", config_ ? json::parse(config_->canonical()) : json(nullptr)},
      {"config_hash", m.config_hash},
      {"num_sequences", m.sequences.size()},
      {"sequences", seqs},
  };
  write_text(root_ / "manifest.json", j.dump(2) + "\n");
  return m;
}

Manifest write_dataset(const std::vector<VideoSample>& samples, const fs::path& root,
                       const std::optional<DatasetConfig>& config) {
  DatasetWriter writer(root, config);
  std::vector<SequenceEntry> entries;
  for (std::size_t i = 0; i < samples.size(); ++i) entries.push_back(writer.write_sequence(i, samples[i]));
  return writer.finish(std::move(entries));
}

Manifest generate_and_write(const DatasetConfig& config, const fs::path& root, int workers) {
  config.validate();
  DatasetWriter writer(root, config);
  std::vector<SequenceEntry> entries(static_cast<std::size_t>(config.num_sequences));
  parallel_for(entries.size(), workers,
               [&](std::size_t i) { entries[i] = writer.write_sequence(i, generate_sequence(config, i)); });
  return writer.finish(std::move(entries));
}

Manifest read_manifest(const fs::path& root) {
  const json j = read_json(root / "manifest.json");
  Manifest m;
  try {
    m.format_version = j.at("format_version").get<int>();
    m.generator_version = j.value("generator_version", "");
    if (j.contains("config") && !j.at("config").is_null()) m.config = config_from(j.at("config"));
    m.config_hash = j.value("config_hash", "");
    for (const auto& ej : j.at("sequences")) {
      SequenceEntry e;
      e.index = ej.at("index").get<std::size_t>();
      e.name = ej.value("name", sequence_name(e.index));
      e.length = ej.at("length").get<int>();
      e.height = ej.at("height").get<int>();
      e.width = ej.at("width").get<int>();
      e.digest = ej.value("digest", "");
      m.sequences.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw ValidationError("malformed manifest " + (root / "manifest.json").string() + ": " + e.what());
  } catch (const InvalidParameter& e) {
    throw ValidationError("malformed manifest " + (root / "manifest.json").string() + ": " + e.what());
  }
  if (m.format_version != kFormatVersion)
    throw ValidationError("unsupported format_version " + std::to_string(m.format_version));
  return m;
}

SequenceRecord read_sequence(const fs::path& root, const SequenceEntry& entry) {
  const fs::path dir = root / entry.name;
  const fs::path meta_path = dir / "meta.json";
  const json j = read_json(meta_path);
  SequenceRecord rec;
  SequenceMeta& m = rec.meta;
  try {
    m.index = j.value("index", entry.index);
    m.seed = j.value("seed", std::uint64_t{0});
    m.length = j.at("length").get<int>();
    m.height = j.value("height", entry.height);
    m.width = j.value("width", entry.width);
    m.object_ids = j.at("object_ids").get<std::vector<int>>();
    m.background_ids = j.value("background_ids", std::vector<int>{});
    if (j.contains("visibility")) m.visibility = j.at("visibility").get<std::vector<std::vector<bool>>>();
    if (j.contains("crossing") && !j.at("crossing").is_null()) m.crossing = crossing_from(j.at("crossing"));
    if (j.contains("scene") && !j.at("scene").is_null()) {
      m.scene = scene_from(j.at("scene"));
      m.scene->crossing = m.crossing;
    }
  } catch (const json::exception& e) {
    throw ValidationError("malformed " + rel(root, meta_path) + ": " + e.what());
  } catch (const InvalidParameter& e) {
    throw ValidationError("malformed " + rel(root, meta_path) + ": " + e.what());
  }
  if (m.length != entry.length)
    throw ValidationError(rel(root, meta_path) + ": length disagrees with manifest");

  VideoSample& v = rec.video;
  v.seed = m.seed;
  if (m.scene) v.scene = *m.scene;
  for (int t = 0; t < m.length; ++t) {
    const fs::path fp = dir / frame_name("frame", t);
    const fs::path mp = dir / frame_name("mask", t);
    if (!fs::exists(fp)) throw ValidationError("missing frame " + rel(root, fp));
    if (!fs::exists(mp)) throw ValidationError("missing mask " + rel(root, mp));
    v.frames.push_back(read_png_frame(fp));
    v.gt.push_back(read_png_labels(mp));
    if (v.frames.back().height() != entry.height || v.frames.back().width() != entry.width ||
        v.gt.back().rows() != entry.height || v.gt.back().cols() != entry.width)
      throw ValidationError("dimension mismatch in " + rel(root, fp));
  }
  v.visibility = m.visibility.empty() ? visibility_table(v.gt, m.object_ids.size()) : m.visibility;
  return rec;
}

void write_prediction_sequence(const fs::path& root, const SequenceEntry& entry, const PredictionSet& p) {
  if (static_cast<int>(p.labels.size()) != entry.length)
    throw ValidationError("prediction for " + entry.name + " has " + std::to_string(p.labels.size()) +
                          " frames, expected " + std::to_string(entry.length));
  if (!p.reconstructions.empty() && p.reconstructions.size() != p.labels.size())
    throw ValidationError("reconstruction count differs from label-map count for " + entry.name);
  const fs::path dir = root / entry.name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t t = 0; t < p.labels.size(); ++t) {
    write_png(dir / frame_name("pred", static_cast<int>(t)), p.labels[t]);
    if (!p.reconstructions.empty()) write_png(dir / frame_name("recon", static_cast<int>(t)), p.reconstructions[t]);
  }
  json meta{{"producer", p.meta.producer},
            {"background_ids", p.meta.background_ids},
            {"exclude_background", p.meta.exclude_background},
            {"parameters", p.meta.parameters}};
  write_text(dir / "pred_meta.json", meta.dump(2) + "\n");
}

PredictionSet read_prediction_sequence(const fs::path& root, const SequenceEntry& entry) {
  const fs::path dir = root / entry.name;
  if (!fs::is_directory(dir)) throw ValidationError("missing prediction directory " + entry.name);
  PredictionSet p;
  const fs::path meta_path = dir / "pred_meta.json";
  if (fs::exists(meta_path)) {
    const json j = read_json(meta_path);
    try {
      p.meta.producer = j.value("producer", "unknown");
      p.meta.background_ids = j.value("background_ids", std::vector<int>{});
      p.meta.exclude_background = j.value("exclude_background", false);
      p.meta.parameters = j.value("parameters", "");
    } catch (const json::exception& e) {
      throw ValidationError("malformed " + rel(root, meta_path) + ": " + e.what());
    }
  }
  const bool has_recon = fs::exists(dir / frame_name("recon", 0));
  for (int t = 0; t < entry.length; ++t) {
    const fs::path pp = dir / frame_name("pred", t);
    if (!fs::exists(pp)) throw ValidationError("missing prediction frame " + rel(root, pp));
    LabelMap labels = read_png_labels(pp);
    if (labels.rows() != entry.height || labels.cols() != entry.width)
      throw ValidationError("dimension mismatch in " + rel(root, pp) + ": " + std::to_string(labels.rows()) + "x" +
                            std::to_string(labels.cols()) + ", expected " + std::to_string(entry.height) + "x" +
                            std::to_string(entry.width));
    p.labels.push_back(std::move(labels));
    if (has_recon) {
      const fs::path rp = dir / frame_name("recon", t);
      if (!fs::exists(rp)) throw ValidationError("missing reconstruction frame " + rel(root, rp));
      Frame recon = read_png_frame(rp);
      if (recon.height() != entry.height || recon.width() != entry.width)
        throw ValidationError("dimension mismatch in " + rel(root, rp));
      p.reconstructions.push_back(std::move(recon));
    }
  }
  const fs::path extra = dir / frame_name("pred", entry.length);
  if (fs::exists(extra)) throw ValidationError("unexpected extra prediction frame " + rel(root, extra));
  return p;
}

std::vector<PredictionSet> read_predictions(const fs::path& root, const Manifest& expected) {
  if (!fs::is_directory(root)) throw ValidationError("prediction directory " + root.string() + " does not exist");
  std::vector<PredictionSet> out;
  out.reserve(expected.sequences.size());
  for (const auto& e : expected.sequences) out.push_back(read_prediction_sequence(root, e));
  return out;
}

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw InvalidParameter("unknown report format '" + std::string(s) + "'");
}

std::string write_report(const MetricsReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      json groups = json::object();
      for (const auto& [k, row] : report.by_object_count) groups[std::to_string(k)] = row_json(row);
      return json{{"overall", row_json(report.overall)}, {"by_object_count", groups}}.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::ostringstream os;
      os << "group,sequences,objects,matches,misses,false_positives,id_switches,tracks,"
            "mota,motp,md,mt,match,miss,idsw,fp,mse\n";
      auto line = [&](const std::string& group, const MetricsRow& r) {
        os << group << ',' << r.sequences << ',' << r.objects << ',' << r.matches << ',' << r.misses << ','
           << r.false_positives << ',' << r.switches << ',' << r.tracks << ',' << csv_value(r.mota) << ','
           << csv_value(r.motp) << ',' << csv_value(r.md) << ',' << csv_value(r.mt) << ',' << csv_value(r.match)
           << ',' << csv_value(r.miss) << ',' << csv_value(r.idsw) << ',' << csv_value(r.fp) << ','
           << csv_value(r.mse) << '\n';
      };
      line("all", report.overall);
      for (const auto& [k, row] : report.by_object_count) line("objects=" + std::to_string(k), row);
      return os.str();
    }
    case ReportFormat::markdown: {
      std::ostringstream os;
      os << "| Group | MOTA ↑ | MOTP ↑ | MD ↑ | MT ↑ | Match ↑ | Miss ↓ | ID S. ↓ | FPs ↓ | MSE ↓ |\n"
         << "|:--|--:|--:|--:|--:|--:|--:|--:|--:|--:|\n";
      auto line = [&](const std::string& group, const MetricsRow& r) {
        os << "| " << group << " | " << pct(r.mota) << " | " << pct(r.motp) << " | " << pct(r.md) << " | "
           << pct(r.mt) << " | " << pct(r.match) << " | " << pct(r.miss) << " | " << pct(r.idsw) << " | "
           << pct(r.fp) << " | " << (r.mse ? fmt("%.5f", *r.mse) : "—") << " |\n";
      };
      line("all", report.overall);
      for (const auto& [k, row] : report.by_object_count)
        line(std::to_string(k) + (k == 1 ? " object" : " objects"), row);
      return os.str();
    }
  }
  return {};
}

MetricsReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    MetricsReport r;
    r.overall = row_from(j.at("overall"));
    for (const auto& [k, v] : j.at("by_object_count").items()) r.by_object_count[std::stoi(k)] = row_from(v);
    return r;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

}  // namespace objmot
