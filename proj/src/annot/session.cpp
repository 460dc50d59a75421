#include "doorkit/annot/session.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>

#include "doorkit/error.hpp"
#include "doorkit/io/image_info.hpp"
#include "doorkit/io/map_io.hpp"

namespace doorkit::annot {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Provenance p) { return p == Provenance::Saved ? "saved" : "carried"; }

std::vector<Frame> subsample(const std::vector<Frame>& sorted, double period_ms) {
  std::vector<Frame> out;
  for (const auto& f : sorted) {
    if (out.empty() ||
        static_cast<double>(f.timestamp_ms - out.back().timestamp_ms) >= period_ms) {
      out.push_back(f);
    }
  }
  return out;
}

AnnotationSession::AnnotationSession(fs::path image_dir, double sample_period_s,
                                     std::optional<fs::path> store_path)
    : image_dir_(std::move(image_dir)), sample_period_s_(sample_period_s) {
  if (!(sample_period_s_ >= 0.0)) throw Error("sample period must be non-negative");
  std::error_code ec;
  if (!fs::is_directory(image_dir_, ec)) {
    throw Error("image directory does not exist: " + image_dir_.string());
  }
  store_path_ = store_path.value_or(image_dir_ / "annotations.json");
  session_id_ = fs::weakly_canonical(image_dir_).filename().string();

  std::vector<Frame> all;
  for (const auto& entry : fs::directory_iterator(image_dir_)) {
    if (!entry.is_regular_file() || !io::has_image_extension(entry.path())) continue;
    const auto stem = entry.path().stem().string();
    std::int64_t ts = 0;
    auto [p, perr] = std::from_chars(stem.data(), stem.data() + stem.size(), ts);
    if (stem.empty() || perr != std::errc{} || p != stem.data() + stem.size() || ts < 0) {
      throw Error("cannot parse timestamp from image file name: " + entry.path().filename().string());
    }
    Frame f{stem, entry.path().filename().string(), ts, 0, 0};
    if (auto size = io::read_image_size(entry.path())) {
      f.width = size->width;
      f.height = size->height;
    }
    all.push_back(std::move(f));
  }
  if (all.empty()) throw Error("no images in " + image_dir_.string());
  std::sort(all.begin(), all.end(), [](const Frame& a, const Frame& b) {
    return a.timestamp_ms != b.timestamp_ms ? a.timestamp_ms < b.timestamp_ms
                                            : a.file_name < b.file_name;
  });
  frames_ = subsample(all, sample_period_s_ * 1000.0);
  for (std::size_t i = 0; i < frames_.size(); ++i) {
    if (!index_.emplace(frames_[i].image_id, i).second) {
      throw Error("two images share timestamp " + frames_[i].image_id);
    }
  }
  load_store();
}

void AnnotationSession::load_store() {
  auto store = std::make_shared<Store>();
  std::error_code ec;
  if (fs::exists(store_path_, ec)) {
    json j;
    try {
      j = json::parse(io::read_file(store_path_));
    } catch (const json::parse_error& e) {
      throw Error("corrupt annotation store " + store_path_.string() + ": " + e.what());
    }
    io::require_keys(j, "", {"session_id", "saved"});
    const auto& saved = io::require_array(j["saved"], "saved");
    for (std::size_t k = 0; k < saved.size(); ++k) {
      const std::string p = "saved[" + std::to_string(k) + "]";
      io::require_keys(saved[k], p, {"image_id", "annotations"});
      const auto id = io::require_string(saved[k]["image_id"], p + ".image_id");
      if (!index_.count(id)) {
        throw Error("annotation store " + store_path_.string() + " has boxes for image " + id +
                    " which is not among the sampled frames");
      }
      auto& list = (*store)[id];
      const auto& anns = io::require_array(saved[k]["annotations"], p + ".annotations");
      for (std::size_t a = 0; a < anns.size(); ++a) {
        list.push_back(io::annotation_from_json(anns[a], p + ".annotations[" + std::to_string(a) + "]"));
      }
    }
  }
  std::atomic_store(&store_, std::shared_ptr<const Store>(std::move(store)));
}

std::shared_ptr<const AnnotationSession::Store> AnnotationSession::snapshot() const {
  return std::atomic_load(&store_);
}

std::size_t AnnotationSession::frame_index(const std::string& image_id) const {
  auto it = index_.find(image_id);
  if (it == index_.end()) throw NotFoundError("unknown image: " + image_id);
  return it->second;
}

const Frame& AnnotationSession::frame(const std::string& image_id) const {
  return frames_[frame_index(image_id)];
}

fs::path AnnotationSession::image_path(const std::string& image_id) const {
  return image_dir_ / frame(image_id).file_name;
}

bool AnnotationSession::is_saved(const std::string& image_id) const {
  frame_index(image_id);
  return snapshot()->count(image_id) > 0;
}

AnnotationView AnnotationSession::get_annotations(const std::string& image_id) const {
  const auto idx = frame_index(image_id);
  const auto store = snapshot();
  if (auto it = store->find(image_id); it != store->end()) {
    return {it->second, Provenance::Saved, std::nullopt};
  }
  for (std::size_t k = idx; k-- > 0;) {
    auto it = store->find(frames_[k].image_id);
    if (it == store->end()) continue;
    AnnotationView view{it->second, Provenance::Carried, frames_[k].image_id};
    for (auto& b : view.boxes) b.image_id = image_id;
    return view;
  }
  return {{}, Provenance::Carried, std::nullopt};
}

std::vector<metrics::GroundTruthBox> AnnotationSession::put_annotations(
    const std::string& image_id, std::vector<metrics::GroundTruthBox> boxes) {
  const Frame& f = frame(image_id);
  for (auto& b : boxes) {
    if (!b.image_id.empty() && b.image_id != image_id) {
      throw Error("box for image " + b.image_id + " sent to image " + image_id);
    }
    b.image_id = image_id;
    b.box = io::clamp_box(b.box, f.width, f.height);
  }
  std::lock_guard lock(write_mu_);
  auto next = std::make_shared<Store>(*snapshot());
  (*next)[image_id] = boxes;
  io::write_file_atomic(store_path_, serialize(*next));
  std::atomic_store(&store_, std::shared_ptr<const Store>(std::move(next)));
  return boxes;
}

std::string AnnotationSession::serialize(const Store& store) const {
  json saved = json::array();
  for (const auto& f : frames_) {
    auto it = store.find(f.image_id);
    if (it == store.end()) continue;
    json anns = json::array();
    for (const auto& b : it->second) anns.push_back(io::annotation_to_json(b));
    saved.push_back({{"image_id", f.image_id}, {"annotations", anns}});
  }
  return json{{"session_id", session_id_}, {"saved", saved}}.dump(2) + "\n";
}

io::DatasetFile AnnotationSession::export_dataset() const {
  const auto store = snapshot();
  io::DatasetFile d;
  for (const auto& f : frames_) {
    d.images.push_back({f.image_id, f.file_name, f.width, f.height});
    if (auto it = store->find(f.image_id); it != store->end()) {
      d.annotations.insert(d.annotations.end(), it->second.begin(), it->second.end());
    }
  }
  return d;
}

}  // namespace doorkit::annot
