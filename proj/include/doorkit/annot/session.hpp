#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "doorkit/io/dataset.hpp"
#include "doorkit/metrics/types.hpp"

namespace doorkit::annot {

struct Frame {
  std::string image_id;  // file stem, the timestamp in milliseconds
  std::string file_name;
  std::int64_t timestamp_ms = 0;
  int width = 0;
  int height = 0;
};

enum class Provenance { Saved, Carried };
std::string_view to_string(Provenance p);

struct AnnotationView {
  std::vector<metrics::GroundTruthBox> boxes;  // stamped with the requested image_id
  Provenance provenance = Provenance::Carried;
  // Frame the boxes come from, when carried from an earlier frame.
  std::optional<std::string> source_image_id;
};

// Keeps the first frame and then every frame at least period_ms after the last
// kept one. Input must be sorted by timestamp.
std::vector<Frame> subsample(const std::vector<Frame>& sorted, double period_ms);

/// File-backed annotation store over a sampled image sequence.
///
/// Reads take a snapshot of the immutable store without locking. Writes are
/// serialized: each put builds a new store, persists it (temporary file, fsync,
/// rename) and only then publishes it, so an acknowledged put is always on
/// disk and a crash never leaves a torn store.
class AnnotationSession {
 public:
  AnnotationSession(std::filesystem::path image_dir, double sample_period_s,
                    std::optional<std::filesystem::path> store_path = std::nullopt);

  AnnotationSession(const AnnotationSession&) = delete;
  AnnotationSession& operator=(const AnnotationSession&) = delete;

  const std::string& session_id() const { return session_id_; }
  const std::filesystem::path& image_dir() const { return image_dir_; }
  const std::filesystem::path& store_path() const { return store_path_; }
  double sample_period() const { return sample_period_s_; }
  const std::vector<Frame>& frames() const { return frames_; }

  const Frame& frame(const std::string& image_id) const;
  std::filesystem::path image_path(const std::string& image_id) const;
  bool is_saved(const std::string& image_id) const;

  // Saved boxes, else those of the nearest earlier saved frame (carried).
  AnnotationView get_annotations(const std::string& image_id) const;

  // Replaces the frame's saved list; an empty list marks the frame door-free.
  // Boxes are clamped to the image. Returns once the store is on disk.
  std::vector<metrics::GroundTruthBox> put_annotations(const std::string& image_id,
                                                       std::vector<metrics::GroundTruthBox> boxes);

  // Every frame, and only explicitly saved annotations.
  io::DatasetFile export_dataset() const;

 private:
  using Store = std::map<std::string, std::vector<metrics::GroundTruthBox>>;

  std::shared_ptr<const Store> snapshot() const;
  std::size_t frame_index(const std::string& image_id) const;
  void load_store();
  std::string serialize(const Store& store) const;

  std::filesystem::path image_dir_;
  double sample_period_s_;
  std::filesystem::path store_path_;
  std::string session_id_;
  std::vector<Frame> frames_;
  std::map<std::string, std::size_t> index_;

  std::mutex write_mu_;
  std::shared_ptr<const Store> store_;
};

}  // namespace doorkit::annot
