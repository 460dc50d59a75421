#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "doorkit/annot/session.hpp"

namespace httplib {
class Server;
}

namespace doorkit::annot {

/// HTTP front of an AnnotationSession.
///
///   GET  /api/session                  session metadata and frames
///   GET  /api/images/{id}/file         image bytes
///   GET  /api/images/{id}/annotations  boxes and provenance
///   PUT  /api/images/{id}/annotations  replace boxes, body {"annotations": [...]}
///   POST /api/export                   dataset file of the saved annotations
///
/// Errors come back as {"error": message} with 400 (bad body) or 404.
class AnnotationServer {
 public:
  explicit AnnotationServer(AnnotationSession& session,
                            std::optional<std::filesystem::path> ui_dir = std::nullopt);
  ~AnnotationServer();

  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  // port 0 binds an ephemeral port; returns the bound port or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool serve();
  void stop();

 private:
  AnnotationSession& session_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace doorkit::annot
