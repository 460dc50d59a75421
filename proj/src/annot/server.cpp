#include "doorkit/annot/server.hpp"

#include "httplib.h"

#include "doorkit/error.hpp"
#include "doorkit/io/image_info.hpp"
#include "doorkit/io/map_io.hpp"

namespace doorkit::annot {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const std::string& msg) {
  res.status = status;
  res.set_content(json{{"error", msg}}.dump(), kJson);
}

json view_to_json(const std::string& id, const AnnotationView& v) {
  json anns = json::array();
  for (const auto& b : v.boxes) anns.push_back(io::annotation_to_json(b));
  json j = {{"image_id", id}, {"provenance", to_string(v.provenance)}, {"annotations", anns}};
  if (v.source_image_id) j["source_image_id"] = *v.source_image_id;
  return j;
}

// Runs a handler, mapping library errors to HTTP statuses.
template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const NotFoundError& e) {
    send_error(res, 404, e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("invalid JSON: ") + e.what());
  } catch (const Error& e) {
    send_error(res, 400, e.what());
  }
}

}  // namespace

AnnotationServer::AnnotationServer(AnnotationSession& session,
                                   std::optional<std::filesystem::path> ui_dir)
    : session_(session), http_(std::make_unique<httplib::Server>()) {
  auto& s = *http_;

  s.Get("/api/session", [this](const httplib::Request&, httplib::Response& res) {
    json frames = json::array();
    for (const auto& f : session_.frames()) {
      frames.push_back({{"image_id", f.image_id},
                        {"file_name", f.file_name},
                        {"timestamp", f.timestamp_ms},
                        {"width", f.width},
                        {"height", f.height},
                        {"saved", session_.is_saved(f.image_id)}});
    }
    res.set_content(json{{"session_id", session_.session_id()},
                         {"sample_period", session_.sample_period()},
                         {"frames", frames}}
                        .dump(),
                    kJson);
  });

  s.Get(R"(/api/images/([^/]+)/file)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto path = session_.image_path(req.matches[1]);
      res.set_content(io::read_file(path), io::content_type_for(path));
    });
  });

  s.Get(R"(/api/images/([^/]+)/annotations)",
        [this](const httplib::Request& req, httplib::Response& res) {
          guarded(res, [&] {
            const std::string id = req.matches[1];
            res.set_content(view_to_json(id, session_.get_annotations(id)).dump(), kJson);
          });
        });

  s.Put(R"(/api/images/([^/]+)/annotations)",
        [this](const httplib::Request& req, httplib::Response& res) {
          guarded(res, [&] {
            const std::string id = req.matches[1];
            session_.frame(id);
            const json body = json::parse(req.body);
            io::require_keys(body, "", {"annotations"});
            const auto& anns = io::require_array(body["annotations"], "annotations");
            std::vector<metrics::GroundTruthBox> boxes;
            for (std::size_t k = 0; k < anns.size(); ++k) {
              const std::string p = "annotations[" + std::to_string(k) + "]";
              io::require_keys(anns[k], p, {"box", "label"}, {"image_id"});
              metrics::GroundTruthBox b;
              if (anns[k].contains("image_id")) {
                b.image_id = io::require_string(anns[k]["image_id"], p + ".image_id");
              }
              b.box = io::box_from_json(anns[k]["box"], p + ".box");
              b.label = io::require_label(anns[k]["label"], p + ".label");
              boxes.push_back(std::move(b));
            }
            auto stored = session_.put_annotations(id, std::move(boxes));
            res.set_content(view_to_json(id, {std::move(stored), Provenance::Saved, std::nullopt}).dump(),
                            kJson);
          });
        });

  s.Post("/api/export", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(io::dump_dataset(session_.export_dataset()), kJson);
  });

  if (ui_dir) s.set_mount_point("/", ui_dir->string());
}

AnnotationServer::~AnnotationServer() { stop(); }

int AnnotationServer::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  return http_->bind_to_port(host, port) ? port : -1;
}

bool AnnotationServer::serve() { return http_->listen_after_bind(); }

void AnnotationServer::stop() {
  if (http_) http_->stop();
}

}  // namespace doorkit::annot
