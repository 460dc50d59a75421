#include <thread>

#include "doctest.h"

#include "httplib.h"
#include "json.hpp"

#include "doorkit/annot/server.hpp"
#include "doorkit/annot/session.hpp"
#include "doorkit/error.hpp"
#include "doorkit/io/dataset.hpp"

#include "../support/annot_fixture.hpp"
#include "../support/temp_dir.hpp"

using namespace doorkit::annot;
using doorkit::DoorStatus;
using doorkit::metrics::Box;
using doorkit::metrics::GroundTruthBox;
using nlohmann::json;
using testing_support::TempDir;

namespace {

std::vector<std::string> ids(const AnnotationSession& s) {
  std::vector<std::string> out;
  for (const auto& f : s.frames()) out.push_back(f.image_id);
  return out;
}

GroundTruthBox gt(double x, DoorStatus s = DoorStatus::Open) { return {"", {x, 10, 20, 40}, s}; }

// In-process server on an ephemeral port.
struct LiveServer {
  AnnotationSession& session;
  AnnotationServer server;
  int port;
  std::thread thread;

  explicit LiveServer(AnnotationSession& s) : session(s), server(s), port(server.bind("127.0.0.1", 0)) {
    thread = std::thread([this] { server.serve(); });
    testing_support::wait_for_server(port);
  }
  ~LiveServer() {
    server.stop();
    thread.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port); }
};

}  // namespace

TEST_CASE("greedy subsampling") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {0, 400, 900, 1300});
  CHECK(ids(AnnotationSession(dir.path(), 1.0)) == std::vector<std::string>{"0", "1300"});
  CHECK(ids(AnnotationSession(dir.path(), 0.0)).size() == 4);
  CHECK(ids(AnnotationSession(dir.path(), 0.4)) == std::vector<std::string>{"0", "400", "900", "1300"});
}

TEST_CASE("opening errors") {
  TempDir dir;
  CHECK_THROWS_WITH_AS(AnnotationSession(dir.path(), 1.0), doctest::Contains("no images"), doorkit::Error);
  std::ofstream(dir / "frame_a.png") << "x";
  CHECK_THROWS_WITH_AS(AnnotationSession(dir.path(), 1.0), doctest::Contains("frame_a.png"), doorkit::Error);
  CHECK_THROWS_AS(AnnotationSession(dir / "missing", 1.0), doorkit::Error);
}

TEST_CASE("frame sizes come from the image headers") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {5}, 320, 200);
  AnnotationSession s(dir.path(), 0.0);
  CHECK(s.frames()[0].width == 320);
  CHECK(s.frames()[0].height == 200);
}

TEST_CASE("carry-forward") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {0, 1000, 2000, 3000});
  AnnotationSession s(dir.path(), 1.0);

  auto first = s.get_annotations("0");
  CHECK(first.boxes.empty());
  CHECK(first.provenance == Provenance::Carried);

  s.put_annotations("0", {gt(1), gt(2), gt(3, DoorStatus::Closed)});
  CHECK(s.get_annotations("0").provenance == Provenance::Saved);
  const auto carried = s.get_annotations("1000");
  CHECK(carried.provenance == Provenance::Carried);
  REQUIRE(carried.boxes.size() == 3);
  CHECK(carried.source_image_id == "0");
  for (const auto& b : carried.boxes) CHECK(b.image_id == "1000");
  CHECK(s.get_annotations("3000").boxes.size() == 3);
  CHECK_FALSE(s.is_saved("1000"));

  s.put_annotations("2000", {});
  CHECK(s.get_annotations("2000").provenance == Provenance::Saved);
  CHECK(s.get_annotations("2000").boxes.empty());
  CHECK(s.get_annotations("3000").boxes.empty());
  CHECK(s.get_annotations("3000").source_image_id == "2000");

  CHECK_THROWS_AS(s.get_annotations("42"), doorkit::NotFoundError);
  CHECK_THROWS_AS(s.put_annotations("42", {}), doorkit::NotFoundError);
}

TEST_CASE("puts are clamped, persisted and reloaded") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {0, 1000}, 100, 50);
  {
    AnnotationSession s(dir.path(), 0.0);
    const auto stored = s.put_annotations("1000", {{"", {90, -5, 30, 20}, DoorStatus::Closed}});
    CHECK(stored[0].box == Box{90, 0, 10, 15});
    CHECK(stored[0].image_id == "1000");
  }
  AnnotationSession again(dir.path(), 0.0);
  const auto v = again.get_annotations("1000");
  CHECK(v.provenance == Provenance::Saved);
  CHECK(v.boxes == std::vector<GroundTruthBox>{{"1000", {90, 0, 10, 15}, DoorStatus::Closed}});
}

TEST_CASE("a separate store path") {
  TempDir dir;
  testing_support::write_frames(dir / "img", {0});
  AnnotationSession s(dir / "img", 0.0, dir / "store.json");
  s.put_annotations("0", {gt(1)});
  CHECK(std::filesystem::exists(dir / "store.json"));
  CHECK_FALSE(std::filesystem::exists(dir / "img" / "annotations.json"));
}

TEST_CASE("export holds every frame and only saved boxes") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {0, 1000, 2000});
  AnnotationSession s(dir.path(), 0.0);
  auto d = s.export_dataset();
  CHECK(d.images.size() == 3);
  CHECK(d.annotations.empty());
  s.put_annotations("0", {gt(1)});
  s.put_annotations("2000", {gt(5)});
  s.put_annotations("1000", {});
  d = s.export_dataset();
  REQUIRE(d.annotations.size() == 2);
  CHECK(d.annotations[0].image_id == "0");
  CHECK(d.annotations[1].image_id == "2000");
  CHECK(s.export_dataset() == d);
}

TEST_CASE("http api") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {0, 1000, 2000});
  AnnotationSession session(dir.path(), 0.0);
  LiveServer live(session);
  REQUIRE(live.port > 0);
  auto cli = live.client();

  auto meta = cli.Get("/api/session");
  REQUIRE(meta);
  CHECK(meta->status == 200);
  const auto mj = json::parse(meta->body);
  CHECK(mj["frames"].size() == 3);
  CHECK(mj["frames"][0]["width"] == 640);

  auto file = cli.Get("/api/images/1000/file");
  REQUIRE(file);
  CHECK(file->status == 200);
  CHECK(file->get_header_value("Content-Type") == "image/png");
  CHECK(file->body == testing_support::png_header(640, 480));

  auto put = cli.Put("/api/images/0/annotations",
                     testing_support::put_body({testing_support::box_json(1, 2, 3, 4, "open")}).dump(),
                     "application/json");
  REQUIRE(put);
  CHECK(put->status == 200);

  auto got = cli.Get("/api/images/1000/annotations");
  REQUIRE(got);
  const auto gj = json::parse(got->body);
  CHECK(gj["provenance"] == "carried");
  CHECK(gj["annotations"][0]["box"] == json::array({1, 2, 3, 4}));
  CHECK(gj["annotations"][0]["image_id"] == "1000");

  auto ex = cli.Post("/api/export", "", "application/json");
  REQUIRE(ex);
  const auto d = doorkit::io::parse_dataset(ex->body);
  CHECK(d.images.size() == 3);
  CHECK(d.annotations.size() == 1);

  auto missing = cli.Get("/api/images/77/annotations");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).contains("error"));
  CHECK(cli.Get("/api/images/77/file")->status == 404);

  auto bad_label = cli.Put("/api/images/0/annotations",
                           testing_support::put_body({testing_support::box_json(1, 2, 3, 4, "ajar")}).dump(),
                           "application/json");
  REQUIRE(bad_label);
  CHECK(bad_label->status == 400);
  CHECK(json::parse(bad_label->body)["error"].get<std::string>().find("annotations[0].label") != std::string::npos);

  auto bad_json = cli.Put("/api/images/0/annotations", "{", "application/json");
  CHECK(bad_json->status == 400);
  // A rejected put leaves the saved boxes alone.
  CHECK(session.get_annotations("0").boxes.size() == 1);
}

TEST_CASE("concurrent puts to one image: one whole write wins") {
  TempDir dir;
  testing_support::write_frames(dir.path(), {0});
  AnnotationSession session(dir.path(), 0.0);
  LiveServer live(session);
  std::vector<std::thread> writers;
  for (int w = 0; w < 8; ++w) {
    writers.emplace_back([&, w] {
      auto cli = live.client();
      std::vector<json> boxes;
      for (int k = 0; k <= w; ++k) boxes.push_back(testing_support::box_json(w, k, 5, 5, "open"));
      for (int rep = 0; rep < 5; ++rep) {
        cli.Put("/api/images/0/annotations", testing_support::put_body(boxes).dump(), "application/json");
      }
    });
  }
  for (auto& t : writers) t.join();
  const auto v = session.get_annotations("0");
  REQUIRE_FALSE(v.boxes.empty());
  const double writer = v.boxes[0].box.x;
  CHECK(v.boxes.size() == static_cast<std::size_t>(writer) + 1);
  for (const auto& b : v.boxes) CHECK(b.box.x == writer);
  AnnotationSession reopened(dir.path(), 0.0);
  CHECK(reopened.get_annotations("0").boxes == v.boxes);
}
