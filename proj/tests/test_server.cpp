#include <gtest/gtest.h>

#include <thread>

#include "motionforge/app/cli.hpp"
#include "motionforge/app/server.hpp"
#include "support.hpp"

using namespace mft;
using motionforge::io::json;
namespace io = motionforge::io;

namespace {

class ServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    app::register_routes(server_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string points_task_text(const std::vector<Vec3>& pts, const std::string& scheme) {
  json j;
  j["schema_version"] = "1";
  j["task"]["scheme"] = scheme;
  for (const auto& p : pts) j["task"]["points"].push_back({p.x(), p.y(), p.z()});
  return j.dump();
}

}  // namespace

TEST_F(ServerTest, Health) {
  auto res = client().Get("/api/health");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(json::parse(res->body), json({{"status", "ok"}}));
}

TEST_F(ServerTest, InterpolateSevenPoints) {
  Rng rng(150);
  auto res = client().Post("/api/interpolate", points_task_text(rng.points(7), "points7"), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json body = json::parse(res->body);
  for (const auto& r : body["report"]["residuals"]) EXPECT_LT(r.get<double>(), 1e-9);
  EXPECT_EQ(body["motion"]["schema_version"], "1");
}

TEST_F(ServerTest, BadBranchIs400) {
  Rng rng(151);
  json j;
  j["schema_version"] = "1";
  j["task"]["scheme"] = "poses4";
  for (int i = 0; i < 4; ++i) {
    const auto a = rng.pose().coeffs();
    j["task"]["poses"].push_back(std::vector<double>(a.begin(), a.end()));
  }
  j["options"]["branch"] = "k3";
  auto res = client().Post("/api/interpolate", j.dump(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "BAD_OPTION");
}

TEST_F(ServerTest, MathFailureIs422) {
  Rng rng(152);
  auto pts = rng.points(5);
  pts[1] = pts[0];
  auto res = client().Post("/api/interpolate", points_task_text(pts, "points5"), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 422);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "SINGULAR_DIFFERENCE");

  res = client().Post("/api/interpolate", "{broken", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "SCHEMA_ERROR");
}

TEST_F(ServerTest, FactorizeAndSample) {
  Rng rng(153);
  auto res = client().Post("/api/interpolate", points_task_text(rng.points(7), "points7"), "application/json");
  ASSERT_TRUE(res);
  const json motion = json::parse(res->body)["motion"];

  res = client().Post("/api/factorize", motion.dump(), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  const json f = json::parse(res->body);
  EXPECT_GE(f["factorizations"].size(), 2u);
  for (const auto& m : f["mechanisms"]) EXPECT_EQ(m["joints"].size(), 6u);

  res = client().Post("/api/sample", json{{"motion", motion}, {"count", 11}}.dump(), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  EXPECT_EQ(json::parse(res->body)["samples"].size(), 11u);
}

TEST_F(ServerTest, CorsForLocalOrigins) {
  httplib::Headers h{{"Origin", "http://localhost:5173"}};
  auto res = client().Get("/api/health", h);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
  auto pre = client().Options("/api/interpolate", h);
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);
  httplib::Headers remote{{"Origin", "http://example.com"}};
  res = client().Get("/api/health", remote);
  ASSERT_TRUE(res);
  EXPECT_FALSE(res->has_header("Access-Control-Allow-Origin"));
}

TEST_F(ServerTest, ByteIdenticalToCli) {
  TempDir dir;
  Rng rng(154);
  for (const auto& [scheme, n] : {std::pair{"points5", 5}, std::pair{"points7", 7}}) {
    const std::string task = points_task_text(rng.points(n), scheme);
    write_file(dir.file("task.json"), task);
    const CliRun r = run_cli(std::string("interpolate ") + dir.file("task.json") + " -o " + dir.file("motion.json"), dir);
    ASSERT_EQ(r.exit_code, 0) << r.err;
    auto res = client().Post("/api/interpolate", task, "application/json");
    ASSERT_TRUE(res);
    const std::string http = io::serialize(json::parse(res->body)["motion"]);
    EXPECT_EQ(http, read_file(dir.file("motion.json")));
  }
}
