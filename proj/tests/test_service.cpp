#include <gtest/gtest.h>
#include <httplib.h>

#include <thread>

#include "logibench/facts_io.hpp"
#include "logibench/generator.hpp"
#include "logibench/json_io.hpp"
#include "logibench/service.hpp"
#include "support.hpp"

using namespace logibench;
using logibench::testing::data_path;
using logibench::testing::Scenario;

namespace {

std::string corner_text() {
  Scenario s{.width = 3, .height = 3};
  s.stations[1] = {1, 3};
  s.shelves[1] = {3, 1};
  s.robots[1] = {1, 1};
  s.stock[{1, 1}] = 1;
  s.order_station[1] = 1;
  s.lines[{1, 1}] = 1;
  return s.text();
}

class ServiceTest : public ::testing::Test {
 protected:
  std::unique_ptr<Service> service;
  std::thread loop;
  std::unique_ptr<httplib::Client> client;

  void SetUp() override {
    service = std::make_unique<Service>(ServiceOptions{.bind = "127.0.0.1", .port = 0});
    const int port = service->bind();
    ASSERT_GT(port, 0);
    loop = std::thread([this] { service->listen(); });
    client = std::make_unique<httplib::Client>("127.0.0.1", port);
    client->set_read_timeout(60, 0);
  }

  void TearDown() override {
    service->stop();
    loop.join();
    service.reset();
  }

  std::string create(const std::string& facts) {
    auto res = client->Post("/api/instances", facts, "text/plain");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 201) << res->body;
    return Json::parse(res->body).at("id").get<std::string>();
  }

  Json post(const std::string& path, const Json& body, int expect = 200) {
    auto res = client->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, expect) << path << ": " << res->body;
    return Json::parse(res->body);
  }
};

}  // namespace

TEST_F(ServiceTest, CreateReturnsSummary) {
  auto res = client->Post("/api/instances", read_file(data_path("unfilled_instance.lp")), "text/plain");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 201);
  const Json body = Json::parse(res->body);
  EXPECT_FALSE(body.at("id").get<std::string>().empty());
  const Instance inst = read_instance(read_file(data_path("unfilled_instance.lp")));
  EXPECT_EQ(body["summary"]["nodes"], inst.nodes.size());
  EXPECT_EQ(body["summary"]["robots"], inst.robots.size());
  EXPECT_EQ(body["summary"]["orders"], inst.orders.size());
}

TEST_F(ServiceTest, BadInstanceIs400) {
  auto res = client->Post("/api/instances", "init(object(node,1),value(at,(1,1)))", "text/plain");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_TRUE(Json::parse(res->body).contains("error"));
}

TEST_F(ServiceTest, UnknownSessionIs404) {
  auto res = client->Get("/api/sessions/nope/instance");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  EXPECT_EQ(Json::parse(res->body)["error"], "unknown session");
}

TEST_F(ServiceTest, CheckWithoutPlanIs409) {
  const std::string id = create(corner_text());
  const Json body = post("/api/sessions/" + id + "/check", {{"domain", "M"}}, 409);
  EXPECT_EQ(body["error"], "no plan in session");
}

TEST_F(ServiceTest, SolveCorner) {
  const std::string id = create(corner_text());
  const Json body = post("/api/sessions/" + id + "/solve", {{"domain", "M"}});
  EXPECT_EQ(body["status"], "done");
  EXPECT_EQ(body["makespan"], 2);
  EXPECT_EQ(body["domain"], "M");
  EXPECT_EQ(body["facts"],
            "occurs(object(robot,1),action(move,(1,0)),1).\noccurs(object(robot,1),action(move,(1,0)),2).\n");
  // the solved plan becomes the session plan
  const Json check = post("/api/sessions/" + id + "/check", {{"domain", "M"}});
  EXPECT_TRUE(check["valid"].get<bool>());
  auto exported = client->Get("/api/sessions/" + id + "/export?what=plan");
  ASSERT_TRUE(exported);
  EXPECT_EQ(exported->body, body["facts"].get<std::string>());
}

TEST_F(ServiceTest, UploadedPlanIsChecked) {
  const std::string id = create(read_file(data_path("unfilled_instance.lp")));
  auto up = client->Post("/api/sessions/" + id + "/plan", read_file(data_path("unfilled_plan.lp")), "text/plain");
  ASSERT_TRUE(up);
  EXPECT_EQ(up->status, 200);
  EXPECT_EQ(Json::parse(up->body)["horizon"], 11);
  const Json r = post("/api/sessions/" + id + "/check", {{"domain", "A"}, {"trace", true}});
  EXPECT_FALSE(r["valid"].get<bool>());
  EXPECT_EQ(r["facts"], "% 1 error\nerr(goal,unfilledOrder,(3,3,1,11)).\n");
  EXPECT_EQ(r["trace"].size(), 12u);
  auto bad = client->Post("/api/sessions/" + id + "/plan", "occurs(object(robot,9),action(wait,()),1).", "text/plain");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
}

TEST_F(ServiceTest, InstanceJsonRoundTrip) {
  const std::string text = read_file(data_path("unfilled_instance.lp"));
  const std::string id = create(text);
  auto got = client->Get("/api/sessions/" + id + "/instance");
  ASSERT_TRUE(got);
  const Json doc = Json::parse(got->body);
  EXPECT_EQ(instance_from_json(doc), read_instance(text));
  auto put = client->Put("/api/sessions/" + id + "/instance", doc.dump(), "application/json");
  ASSERT_TRUE(put);
  EXPECT_EQ(put->status, 200);
  auto again = client->Get("/api/sessions/" + id + "/instance");
  EXPECT_EQ(Json::parse(again->body), doc);
  auto broken = client->Put("/api/sessions/" + id + "/instance", "{\"nodes\": 3}", "application/json");
  EXPECT_EQ(broken->status, 400);
}

TEST_F(ServiceTest, GenerateMatchesLibrary) {
  const std::string id = create(corner_text());
  const Json cfg = {{"x", 11}, {"y", 6}, {"X", 4}, {"Y", 2}, {"p", 1}, {"s", 16}, {"P", 16},
                    {"u", 16}, {"H", true}, {"prs", 1}, {"r", 2}, {"o", 2}, {"seed", 5}};
  const Json body = post("/api/sessions/" + id + "/generate", cfg);
  EXPECT_EQ(body["summary"]["nodes"], 66);
  EXPECT_EQ(body["seed"], 5);

  GenConfig lib;
  apply_overrides(lib, overrides_from_json(cfg));
  const GeneratedInstance g = generate(lib, 1);
  EXPECT_EQ(body["name"], g.name);
  auto exported = client->Get("/api/sessions/" + id + "/export");
  ASSERT_TRUE(exported);
  EXPECT_EQ(exported->body, serialize(g.instance, g.header));

  post("/api/sessions/" + id + "/generate", {{"bogus", 1}}, 400);
}

TEST_F(ServiceTest, ExportIsByteIdentical) {
  const std::string text = read_file(data_path("unfilled_instance.lp"));
  const FactSet facts = parse_facts(text);
  const std::string id = create(text);
  auto res = client->Get("/api/sessions/" + id + "/export?what=instance");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->body, serialize(build_instance(facts), facts.header_comments));
  auto none = client->Get("/api/sessions/" + id + "/export?what=plan");
  EXPECT_EQ(none->status, 409);
  auto bad = client->Get("/api/sessions/" + id + "/export?what=both");
  EXPECT_EQ(bad->status, 400);
}

TEST_F(ServiceTest, SolveStatusAndCancel) {
  GenConfig cfg;
  cfg.x = 19, cfg.y = 9, cfg.X = 5, cfg.Y = 2, cfg.p = 3, cfg.s = 45, cfg.r = 6, cfg.P = 180, cfg.u = 540,
  cfg.o = 12, cfg.H = true;
  const GeneratedInstance g = generate(cfg, 1);
  const std::string id = create(serialize(g.instance, g.header));

  auto none = client->Get("/api/sessions/" + id + "/solve/status");
  EXPECT_EQ(none->status, 404);

  const Json started = post("/api/sessions/" + id + "/solve", {{"domain", "A"}, {"wait_ms", 0}}, 202);
  EXPECT_EQ(started["status"], "running");
  post("/api/sessions/" + id + "/solve", {{"domain", "A"}, {"wait_ms", 0}}, 409);
  post("/api/sessions/" + id + "/solve/cancel", Json::object());

  std::string status = "running";
  for (int i = 0; i < 600 && status == "running"; ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
    status = Json::parse(client->Get("/api/sessions/" + id + "/solve/status")->body)["status"];
  }
  EXPECT_EQ(status, "cancelled");
}

TEST_F(ServiceTest, SolveErrors) {
  const std::string id = create(corner_text());
  post("/api/sessions/" + id + "/solve", {{"domain", "Z"}}, 400);
  post("/api/sessions/" + id + "/solve", {{"domain", "M"}, {"positions", "diagonal"}}, 400);
  const Json capped = post("/api/sessions/" + id + "/solve", {{"domain", "M"}, {"max_horizon", 1}});
  EXPECT_EQ(capped["status"], "unsat");
  EXPECT_EQ(capped["horizon"], 1);
  const Json assigned = post("/api/sessions/" + id + "/solve", {{"domain", "M"}, {"assign", "compute"}});
  EXPECT_EQ(assigned["status"], "done");
  EXPECT_TRUE(assigned.contains("assignment"));
}
