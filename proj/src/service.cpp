#include "logibench/service.hpp"

#include <httplib.h>

#include <atomic>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "logibench/checker.hpp"
#include "logibench/facts_io.hpp"
#include "logibench/json_io.hpp"

namespace logibench {

namespace {

struct SolveJob {
  std::string status = "running";  // running | done | unsat | unknown | cancelled
  std::optional<SolveResult> result;
  std::optional<Assignment> assignment;
  std::string domain;
  Domain base = Domain::A;
  std::stop_source stop;
  std::jthread worker;
};

struct Session {
  std::mutex mu;
  Instance instance;
  std::vector<std::string> header;
  std::optional<Plan> plan;
  bool dirty = false;
  std::shared_ptr<SolveJob> job;
};

Json summary(const Instance& inst) {
  return {{"nodes", inst.nodes.size()},     {"highways", inst.highways.size()}, {"stations", inst.stations.size()},
          {"shelves", inst.shelves.size()}, {"robots", inst.robots.size()},     {"products", inst.products().size()},
          {"units", inst.total_units()},    {"orders", inst.orders.size()}};
}

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& message) { reply(res, status, {{"error", message}}); }

Json body_json(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  return Json::parse(req.body);
}

DomainVariant variant_from(const Json& body) {
  const std::string name = body.value("domain", std::string("A"));
  const auto domain = parse_domain(name);
  if (!domain) throw std::invalid_argument("unknown domain " + name);
  return DomainVariant(*domain, body.value("m_aligned", false));
}

Json job_json(const SolveJob& job) {
  Json out{{"status", job.status}, {"domain", job.domain}};
  if (job.result) {
    const SolveResult& r = *job.result;
    out["stats"] = to_json(r.stats);
    if (r.solved()) {
      out["makespan"] = r.makespan();
      out["plan"] = to_json(r.plan);
      out["facts"] = serialize(r.plan, job.base);
    } else {
      out["horizon"] = r.horizon;
      if (!r.reason.empty()) out["reason"] = r.reason;
    }
  }
  if (job.assignment) out["assignment"] = to_json(*job.assignment);
  return out;
}

std::string random_token() {
  static std::mutex mu;
  static std::mt19937_64 rng(std::random_device{}());
  std::lock_guard lock(mu);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  return buf;
}

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  std::mutex mu;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  int port = -1;

  std::shared_ptr<Session> find(const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mu);
    auto it = sessions.find(req.path_params.at("id"));
    if (it == sessions.end()) {
      fail(res, 404, "unknown session");
      return nullptr;
    }
    return it->second;
  }

  // Runs `body` on the session under its lock; maps exceptions to 400.
  template <class F>
  void with_session(const httplib::Request& req, httplib::Response& res, F&& body) {
    auto session = find(req, res);
    if (!session) return;
    std::lock_guard lock(session->mu);
    try {
      body(*session);
    } catch (const std::exception& e) {
      fail(res, 400, e.what());
    }
  }

  void routes() {
    server.Post("/api/instances", [this](const httplib::Request& req, httplib::Response& res) {
      auto session = std::make_shared<Session>();
      try {
        const FactSet facts = parse_facts(req.body);
        session->instance = build_instance(facts);
        session->header = facts.header_comments;
      } catch (const std::exception& e) {
        fail(res, 400, e.what());
        return;
      }
      const std::string id = random_token();
      {
        std::lock_guard lock(mu);
        sessions[id] = session;
      }
      reply(res, 201, {{"id", id}, {"summary", summary(session->instance)}});
    });

    server.Get("/api/sessions/:id/instance", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) { reply(res, 200, to_json(s.instance)); });
    });

    server.Put("/api/sessions/:id/instance", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        s.instance = instance_from_json(body_json(req));
        s.dirty = true;
        s.plan.reset();
        reply(res, 200, {{"summary", summary(s.instance)}});
      });
    });

    server.Post("/api/sessions/:id/generate", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        GenConfig cfg;
        apply_overrides(cfg, overrides_from_json(body_json(req)));
        cfg.N = 1;
        const GeneratedInstance g = generate(cfg, 1);
        s.instance = g.instance;
        s.header = g.header;
        s.plan.reset();
        s.dirty = true;
        reply(res, 200, {{"name", g.name}, {"seed", g.seed}, {"summary", summary(s.instance)}});
      });
    });

    server.Post("/api/sessions/:id/plan", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        s.plan = read_plan(req.body, s.instance);
        reply(res, 200, {{"horizon", s.plan->horizon}});
      });
    });

    server.Post("/api/sessions/:id/check", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        if (!s.plan) {
          fail(res, 409, "no plan in session");
          return;
        }
        const Json body = body_json(req);
        const bool trace = body.value("trace", false);
        const DiagnosticReport report = check_plan(s.instance, *s.plan, variant_from(body), CheckOptions{trace});
        Json out = to_json(report, trace);
        out["facts"] = serialize(report);
        reply(res, 200, out);
      });
    });

    server.Post("/api/sessions/:id/solve", [this](const httplib::Request& req, httplib::Response& res) {
      std::shared_ptr<SolveJob> job;
      auto session = find(req, res);
      if (!session) return;
      int wait_ms = 0;
      {
        std::lock_guard lock(session->mu);
        try {
          const Json body = body_json(req);
          const DomainVariant variant = variant_from(body);
          const int max_horizon = body.value("max_horizon", 100);
          wait_ms = body.value("wait_ms", 2000);
          SolveOptions opt;
          const std::string positions = body.value("positions", std::string("paired"));
          const auto enc = parse_position_encoding(positions);
          if (!enc) throw std::invalid_argument("unknown position encoding " + positions);
          opt.positions = *enc;
          if (body.contains("budget_ms")) opt.budget = std::chrono::milliseconds(body["budget_ms"].get<long>());
          if (session->job && session->job->status == "running") {
            fail(res, 409, "a solve is already running");
            return;
          }
          job = std::make_shared<SolveJob>();
          job->domain = variant.label();
          job->base = variant.base;
          if (body.value("assign", std::string("none")) == "compute") {
            job->assignment = compute_assignment(session->instance, variant, std::chrono::milliseconds(2000));
          }
          opt.stop = job->stop.get_token();
          session->job = job;
          // The job owns the thread and joins it on destruction, and the
          // session owns the job, so plain pointers outlive the worker.
          Session* sp = session.get();
          SolveJob* jp = job.get();
          job->worker = std::jthread([sp, jp, variant, max_horizon, opt, inst = session->instance] {
            SolveResult r = solve_min_makespan(inst, variant, max_horizon,
                                               jp->assignment ? &*jp->assignment : nullptr, opt);
            std::lock_guard lock(sp->mu);
            SolveJob* job = jp;
            if (r.solved()) sp->plan = r.plan;
            job->status = r.solved()                                  ? "done"
                          : r.status == SolveResult::Status::Unsat    ? "unsat"
                          : r.reason == "cancelled"                   ? "cancelled"
                                                                      : "unknown";
            job->result = std::move(r);
          });
        } catch (const std::exception& e) {
          fail(res, 400, e.what());
          return;
        }
      }
      // Short solves answer directly; longer ones are polled via /solve/status.
      const auto until = std::chrono::steady_clock::now() + std::chrono::milliseconds(wait_ms);
      while (std::chrono::steady_clock::now() < until) {
        {
          std::lock_guard lock(session->mu);
          if (job->status != "running") {
            reply(res, 200, job_json(*job));
            return;
          }
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
      }
      std::lock_guard lock(session->mu);
      reply(res, job->status == "running" ? 202 : 200, job_json(*job));
    });

    server.Get("/api/sessions/:id/solve/status", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        if (!s.job) {
          fail(res, 404, "no solve in session");
          return;
        }
        reply(res, 200, job_json(*s.job));
      });
    });

    server.Post("/api/sessions/:id/solve/cancel", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        if (!s.job) {
          fail(res, 404, "no solve in session");
          return;
        }
        s.job->stop.request_stop();
        reply(res, 200, {{"status", s.job->status}});
      });
    });

    server.Get("/api/sessions/:id/export", [this](const httplib::Request& req, httplib::Response& res) {
      with_session(req, res, [&](Session& s) {
        const std::string what = req.has_param("what") ? req.get_param_value("what") : "instance";
        if (what == "instance") {
          res.set_content(serialize(s.instance, s.header), "text/plain");
        } else if (what == "plan") {
          if (!s.plan) {
            fail(res, 409, "no plan in session");
            return;
          }
          res.set_content(serialize(*s.plan, s.job ? s.job->base : Domain::A), "text/plain");
        } else {
          fail(res, 400, "what must be instance or plan");
        }
      });
    });

    server.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        fail(res, 500, e.what());
      }
    });
    if (!options.static_dir.empty()) server.set_mount_point("/", options.static_dir);
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  impl_->routes();
}

Service::~Service() {
  stop();
  // Let running solves finish their cancellation before sessions go away.
  std::map<std::string, std::shared_ptr<Session>> sessions;
  {
    std::lock_guard lock(impl_->mu);
    sessions.swap(impl_->sessions);
  }
  for (auto& [id, s] : sessions) {
    std::shared_ptr<SolveJob> job;
    {
      std::lock_guard lock(s->mu);
      job = s->job;
    }
    if (job) {
      job->stop.request_stop();
      if (job->worker.joinable()) job->worker.join();
    }
  }
}

int Service::bind() {
  auto& o = impl_->options;
  impl_->port = o.port == 0 ? impl_->server.bind_to_any_port(o.bind) : (impl_->server.bind_to_port(o.bind, o.port) ? o.port : -1);
  if (impl_->port < 0) throw BindError("cannot bind " + o.bind + ":" + std::to_string(o.port));
  return impl_->port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

int Service::port() const { return impl_->port; }

}  // namespace logibench
