#pragma once

#include <memory>
#include <string>

namespace logibench {

struct ServiceOptions {
  std::string bind = "127.0.0.1";
  int port = 8080;          // 0 picks a free port
  std::string static_dir;   // served at / when set
};

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// HTTP bridge over generator, checker and planner with in-memory sessions.
class Service {
 public:
  explicit Service(ServiceOptions options);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket; throws BindError. Returns the bound port.
  int bind();
  /// Serves until stop(); call bind() first.
  void listen();
  void stop();
  int port() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace logibench
