#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "sketchrec/segmentation.hpp"
#include "sketchrec/shape_dsl.hpp"

namespace sketchrec::service {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::optional<std::filesystem::path> static_dir;
  std::size_t max_body_bytes = 1 << 20;
  std::chrono::seconds timeout{10};
  SegmentationConfig segmentation;
};

/// Stateless JSON front end over the recognition pipeline.
///
///   POST /recognize  {"strokes": [...]}  -> recognize_response
///   GET  /domains                          -> domains_response
///   GET  /healthz                          -> 200 "ok"
///
/// The domain library is fixed at construction and only read afterwards,
/// so requests are served concurrently without locking.
class RecognitionServer {
public:
  RecognitionServer(DomainLibrary library, ServerOptions options);
  ~RecognitionServer();

  RecognitionServer(const RecognitionServer&) = delete;
  RecognitionServer& operator=(const RecognitionServer&) = delete;

  /// Binds the listening socket and returns the port. Throws Error when the
  /// port is unavailable.
  int bind();

  /// Serves until stop() is called. bind() must have succeeded.
  void listen();

  void stop();
  void wait_until_ready() const;

  int port() const noexcept { return port_; }

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = -1;
};

} // namespace sketchrec::service
