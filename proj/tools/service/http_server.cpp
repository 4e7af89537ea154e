#include "service/http_server.hpp"

#include <httplib.h>

#include "sketchrec/errors.hpp"
#include "sketchrec/response.hpp"
#include "sketchrec/stroke.hpp"

namespace sketchrec::service {

namespace {

constexpr const char* kJson = "application/json";

void send_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(dump_json({{"error", message}}), kJson);
}

} // namespace

struct RecognitionServer::Impl {
  DomainLibrary library;
  ServerOptions options;
  httplib::Server server;
};

RecognitionServer::RecognitionServer(DomainLibrary library, ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (const auto diags = validate(library); !diags.empty())
    throw ValidationError("invalid domain library: " + diags.front().path + ": " + diags.front().message);
  impl_->library = std::move(library);
  impl_->options = std::move(options);

  auto& svr = impl_->server;
  const auto& opts = impl_->options;
  svr.set_payload_max_length(opts.max_body_bytes);
  svr.set_read_timeout(opts.timeout);
  svr.set_write_timeout(opts.timeout);
  // No SO_REUSEPORT: a second server on a taken port must fail to bind.
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });

  svr.Get("/healthz", [](const httplib::Request&, httplib::Response& res) { res.set_content("ok\n", "text/plain"); });

  svr.Get("/domains", [this](const httplib::Request&, httplib::Response& res) {
    res.set_content(dump_json(domains_response(impl_->library)), kJson);
  });

  svr.Post("/recognize", [this](const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error& e) {
      send_error(res, 400, std::string("malformed JSON: ") + e.what());
      return;
    }
    SketchDocument doc;
    try {
      doc = document_from_json(body);
    } catch (const Error& e) {
      send_error(res, 400, e.what());
      return;
    }
    res.set_content(dump_json(recognize_response(doc, impl_->library, impl_->options.segmentation)), kJson);
  });

  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string what = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    send_error(res, 500, what);
  });

  svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty())
      return;
    if (res.status == 413)
      send_error(res, 413, "request body too large");
    else if (res.status == 404)
      send_error(res, 404, "not found");
  });

  if (opts.static_dir && !svr.set_mount_point("/", opts.static_dir->string()))
    throw Error("static directory '" + opts.static_dir->string() + "' does not exist");
}

RecognitionServer::~RecognitionServer() { stop(); }

int RecognitionServer::bind() {
  auto& svr = impl_->server;
  const auto& opts = impl_->options;
  if (opts.port == 0) {
    port_ = svr.bind_to_any_port(opts.host);
  } else {
    port_ = svr.bind_to_port(opts.host, opts.port) ? opts.port : -1;
  }
  if (port_ < 0)
    throw Error("cannot listen on " + opts.host + ":" + std::to_string(opts.port));
  return port_;
}

void RecognitionServer::listen() {
  if (port_ < 0)
    throw Error("listen() called before a successful bind()");
  impl_->server.listen_after_bind();
}

void RecognitionServer::stop() {
  if (impl_)
    impl_->server.stop();
}

void RecognitionServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

} // namespace sketchrec::service
