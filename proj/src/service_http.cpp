#include <httplib.h>

#include "triage/service.hpp"

namespace triage {

struct HttpServer::Impl {
    explicit Impl(TriageService& s) : service(s) {}
    TriageService& service;
    httplib::Server server;
};

HttpServer::HttpServer(TriageService& service, std::filesystem::path static_dir)
    : impl_(std::make_unique<Impl>(service)) {
    auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
        HttpRequest r;
        r.method = req.method;
        r.path = req.path;
        r.authorization = req.get_header_value("Authorization");
        r.body = req.body;
        for (const auto& [k, v] : req.params) r.query.emplace(k, v);
        const HttpResponse out = impl_->service.handle(r);
        res.status = out.status;
        res.set_content(out.body, "application/json; charset=utf-8");
    };
    impl_->server.Get(R"(/v1/.*)", dispatch);
    impl_->server.Post(R"(/v1/.*)", dispatch);
    impl_->server.Put(R"(/v1/.*)", dispatch);
    impl_->server.Patch(R"(/v1/.*)", dispatch);
    impl_->server.Delete(R"(/v1/.*)", dispatch);
    if (!static_dir.empty()) impl_->server.set_mount_point("/", static_dir.string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    if (!impl_->server.bind_to_port(host, port)) return -1;
    return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace triage
