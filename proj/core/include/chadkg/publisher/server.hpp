#ifndef CHADKG_PUBLISHER_SERVER_HPP
#define CHADKG_PUBLISHER_SERVER_HPP

#include <memory>
#include <string>
#include <thread>

#include "chadkg/publisher/site.hpp"

namespace chadkg::publisher {

/// Query service over an immutable graph snapshot:
///   GET /sparql?query=...   SPARQL JSON results (400 on parse errors)
///   GET /entity/<slug>      content-negotiated entity representation
///   GET /stats              statistics as JSON
///   GET /                   minimal query console
class HttpService {
public:
    HttpService(const rdf::Graph& g, const model::StatsReport& stats, SiteConfig cfg);
    ~HttpService();

    HttpService(const HttpService&) = delete;
    HttpService& operator=(const HttpService&) = delete;

    /// Blocks until stop() is called from another thread.
    bool listen(const std::string& host, int port);

    /// Binds and serves on a background thread; returns once the socket
    /// accepts connections.
    bool start_async(const std::string& host, int port);

    /// start_async on an OS-assigned port; returns the port, or -1.
    int start_async_any(const std::string& host);

    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::thread worker_;
};

}  // namespace chadkg::publisher

#endif
