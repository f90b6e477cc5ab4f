#include "hsearch/qa/text_client.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hsearch/error.hpp"

namespace hsearch::qa {

HttpTextClient::HttpTextClient(HttpClientSettings settings) : settings_(std::move(settings)) {
    const auto scheme = settings_.endpoint.find("://");
    if (scheme == std::string::npos) throw ConfigError("text generation endpoint needs a scheme: " + settings_.endpoint);
}

std::string HttpTextClient::complete(const std::string& prompt) {
    const auto& url = settings_.endpoint;
    const auto host_start = url.find("://") + 3;
    const auto path_start = url.find('/', host_start);
    const auto origin = url.substr(0, path_start);
    const auto path = path_start == std::string::npos ? std::string("/") : url.substr(path_start);

    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(settings_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(settings_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    httplib::Headers headers;
    if (!settings_.api_key.empty()) headers.emplace("Authorization", "Bearer " + settings_.api_key);
    const nlohmann::json body{{"model", settings_.model},
                              {"messages", {{{"role", "user"}, {"content", prompt}}}},
                              {"temperature", 0}};
    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res) throw Error("text generation request failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw Error("text generation endpoint returned status " + std::to_string(res->status));
    try {
        auto j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("unexpected text generation response: ") + e.what());
    }
}

}  // namespace hsearch::qa
