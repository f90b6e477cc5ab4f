#pragma once

#include <chrono>
#include <string>

namespace hsearch::qa {

/// Text-generation backend. complete() throws on transport or protocol
/// failure.
class TextGenerationClient {
  public:
    virtual ~TextGenerationClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
};

struct HttpClientSettings {
    std::string endpoint;  // e.g. https://host/v1/chat/completions
    std::string model;
    std::string api_key;
    std::chrono::milliseconds timeout{10000};
};

/// OpenAI-compatible chat completion endpoint.
class HttpTextClient : public TextGenerationClient {
  public:
    explicit HttpTextClient(HttpClientSettings settings);
    std::string complete(const std::string& prompt) override;

  private:
    HttpClientSettings settings_;
};

}  // namespace hsearch::qa
