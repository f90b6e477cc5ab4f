#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "hsearch/corpus/data_source.hpp"
#include "hsearch/service/engine.hpp"

namespace testing_support {

std::filesystem::path data_dir();
std::filesystem::path config_path();

/// Repository config with the index directory redirected to a scratch path.
hsearch::service::EngineConfig bundled_config();

/// Bundled corpus with both indices built in memory. Built once per process.
std::shared_ptr<const hsearch::service::EngineState> bundled_state();
const hsearch::service::Engine& bundled_engine();

/// Source from the bundled corpus, enriched; throws if absent.
const hsearch::corpus::DataSource& bundled_source(const std::string& id);

/// The four-row sales sample (Region, Sales), enriched with the bundled lexicon.
hsearch::corpus::DataSource sales_sample();

/// In-memory source; `types` and `roles` are parallel to `header`.
hsearch::corpus::DataSource make_source(const std::string& id, const std::vector<std::string>& header,
                                        const std::vector<std::string>& types,
                                        const std::vector<std::string>& roles,
                                        std::vector<std::vector<std::string>> rows);

class TempDir {
  public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

}  // namespace testing_support
