#include "support.hpp"

#include <atomic>
#include <random>
#include <stdexcept>

#include "hsearch/corpus/gazetteer.hpp"
#include "hsearch/corpus/lexicon.hpp"

namespace testing_support {

namespace fs = std::filesystem;
using namespace hsearch;

fs::path data_dir() {
    return HSEARCH_TEST_DATA_DIR;
}

fs::path config_path() {
    return HSEARCH_TEST_CONFIG;
}

service::EngineConfig bundled_config() {
    auto config = service::EngineConfig::load(config_path());
    config.index_dir = fs::temp_directory_path() / "hsearch-test-index-unused";
    config.llm.enabled = false;
    return config;
}

std::shared_ptr<const service::EngineState> bundled_state() {
    static const auto state = service::load_state(bundled_config(), true);
    return state;
}

const service::Engine& bundled_engine() {
    static const service::Engine engine(bundled_state());
    return engine;
}

const corpus::DataSource& bundled_source(const std::string& id) {
    const auto* s = bundled_state()->source(id);
    if (!s) throw std::runtime_error("no bundled source " + id);
    return *s;
}

corpus::DataSource sales_sample() {
    const auto& state = *bundled_state();
    auto source = corpus::load_data_source(data_dir() / "samples/sales_sample.csv",
                                           data_dir() / "samples/sales_sample.json", state.gazetteer);
    corpus::enrich(source, state.lexicon);
    return source;
}

corpus::DataSource make_source(const std::string& id, const std::vector<std::string>& header,
                               const std::vector<std::string>& types, const std::vector<std::string>& roles,
                               std::vector<std::vector<std::string>> rows) {
    corpus::DataSource s;
    s.id = id;
    s.name = id;
    for (std::size_t i = 0; i < header.size(); ++i) {
        corpus::Attribute a;
        a.name = header[i];
        a.data_type = corpus::parse_data_type(types[i]);
        a.role = corpus::parse_role(roles[i]);
        s.attributes.push_back(std::move(a));
    }
    s.rows = std::move(rows);
    return s;
}

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    path_ = fs::temp_directory_path() /
            ("hsearch-test-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

}  // namespace testing_support
