#include "srdcr/provider_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "srdcr/http_provider.hpp"
#include "srdcr/scripted_provider.hpp"

namespace srdcr {

namespace {

BackendConfig parse_backend(const nlohmann::json& j, const BackendConfig& base) {
    BackendConfig cfg = base;
    if (j.contains("backend")) {
        const auto kind = j.at("backend").get<std::string>();
        if (kind == "scripted") {
            cfg.kind = BackendKind::Scripted;
        } else if (kind == "http") {
            cfg.kind = BackendKind::Http;
        } else {
            throw ParseError("unknown backend kind: " + kind);
        }
    }
    if (j.contains("script_path")) cfg.script_path = j.at("script_path");
    if (j.contains("endpoint")) cfg.endpoint = j.at("endpoint");
    if (j.contains("model")) cfg.model = j.at("model");
    if (j.contains("api_key_env")) cfg.api_key_env = j.at("api_key_env");
    if (j.contains("requests_per_second"))
        cfg.requests_per_second = j.at("requests_per_second");
    if (j.contains("retry_count")) cfg.retry_count = j.at("retry_count");
    if (j.contains("backoff_base_ms")) cfg.backoff_base_ms = j.at("backoff_base_ms");
    return cfg;
}

}  // namespace

ProviderConfig parse_provider_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("provider config: ") + e.what());
    }
    ProviderConfig cfg;
    cfg.base = parse_backend(j, BackendConfig{});
    if (j.contains("roles")) {
        for (const auto& [role, rj] : j.at("roles").items()) {
            cfg.role_overrides[role] = parse_backend(rj, cfg.base);
        }
    }
    return cfg;
}

ProviderConfig load_provider_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open config file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_provider_config(buf.str());
}

std::shared_ptr<ChatProvider> make_provider(const BackendConfig& config) {
    if (config.kind == BackendKind::Scripted) {
        if (config.script_path.empty()) {
            throw ParseError("scripted backend requires script_path");
        }
        return std::make_shared<ScriptedProvider>(
            load_script(config.script_path));
    }
    HttpProviderOptions options;
    options.endpoint = config.endpoint;
    options.model = config.model;
    options.requests_per_second = config.requests_per_second;
    options.retry_count = config.retry_count;
    options.backoff_base = std::chrono::milliseconds(config.backoff_base_ms);
    if (!config.api_key_env.empty()) {
        const char* key = std::getenv(config.api_key_env.c_str());
        if (key == nullptr) {
            throw ParseError("credential env var not set: " + config.api_key_env);
        }
        options.api_key = key;
    }
    return std::make_shared<HttpProvider>(std::move(options));
}

ProviderSet::ProviderSet(ProviderConfig config)
    : base_(make_provider(config.base)) {
    for (const auto& [role, backend] : config.role_overrides) {
        by_role_[role] = make_provider(backend);
    }
}

std::shared_ptr<ChatProvider> ProviderSet::for_role(const std::string& role) const {
    auto it = by_role_.find(role);
    return it == by_role_.end() ? base_ : it->second;
}

std::shared_ptr<ChatProvider> ProviderSet::base() const { return base_; }

}  // namespace srdcr
