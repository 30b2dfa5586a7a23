#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "srdcr/provider.hpp"

namespace srdcr {

enum class BackendKind { Scripted, Http };

struct BackendConfig {
    BackendKind kind = BackendKind::Scripted;
    std::string script_path;     // scripted backend
    std::string endpoint;        // http backend
    std::string model;
    std::string api_key_env;     // env var NAME; never the credential itself
    double requests_per_second = 1.0;
    int retry_count = 3;
    int backoff_base_ms = 500;
};

// One provider serves all roles by default; per-role overrides are optional.
struct ProviderConfig {
    BackendConfig base;
    std::map<std::string, BackendConfig> role_overrides;
};

ProviderConfig load_provider_config(const std::string& path);
ProviderConfig parse_provider_config(const std::string& json_text);

std::shared_ptr<ChatProvider> make_provider(const BackendConfig& config);

// Resolves a role name against the overrides, falling back to the base
// backend. Providers are cached so identical configs share one instance
// (and therefore one rate limiter).
class ProviderSet {
  public:
    explicit ProviderSet(ProviderConfig config);

    std::shared_ptr<ChatProvider> for_role(const std::string& role) const;
    std::shared_ptr<ChatProvider> base() const;

  private:
    std::shared_ptr<ChatProvider> base_;
    std::map<std::string, std::shared_ptr<ChatProvider>> by_role_;
};

}  // namespace srdcr
