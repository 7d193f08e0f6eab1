#include "voodb/engine/config.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "voodb/errors.hpp"

namespace voodb::engine {

std::string to_string(SystemClass c) {
    switch (c) {
        case SystemClass::Centralized: return "CENTRALIZED";
        case SystemClass::ObjectServer: return "OBJECT-SERVER";
        case SystemClass::PageServer: return "PAGE-SERVER";
        case SystemClass::DbServer: return "DB-SERVER";
    }
    return "?";
}

void VoodbConfig::validate() const {
    if (!(network_bytes_per_s > 0.0)) throw ConfigError("NETTHRU must be positive (or inf)");
    if (page_size != 512 && page_size != 1024 && page_size != 2048 && page_size != 4096) {
        throw ConfigError("PGSIZE must be one of 512, 1024, 2048, 4096");
    }
    if (buffer_pages < 1) throw ConfigError("BUFFSIZE must be >= 1");
    if (replacement.kind == buffer::ReplacementKind::LruK && replacement.k < 1) {
        throw ConfigError("PGREP LRU-K needs K >= 1");
    }
    for (auto [name, v] : {std::pair{"DISKSEA", disk_search_ms}, std::pair{"DISKLAT", disk_latency_ms},
                           std::pair{"DISKTRA", disk_transfer_ms}, std::pair{"GETLOCK", lock_acquire_ms},
                           std::pair{"RELLOCK", lock_release_ms}}) {
        if (!(v >= 0.0) || std::isinf(v)) throw ConfigError(std::string(name) + " must be a finite time >= 0");
    }
    if (multiprogramming_level < 1) throw ConfigError("MULTILVL must be >= 1");
    if (users < 1) throw ConfigError("NUSERS must be >= 1");
    if (clustering.kind != clustering::ClusteringKind::None && clustering.link_threshold < 1) {
        throw ConfigError("CLUSTLINK must be >= 1");
    }
}

SimTime disk_access_time(const VoodbConfig& config) noexcept {
    return config.disk_search_ms + config.disk_latency_ms + config.disk_transfer_ms;
}

SimTime network_transfer_time(const VoodbConfig& config, std::uint64_t bytes) noexcept {
    if (config.system_class == SystemClass::Centralized) return 0.0;
    if (std::isinf(config.network_bytes_per_s)) return 0.0;
    return 1000.0 * static_cast<double>(bytes) / config.network_bytes_per_s;
}

}  // namespace voodb::engine
