#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "voodb/buffer/buffer_pool.hpp"
#include "voodb/clustering/clustering.hpp"
#include "voodb/types.hpp"
#include "voodb/workload/placement.hpp"

namespace voodb::engine {

enum class SystemClass { Centralized, ObjectServer, PageServer, DbServer };
enum class PrefetchPolicy { None };

std::string to_string(SystemClass c);

inline constexpr double kBytesPerMegabyte = 1024.0 * 1024.0;

// One system under study. Defaults are the generic model's defaults.
struct VoodbConfig {
    SystemClass system_class = SystemClass::PageServer;           // SYSCLASS
    double network_bytes_per_s = 1.0 * kBytesPerMegabyte;         // NETTHRU, may be +inf
    std::uint32_t page_size = 4096;                               // PGSIZE
    std::uint32_t buffer_pages = 500;                             // BUFFSIZE
    buffer::ReplacementSpec replacement{};                        // PGREP, LRU-1
    PrefetchPolicy prefetch = PrefetchPolicy::None;               // PREFETCH
    clustering::ClusteringParams clustering{};                    // CLUSTP (+ knobs)
    workload::InitialPlacement initial_placement =
        workload::InitialPlacement::OptimizedSequential;          // INITPL
    double disk_search_ms = 7.4;                                  // DISKSEA
    double disk_latency_ms = 4.3;                                 // DISKLAT
    double disk_transfer_ms = 0.5;                                // DISKTRA
    std::uint32_t multiprogramming_level = 10;                    // MULTILVL
    double lock_acquire_ms = 0.5;                                 // GETLOCK
    double lock_release_ms = 0.5;                                 // RELLOCK
    std::uint32_t users = 1;                                      // NUSERS

    // Throws ConfigError naming the offending parameter.
    void validate() const;
};

// Seek + rotational latency + transfer for one page.
SimTime disk_access_time(const VoodbConfig& config) noexcept;

// bytes / NETTHRU; 0 for a centralized system or infinite throughput.
SimTime network_transfer_time(const VoodbConfig& config, std::uint64_t bytes) noexcept;

}  // namespace voodb::engine
