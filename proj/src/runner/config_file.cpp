#include "voodb/runner/config_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "voodb/errors.hpp"

namespace voodb::runner {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Upper case with '-', '_' and blanks dropped: "Page-Server" -> "PAGESERVER".
std::string enum_token(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (c == '-' || c == '_' || c == ' ') continue;
        out.push_back(static_cast<char>(std::toupper(c)));
    }
    return out;
}

std::uint64_t parse_uint(std::string_view key, std::string_view v, int line, std::uint64_t min,
                         std::uint64_t max = std::numeric_limits<std::uint32_t>::max()) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(line, std::string(key) + ": expected a nonnegative integer, got '" + std::string(v) + "'");
    }
    if (out < min || out > max) {
        throw ConfigError(line, std::string(key) + ": " + std::string(v) + " is out of range [" +
                                    std::to_string(min) + ", " + std::to_string(max) + "]");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view v, int line, double min, double max) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(line, std::string(key) + ": expected a number, got '" + std::string(v) + "'");
    }
    if (out < min || out > max) {
        throw ConfigError(line, std::string(key) + ": " + std::string(v) + " is out of range");
    }
    return out;
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::uint32_t to_u32(std::uint64_t v) { return static_cast<std::uint32_t>(v); }

struct KeyHandler {
    std::function<void(ExperimentConfig&, std::string_view, int)> set;
    std::function<std::string(const ExperimentConfig&)> get;
};

using Table = std::vector<std::pair<std::string, KeyHandler>>;

template <class Field>
KeyHandler u32_key(std::string key, Field field, std::uint64_t min) {
    return {[key, field, min](ExperimentConfig& c, std::string_view v, int line) {
                field(c) = to_u32(parse_uint(key, v, line, min));
            },
            [field](const ExperimentConfig& c) {
                return std::to_string(field(const_cast<ExperimentConfig&>(c)));
            }};
}

template <class Field>
KeyHandler time_key(std::string key, Field field) {
    return {[key, field](ExperimentConfig& c, std::string_view v, int line) {
                field(c) = parse_real(key, v, line, 0.0, std::numeric_limits<double>::max());
            },
            [field](const ExperimentConfig& c) { return format_real(field(const_cast<ExperimentConfig&>(c))); }};
}

template <class Field>
KeyHandler probability_key(std::string key, Field field) {
    return {[key, field](ExperimentConfig& c, std::string_view v, int line) {
                field(c) = parse_real(key, v, line, 0.0, 1.0);
            },
            [field](const ExperimentConfig& c) { return format_real(field(const_cast<ExperimentConfig&>(c))); }};
}

const Table& table() {
    using C = ExperimentConfig;
    static const Table t = [] {
        Table t;
        t.emplace_back("SYSCLASS", KeyHandler{
            [](C& c, std::string_view v, int line) {
                const auto tok = enum_token(v);
                if (tok == "CENTRALIZED") c.setup.system.system_class = engine::SystemClass::Centralized;
                else if (tok == "OBJECTSERVER") c.setup.system.system_class = engine::SystemClass::ObjectServer;
                else if (tok == "PAGESERVER") c.setup.system.system_class = engine::SystemClass::PageServer;
                else if (tok == "DBSERVER") c.setup.system.system_class = engine::SystemClass::DbServer;
                else throw ConfigError(line, "SYSCLASS: unknown system class '" + std::string(v) + "'");
            },
            [](const C& c) { return engine::to_string(c.setup.system.system_class); }});
        t.emplace_back("NETTHRU", KeyHandler{
            [](C& c, std::string_view v, int line) {
                const auto tok = upper(v);
                if (tok == "INF" || tok == "+INF" || tok == "INFINITY") {
                    c.setup.system.network_bytes_per_s = std::numeric_limits<double>::infinity();
                    return;
                }
                const double mb = parse_real("NETTHRU", v, line, 0.0, std::numeric_limits<double>::max());
                if (!(mb > 0.0)) throw ConfigError(line, "NETTHRU must be positive (MB/s) or inf");
                c.setup.system.network_bytes_per_s = mb * engine::kBytesPerMegabyte;
            },
            [](const C& c) {
                const double b = c.setup.system.network_bytes_per_s;
                return std::isinf(b) ? std::string("inf") : format_real(b / engine::kBytesPerMegabyte);
            }});
        t.emplace_back("PGSIZE", KeyHandler{
            [](C& c, std::string_view v, int line) {
                const auto n = parse_uint("PGSIZE", v, line, 1);
                if (n != 512 && n != 1024 && n != 2048 && n != 4096) {
                    throw ConfigError(line, "PGSIZE must be one of 512, 1024, 2048, 4096");
                }
                c.setup.system.page_size = to_u32(n);
            },
            [](const C& c) { return std::to_string(c.setup.system.page_size); }});
        t.emplace_back("BUFFSIZE", KeyHandler{
            [](C& c, std::string_view v, int line) {
                if (!v.empty() && v.back() == '%') {
                    const double pct = parse_real("BUFFSIZE", trim(v.substr(0, v.size() - 1)), line, 0.0,
                                                  std::numeric_limits<double>::max());
                    if (!(pct > 0.0)) throw ConfigError(line, "BUFFSIZE percentage must be positive");
                    c.buffer_percent = pct;
                    return;
                }
                c.setup.system.buffer_pages = to_u32(parse_uint("BUFFSIZE", v, line, 1));
                c.buffer_percent.reset();
            },
            [](const C& c) {
                return c.buffer_percent ? format_real(*c.buffer_percent) + "%"
                                        : std::to_string(c.setup.system.buffer_pages);
            }});
        t.emplace_back("PGREP", KeyHandler{
            [](C& c, std::string_view v, int line) {
                try {
                    c.setup.system.replacement = buffer::parse_replacement(v);
                } catch (const ConfigError& e) {
                    throw ConfigError(line, std::string("PGREP: ") + e.what());
                }
            },
            [](const C& c) { return buffer::to_string(c.setup.system.replacement); }});
        t.emplace_back("PREFETCH", KeyHandler{
            [](C& c, std::string_view v, int line) {
                if (enum_token(v) != "NONE") throw ConfigError(line, "PREFETCH: only NONE is supported");
                c.setup.system.prefetch = engine::PrefetchPolicy::None;
            },
            [](const C&) { return std::string("NONE"); }});
        t.emplace_back("CLUSTP", KeyHandler{
            [](C& c, std::string_view v, int line) {
                const auto tok = enum_token(v);
                if (tok == "NONE") c.setup.system.clustering.kind = clustering::ClusteringKind::None;
                else if (tok == "DSTC" || tok == "COACCESS") c.setup.system.clustering.kind = clustering::ClusteringKind::CoAccess;
                else throw ConfigError(line, "CLUSTP: unknown clustering policy '" + std::string(v) + "'");
            },
            [](const C& c) { return clustering::to_string(c.setup.system.clustering.kind); }});
        t.emplace_back("INITPL", KeyHandler{
            [](C& c, std::string_view v, int line) {
                const auto tok = enum_token(v);
                if (tok == "SEQUENTIAL") c.setup.system.initial_placement = workload::InitialPlacement::Sequential;
                else if (tok == "OPTIMIZEDSEQUENTIAL" || tok == "OPTSEQ")
                    c.setup.system.initial_placement = workload::InitialPlacement::OptimizedSequential;
                else throw ConfigError(line, "INITPL: unknown placement '" + std::string(v) + "'");
            },
            [](const C& c) {
                return std::string(c.setup.system.initial_placement == workload::InitialPlacement::Sequential
                                       ? "SEQUENTIAL" : "OPTIMIZED-SEQUENTIAL");
            }});
        t.emplace_back("DISKSEA", time_key("DISKSEA", [](C& c) -> double& { return c.setup.system.disk_search_ms; }));
        t.emplace_back("DISKLAT", time_key("DISKLAT", [](C& c) -> double& { return c.setup.system.disk_latency_ms; }));
        t.emplace_back("DISKTRA", time_key("DISKTRA", [](C& c) -> double& { return c.setup.system.disk_transfer_ms; }));
        t.emplace_back("MULTILVL", u32_key("MULTILVL", [](C& c) -> std::uint32_t& { return c.setup.system.multiprogramming_level; }, 1));
        t.emplace_back("GETLOCK", time_key("GETLOCK", [](C& c) -> double& { return c.setup.system.lock_acquire_ms; }));
        t.emplace_back("RELLOCK", time_key("RELLOCK", [](C& c) -> double& { return c.setup.system.lock_release_ms; }));
        t.emplace_back("NUSERS", u32_key("NUSERS", [](C& c) -> std::uint32_t& { return c.setup.system.users; }, 1));
        t.emplace_back("COLDN", u32_key("COLDN", [](C& c) -> std::uint32_t& { return c.setup.workload.cold_transactions; }, 0));
        t.emplace_back("HOTN", u32_key("HOTN", [](C& c) -> std::uint32_t& { return c.setup.workload.hot_transactions; }, 0));
        t.emplace_back("PSET", probability_key("PSET", [](C& c) -> double& { return c.setup.workload.p_set; }));
        t.emplace_back("PSIMPLE", probability_key("PSIMPLE", [](C& c) -> double& { return c.setup.workload.p_simple; }));
        t.emplace_back("PHIER", probability_key("PHIER", [](C& c) -> double& { return c.setup.workload.p_hierarchy; }));
        t.emplace_back("PSTOCH", probability_key("PSTOCH", [](C& c) -> double& { return c.setup.workload.p_stochastic; }));
        t.emplace_back("SETDEPTH", u32_key("SETDEPTH", [](C& c) -> std::uint32_t& { return c.setup.workload.set_depth; }, 0));
        t.emplace_back("SIMDEPTH", u32_key("SIMDEPTH", [](C& c) -> std::uint32_t& { return c.setup.workload.simple_depth; }, 0));
        t.emplace_back("HIEDEPTH", u32_key("HIEDEPTH", [](C& c) -> std::uint32_t& { return c.setup.workload.hierarchy_depth; }, 0));
        t.emplace_back("STODEPTH", u32_key("STODEPTH", [](C& c) -> std::uint32_t& { return c.setup.workload.stochastic_depth; }, 0));
        t.emplace_back("HOTROOTS", u32_key("HOTROOTS", [](C& c) -> std::uint32_t& { return c.setup.workload.hot_roots; }, 0));
        t.emplace_back("NC", u32_key("NC", [](C& c) -> std::uint32_t& { return c.setup.database.num_classes; }, 1));
        t.emplace_back("NO", u32_key("NO", [](C& c) -> std::uint32_t& { return c.setup.database.num_objects; }, 1));
        t.emplace_back("FANOUT", u32_key("FANOUT", [](C& c) -> std::uint32_t& { return c.setup.database.fanout; }, 0));
        t.emplace_back("CLUSTTRIG", KeyHandler{
            [](C& c, std::string_view v, int line) {
                c.setup.system.clustering.trigger_threshold =
                    parse_uint("CLUSTTRIG", v, line, 0, std::numeric_limits<std::uint64_t>::max());
            },
            [](const C& c) { return std::to_string(c.setup.system.clustering.trigger_threshold); }});
        t.emplace_back("CLUSTLINK", KeyHandler{
            [](C& c, std::string_view v, int line) {
                c.setup.system.clustering.link_threshold =
                    parse_uint("CLUSTLINK", v, line, 1, std::numeric_limits<std::uint64_t>::max());
            },
            [](const C& c) { return std::to_string(c.setup.system.clustering.link_threshold); }});
        t.emplace_back("OIDMODE", KeyHandler{
            [](C& c, std::string_view v, int line) {
                const auto tok = enum_token(v);
                if (tok == "LOGICAL") c.setup.system.clustering.oid_mode = clustering::OidMode::Logical;
                else if (tok == "PHYSICAL") c.setup.system.clustering.oid_mode = clustering::OidMode::Physical;
                else throw ConfigError(line, "OIDMODE: expected LOGICAL or PHYSICAL, got '" + std::string(v) + "'");
            },
            [](const C& c) { return clustering::to_string(c.setup.system.clustering.oid_mode); }});
        t.emplace_back("SEED", KeyHandler{
            [](C& c, std::string_view v, int line) {
                c.setup.seed = parse_uint("SEED", v, line, 0, std::numeric_limits<std::uint64_t>::max());
            },
            [](const C& c) { return std::to_string(c.setup.seed); }});
        t.emplace_back("REPLICATIONS", u32_key("REPLICATIONS", [](C& c) -> std::uint32_t& { return c.setup.replications; }, 1));
        return t;
    }();
    return t;
}

const KeyHandler* find_handler(std::string_view key) {
    const auto k = upper(key);
    for (const auto& [name, handler] : table()) {
        if (name == k) return &handler;
    }
    return nullptr;
}

bool is_probability_key(const std::string& key) {
    return key == "PSET" || key == "PSIMPLE" || key == "PHIER" || key == "PSTOCH";
}

// Splits `KEY = value`; throws on a missing '='.
std::pair<std::string_view, std::string_view> split_assignment(std::string_view text, int line) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line, "expected KEY = value, got '" + std::string(text) + "'");
    const auto key = trim(text.substr(0, eq));
    const auto value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, "missing key before '='");
    if (value.empty()) throw ConfigError(line, "missing value for " + std::string(key));
    return {key, value};
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& entry : table()) k.push_back(entry.first);
        return k;
    }();
    return keys;
}

void set_value(ExperimentConfig& config, std::string_view key, std::string_view value, int line) {
    const KeyHandler* h = find_handler(key);
    if (!h) throw ConfigError(line, "unknown key '" + std::string(key) + "'");
    h->set(config, trim(value), line);
}

std::string get_value(const ExperimentConfig& config, std::string_view key) {
    const KeyHandler* h = find_handler(key);
    if (!h) throw ConfigError("unknown key '" + std::string(key) + "'");
    return h->get(config);
}

ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base) {
    ExperimentConfig config = base;
    std::map<std::string, int> lines;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }

        if (line.size() > 5 && upper(line.substr(0, 5)) == "SWEEP" && (line[5] == ' ' || line[5] == '\t')) {
            const auto [key, list] = split_assignment(trim(line.substr(5)), line_no);
            Sweep sweep;
            sweep.key = upper(key);
            sweep.line = line_no;
            if (!find_handler(sweep.key)) throw ConfigError(line_no, "SWEEP: unknown key '" + std::string(key) + "'");
            std::size_t start = 0;
            while (start <= list.size()) {
                const auto comma = std::min(list.find(',', start), list.size());
                const auto item = trim(list.substr(start, comma - start));
                if (item.empty()) throw ConfigError(line_no, "SWEEP " + sweep.key + ": empty value");
                ExperimentConfig probe = config;
                set_value(probe, sweep.key, item, line_no);
                sweep.values.emplace_back(item);
                start = comma + 1;
            }
            for (const auto& s : config.sweeps) {
                if (s.key == sweep.key) throw ConfigError(line_no, "SWEEP " + sweep.key + " given twice");
            }
            config.sweeps.push_back(std::move(sweep));
        } else {
            const auto [key, value] = split_assignment(line, line_no);
            set_value(config, key, value, line_no);
            lines[upper(key)] = line_no;
        }
        if (end == text.size()) break;
    }

    const auto last_line = [&](std::initializer_list<const char*> keys) {
        int best = 0;
        for (const char* k : keys) {
            if (auto it = lines.find(k); it != lines.end()) best = std::max(best, it->second);
        }
        return best;
    };
    const bool sweeps_probabilities = std::any_of(config.sweeps.begin(), config.sweeps.end(),
                                                  [](const Sweep& s) { return is_probability_key(s.key); });
    if (!sweeps_probabilities) {
        const auto& w = config.setup.workload;
        const double sum = w.p_set + w.p_simple + w.p_hierarchy + w.p_stochastic;
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ConfigError(last_line({"PSET", "PSIMPLE", "PHIER", "PSTOCH"}),
                              "PSET + PSIMPLE + PHIER + PSTOCH must sum to 1, got " + format_real(sum));
        }
    }
    const auto& d = config.setup.database;
    const bool sweeps_sizes = std::any_of(config.sweeps.begin(), config.sweeps.end(),
                                          [](const Sweep& s) { return s.key == "NC" || s.key == "NO"; });
    if (!sweeps_sizes && d.num_objects < d.num_classes) {
        throw ConfigError(last_line({"NC", "NO"}), "NO must be >= NC");
    }
    return config;
}

ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), base);
}

std::string serialize_config(const ExperimentConfig& config) {
    std::ostringstream out;
    for (const auto& [name, handler] : table()) out << name << " = " << handler.get(config) << '\n';
    for (const auto& s : config.sweeps) {
        out << "SWEEP " << s.key << " = ";
        for (std::size_t i = 0; i < s.values.size(); ++i) out << (i ? "," : "") << s.values[i];
        out << '\n';
    }
    return out.str();
}

std::string SweepPoint::label() const {
    std::string out;
    for (const auto& [k, v] : assignments) {
        if (!out.empty()) out += ' ';
        out += k + "=" + v;
    }
    return out;
}

std::vector<SweepPoint> expand_sweeps(const ExperimentConfig& config) {
    ExperimentConfig flat = config;
    flat.sweeps.clear();
    std::vector<SweepPoint> points{SweepPoint{{}, flat}};
    for (const auto& sweep : config.sweeps) {
        std::vector<SweepPoint> next;
        for (const auto& p : points) {
            for (const auto& v : sweep.values) {
                SweepPoint q = p;
                set_value(q.config, sweep.key, v, sweep.line);
                q.assignments.emplace_back(sweep.key, v);
                next.push_back(std::move(q));
            }
        }
        points = std::move(next);
    }
    for (const auto& p : points) {
        try {
            p.config.setup.workload.validate();
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(p.label().empty() ? "" : p.label() + ": ") + e.what());
        }
        const auto& d = p.config.setup.database;
        if (d.num_objects < d.num_classes) throw ConfigError(p.label() + ": NO must be >= NC");
    }
    return points;
}

engine::ExperimentSetup resolve(const ExperimentConfig& config, const engine::ExperimentBase& base) {
    engine::ExperimentSetup setup = config.setup;
    if (config.buffer_percent) {
        const double pages = static_cast<double>(base.placement.nonempty_page_count()) * *config.buffer_percent / 100.0;
        setup.system.buffer_pages = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::floor(pages)));
    }
    return setup;
}

const std::vector<PresetInfo>& presets() {
    static const std::vector<PresetInfo> list = {
        {"default", "generic model defaults: page server, 1 MB/s network, 500-page LRU-1 buffer"},
        {"o2", "O2 validation setup: page server, infinite network, 3840-page LRU buffer, no clustering"},
        {"texas", "Texas validation setup: centralized, 3275-page LRU buffer, co-access clustering"},
        {"texas-8mb", "Texas on an 8 MB machine: as texas with a 2048-page buffer"},
    };
    return list;
}

ExperimentConfig preset(std::string_view name) {
    const auto n = upper(name);
    ExperimentConfig c;
    auto& s = c.setup.system;
    if (n == "DEFAULT") return c;
    if (n == "O2") {
        s.system_class = engine::SystemClass::PageServer;
        s.network_bytes_per_s = std::numeric_limits<double>::infinity();
        s.page_size = 4096;
        s.buffer_pages = 3840;
        s.replacement = {buffer::ReplacementKind::LruK, 1};
        s.clustering.kind = clustering::ClusteringKind::None;
        s.initial_placement = workload::InitialPlacement::OptimizedSequential;
        s.disk_search_ms = 6.3;
        s.disk_latency_ms = 2.99;
        s.disk_transfer_ms = 0.7;
        s.multiprogramming_level = 10;
        s.lock_acquire_ms = 0.5;
        s.lock_release_ms = 0.5;
        s.users = 1;
        return c;
    }
    if (n == "TEXAS" || n == "TEXAS-8MB") {
        s.system_class = engine::SystemClass::Centralized;
        s.page_size = 4096;
        s.buffer_pages = n == "TEXAS" ? 3275 : 2048;
        s.replacement = {buffer::ReplacementKind::LruK, 1};
        s.clustering.kind = clustering::ClusteringKind::CoAccess;
        s.initial_placement = workload::InitialPlacement::OptimizedSequential;
        s.disk_search_ms = 7.4;
        s.disk_latency_ms = 4.3;
        s.disk_transfer_ms = 0.5;
        s.multiprogramming_level = 1;
        s.lock_acquire_ms = 0.0;
        s.lock_release_ms = 0.0;
        s.users = 1;
        return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace voodb::runner
