#include "voodb/runner/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include "voodb/errors.hpp"

namespace voodb::runner {

namespace {

struct Row {
    std::string metric;
    std::string mean;
    std::string half_width;
    std::string n;
};

std::string printf_string(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

std::string fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

Row summary_row(const engine::MetricSummary& m) {
    const int decimals = m.name == "hit_ratio" ? 4 : 2;
    return {m.name, fixed(m.mean, decimals), m.half_width ? printf_string("%.6g", *m.half_width) : "",
            std::to_string(m.n)};
}

std::vector<Row> rows(const engine::ExperimentReport& report) {
    std::vector<Row> out;
    for (const auto& m : report.metrics) out.push_back(summary_row(m));
    if (report.clustering) {
        const auto& c = *report.clustering;
        out.push_back(summary_row(c.pre_clustering_io));
        out.push_back(summary_row(c.clustering_overhead_io));
        out.push_back(summary_row(c.post_clustering_io));
        out.push_back({"gain", std::isinf(c.gain) ? "inf" : printf_string("%.6g", c.gain), "",
                       std::to_string(c.post_clustering_io.n)});
        const auto reorgs = std::to_string(c.clusters.reorganizations);
        out.push_back({"clusters", fixed(c.clusters.mean_clusters, 2), "", reorgs});
        out.push_back({"objects_per_cluster", fixed(c.clusters.mean_objects_per_cluster, 2), "", reorgs});
    }
    return out;
}

}  // namespace

ReportFormat parse_format(std::string_view text) {
    if (text == "csv" || text == "CSV") return ReportFormat::Csv;
    if (text == "text" || text == "TEXT") return ReportFormat::Text;
    throw ConfigError("unknown report format '" + std::string(text) + "' (expected csv or text)");
}

void write_report(std::ostream& out, const engine::ExperimentReport& report, ReportFormat format) {
    const auto body = rows(report);
    if (format == ReportFormat::Csv) {
        out << "metric,mean,half_width_95,n\n";
        for (const auto& r : body) out << r.metric << ',' << r.mean << ',' << r.half_width << ',' << r.n << '\n';
        return;
    }
    std::size_t w0 = 6, w1 = 4, w2 = 7;
    for (const auto& r : body) {
        w0 = std::max(w0, r.metric.size());
        w1 = std::max(w1, r.mean.size());
        w2 = std::max(w2, r.half_width.size() + 2);
    }
    out << std::left << std::setw(static_cast<int>(w0)) << "metric" << "  " << std::right
        << std::setw(static_cast<int>(w1)) << "mean" << "  " << std::setw(static_cast<int>(w2)) << "95% +/-"
        << "  n\n";
    for (const auto& r : body) {
        out << std::left << std::setw(static_cast<int>(w0)) << r.metric << "  " << std::right
            << std::setw(static_cast<int>(w1)) << r.mean << "  " << std::setw(static_cast<int>(w2))
            << (r.half_width.empty() ? "-" : r.half_width) << "  " << r.n << '\n';
    }
}

std::string format_report(const engine::ExperimentReport& report, ReportFormat format) {
    std::ostringstream out;
    write_report(out, report, format);
    return out.str();
}

}  // namespace voodb::runner
