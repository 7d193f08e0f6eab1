#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "voodb/buffer/buffer_pool.hpp"
#include "voodb/errors.hpp"
#include "voodb/runner/runner.hpp"
#include "voodb/sim/random.hpp"
#include "voodb/sim/statistics.hpp"
#include "voodb/workload/database.hpp"

namespace py = pybind11;
using namespace voodb;

namespace {

py::dict summary_dict(const engine::MetricSummary& m) {
    py::dict d;
    d["mean"] = m.mean;
    d["half_width"] = m.half_width ? py::cast(*m.half_width) : py::none();
    d["n"] = m.n;
    return d;
}

py::dict section_dict(const runner::Section& s) {
    py::dict d;
    d["label"] = s.point.label();
    d["assignments"] = s.point.assignments;
    d["buffer_pages"] = s.setup.system.buffer_pages;
    py::dict metrics;
    for (const auto& m : s.report.metrics) metrics[py::str(m.name)] = summary_dict(m);
    d["metrics"] = metrics;
    if (s.report.clustering) {
        const auto& c = *s.report.clustering;
        py::dict cd;
        cd["pre_clustering_io"] = summary_dict(c.pre_clustering_io);
        cd["clustering_overhead_io"] = summary_dict(c.clustering_overhead_io);
        cd["post_clustering_io"] = summary_dict(c.post_clustering_io);
        cd["gain"] = c.gain;
        cd["reorganizations"] = c.clusters.reorganizations;
        cd["clusters"] = c.clusters.mean_clusters;
        cd["objects_per_cluster"] = c.clusters.mean_objects_per_cluster;
        d["clustering"] = cd;
    } else {
        d["clustering"] = py::none();
    }
    if (s.adaptive) {
        py::dict ad;
        ad["pilot_mean"] = s.adaptive->pilot_mean;
        ad["pilot_half_width"] = s.adaptive->pilot_half_width;
        ad["target_half_width"] = s.adaptive->target_half_width;
        ad["required"] = s.adaptive->required;
        ad["additional"] = s.adaptive->additional;
        d["adaptive"] = ad;
    } else {
        d["adaptive"] = py::none();
    }
    d["csv"] = runner::format_report(s.report, runner::ReportFormat::Csv);
    d["text"] = runner::format_report(s.report, runner::ReportFormat::Text);
    return d;
}

runner::ExperimentConfig base_for(const std::optional<std::string>& preset) {
    return preset ? runner::preset(*preset) : runner::ExperimentConfig{};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Discrete-event simulator for object-oriented database performance";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<ConfigError> config_error(m, "ConfigError", error.ptr());
    static py::exception<DeadlockError> deadlock_error(m, "DeadlockError", error.ptr());
    static py::exception<ModelError> model_error(m, "ModelError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ConfigError& e) {
            py::set_error(config_error, e.what());
        } catch (const DeadlockError& e) {
            py::set_error(deadlock_error, e.what());
        } catch (const ModelError& e) {
            py::set_error(model_error, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<runner::ExperimentConfig>(m, "Config")
        .def(py::init([](const std::optional<std::string>& preset) { return base_for(preset); }),
             py::arg("preset") = py::none())
        .def_static(
            "parse",
            [](const std::string& text, const std::optional<std::string>& preset) {
                return runner::parse_config(text, base_for(preset));
            },
            py::arg("text"), py::arg("preset") = py::none())
        .def_static(
            "load",
            [](const std::string& path, const std::optional<std::string>& preset) {
                return runner::load_config(path, base_for(preset));
            },
            py::arg("path"), py::arg("preset") = py::none())
        .def("get", [](const runner::ExperimentConfig& c, const std::string& key) { return runner::get_value(c, key); })
        .def(
            "set",
            [](runner::ExperimentConfig& c, const std::string& key, const py::object& value) {
                runner::set_value(c, key, py::str(value).cast<std::string>());
            },
            "Assign one key; non-string values are converted with str().")
        .def("serialize", &runner::serialize_config)
        .def_property_readonly("sweeps",
                               [](const runner::ExperimentConfig& c) {
                                   std::vector<std::pair<std::string, std::vector<std::string>>> out;
                                   for (const auto& s : c.sweeps) out.emplace_back(s.key, s.values);
                                   return out;
                               })
        .def("__repr__", [](const runner::ExperimentConfig& c) {
            return "<voodb.Config SEED=" + runner::get_value(c, "SEED") + " NO=" + runner::get_value(c, "NO") + ">";
        });

    m.def("config_keys", &runner::config_keys);
    m.def("presets", [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& p : runner::presets()) out.emplace_back(p.name, p.description);
        return out;
    });

    m.def(
        "run",
        [](const runner::ExperimentConfig& config, std::optional<std::uint64_t> seed,
           std::optional<std::uint32_t> replications, std::optional<double> adaptive, unsigned jobs) {
            runner::RunOptions options{seed, replications, adaptive, jobs};
            std::vector<runner::Section> sections;
            {
                py::gil_scoped_release release;
                sections = runner::run_config(config, options);
            }
            py::list out;
            for (const auto& s : sections) out.append(section_dict(s));
            return out;
        },
        py::arg("config"), py::arg("seed") = py::none(), py::arg("replications") = py::none(),
        py::arg("adaptive") = py::none(), py::arg("jobs") = 1u,
        "Run every sweep point; returns one dict per report section.");

    m.def(
        "half_width",
        [](const std::vector<double>& samples, double level) {
            const auto ci = sim::confidence_half_width(samples, level);
            return py::make_tuple(ci.mean, ci.half_width);
        },
        py::arg("samples"), py::arg("level") = 0.95, "(mean, t-based confidence half-width)");
    m.def("t_quantile", &sim::student_t_quantile, py::arg("p"), py::arg("dof"));
    m.def("t_cdf", &sim::student_t_cdf, py::arg("t"), py::arg("dof"));
    m.def("required_replications", &sim::required_replications, py::arg("n"), py::arg("h"), py::arg("h_star"));

    m.def(
        "replay_buffer",
        [](const std::vector<std::uint32_t>& trace, std::uint32_t capacity, const std::string& policy,
           std::uint64_t seed) {
            buffer::BufferPool pool(capacity, buffer::parse_replacement(policy),
                                    sim::RandomStream(seed, sim::StreamId::BufferPolicy));
            std::vector<bool> hits;
            std::vector<std::optional<std::uint32_t>> evicted;
            hits.reserve(trace.size());
            evicted.reserve(trace.size());
            for (auto page : trace) {
                const auto r = pool.request_page(PageId{page});
                hits.push_back(r.hit);
                evicted.push_back(r.evicted ? std::optional(r.evicted->value) : std::nullopt);
            }
            py::dict d;
            d["hits"] = hits;
            d["evicted"] = evicted;
            d["hit_count"] = pool.hits();
            d["miss_count"] = pool.misses();
            return d;
        },
        py::arg("trace"), py::arg("capacity"), py::arg("policy") = "LRU", py::arg("seed") = 0,
        "Feed page ids through a buffer pool; returns per-request hit flags and victims.");

    m.def(
        "generate_database",
        [](std::uint32_t num_classes, std::uint32_t num_objects, std::uint64_t seed, std::uint32_t fanout) {
            workload::DatabaseParams p;
            p.num_classes = num_classes;
            p.num_objects = num_objects;
            p.fanout = fanout;
            const auto db = workload::generate_database(p, seed);
            py::list objects;
            for (const auto& o : db.objects()) {
                std::vector<std::uint32_t> refs;
                for (auto r : o.refs) refs.push_back(r.value);
                objects.append(py::make_tuple(o.oid.value, o.class_id, o.size, refs));
            }
            std::ostringstream snapshot;
            workload::write_snapshot(snapshot, db);
            py::dict d;
            d["objects"] = objects;
            d["total_bytes"] = db.total_bytes();
            d["snapshot"] = snapshot.str();
            return d;
        },
        py::arg("num_classes") = 50, py::arg("num_objects") = 20000, py::arg("seed") = 1, py::arg("fanout") = 3,
        "Objects as (oid, class_id, size, refs) tuples plus the text snapshot.");
}
