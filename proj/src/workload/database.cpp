#include "voodb/workload/database.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "voodb/errors.hpp"
#include "voodb/sim/random.hpp"

namespace voodb::workload {

Database::Database(std::vector<SchemaClass> classes, std::vector<ObjectInstance> objects)
    : classes_(std::move(classes)), objects_(std::move(objects)) {
    for (std::size_t i = 0; i < objects_.size(); ++i) {
        const auto& o = objects_[i];
        if (o.oid.value != i) {
            throw ModelError("object at position " + std::to_string(i) + " has oid " +
                             std::to_string(o.oid.value));
        }
        if (o.size == 0) throw ModelError("object " + std::to_string(i) + " has size 0");
        if (o.class_id == 0 || o.class_id > classes_.size()) {
            throw ModelError("object " + std::to_string(i) + " has unknown class " +
                             std::to_string(o.class_id));
        }
        for (Oid r : o.refs) {
            if (r.value >= objects_.size()) {
                throw ModelError("object " + std::to_string(i) + " references missing object " +
                                 std::to_string(r.value));
            }
        }
    }
}

const ObjectInstance& Database::object(Oid oid) const {
    if (!contains(oid)) throw ModelError("unresolvable oid " + std::to_string(oid.value));
    return objects_[oid.value];
}

std::uint64_t Database::total_bytes() const noexcept {
    std::uint64_t total = 0;
    for (const auto& o : objects_) total += o.size;
    return total;
}

std::uint32_t Database::max_object_size() const noexcept {
    std::uint32_t m = 0;
    for (const auto& o : objects_) m = std::max(m, o.size);
    return m;
}

Database generate_database(const DatabaseParams& params, std::uint64_t seed) {
    if (params.num_classes == 0) throw ConfigError("NC must be >= 1");
    if (params.num_objects < params.num_classes) {
        throw ConfigError("NO (" + std::to_string(params.num_objects) + ") must be >= NC (" +
                          std::to_string(params.num_classes) + ")");
    }
    if (params.min_object_size == 0 || params.min_object_size > params.max_object_size) {
        throw ConfigError("object size range must satisfy 0 < min <= max");
    }

    sim::RandomStream rng(seed, sim::StreamId::Database);
    const std::uint32_t nc = params.num_classes;
    const std::uint32_t no = params.num_objects;

    std::vector<SchemaClass> classes(nc);
    for (std::uint32_t c = 0; c < nc; ++c) {
        classes[c].class_id = c + 1;
        classes[c].mean_instance_size = (params.min_object_size + params.max_object_size) / 2;
        classes[c].reference_fanout = params.fanout;
    }

    std::vector<ObjectInstance> objects(no);
    for (std::uint32_t i = 0; i < no; ++i) {
        auto& o = objects[i];
        o.oid = Oid{i};
        // The first NC objects seed one instance per class.
        o.class_id = i < nc ? i + 1 : 1 + static_cast<std::uint32_t>(rng.below(nc));
        o.size = static_cast<std::uint32_t>(
            rng.between(params.min_object_size, params.max_object_size));
    }

    // Distinct, non-self targets drawn uniformly over the whole base.
    for (std::uint32_t i = 0; i < no; ++i) {
        auto& o = objects[i];
        const std::uint32_t fanout = classes[o.class_id - 1].reference_fanout;
        const std::uint32_t count = std::min<std::uint32_t>(fanout, no - 1);
        o.refs.reserve(count);
        while (o.refs.size() < count) {
            const Oid target{static_cast<std::uint32_t>(rng.below(no))};
            if (target.value == i) continue;
            if (std::find(o.refs.begin(), o.refs.end(), target) != o.refs.end()) continue;
            o.refs.push_back(target);
        }
    }
    return Database(std::move(classes), std::move(objects));
}

void write_snapshot(std::ostream& out, const Database& db) {
    out << "# oid class_id size refs\n";
    for (const auto& o : db.objects()) {
        out << o.oid.value << ' ' << o.class_id << ' ' << o.size;
        for (Oid r : o.refs) out << ' ' << r.value;
        out << '\n';
    }
}

Database read_snapshot(std::istream& in) {
    std::vector<ObjectInstance> objects;
    std::uint32_t max_class = 0;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        ObjectInstance o;
        if (!(fields >> o.oid.value >> o.class_id >> o.size)) {
            throw ConfigError(line_no, "malformed snapshot line");
        }
        std::uint32_t r = 0;
        while (fields >> r) o.refs.push_back(Oid{r});
        if (!fields.eof()) throw ConfigError(line_no, "malformed reference list");
        max_class = std::max(max_class, o.class_id);
        objects.push_back(std::move(o));
    }
    std::vector<SchemaClass> classes(max_class);
    for (std::uint32_t c = 0; c < max_class; ++c) classes[c].class_id = c + 1;
    return Database(std::move(classes), std::move(objects));
}

}  // namespace voodb::workload
