#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "voodb/types.hpp"

namespace voodb::workload {

struct SchemaClass {
    std::uint32_t class_id = 1;  // 1..NC
    std::uint32_t mean_instance_size = 1000;
    std::uint32_t reference_fanout = 3;
};

struct ObjectInstance {
    Oid oid;
    std::uint32_t class_id = 1;
    std::uint32_t size = 0;  // bytes
    std::vector<Oid> refs;
};

struct DatabaseParams {
    std::uint32_t num_classes = 50;       // NC
    std::uint32_t num_objects = 20'000;   // NO
    std::uint32_t fanout = 3;             // outgoing references per object
    std::uint32_t min_object_size = 50;   // bytes, inclusive
    std::uint32_t max_object_size = 1950; // bytes, inclusive
};

// The synthetic object base. OIDs are dense: object i has Oid{i}.
class Database {
public:
    Database() = default;

    // Validates: oid == position, sizes > 0, every ref resolves, class ids exist.
    Database(std::vector<SchemaClass> classes, std::vector<ObjectInstance> objects);

    const std::vector<SchemaClass>& classes() const noexcept { return classes_; }
    const std::vector<ObjectInstance>& objects() const noexcept { return objects_; }

    std::size_t size() const noexcept { return objects_.size(); }
    bool empty() const noexcept { return objects_.empty(); }
    bool contains(Oid oid) const noexcept { return oid.value < objects_.size(); }

    // Throws ModelError for an unknown OID.
    const ObjectInstance& object(Oid oid) const;

    std::uint64_t total_bytes() const noexcept;
    std::uint32_t max_object_size() const noexcept;

private:
    std::vector<SchemaClass> classes_;
    std::vector<ObjectInstance> objects_;
};

// Throws ConfigError when NO < NC or NC == 0.
Database generate_database(const DatabaseParams& params, std::uint64_t seed);

inline Database generate_database(std::uint32_t num_classes, std::uint32_t num_objects,
                                  std::uint64_t seed) {
    DatabaseParams p;
    p.num_classes = num_classes;
    p.num_objects = num_objects;
    return generate_database(p, seed);
}

// Text snapshot, one object per line: `oid class_id size ref...`, preceded by
// a `#` header line. Lines starting with '#' are ignored on read.
void write_snapshot(std::ostream& out, const Database& db);
Database read_snapshot(std::istream& in);

}  // namespace voodb::workload
