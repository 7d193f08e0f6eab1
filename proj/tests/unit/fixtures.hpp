#pragma once

#include <cstdint>
#include <vector>

#include "voodb/workload/database.hpp"

namespace fixtures {

// Hand-built base: object i has sizes[i] bytes and refs[i] references.
inline voodb::workload::Database make_db(const std::vector<std::uint32_t>& sizes,
                                         const std::vector<std::vector<std::uint32_t>>& refs = {}) {
    using namespace voodb;
    std::vector<workload::SchemaClass> classes(1);
    std::vector<workload::ObjectInstance> objects;
    for (std::uint32_t i = 0; i < sizes.size(); ++i) {
        workload::ObjectInstance o;
        o.oid = Oid{i};
        o.size = sizes[i];
        if (i < refs.size()) {
            for (auto r : refs[i]) o.refs.push_back(Oid{r});
        }
        objects.push_back(o);
    }
    return workload::Database(classes, objects);
}

// Complete binary reference tree with `levels` levels (2^levels - 1 nodes).
inline voodb::workload::Database binary_tree(std::uint32_t levels, std::uint32_t size = 100) {
    const std::uint32_t n = (1u << levels) - 1;
    std::vector<std::uint32_t> sizes(n, size);
    std::vector<std::vector<std::uint32_t>> refs(n);
    for (std::uint32_t i = 0; 2 * i + 2 < n; ++i) refs[i] = {2 * i + 1, 2 * i + 2};
    return make_db(sizes, refs);
}

}  // namespace fixtures
