#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace opcat {

// All linear algebra in the engine runs over exact rationals.
using Rat = mpq_class;

std::string rat_str(const Rat& r);
Rat rat_parse(const std::string& s);

// Thrown for malformed inputs (bad indices, shape mismatches); axiom
// violations are reported through ValidationReport instead.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Worker count for parallel validators, from OPCAT_WORKERS (default: 1).
int worker_count();

// Runs body(0..n-1); results must be written into index-addressed slots so
// the outcome does not depend on the scheduling.
void parallel_for(int n, const std::function<void(int)>& body);

uint64_t fnv1a64(const std::string& s);

// Deterministic splitmix64 generator for seeded mutation/permutation tests.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next();
    // uniform in [0, n)
    uint64_t below(uint64_t n);
};

}  // namespace opcat
