#include "opcat/common.hpp"

#include <cstdlib>
#include <thread>

namespace opcat {

std::string rat_str(const Rat& r) {
    return r.get_str();
}

Rat rat_parse(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw StructuralError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

int worker_count() {
    const char* env = std::getenv("OPCAT_WORKERS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n < 1) return 1;
    if (n > 64) return 64;
    return n;
}

void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = worker_count();
    if (workers <= 1 || n < 2 * workers) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

uint64_t SplitMix64::next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

uint64_t SplitMix64::below(uint64_t n) {
    return n == 0 ? 0 : next() % n;
}

}  // namespace opcat
