#ifndef GWKIT_UTIL_HPP
#define GWKIT_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

namespace gwkit {

// Default node budget for open-ended searches on infinite objects.
// Override with the GWKIT_BUDGET environment variable.
inline std::uint64_t search_budget() {
    static const std::uint64_t value = [] {
        if (const char* env = std::getenv("GWKIT_BUDGET")) {
            char* end = nullptr;
            unsigned long long parsed = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && parsed > 0) return static_cast<std::uint64_t>(parsed);
        }
        return std::uint64_t{1000000};
    }();
    return value;
}

// splitmix64 step; used to derive per-instance RNG seeds deterministically.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_str(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Seed for instance `index` of a named check, derived from the user seed.
inline std::uint64_t instance_seed(std::uint64_t seed, const std::string& name, std::uint64_t index) {
    return mix64(mix64(seed ^ hash_str(name)) ^ index);
}

template <typename T>
bool sorted_contains(const std::vector<T>& xs, const T& x) {
    return std::binary_search(xs.begin(), xs.end(), x);
}

template <typename T>
void sort_unique(std::vector<T>& xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// Intersection of two sorted unique vectors.
template <typename T>
std::vector<T> sorted_intersect(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Three-valued answer for checks that may exhaust their budget.
enum class Tri { False = 0, True = 1, Inconclusive = 2 };

inline const char* tri_name(Tri t) {
    switch (t) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        default: return "inconclusive";
    }
}

// A three-valued answer plus a human-readable certificate or witness.
struct CheckedFlag {
    Tri value = Tri::Inconclusive;
    std::string detail;
};

} // namespace gwkit

#endif
