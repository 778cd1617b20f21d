#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace opcat {

// Result of an exhaustive axiom scan: one line per violated instance,
// sorted so reports are byte-stable across worker counts.
struct ValidationReport {
    std::vector<std::string> items;

    bool ok() const { return items.empty(); }
    void add(std::string s) { items.push_back(std::move(s)); }
    void merge(const ValidationReport& other) {
        items.insert(items.end(), other.items.begin(), other.items.end());
    }
    void sort() { std::sort(items.begin(), items.end()); }
    std::string str() const {
        std::string out;
        for (const auto& s : items) {
            out += s;
            out += '\n';
        }
        return out;
    }
};

}  // namespace opcat
