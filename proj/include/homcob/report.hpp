#pragma once

#include <string>
#include <vector>

namespace homcob {

struct Finding {
    std::string item;
    bool ok = true;
    std::string detail;
};

struct Report {
    std::string check;
    std::vector<Finding> findings;
    std::vector<std::string> notes;

    void add(bool ok, const std::string& item, const std::string& detail = "") {
        findings.push_back({item, ok, detail});
    }
    void note(const std::string& n) { notes.push_back(n); }

    bool pass() const {
        for (const auto& f : findings)
            if (!f.ok) return false;
        return true;
    }
    int fail_count() const {
        int n = 0;
        for (const auto& f : findings)
            if (!f.ok) ++n;
        return n;
    }
};

} // namespace homcob
