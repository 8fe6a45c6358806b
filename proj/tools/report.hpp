#pragma once

#include <algorithm>
#include <deque>
#include <iostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace tetra::cli {

using json = nlohmann::ordered_json;

struct Section {
    std::string name;
    bool passed = true;
    std::vector<std::string> lines;
    json data;  // structured copy of what the lines say, may be null

    void line(std::string s) { lines.push_back(std::move(s)); }
    bool require(bool cond, const std::string& what) {
        if (!cond) {
            passed = false;
            lines.push_back("FAIL: " + what);
        }
        return cond;
    }
};

// Sections are kept sorted by name; names carry a numeric prefix where the
// reading order matters.
struct Report {
    std::string command;
    std::deque<Section> sections;
    double seconds = 0;

    Section& add(std::string name) {
        sections.push_back(Section{std::move(name), true, {}, nullptr});
        return sections.back();
    }
    std::string status() const {
        auto ok = std::count_if(sections.begin(), sections.end(), [](const Section& s) { return s.passed; });
        if (ok == static_cast<long>(sections.size())) return "pass";
        return ok == 0 ? "fail" : "partial";
    }
    void sort() {
        std::stable_sort(sections.begin(), sections.end(),
                         [](const Section& a, const Section& b) { return a.name < b.name; });
    }
    json to_json(bool with_timing) const {
        json j;
        j["command"] = command;
        j["status"] = status();
        j["sections"] = json::array();
        for (const auto& s : sections) {
            json js;
            js["name"] = s.name;
            js["status"] = s.passed ? "pass" : "fail";
            js["lines"] = s.lines;
            if (!s.data.is_null()) js["data"] = s.data;
            j["sections"].push_back(js);
        }
        if (with_timing) j["seconds"] = seconds;
        return j;
    }
    void print_text(std::ostream& os) const {
        for (const auto& s : sections) {
            os << "== " << s.name << " [" << (s.passed ? "pass" : "fail") << "]\n";
            for (const auto& l : s.lines) os << "  " << l << "\n";
        }
        os << "status: " << status() << " (" << seconds << " s)\n";
    }
};

}  // namespace tetra::cli
