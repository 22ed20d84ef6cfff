#include "gammak/report.hpp"

#include <sstream>

#include <json.hpp>

namespace gammak {

void Section::fail(std::string kind, std::string instance, std::string witness) {
    ++checked;
    findings.push_back({std::move(kind), std::move(instance), std::move(witness)});
}

Section& Report::section(const std::string& name) {
    for (auto& s : sections)
        if (s.name == name) return s;
    sections.push_back(Section{name});
    return sections.back();
}

bool Report::clean() const { return total_findings() == 0; }

std::int64_t Report::total_findings() const {
    std::int64_t n = 0;
    for (const auto& s : sections) n += static_cast<std::int64_t>(s.findings.size());
    return n;
}

void Report::merge(const Report& other) {
    for (const auto& s : other.sections) {
        Section& mine = section(s.name);
        mine.checked += s.checked;
        mine.passed += s.passed;
        mine.skipped += s.skipped;
        mine.findings.insert(mine.findings.end(), s.findings.begin(), s.findings.end());
    }
}

static std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["input"] = {{"path", input_path}, {"digest", "fnv1a:" + hex64(input_digest)}};
    j["parameters"] = {{"max_len", max_len},
                       {"max_dim", max_dim},
                       {"budget", budget},
                       {"seed", seed}};
    j["sections"] = nlohmann::ordered_json::array();
    for (const auto& s : sections) {
        nlohmann::ordered_json js;
        js["name"] = s.name;
        js["checked"] = s.checked;
        js["passed"] = s.passed;
        js["skipped"] = s.skipped;
        js["findings"] = nlohmann::ordered_json::array();
        for (const auto& f : s.findings)
            js["findings"].push_back({{"kind", f.kind},
                                      {"instance", f.instance},
                                      {"witness", f.witness}});
        j["sections"].push_back(std::move(js));
    }
    j["findings_total"] = total_findings();
    j["outcome"] = clean() ? "pass" : "fail";
    return j.dump(2) + "\n";
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << "== " << command;
    if (!input_path.empty()) out << " " << input_path;
    out << " (max_len=" << max_len << " max_dim=" << max_dim
        << " budget=" << budget << " seed=" << seed << ")\n";
    for (const auto& s : sections) {
        out << "  " << s.name << ": checked=" << s.checked << " passed=" << s.passed
            << " skipped=" << s.skipped << " findings=" << s.findings.size() << "\n";
        for (const auto& f : s.findings)
            out << "    [" << f.kind << "] " << f.instance << " :: " << f.witness << "\n";
    }
    out << (clean() ? "PASS" : "FAIL") << " (" << total_findings() << " findings)\n";
    return out.str();
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a(const std::string& s) { return fnv1a(s.data(), s.size()); }

}  // namespace gammak
