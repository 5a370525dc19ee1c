#include "mk2/report.hpp"

namespace mk2 {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

void VerificationReport::add_failure(const std::string& inputs, const std::string& detail) {
    failures.push_back({inputs, detail});
}

void VerificationReport::bump(const std::string& branch) { ++branches[branch]; }

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

std::string VerificationReport::json() const {
    std::string s = "{";
    s += "\"check\":\"" + json_escape(check) + "\",";
    s += "\"ring\":\"" + json_escape(ring) + "\",";
    s += "\"params\":{\"seed\":" + std::to_string(seed) +
         ",\"budget\":" + std::to_string(budget) + ",\"window\":\"" +
         json_escape(window) + "\"},";
    s += "\"cases_run\":" + std::to_string(cases_run) + ",";
    s += "\"failures\":[";
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (i) s += ",";
        s += "{\"inputs\":\"" + json_escape(failures[i].inputs) + "\",\"detail\":\"" +
             json_escape(failures[i].detail) + "\"}";
    }
    s += "],";
    s += "\"status\":\"";
    s += status_name(status());
    s += "\"";
    if (!branches.empty()) {
        s += ",\"branches\":{";
        bool first = true;
        for (const auto& [k, v] : branches) {
            if (!first) s += ",";
            first = false;
            s += "\"" + json_escape(k) + "\":" + std::to_string(v);
        }
        s += "}";
    }
    if (!notes.empty()) {
        s += ",\"notes\":[";
        for (std::size_t i = 0; i < notes.size(); ++i) {
            if (i) s += ",";
            s += "\"" + json_escape(notes[i]) + "\"";
        }
        s += "]";
    }
    return s + "}";
}

std::string VerificationReport::text() const {
    std::string s = check + " on " + ring + ": ";
    s += status_name(status());
    s += " (" + std::to_string(cases_run) + " cases";
    if (seed) s += ", seed " + std::to_string(seed);
    if (budget) s += ", budget " + std::to_string(budget);
    s += ")";
    if (!window.empty()) s += "\n  window: " + window;
    for (const auto& [k, v] : branches)
        s += "\n  " + k + ": " + std::to_string(v);
    for (const auto& f : failures)
        s += "\n  FAIL " + f.inputs + ": " + f.detail;
    for (const auto& n : notes) s += "\n  note: " + n;
    return s;
}

}  // namespace mk2
