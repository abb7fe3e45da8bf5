#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace crystab {

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

struct CheckLine {
    bool ok = false;
    std::string name;
    std::string params;
    std::string detail;  // failing monomial or value, empty on success
};

class Report {
public:
    void add(bool ok, std::string name, std::string params, std::string detail = {}) {
        lines_.push_back({ok, std::move(name), std::move(params), ok ? std::string{} : std::move(detail)});
    }
    void append(const Report& o) { lines_.insert(lines_.end(), o.lines_.begin(), o.lines_.end()); }
    bool all_ok() const {
        for (const auto& l : lines_)
            if (!l.ok) return false;
        return true;
    }
    const std::vector<CheckLine>& lines() const { return lines_; }
    // "PASS name params" per line, failures followed by their detail
    std::string str() const {
        std::string out;
        for (const auto& l : lines_) {
            out += (l.ok ? "PASS " : "FAIL ") + l.name + " " + l.params;
            if (!l.ok && !l.detail.empty()) out += " : " + l.detail;
            out += "\n";
        }
        return out;
    }
    // throws on the first failing line
    void require() const {
        for (const auto& l : lines_)
            if (!l.ok) throw VerificationError(l.name + " " + l.params + " : " + l.detail);
    }

private:
    std::vector<CheckLine> lines_;
};

}  // namespace crystab
