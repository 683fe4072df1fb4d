#include "twisted/report.hpp"

namespace twisted {

const char* status_name(Status s)
{
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    }
    return "?";
}

void Report::add(std::string name, bool ok, std::string details)
{
    checks.push_back({std::move(name), ok ? Status::Pass : Status::Fail, std::move(details)});
}

void Report::skip(std::string name, std::string details)
{
    checks.push_back({std::move(name), Status::Skip, std::move(details)});
}

void Report::append(const Report& other)
{
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::ok() const
{
    for (const auto& c : checks)
        if (c.status == Status::Fail) return false;
    return true;
}

const Check* Report::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string Report::first_failure() const
{
    for (const auto& c : checks)
        if (c.status == Status::Fail) return c.name + ": " + c.details;
    return {};
}

std::ostream& operator<<(std::ostream& os, const Report& r)
{
    for (const auto& c : r.checks) {
        os << "CHECK " << c.name << ' ' << status_name(c.status);
        if (!c.details.empty()) os << ' ' << c.details;
        os << '\n';
    }
    return os;
}

}
