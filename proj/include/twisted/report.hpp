#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace twisted {

// thrown when an instance is too large for a configured cap
class cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// thrown when the generator validation gate fails
class validation_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Status { Pass, Fail, Skip };

const char* status_name(Status s);

struct Check {
    std::string name;
    Status status;
    std::string details;
};

struct Report {
    std::vector<Check> checks;

    void add(std::string name, bool ok, std::string details = {});
    void skip(std::string name, std::string details = {});
    void append(const Report& other);
    bool ok() const;
    bool any_fail() const { return !ok(); }
    const Check* find(const std::string& name) const;
    std::string first_failure() const;
};

std::ostream& operator<<(std::ostream& os, const Report& r);

}
