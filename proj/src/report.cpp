#include "projposet/report.hpp"

#include <algorithm>

namespace projposet {

void Check::fail(nlohmann::json w)
{
    ++failures;
    if (passed) {
        passed = false;
        witness = std::move(w);
    }
}

void Check::expect(bool ok, const nlohmann::json & w)
{
    ++cases;
    if (!ok)
        fail(w);
}

Check & CheckReport::add(std::string name)
{
    Check c;
    c.name = std::move(name);
    checks_.push_back(std::move(c));
    return checks_.back();
}

void CheckReport::merge(const CheckReport & other)
{
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool CheckReport::passed() const
{
    return std::all_of(checks_.begin(), checks_.end(), [](const Check & c) { return c.passed; });
}

const Check * CheckReport::find(const std::string & name) const
{
    for (auto & c : checks_)
        if (c.name == name)
            return &c;
    return nullptr;
}

nlohmann::json CheckReport::to_json() const
{
    auto arr = nlohmann::json::array();
    for (auto & c : checks_) {
        nlohmann::json j {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"cases", c.cases}, {"failures", c.failures}};
        if (!c.passed)
            j["witness"] = c.witness;
        arr.push_back(std::move(j));
    }
    return arr;
}

} // namespace projposet
