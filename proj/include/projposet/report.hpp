#pragma once

#include <json.hpp>

#include <concepts>
#include <cstdint>
#include <deque>
#include <string>

namespace projposet {

/// One verified statement: how many cases were examined and, on failure, the
/// first counterexample as machine-readable JSON.
struct Check {
    std::string name;
    bool passed = true;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    nlohmann::json witness;

    /// Records a counterexample; only the first one is kept as the witness.
    void fail(nlohmann::json w);
    /// Records one examined case that either held or failed with `w`.
    void expect(bool ok, const nlohmann::json & w = {});
    /// As expect, building the witness only on failure.
    template <std::invocable Witness>
    void expect_lazy(bool ok, Witness && make)
    {
        ++cases;
        if (!ok)
            fail(make());
    }
};

class CheckReport {
public:
    Check & add(std::string name);
    void append(Check check) { checks_.push_back(std::move(check)); }
    void merge(const CheckReport & other);

    bool passed() const;
    /// References returned by add() stay valid as more checks are added.
    const std::deque<Check> & checks() const { return checks_; }
    /// nullptr when absent.
    const Check * find(const std::string & name) const;

    nlohmann::json to_json() const;

private:
    std::deque<Check> checks_;
};

} // namespace projposet
