/*
   Copyright 2026 The pgconic Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

// Result record shared by all verification routines, plus a small
// deterministic parallel loop.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace pgconic {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::uint64_t cases = 0;
    std::vector<std::string> failures;

    explicit CheckResult(std::string n = {}) : name(std::move(n)) {}

    // Keeps the first few messages only; the count of cases tells the rest.
    void fail(std::string msg) {
        ok = false;
        if (failures.size() < 16) failures.push_back(std::move(msg));
    }

    void expect(bool cond, const std::string& msg) {
        ++cases;
        if (!cond) fail(msg);
    }

    void merge(const CheckResult& other) {
        cases += other.cases;
        if (!other.ok) ok = false;
        for (const auto& f : other.failures) {
            if (failures.size() < 16) failures.push_back(f);
        }
    }

    std::string summary() const {
        std::string s = name + (ok ? ": ok" : ": FAILED") + " (" + std::to_string(cases) + " cases)";
        if (!failures.empty()) s += "; first: " + failures.front();
        return s;
    }
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Index i always goes
/// to worker i % threads, so per-index outputs are reproducible.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < n; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace pgconic
