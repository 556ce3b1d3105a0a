/*
   Copyright 2026 The nilpo Authors

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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <cstdio>
#include <string>
#include <vector>

#include <nilpo/nilpo.hpp>

namespace {

using nilpo::suite::Entry;
using nilpo::suite::Status;

struct Criterion {
    int id;
    std::vector<std::string> keys;
    double time_limit;  // seconds, 0 = none
};

std::string summarize(const Entry& e) {
    std::string s;
    for (const auto& [k, v] : e.residuals) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s%s=%.3g", s.empty() ? "" : " ", k.c_str(), v);
        s += buf;
    }
    if (e.status != Status::pass && !e.detail.empty()) s += " [" + e.detail + "]";
    return s;
}

}  // namespace

int main() {
    const nilpo::suite::RunConfig cfg;
    const std::vector<Criterion> criteria = {
        {1, {"square_zero_conjugations"}, 30.0},
        {2, {"explicit_blocks"}, 0.0},
        {3, {"indestructible_forward", "indestructible_reverse"}, 0.0},
        {4, {"twisted_tensor"}, 0.0},
        {5, {"shift_coshift"}, 0.0},
        {6, {"tto_suite"}, 0.0},
        {7, {"synthesis_round_trip"}, 300.0},
        {8, {"word_identity"}, 0.0},
    };
    const auto& items = nilpo::suite::suite_items();
    int failures = 0;

    for (const auto& c : criteria) {
        bool ok = true;
        double seconds = 0.0;
        std::string info;
        for (const auto& key : c.keys) {
            std::size_t index = 0;
            while (index < items.size() && key != items[index].key) ++index;
            if (index == items.size()) {
                ok = false;
                info += " missing:" + key;
                continue;
            }
            const Entry e = nilpo::suite::run_item(items[index], index, cfg);
            ok = ok && e.status == Status::pass;
            seconds += e.wall_seconds;
            info += " {" + e.name + ": " + summarize(e) + "}";
        }
        if (c.time_limit > 0.0 && seconds > c.time_limit) {
            ok = false;
            info += " over time limit";
        }
        std::printf("criterion %d: %s (%.2fs)%s\n", c.id, ok ? "PASS" : "FAIL", seconds, info.c_str());
        failures += ok ? 0 : 1;
    }

    const std::string first = nilpo::suite::report_to_json(nilpo::suite::run_suite(cfg)).dump(2);
    const std::string second = nilpo::suite::report_to_json(nilpo::suite::run_suite(cfg)).dump(2);
    const bool same = first == second;
    std::printf("criterion 9: %s (%zu bytes, identical=%s)\n", same ? "PASS" : "FAIL", first.size(),
                same ? "yes" : "no");
    failures += same ? 0 : 1;

    std::fflush(stdout);
    return failures == 0 ? 0 : 1;
}
