// Copyright 2026 The hardyctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hardy/netlist_text.h"

#include <random>

#include "gtest/gtest.h"
#include "hardy/verify.h"

using namespace hardy;

TEST(netlist_text, emit_format) {
    std::string text = emit_netlist(canonical_netlist(2), "U2");
    EXPECT_EQ(text, "# U2\nmodes 3\nps a 0\nbs a b 0.5\n");
    auto p = build_pipeline(2, 1).flattened();
    std::string six = emit_netlist(p);
    EXPECT_NE(six.find("hwp a 0.7853981633974483\n"), std::string::npos);
    EXPECT_NE(six.find("pbs c\n"), std::string::npos);
}

TEST(netlist_text, round_trip_is_exact) {
    std::vector<CircuitNetlist> cases;
    for (int i = 1; i <= 5; i++) {
        cases.push_back(canonical_netlist(i));
    }
    for (auto [i, j] : std::initializer_list<std::pair<int, int>>{{2, 1}, {5, 4}}) {
        cases.push_back(build_pipeline(i, j).flattened());
    }
    std::mt19937_64 rng(9);
    for (int n = 0; n < 50; n++) {
        cases.push_back(reck_decompose(random_unitary(rng)));
    }
    for (const auto &c : cases) {
        std::string text = emit_netlist(c);
        CircuitNetlist back = parse_netlist(text);
        EXPECT_EQ(back, c);
        EXPECT_EQ(emit_netlist(back), text);
    }
}

TEST(netlist_text, comments_and_defaults) {
    auto c = parse_netlist("# header only\n\n  bs b c 0.25   # trailing\nps c -1e-3\n");
    EXPECT_EQ(c.mode_count, 3u);
    ASSERT_EQ(c.elements.size(), 2u);
    EXPECT_EQ(std::get<BeamSplitter>(c.elements[0]), (BeamSplitter{Path::B, Path::C, 0.25}));
    EXPECT_EQ(std::get<PhaseShifter>(c.elements[1]), (PhaseShifter{Path::C, -1e-3}));
}

TEST(netlist_text, errors_carry_line_numbers) {
    auto line_of = [](const std::string &text) -> size_t {
        try {
            parse_netlist(text);
        } catch (const NetlistParseError &e) {
            return e.line;
        }
        return 0;
    };
    EXPECT_EQ(line_of("modes 3\nbs a d 0.5\n"), 2u);
    EXPECT_EQ(line_of("modes 3\n\nbs a a 0.5\n"), 3u);
    EXPECT_EQ(line_of("bs a b 1.5\n"), 1u);
    EXPECT_EQ(line_of("modes 3\nhwp a 0.1\n"), 2u);
    EXPECT_EQ(line_of("modes 5\n"), 1u);
    EXPECT_EQ(line_of("ps a\n"), 1u);
    EXPECT_EQ(line_of("ps a 0.1x\n"), 1u);
    EXPECT_EQ(line_of("mirror a\n"), 1u);
    EXPECT_EQ(line_of("ps a 0\nmodes 6\n"), 2u);
    EXPECT_EQ(line_of("modes 6\npbs b\n"), 0u);
}
