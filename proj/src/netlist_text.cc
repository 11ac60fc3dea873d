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

#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

namespace hardy {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) {
            k++;
        }
        size_t start = k;
        while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) {
            k++;
        }
        if (k > start) {
            words.push_back(line.substr(start, k - start));
        }
    }
    return words;
}

}  // namespace

NetlistParseError::NetlistParseError(size_t line, const std::string &message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {
}

std::string format_double(double x) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

std::string emit_netlist(const CircuitNetlist &c, std::string_view title) {
    std::stringstream out;
    if (!title.empty()) {
        out << "# " << title << "\n";
    }
    out << "modes " << c.mode_count << "\n";
    for (const auto &e : c.elements) {
        if (auto *bs = std::get_if<BeamSplitter>(&e)) {
            out << "bs " << path_char(bs->first) << " " << path_char(bs->second) << " "
                << format_double(bs->reflectivity) << "\n";
        } else if (auto *ps = std::get_if<PhaseShifter>(&e)) {
            out << "ps " << path_char(ps->path) << " " << format_double(ps->phase) << "\n";
        } else if (auto *hwp = std::get_if<PolarizationRotator>(&e)) {
            out << "hwp " << path_char(hwp->path) << " " << format_double(hwp->angle) << "\n";
        } else if (auto *pbs = std::get_if<PolarizingSplitter>(&e)) {
            out << "pbs " << path_char(pbs->path) << "\n";
        }
    }
    return out.str();
}

CircuitNetlist parse_netlist(std::string_view text) {
    CircuitNetlist c;
    bool seen_modes = false;
    size_t line_no = 0;
    while (!text.empty()) {
        line_no++;
        size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        if (size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto words = split_words(line);
        if (words.empty()) {
            continue;
        }

        auto fail = [&](const std::string &msg) -> NetlistParseError { return {line_no, msg}; };
        auto expect_args = [&](size_t n) {
            if (words.size() != n + 1) {
                throw fail("'" + std::string(words[0]) + "' takes " + std::to_string(n) + " argument(s), got " +
                           std::to_string(words.size() - 1) + ".");
            }
        };
        auto path = [&](std::string_view w) {
            if (w.size() != 1 || w[0] < 'a' || w[0] > 'c') {
                throw fail("bad path label '" + std::string(w) + "'.");
            }
            return path_from_char(w[0]);
        };
        auto number = [&](std::string_view w) {
            double x = 0;
            auto r = std::from_chars(w.data(), w.data() + w.size(), x);
            if (r.ec != std::errc() || r.ptr != w.data() + w.size()) {
                throw fail("bad number '" + std::string(w) + "'.");
            }
            return x;
        };

        std::string_view kind = words[0];
        if (kind == "modes") {
            expect_args(1);
            if (seen_modes || !c.elements.empty()) {
                throw fail("'modes' must appear once, before any element.");
            }
            if (words[1] == "3") {
                c.mode_count = 3;
            } else if (words[1] == "6") {
                c.mode_count = 6;
            } else {
                throw fail("mode count must be 3 or 6.");
            }
            seen_modes = true;
        } else if (kind == "bs") {
            expect_args(3);
            c.elements.push_back(BeamSplitter{path(words[1]), path(words[2]), number(words[3])});
        } else if (kind == "ps") {
            expect_args(2);
            c.elements.push_back(PhaseShifter{path(words[1]), number(words[2])});
        } else if (kind == "hwp") {
            expect_args(2);
            c.elements.push_back(PolarizationRotator{path(words[1]), number(words[2])});
        } else if (kind == "pbs") {
            expect_args(1);
            c.elements.push_back(PolarizingSplitter{path(words[1])});
        } else {
            throw fail("unknown element kind '" + std::string(kind) + "'.");
        }
        if (kind == "modes") {
            continue;
        }
        try {
            validate(CircuitNetlist{c.mode_count, {c.elements.back()}});
        } catch (const std::invalid_argument &e) {
            throw fail(e.what());
        }
    }
    return c;
}

}  // namespace hardy
