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

#ifndef HARDY_NETLIST_TEXT_H
#define HARDY_NETLIST_TEXT_H

#include <stdexcept>
#include <string>
#include <string_view>

#include "hardy/optics.h"

namespace hardy {

/// Line-oriented netlist format:
///
///     # comment
///     modes 3
///     bs a b 0.5      beam splitter on (first, second) with reflectivity
///     ps a 0          phase shifter, radians
///     hwp a 0.785...  polarization rotator, radians
///     pbs a           polarizing splitter
///
/// Parameters are written in shortest round-trip form so parse(emit(x)) == x.
std::string emit_netlist(const CircuitNetlist &c, std::string_view title = "");

struct NetlistParseError : std::runtime_error {
    NetlistParseError(size_t line, const std::string &message);
    size_t line;
};

/// Throws NetlistParseError with the 1-based offending line.
CircuitNetlist parse_netlist(std::string_view text);

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace hardy

#endif
