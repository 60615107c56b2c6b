// Copyright 2026 The gct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>

#include "gct/diagram.hpp"

namespace gct {

// Line-oriented diagram format, version 1:
//
//   gct-diagram 1
//   signature qucirc
//   system Q self
//   inputs Q
//   outputs Q
//   node 0 box X phase=1.5707963267948966 in=Q out=Q dagger=X
//   node 1 spider white sys=Q in=1 out=1 phase=0
//   wire in:0 0.i0
//   wire 0.o0 1.i0
//   wire 1.o0 out:0
//   end
//
// Blank lines and lines starting with '#' are ignored by the parser. The
// printer emits the canonical form, for which parse then print is the
// identity.

constexpr int kFormatVersion = 1;

struct ParsedDiagram {
  std::string signature;
  Diagram diagram;
};

std::string print_diagram(const Diagram& d, const std::string& signature = "none");
/** Throws ParseError carrying the line and column of the problem. */
ParsedDiagram parse_diagram(std::string_view text);

std::string print_rule(const RewriteRule& rule,
                       const std::string& signature = "none");
RewriteRule parse_rule(std::string_view text);

}  // namespace gct
