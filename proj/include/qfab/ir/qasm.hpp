// Copyright 2026 The qfab Authors
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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qfab/ir/dag.hpp"

namespace qfab::ir {

/// Parse the supported OpenQASM 2 subset.
///
/// Accepted: one `qreg`, any number of ignored `creg`s, `include`
/// (ignored), `gate` macro definitions (inlined, nesting capped at 16),
/// `barrier`, and the builtin gate names of `GateKind`. `riswap_<n>` and
/// `mirror_<name>` are recognised as native root-iSWAP and mirrored gates
/// even when the file also defines them as macros. `measure` statements are
/// dropped and reported through `warnings`.
///
/// Throws ParseError (with line and column) for syntax errors, unknown gate
/// names, calls to three-or-more-qubit builtins, and register redeclaration.
CircuitDag parse_qasm(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Free-form `// qfab-<key>: <value>` header comments of a QASM file.
std::map<std::string, std::string> read_qasm_metadata(std::string_view text);

/// Emit the dialect accepted by `parse_qasm`. Root-iSWAP and mirrored gates
/// are written as named macros whose bodies use only standard gates; a
/// header comment records each root n. Parameters are printed with 17
/// significant digits so serialize(parse(serialize(d))) == serialize(d).
///
/// `metadata` entries become `// qfab-<key>: <value>` header lines.
std::string serialize_qasm(const CircuitDag& dag,
                           const std::map<std::string, std::string>& metadata = {});

}  // namespace qfab::ir
