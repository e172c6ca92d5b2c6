// Copyright 2026 The pbquad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PBQUAD_JSON_IO_HPP_INCLUDED
#define PBQUAD_JSON_IO_HPP_INCLUDED

#include <json.hpp>

#include "pbquad/pbf.hpp"

namespace pbquad {

nlohmann::ordered_json pbf_to_json(const Pbf& f);

/// Throws ParseError on schema violations, duplicate variables inside a term,
/// out-of-range ids or non-finite coefficients.
Pbf pbf_from_json(const nlohmann::json& doc);

} // namespace pbquad

#endif
