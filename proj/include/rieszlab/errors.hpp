/*
   Copyright 2026 The rieszlab Authors

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

#include <stdexcept>
#include <string>

namespace rieszlab {

/// A computed quantity violated a structural invariant (rank deficiency,
/// negative density, failed validation).  The CLI maps this to exit code 3,
/// as opposed to configuration errors which map to 2.
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rieszlab
