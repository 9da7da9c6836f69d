#pragma once

#include "projposet/matrix.hpp"

#include <json.hpp>

namespace projposet {

/// Integers for prime fields, coefficient vectors (x^0 first) otherwise.
nlohmann::json element_to_json(const Field & field, Elem e);
Elem element_from_json(const Field & field, const nlohmann::json & j);

/// {"field": "p^k", "rows": [[...], ...]}
nlohmann::json matrix_to_json(const Matrix & m);
/// Accepts the encoding above; an empty "rows" needs an explicit "cols".
Matrix matrix_from_json(const nlohmann::json & j);

} // namespace projposet
