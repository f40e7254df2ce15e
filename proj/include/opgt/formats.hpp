#pragma once

// JSON encodings of the domain objects. Matrices use the json_io layout.
//
//   space   {"full": n}  or  {"ambient_dim": n, "basis": [m, ...], "exactness_bound": 1}
//   tensor  {"left": [m, ...], "right": [m, ...], "weights": [λ, ...]}   weights optional
//   form    {"left": space, "right": space, "coeffs": m}
//   ohmap   {"domain": space, "action": m}

#include "opgt/gtforms.hpp"
#include "opgt/json_io.hpp"
#include "opgt/ohmaps.hpp"
#include "opgt/opspace.hpp"

namespace opgt {

Json space_to_json(const OperatorSpace& e);
OperatorSpace space_from_json(const Json& j, const std::string& where);

Json tensor_to_json(const TensorRep& t);
TensorRep tensor_from_json(const Json& j, const std::string& where);

Json form_to_json(const BilinearForm& u);
BilinearForm form_from_json(const Json& j, const std::string& where);

Json ohmap_to_json(const OHMap& u);
OHMap ohmap_from_json(const Json& j, const std::string& where);

}  // namespace opgt
