#include "opgt/formats.hpp"

namespace opgt {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InputError(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class F>
auto wrap(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(where, e.what());
  }
}

}  // namespace

Json space_to_json(const OperatorSpace& e) {
  if (e.is_full_algebra() && e.exactness_bound() == 1.0) return Json{{"full", e.ambient_dim()}};
  return Json{{"ambient_dim", e.ambient_dim()},
              {"basis", matrices_to_json(e.basis())},
              {"exactness_bound", e.exactness_bound()}};
}

OperatorSpace space_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("full")) {
    const Json& n = j.at("full");
    if (!n.is_number_integer() || n.get<long>() < 1) throw InputError(where + "/full", "expected a positive integer");
    return OperatorSpace::full(n.get<long>());
  }
  const Json& n = field(j, "ambient_dim", where);
  if (!n.is_number_integer() || n.get<long>() < 1) throw InputError(where + "/ambient_dim", "expected a positive integer");
  auto basis = matrices_from_json(field(j, "basis", where), where + "/basis");
  double ex = 1.0;
  if (j.contains("exactness_bound")) {
    if (!j.at("exactness_bound").is_number()) throw InputError(where + "/exactness_bound", "expected a number");
    ex = j.at("exactness_bound").get<double>();
  }
  return wrap(where, [&] { return OperatorSpace(n.get<long>(), std::move(basis), ex); });
}

Json tensor_to_json(const TensorRep& t) {
  Json j{{"left", matrices_to_json(t.left)}, {"right", matrices_to_json(t.right)}};
  if (t.weights) j["weights"] = *t.weights;
  return j;
}

TensorRep tensor_from_json(const Json& j, const std::string& where) {
  TensorRep t;
  t.left = matrices_from_json(field(j, "left", where), where + "/left");
  t.right = matrices_from_json(field(j, "right", where), where + "/right");
  if (j.contains("weights")) {
    const RealVector w = real_vector_from_json(j.at("weights"), where + "/weights");
    t.weights = std::vector<double>(w.data(), w.data() + w.size());
  }
  wrap(where, [&] {
    t.validate();
    return 0;
  });
  return t;
}

Json form_to_json(const BilinearForm& u) {
  return Json{{"left", space_to_json(u.left())},
              {"right", space_to_json(u.right())},
              {"coeffs", matrix_to_json(u.coeffs())}};
}

BilinearForm form_from_json(const Json& j, const std::string& where) {
  OperatorSpace e = space_from_json(field(j, "left", where), where + "/left");
  OperatorSpace f = space_from_json(field(j, "right", where), where + "/right");
  ComplexMatrix c = matrix_from_json(field(j, "coeffs", where), where + "/coeffs");
  return wrap(where, [&] { return BilinearForm(std::move(e), std::move(f), std::move(c)); });
}

Json ohmap_to_json(const OHMap& u) {
  return Json{{"domain", space_to_json(u.domain())}, {"action", matrix_to_json(u.action())}};
}

OHMap ohmap_from_json(const Json& j, const std::string& where) {
  OperatorSpace e = space_from_json(field(j, "domain", where), where + "/domain");
  ComplexMatrix a = matrix_from_json(field(j, "action", where), where + "/action");
  return wrap(where, [&] { return OHMap(std::move(e), std::move(a)); });
}

}  // namespace opgt
