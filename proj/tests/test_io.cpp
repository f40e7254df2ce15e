#include <doctest.h>

#include "opgt/formats.hpp"
#include "opgt/json_io.hpp"
#include "opgt/random.hpp"
#include "opgt/report.hpp"

using namespace opgt;

TEST_SUITE("io") {
  TEST_CASE("matrix JSON round trip keeps complex entries") {
    Rng rng(1);
    const ComplexMatrix m = rng.gaussian(2, 3);
    const ComplexMatrix back = matrix_from_json(Json::parse(matrix_to_json(m).dump()), "m");
    CHECK((back - m).norm() == 0.0);
  }

  TEST_CASE("space, tensor, form and map round trips") {
    const OperatorSpace diag(2, {matrix_unit(2, 2, 0, 0), matrix_unit(2, 2, 1, 1)}, 2.0);
    const OperatorSpace d2 = space_from_json(space_to_json(diag), "s");
    CHECK(d2.dim() == 2);
    CHECK(d2.exactness_bound() == 2.0);
    CHECK(space_from_json(space_to_json(OperatorSpace::full(3)), "s").is_full_algebra());

    TensorRep t;
    t.left = {matrix_unit(2, 2, 0, 1)};
    t.right = {Complex(0, 1) * matrix_unit(2, 2, 1, 0)};
    t.weights = std::vector<double>{2.0};
    const TensorRep t2 = tensor_from_json(tensor_to_json(t), "t");
    CHECK((t2.kron_sum() - t.kron_sum()).norm() == 0.0);
    CHECK(t2.weights.has_value());

    const BilinearForm u = random_form(OperatorSpace::full(2), diag, 3);
    const BilinearForm u2 = form_from_json(form_to_json(u), "u");
    CHECK((u2.coeffs() - u.coeffs()).norm() == 0.0);

    const OHMap v = random_oh_map(OperatorSpace::full(2), 2, 4);
    CHECK((ohmap_from_json(ohmap_to_json(v), "v").action() - v.action()).norm() == 0.0);
  }

  TEST_CASE("malformed inputs name their location") {
    const Json bad = Json::parse(R"({"left": {"full": 2}, "right": {"full": 2}, "coeffs": [[1, 2]]})");
    try {
      form_from_json(bad, "form.json");
      FAIL("expected an InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("form.json") != std::string::npos);
    }
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]"), "m"), InputError);
    CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n", "phi.csv"), InputError);
    CHECK(matrix_from_csv("1,2\n3,4\n", "phi.csv")(1, 0) == Complex(3.0));
  }

  TEST_CASE("FNV-1a reference vectors") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }

  TEST_CASE("run configuration validation") {
    RunConfig c;
    c.validate();
    CHECK(c.tol("structural") == 1e-10);
    c.tolerances["optimization"] = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    RunConfig d;
    d.lambda_min = 3.0;
    CHECK_THROWS_AS(d.validate(), std::invalid_argument);
  }

  TEST_CASE("report digest ignores timing and tracks outcome") {
    Report a, b;
    a.command = b.command = "hnorm";
    a.results["value"] = b.results["value"] = 1.5;
    a.wall_seconds = 0.1;
    b.wall_seconds = 9.0;
    CHECK(a.to_json()["digest"] == b.to_json()["digest"]);
    a.check("ok", true);
    CHECK(a.exit_code() == 0);
    a.inconclusive();
    CHECK(a.exit_code() == 2);
    a.check("bad", false);
    CHECK(a.exit_code() == 1);
    CHECK(a.to_json()["digest"] != b.to_json()["digest"]);
  }

  TEST_CASE("constants") {
    const Json c = constants_json();
    CHECK(c.size() == 3);
  }
}
