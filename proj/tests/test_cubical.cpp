#include "doctest.h"
#include "permutocalc/cubical.hpp"

using namespace permutocalc;

TEST_CASE("fixtures satisfy the cubical identities") {
    auto q1 = fixture_cube2();
    CHECK(q1.validate(5) > 0);
    auto q2 = fixture_synthetic23();
    CHECK(q2.validate(5) > 0);
    CHECK(q1.cells(0).size() == 1);
    CHECK(q1.cells(1).size() == 1);
    CHECK(q2.cells(2).size() == 2);   // x and the degenerate 2-cell
}

TEST_CASE("degeneracy normal form") {
    auto q = fixture_cube2();
    CubCell pt{"*", {}};
    // eta_1 eta_1 = eta_2 eta_1
    CHECK(q.eta(1, q.eta(1, pt)) == q.eta(2, q.eta(1, pt)));
    // d_j eta_j = id
    auto c = q.eta(1, CubCell{"c", {}});
    for (int e : {0, 1}) CHECK(q.face(e, 1, c) == CubCell{"c", {}});
    // face of a degenerate cell
    auto dp2 = q.degenerate_point(2);
    CHECK(q.dim(dp2) == 2);
    CHECK(q.face(0, 1, dp2) == q.degenerate_point(1));
}

TEST_CASE("json round trip") {
    auto q = fixture_synthetic23();
    auto text = cubical_to_json(q);
    auto q2 = cubical_from_json(text);
    CHECK(q2.nd_dim == q.nd_dim);
    CHECK(q2.d0.at("y") == q.d0.at("y"));
    CHECK(q2.d1.at("y") == q.d1.at("y"));
    CHECK(q2.validate(4) > 0);
}
