#include "doctest.h"
#include "permutocalc/perm.hpp"
#include <stdexcept>

#include <set>

using namespace permutocalc;

static PermFace pf(const std::string& s) { return parse_partition(s); }

TEST_CASE("face counts and euler characteristic") {
    CHECK(perm_faces(3, 0).size() == 6);
    CHECK(perm_faces(4, 0).size() == 24);
    CHECK(perm_faces(4, 1).size() == 36);
    CHECK(perm_faces(4, 2).size() == 14);
    CHECK(perm_faces(4, 3).size() == 1);
    CHECK(perm_faces(1).size() == 1);
    for (int n = 1; n <= 7; ++n) {
        long chi = 0;
        for (const auto& f : perm_faces(n)) chi += pface_dim(f) % 2 ? -1 : 1;
        CHECK(chi == 1);
    }
}

TEST_CASE("projection Delta_{r,s} on vertices and faces") {
    auto [a, b] = project_rs_vertex({2, 4, 1, 3}, 2, 3);
    CHECK(a == Word{2, 1});
    CHECK(b == Word{1, 3, 2});   // 2|4|3 relabeled over {2,3,4}
    auto [c, d] = project_rs_vertex({2, 4, 1, 3}, 3, 2);
    CHECK(c == Word{2, 1, 3});
    CHECK(d == Word{2, 1});      // 4|3 relabeled over {3,4}
    // Figure 3: Delta_{2,2} on P_3 edges
    auto e1 = project_rs(pf("1|23"), 2, 2);
    CHECK(e1.factors[0] == pf("1|2"));
    CHECK(e1.factors[1] == pf("23"));
    CHECK_FALSE(e1.degenerate);
    auto e2 = project_rs(pf("13|2"), 2, 2);
    CHECK(e2.factors[0] == pf("1|2"));
    CHECK(e2.factors[1] == pf("3|2"));
    CHECK(e2.degenerate);
    CHECK_THROWS(project_rs(pf("123"), 2, 3));
}

TEST_CASE("multi projection and coassociativity") {
    auto t = project_multi(pf("1234"), {2, 2, 2});
    CHECK(format_product(t) == "12x23x34");
    CHECK_FALSE(t.degenerate);
    // identity convention
    auto id = project_multi(pf("123"), {3});
    CHECK(id.factors[0] == pf("123"));
    // (Delta_{r,s} x 1) Delta_{r+s-1,t} = (1 x Delta_{s,t}) Delta_{r,s+t-1} on vertices
    for (int n = 3; n <= 6; ++n) {
        for (int r = 1; r <= n; ++r)
            for (int s = 1; s + r <= n + 1; ++s) {
                int t3 = n + 2 - r - s;
                if (t3 < 1) continue;
                Word w = iota_set(n);
                do {
                    auto [x, rest] = project_rs_vertex(w, r + s - 1, t3);
                    auto [x1, x2] = project_rs_vertex(x, r, s);
                    auto [y1, yz] = project_rs_vertex(w, r, s + t3 - 1);
                    auto [y2, y3] = project_rs_vertex(yz, s, t3);
                    CHECK(x1 == y1);
                    CHECK(x2 == y2);
                    CHECK(rest == y3);
                } while (std::next_permutation(w.begin(), w.end()));
            }
    }
}

TEST_CASE("rho and gamma") {
    CHECK(gamma_vertex({1, 1, 0}) == Word{3, 2, 1, 4});
    CHECK(rho_vertex({2, 4, 1, 3}) == std::vector<int>{1, 0, 1});
    for (int n = 2; n <= 6; ++n) {
        // rho o gamma is the identity on the cube
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> bits;
            for (int i = 0; i < n - 1; ++i) bits.push_back((mask >> i) & 1);
            CHECK(rho_vertex(gamma_vertex(bits)) == bits);
        }
        // gamma o rho fixes exactly the cubical vertices
        std::set<Word> cubical;
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
            std::vector<int> bits;
            for (int i = 0; i < n - 1; ++i) bits.push_back((mask >> i) & 1);
            cubical.insert(gamma_vertex(bits));
        }
        Word w = iota_set(n);
        do {
            bool fixed = gamma_vertex(rho_vertex(w)) == w;
            CHECK(fixed == (cubical.count(w) > 0));
        } while (std::next_permutation(w.begin(), w.end()));
    }
}

TEST_CASE("embedding h and projection phi") {
    auto [f1, f2] = embed_h({1, 4}, {2, 3});
    CHECK(f1 == pf("1|4|23"));
    CHECK(f2 == pf("14|2|3"));
    auto [g1, g2] = embed_h({4}, {1, 2, 3});
    CHECK(g1 == pf("4|123"));
    CHECK(g2 == pf("4|1|2|3"));
    CHECK_THROWS(embed_h({1}, {2, 4}));
    // phi_{A|B} o h_{A|B} = 1
    for (int n = 2; n <= 5; ++n) {
        Block g = iota_set(n);
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            Block A, B;
            for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? A : B).push_back(g[i]);
            auto [l, m] = h_factor_sizes(A, B);
            Word x = iota_set(l);
            do {
                Word y = iota_set(m);
                do {
                    Word w = h_vertex(A, B, x, y);
                    auto [px, py] = phi_vertex(A, B, w);
                    CHECK(px == x);
                    CHECK(py == y);
                } while (std::next_permutation(y.begin(), y.end()));
            } while (std::next_permutation(x.begin(), x.end()));
        }
    }
    // phi_{13|2} of vertex 1|3|2 in P_3
    // first factor is the side not containing n = 3, here B = {2}
    auto [u, v] = phi_vertex({1, 3}, {2}, {1, 3, 2});
    CHECK(u == Word{1});
    CHECK(v == Word{1, 2});
}

TEST_CASE("coface and codegeneracy") {
    // delta_{A|B}(top of P_{n-1}) = face A|B
    for (int n = 2; n <= 5; ++n) {
        Block g = iota_set(n);
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            Block A, B;
            for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? A : B).push_back(g[i]);
            PermFace top{{iota_set(n - 1)}};
            auto img = coface_face(A, B, top);
            CHECK(img.face == PermFace{{A, B}});
            CHECK_FALSE(img.degenerate);
        }
    }
    // Figure 6 vertex relations on P_3
    auto dd = [](const Block& A1, const Block& B1, const Block& A2, const Block& B2) {
        return coface_vertex(A2, B2, coface_vertex(A1, B1, {1}));
    };
    CHECK(dd({1}, {2}, {1, 2}, {3}) == dd({1}, {2}, {1}, {2, 3}));
    CHECK(dd({1}, {2}, {1, 3}, {2}) == dd({2}, {1}, {1}, {2, 3}));
    CHECK(dd({2}, {1}, {1, 3}, {2}) == dd({1}, {2}, {3}, {1, 2}));
    CHECK(dd({1}, {2}, {2}, {1, 3}) == dd({2}, {1}, {1, 2}, {3}));
    CHECK(dd({2}, {1}, {2}, {1, 3}) == dd({1}, {2}, {2, 3}, {1}));
    CHECK(dd({2}, {1}, {2, 3}, {1}) == dd({2}, {1}, {3}, {1, 2}));
    CHECK(dd({1}, {2}, {1, 2}, {3}) == Word{1, 2, 3});
    // delta_{12|34} delta_{13|2} is constant on P_2
    Word w1 = coface_vertex({1, 2}, {3, 4}, coface_vertex({1, 3}, {2}, {1, 2}));
    Word w2 = coface_vertex({1, 2}, {3, 4}, coface_vertex({1, 3}, {2}, {2, 1}));
    CHECK(w1 == w2);
    // beta is a left inverse on the h-image of cubical vertices
    CHECK(codegeneracy_vertex({1, 3}, {2, 4}, coface_vertex({1, 3}, {2, 4}, {1, 2, 3})) ==
          Word{1, 2, 3});
}

TEST_CASE("multipermutahedral action and Q membership") {
    // paper example: A|B = 1234|56 in the (4,3) product acts as 1 x d_{1|23}
    PermFace prod = pf("1234|567");   // top product cell of P_4 x P_3
    auto g = act_face({1, 2, 3, 4}, {5, 6}, prod);
    REQUIRE(g.has_value());
    CHECK(*g == pf("1234|5|67"));
    // membership error for the decomposition
    CHECK_THROWS_WITH_AS(decompose_klmncd({1, 2, 3, 4}, {5, 6}, 6, 4, 3),
                         "decomposition not applicable: A|B is in some Q",
                         std::invalid_argument);
    // K|L lands in Q_{p_1,q_1}(n) with a proper split of the r-factor, for all
    // A|B outside every Q, exhaustively n <= 6
    for (int n = 3; n <= 6; ++n) {
        for (int r = 2; r < n; ++r) {
            int s = n + 1 - r;
            if (s < 2) continue;
            Block gset = iota_set(n);
            for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
                Block A, B;
                for (int i = 0; i < n; ++i) ((mask >> i) & 1 ? A : B).push_back(gset[i]);
                if (q_split(A, B, {r - 1, s - 1})) continue;
                auto contains = [](const Block& big, const Block& sml) {
                    return std::includes(big.begin(), big.end(), sml.begin(), sml.end());
                };
                Block ur = iota_set(r), ov = range_set(n - s + 1, n);
                if (contains(A, ur) || contains(B, ur) || contains(A, ov) || contains(B, ov))
                    continue;   // improper alignment, productd1 branches handle these
                auto dec = decompose_klmncd(A, B, n, r, s);
                auto sp = q_split(dec.kl.blocks[0], dec.kl.blocks[1], {r - 1, s - 1});
                REQUIRE(sp.has_value());
                CHECK(sp->factor == 0);
            }
        }
    }
}

TEST_CASE("product face operator branches") {
    // Q_{1,s}: acts on the left factor only
    auto r1 = product_face_op({1, 2}, {3, 4, 5}, pf("123"), pf("123"));
    CHECK(r1.kind == ProductAction::Kind::Left);
    CHECK(r1.result.factors[0] == pf("12|3"));
    CHECK(r1.result.factors[1] == pf("123"));
    // Q_{r,1}: acts on the right factor with translation by 1-r
    auto r2 = product_face_op({1, 2, 3}, {4, 5}, pf("123"), pf("123"));
    CHECK(r2.kind == ProductAction::Kind::Right);
    CHECK(r2.result.factors[0] == pf("123"));
    CHECK(r2.result.factors[1] == pf("1|23"));
    // otherwise: reports the decomposition
    auto r3 = product_face_op({1, 4}, {2, 3}, pf("12"), pf("123"));
    CHECK(r3.kind == ProductAction::Kind::Degenerate);
    CHECK(r3.kl == pf("1|234"));
}

TEST_CASE("two-way factorization") {
    auto [s1, s2] = factorize_two_ways(pf("12|345|678"));
    REQUIRE(s1.size() == 2);
    CHECK(s1[0] == std::pair<Block, Block>{{1, 2}, {3, 4, 5, 6, 7, 8}});
    CHECK(s1[1] == std::pair<Block, Block>{{1, 2, 3, 4}, {5, 6, 7}});
    CHECK(s2[0] == std::pair<Block, Block>{{1, 2, 3, 4, 5}, {6, 7, 8}});
    CHECK(s2[1] == std::pair<Block, Block>{{1, 2}, {3, 4, 5, 6, 7}});
    auto [t1, t2] = factorize_two_ways(pf("345|12|678"));
    CHECK(t1[0] == std::pair<Block, Block>{{3, 4, 5}, {1, 2, 6, 7, 8}});
    CHECK(t1[1] == std::pair<Block, Block>{{1, 2, 3, 4}, {5, 6, 7}});
    CHECK(t2[0] == std::pair<Block, Block>{{1, 2, 3, 4, 5}, {6, 7, 8}});
    CHECK(t2[1] == std::pair<Block, Block>{{3, 4, 5, 6, 7}, {1, 2}});
    // both words land on the face p, exhaustively n <= 6
    for (int n = 2; n <= 6; ++n) {
        PermFace top{{iota_set(n)}};
        for (const auto& p : perm_faces(n)) {
            if (p.num_blocks() < 2) continue;
            auto [w1, w2] = factorize_two_ways(p);
            auto f1 = apply_d_word(w1, top);
            auto f2 = apply_d_word(w2, top);
            REQUIRE(f1.has_value());
            REQUIRE(f2.has_value());
            CHECK(*f1 == p);
            CHECK(*f2 == p);
        }
    }
}

TEST_CASE("quadratic relation on top cells") {
    for (int n = 3; n <= 6; ++n) {
        PermFace top{{iota_set(n)}};
        for (const auto& p : perm_faces(n)) {
            if (p.num_blocks() != 3) continue;
            const Block &A = p.blocks[0], &B = p.blocks[1], &C = p.blocks[2];
            auto left_inner = square_op_lower(A, {B, C});
            auto right_inner = square_op_upper(C, {A, B});
            auto f1 = apply_d_word({{A, set_union(B, C)},
                                    {left_inner.blocks[0], left_inner.blocks[1]}},
                                   top);
            auto f2 = apply_d_word({{set_union(A, B), C},
                                    {right_inner.blocks[0], right_inner.blocks[1]}},
                                   top);
            REQUIRE(f1.has_value());
            REQUIRE(f2.has_value());
            CHECK(*f1 == p);
            CHECK(*f2 == p);
        }
    }
}
