#include "doctest.h"
#include "permutocalc/diagonals.hpp"

#include <map>
#include <set>

using namespace permutocalc;

static PermFace pf(const std::string& s) { return parse_partition(s); }
static PcubeFace bf(const std::string& s, int n) { return parse_pcube(s, n); }

TEST_CASE("strong complementary pairs and streams") {
    // paper example in B_6: x = 0]2|1|3|6|5 with 4 deleted
    PcubeVertex x{{4}, {2, 1, 3, 6, 5}};
    auto s = orthogonal_stream_B(6, x);
    CHECK(format_pcube(s.u0) == "4]12|3|56");
    CHECK(s.u0.deleted.empty());
    CHECK(format_pcube(s.v0) == "2]136|5");
    CHECK(s.v0.deleted == Block{4});
    std::set<std::string> U, V;
    for (const auto& u : s.U) U.insert(format_pcube(u));
    for (const auto& v : s.V) V.insert(format_pcube(v));
    CHECK(U == std::set<std::string>{"0]12|34|56", "0]124|3|56", "4]12|3|56"});
    CHECK(V == std::set<std::string>{"2]136|5", "23]16|5", "26]13|5", "236]1|5"});
    // x = 0]1|...|n and x = 0]
    auto s1 = orthogonal_stream_B(3, PcubeVertex{{}, {1, 2, 3}});
    CHECK(s1.u0 == bf("0]1|2|3", 3));
    CHECK(s1.v0 == pcube_top(3));
    auto s0 = orthogonal_stream_B(3, PcubeVertex{{1, 2, 3}, {}});
    CHECK(s0.u0 == pcube_top(3));
    CHECK(s0.v0 == bf("0]", 3));
    // B_3 derived example: x = 0]2|1|3
    auto s2 = orthogonal_stream_B(3, PcubeVertex{{}, {2, 1, 3}});
    std::set<std::string> U2, V2;
    for (const auto& u : s2.U) U2.insert(format_pcube(u));
    for (const auto& v : s2.V) V2.insert(format_pcube(v));
    CHECK(U2 == std::set<std::string>{"0]12|3"});
    CHECK(V2 == std::set<std::string>{"2]13", "23]1"});
    // dimension complementarity
    for (int n = 1; n <= 4; ++n) {
        for (const auto& v : pcube_vertices(pcube_top(n))) {
            auto st = orthogonal_stream_B(n, v);
            CHECK(st.u0.dim() + st.v0.dim() == n);
            for (const auto& u : st.U)
                for (const auto& w : st.V) CHECK(u.dim() + w.dim() == n);
        }
    }
    for (int n = 2; n <= 5; ++n) {
        Word w = iota_set(n);
        do {
            auto st = orthogonal_stream_P(w);
            for (const auto& u : st.U)
                for (const auto& v : st.V)
                    CHECK(pface_dim(u) + pface_dim(v) == n - 1);
        } while (std::next_permutation(w.begin(), w.end()));
    }
}

TEST_CASE("golden diagonal of B_1 and B_2") {
    auto d1 = diagonal_B(pcube_top(1));
    std::map<std::string, long long> t1;
    for (const auto& t : d1) t1[format_pcube(t.left) + " (x) " + format_pcube(t.right)] = t.coeff;
    CHECK(t1 == std::map<std::string, long long>{{"0]1 (x) 1]", 1}, {"1] (x) 0]", 1}});

    auto d2 = diagonal_B(pcube_top(2));
    std::map<std::string, long long> t2;
    for (const auto& t : d2) t2[format_pcube(t.left) + " (x) " + format_pcube(t.right)] = t.coeff;
    std::map<std::string, long long> want{
        {"0]1|2 (x) 12]", 1}, {"0]12 (x) 2]1", -1}, {"0]12 (x) 1]", -1},
        {"2]1 (x) 1]", -1},   {"1]2 (x) 2]", 1},    {"12] (x) 0]", 1},
    };
    CHECK(t2 == want);
}

TEST_CASE("golden diagonal of B_3 support") {
    // stream-derived support; the printed table has three documented defects
    // (a duplicated row for x = 0]2|1|3, a mislabeled left term at x = 0]3|1|2,
    // and the missing row for x = 0]3|2|1)
    auto d3 = diagonal_B(pcube_top(3));
    std::set<std::string> got;
    for (const auto& t : d3) {
        CHECK((t.coeff == 1 || t.coeff == -1));
        got.insert(format_pcube(t.left) + " (x) " + format_pcube(t.right));
    }
    std::set<std::string> want{
        // 13 undisputed printed rows
        "0]1|2|3 (x) 123]",
        "0]12|3 (x) 2]13", "0]12|3 (x) 23]1",
        "0]1|23 (x) 13]2",
        "0]2|13 (x) 23]1",
        "0]12|3 (x) 13]", "2]1|3 (x) 13]",
        "2]13 (x) 3]1",
        "0]1|23 (x) 12]", "0]13|2 (x) 12]", "3]1|2 (x) 12]",
        "0]123 (x) 2]1", "3]12 (x) 2]1",
        "1]2|3 (x) 23]",
        "1]23 (x) 3]2",
        "0]123 (x) 1]", "3]12 (x) 1]", "2]13 (x) 1]", "23]1 (x) 1]",
        "1]23 (x) 2]", "13]2 (x) 2]",
        "12]3 (x) 3]",
        "123] (x) 0]",
        // the corrected x = 0]3|1|2 row (left stream is {0]13|2, 0]1|23})
        "0]13|2 (x) 3]12", "0]1|23 (x) 3]12",
        // the missing x = 0]3|2|1 row
        "0]123 (x) 3]2|1",
    };
    CHECK(got == want);
    CHECK(got.size() == 26);
}

TEST_CASE("chain map property of the diagonals") {
    for (int n = 1; n <= 5; ++n) {
        auto C = complex_P(n);
        auto T = tensor(C, C);
        std::map<std::string, PermFace> lookup;
        for (const auto& f : perm_faces(n)) lookup[pface_id(f)] = f;
        auto F = [&](const std::string& cell) { return diagonal_P_chain(lookup.at(cell)); };
        CHECK(chain_map_residual(F, C, T, 0, n - 1) == 0);
    }
    for (int n = 0; n <= 4; ++n) {
        auto C = complex_B(n);
        auto T = tensor(C, C);
        std::map<std::string, PcubeFace> lookup;
        for (const auto& f : pcube_faces(n)) lookup[bface_id(f)] = f;
        auto F = [&](const std::string& cell) { return diagonal_B_chain(lookup.at(cell)); };
        CHECK(chain_map_residual(F, C, T, 0, n) == 0);
    }
    for (int n = 1; n <= 4; ++n) {
        auto C = complex_I(n);
        auto T = tensor(C, C);
        std::map<std::string, CubeFace> lookup;
        for (const auto& c : cube_faces_all(n)) lookup[cube_id(c)] = c;
        auto F = [&](const std::string& cell) { return serre_diagonal_chain(lookup.at(cell)); };
        CHECK(chain_map_residual(F, C, T, 0, n) == 0);
    }
}

TEST_CASE("counit") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& f : pcube_faces(n)) {
            Chain left_counit, right_counit;
            for (const auto& t : diagonal_B(f)) {
                if (t.left.dim() == 0) right_counit.add(bface_id(t.right), t.coeff);
                if (t.right.dim() == 0) left_counit.add(bface_id(t.left), t.coeff);
            }
            Chain self;
            self.add(bface_id(f), 1);
            CHECK(left_counit == self);
            CHECK(right_counit == self);
        }
    }
}

TEST_CASE("embedding compatibility") {
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : perm_faces(n)) {
            auto dp = diagonal_P(g);
            auto db = diagonal_B(embed_perm_face(g));
            std::map<std::pair<std::string, std::string>, long long> a, b;
            for (const auto& t : dp) a[{pface_id(t.left), pface_id(t.right)}] = t.coeff;
            for (const auto& t : db) {
                auto l = as_perm_face(t.left);
                auto r = as_perm_face(t.right);
                REQUIRE(l.has_value());
                REQUIRE(r.has_value());
                b[{pface_id(*l), pface_id(*r)}] = t.coeff;
            }
            CHECK(a == b);
        }
    }
}

TEST_CASE("projection compatibility with the Serre diagonal") {
    // (rho x rho) Delta_P(top P_n) = Serre(I^{n-1})
    for (int n = 2; n <= 5; ++n) {
        std::map<std::pair<std::string, std::string>, long long> got, want;
        for (const auto& t : diagonal_P(PermFace{{iota_set(n)}})) {
            auto l = rho_pushforward(t.left);
            auto r = rho_pushforward(t.right);
            if (!l || !r) continue;
            got[{cube_id(l->cell), cube_id(r->cell)}] += t.coeff * l->deg * r->deg;
        }
        std::erase_if(got, [](const auto& kv) { return kv.second == 0; });
        for (const auto& t : serre_diagonal(CubeFace(n - 1, kFree)))
            want[{cube_id(t.left), cube_id(t.right)}] += t.coeff;
        CHECK(got == want);
    }
    // (phi x phi) Delta_B(top B_n) = Serre(I^n)
    for (int n = 1; n <= 4; ++n) {
        std::map<std::pair<std::string, std::string>, long long> got, want;
        for (const auto& t : diagonal_B(pcube_top(n))) {
            auto l = cube_pushforward(t.left);
            auto r = cube_pushforward(t.right);
            if (!l || !r) continue;
            got[{cube_id(l->cell), cube_id(r->cell)}] += t.coeff * l->deg * r->deg;
        }
        std::erase_if(got, [](const auto& kv) { return kv.second == 0; });
        for (const auto& t : serre_diagonal(CubeFace(n, kFree)))
            want[{cube_id(t.left), cube_id(t.right)}] += t.coeff;
        CHECK(got == want);
    }
    // the cube projection of B_n is a chain map on normalized chains
    for (int n = 1; n <= 4; ++n) {
        for (const auto& f : pcube_faces(n)) {
            auto img = cube_pushforward(f);
            Chain pushed;
            for (const auto& [g, s] : boundary_pcube_terms(f)) {
                auto r = cube_pushforward(g);
                if (r) pushed.add(cube_id(r->cell), static_cast<long long>(s) * r->deg);
            }
            if (img) {
                Chain want = boundary_cube(img->cell).scaled(img->deg);
                CHECK(pushed == want);
            }
        }
    }
}

TEST_CASE("pair sign spot values") {
    auto s = orthogonal_stream_B(2, PcubeVertex{{}, {1, 2}});
    CHECK(pair_sign_B(s.u0, s.v0, s.u0) == 1);
    auto s2 = orthogonal_stream_B(2, PcubeVertex{{}, {2, 1}});
    CHECK(pair_sign_B(s2.u0, s2.v0, s2.u0) == -1);
}

TEST_CASE("serre diagonal shape") {
    auto d0 = serre_diagonal(CubeFace{});
    REQUIRE(d0.size() == 1);
    CHECK(d0[0].coeff == 1);
    CHECK(serre_diagonal(CubeFace{kFree}).size() == 2);
    CHECK(serre_diagonal(CubeFace{kFree, kFree}).size() == 4);
}
