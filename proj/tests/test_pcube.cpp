#include "doctest.h"
#include "permutocalc/pcube.hpp"

#include <map>
#include <set>

using namespace permutocalc;

TEST_CASE("face lattice of B_n") {
    auto fs = pcube_faces(2);
    std::map<int, int> by_dim;
    for (const auto& f : fs) by_dim[f.dim()]++;
    CHECK(by_dim[0] == 5);
    CHECK(by_dim[1] == 5);
    CHECK(by_dim[2] == 1);
    std::set<std::string> v0, v1;
    for (const auto& f : pcube_faces(2, 0)) v0.insert(format_pcube(f));
    CHECK(v0 == std::set<std::string>{"0]1|2", "0]2|1", "0]1", "0]2", "0]"});
    for (const auto& f : pcube_faces(2, 1)) v1.insert(format_pcube(f));
    CHECK(v1 == std::set<std::string>{"0]12", "2]1", "1]2", "1]", "2]"});
    // B_1: endpoints 0]1 and 0], top cell 01]
    auto b1 = pcube_faces(1);
    CHECK(b1.size() == 3);
    for (int n = 0; n <= 6; ++n) {
        long chi = 0;
        for (const auto& f : pcube_faces(n)) chi += f.dim() % 2 ? -1 : 1;
        CHECK(chi == 1);
    }
}

TEST_CASE("parsing and printing") {
    auto f = parse_pcube("04]12|3|56", 6);
    CHECK(f.deleted.empty());
    CHECK(f.blocks[0] == Block{0, 4});
    CHECK(format_pcube(f) == "4]12|3|56");   // printer drops the head 0
    auto g = parse_pcube("2]1", 2);        // deleted implicit: none mentioned -> complement
    CHECK(g.deleted.empty());
    CHECK(g.blocks[0] == Block{0, 2});
    auto h = parse_pcube("1]", 2);         // 01] with 2 deleted
    CHECK(h.deleted == Block{2});
    auto e = parse_pcube("12]", 2);        // accepts the dropped-zero head form
    CHECK(e == pcube_top(2));
    auto ex = parse_pcube("012]", 2);      // and the explicit one
    CHECK(ex == pcube_top(2));
    auto withdel = parse_pcube("4;026]13|57", 7);
    CHECK(withdel.deleted == Block{4});
    CHECK_THROWS(parse_pcube("0]1|1", 2));
}

TEST_CASE("face operators and relations") {
    // paper example: u = 038]14|6|79 in B_9 via its canonical operator word
    auto u = parse_pcube("38]14|6|79", 9);
    CHECK(u.deleted == Block{2, 5});
    auto lbl = decompose_label(u);
    CHECK(lbl.deleted_word == Block{2, 5});
    REQUIRE(lbl.partition.size() == 4);
    CHECK(lbl.partition[0] == Block{0, 2, 6});
    CHECK(lbl.partition[1] == Block{1, 3});
    CHECK(lbl.partition[2] == Block{4});
    CHECK(lbl.partition[3] == Block{5, 7});
    CHECK(apply_label(9, lbl) == u);
    // spelled out: d_{024]13} d_{1235]4} d_{12346]57} d_2 d_5 (top)
    auto f = pcube_top(9);
    f = face_op_i(5, f);
    f = face_op_i(2, f);
    f = face_op_am({0, 1, 2, 3, 4, 6}, {5, 7}, f);
    f = face_op_am({0, 1, 2, 3, 5}, {4}, f);
    f = face_op_am({0, 2, 4}, {1, 3}, f);
    CHECK(f == u);
    // round-trip on all faces, n <= 5
    for (int n = 0; n <= 5; ++n)
        for (const auto& g : pcube_faces(n)) CHECK(apply_label(n, decompose_label(g)) == g);
    // d_{0]underline n}(top) is the permutahedral facet
    auto pf3 = face_op_am({0}, {1, 2, 3}, pcube_top(3));
    CHECK(format_pcube(pf3) == "0]123");
    CHECK(as_perm_face(pf3).has_value());
}

TEST_CASE("permutocubical relations on faces") {
    // d_i d_j = d_{j-1} d_i for i < j, all faces, n <= 5
    for (int n = 2; n <= 5; ++n) {
        for (const auto& f : pcube_faces(n)) {
            int m = static_cast<int>(f.head_survivors().size());
            for (int j = 2; j <= m; ++j)
                for (int i = 1; i < j; ++i)
                    CHECK(face_op_i(i, face_op_i(j, f)) == face_op_i(j - 1, face_op_i(i, f)));
        }
    }
    // d_i d_{A]M} = d_{A\j]M} d_j with i = I_{underline p \ A}(j)
    for (int n = 2; n <= 5; ++n) {
        for (const auto& f : pcube_faces(n)) {
            int m = static_cast<int>(f.head_survivors().size());
            if (m < 2) continue;
            Block local = iota_set(m);
            for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
                Block M, A{0};
                for (int i = 0; i < m; ++i) ((mask >> i) & 1 ? M : A).push_back(local[i]);
                Block Anz = set_minus(A, {0});
                for (int j : Anz) {
                    // local index of j among the survivors of the new head
                    Block rest = set_minus(local, M);
                    Block restnz = set_minus(rest, {0});
                    int i_loc = static_cast<int>(
                        std::lower_bound(restnz.begin(), restnz.end(), j) - restnz.begin() + 1);
                    auto lhs = face_op_i(i_loc, face_op_am(A, M, f));
                    // d_j first: relabel A\j and M over the reduced head
                    auto fj = face_op_i(static_cast<int>(std::lower_bound(local.begin(), local.end(), j) -
                                                         local.begin()) + 1,
                                        f);
                    Block red = set_minus(local, {j});
                    auto relab = [&](const Block& S) {
                        Block out;
                        for (int x : S) {
                            if (x == 0) { out.push_back(0); continue; }
                            out.push_back(static_cast<int>(
                                std::lower_bound(red.begin(), red.end(), x) - red.begin()) + 1);
                        }
                        return out;
                    };
                    auto rhs = face_op_am(relab(set_minus(A, {j})), relab(M), fj);
                    CHECK(lhs == rhs);
                }
            }
        }
    }
    // d_i d_{M1|M2} = d_{M1|M2} d_i
    for (int n = 2; n <= 4; ++n) {
        for (const auto& f : pcube_faces(n)) {
            int m = static_cast<int>(f.head_survivors().size());
            int q = fiber_grading(f);
            if (m < 1 || q < 2) continue;
            for (const auto& p : ordered_partitions(iota_set(q), 2)) {
                auto lhs0 = face_op_perm(p.blocks[0], p.blocks[1], f);
                for (int i = 1; i <= m; ++i) {
                    auto rhs0 = face_op_perm(p.blocks[0], p.blocks[1], face_op_i(i, f));
                    if (lhs0.has_value() != rhs0.has_value()) {
                        CHECK(lhs0.has_value() == rhs0.has_value());
                        continue;
                    }
                    if (lhs0) CHECK(face_op_i(i, *lhs0) == *rhs0);
                }
            }
        }
    }
    // d_{K|L} d_{A]M}: both branch identities, on faces with fiber ops in play
    for (int n = 2; n <= 5; ++n) {
        for (const auto& f : pcube_faces(n)) {
            int m = static_cast<int>(f.head_survivors().size());
            if (m < 1) continue;
            int q = fiber_grading(f);
            Block local = iota_set(m);
            for (unsigned mask = 1; mask < (1u << m); ++mask) {
                Block M, A{0};
                for (int i = 0; i < m; ++i) ((mask >> i) & 1 ? M : A).push_back(local[i]);
                int r = static_cast<int>(M.size());
                int qr = q + r - 1;
                auto g = face_op_am(A, M, f);
                auto contains = [](const Block& big, const Block& sml) {
                    return std::includes(big.begin(), big.end(), sml.begin(), sml.end());
                };
                for (const auto& p : ordered_partitions(iota_set(qr), 2)) {
                    const Block &K = p.blocks[0], &L = p.blocks[1];
                    Block under_r = iota_set(r);
                    Block over_q = range_set(r, qr);   // the old fiber region
                    Block Kr = set_intersect(K, under_r), Lr = set_intersect(L, under_r);
                    if (!Kr.empty() && !Lr.empty() &&
                        (contains(K, range_set(r, qr)) || contains(L, range_set(r, qr)))) {
                        // branch: K|L splits the new M-block
                        auto lhs = face_op_perm(K, L, g);
                        Block Khat = index_unmap(M, Kr), Lhat = index_unmap(M, Lr);
                        // first split off the L-part, then the K-part
                        auto step1 = face_op_am(set_union(A, Khat), Lhat, f);
                        // lift to global labels, then into step1's head frame
                        Block hsf = f.head_survivors();
                        auto lift = [&](const Block& S) {
                            Block out;
                            for (int x : S) out.push_back(x == 0 ? 0 : hsf[x - 1]);
                            std::sort(out.begin(), out.end());
                            return out;
                        };
                        Block hs1 = step1.head_survivors();
                        auto relab = [&](const Block& S) {
                            Block out;
                            for (int x : S) {
                                if (x == 0) { out.push_back(0); continue; }
                                out.push_back(static_cast<int>(
                                    std::lower_bound(hs1.begin(), hs1.end(), x) - hs1.begin()) + 1);
                            }
                            return out;
                        };
                        auto rhs = face_op_am(relab(lift(A)), relab(lift(Khat)), step1);
                        REQUIRE(lhs.has_value());
                        CHECK(*lhs == rhs);
                    }
                    if (q >= 2 && (contains(K, under_r) || contains(L, under_r))) {
                        // branch: K|L acts on the old fiber, translated by 1-r
                        auto lhs = face_op_perm(K, L, g);
                        Block Kt = translate(set_intersect(K, over_q), 1 - r);
                        Block Lt = translate(set_intersect(L, over_q), 1 - r);
                        auto inner = face_op_perm(Kt, Lt, f);
                        CHECK(lhs.has_value() == inner.has_value());
                        if (lhs && inner) CHECK(*lhs == face_op_am(A, M, *inner));
                    }
                }
            }
        }
    }
}

TEST_CASE("embedding and cube projection") {
    CHECK(format_pcube(embed_perm_face(parse_partition("1|23"))) == "0]1|23");
    // embedding is injective, dimension preserving, intertwines face operators
    for (int n = 1; n <= 4; ++n) {
        for (const auto& g : perm_faces(n)) {
            auto e = embed_perm_face(g);
            CHECK(e.dim() == pface_dim(g));
            CHECK(as_perm_face(e) == g);
            int q = pface_dim(g) + 1;
            if (q >= 2) {
                for (const auto& p : ordered_partitions(iota_set(q), 2)) {
                    auto dg = act_face(p.blocks[0], p.blocks[1], g);
                    auto de = face_op_perm(p.blocks[0], p.blocks[1], e);
                    CHECK(dg.has_value() == de.has_value());
                    if (dg && de) CHECK(embed_perm_face(*dg) == *de);
                }
            }
        }
    }
    // projection identifications
    auto c1 = project_to_cube(parse_pcube("2]1", 2));   // head {0,2}, tail {1}
    REQUIRE(c1.has_value());
    CHECK(*c1 == CubeFace{0, kFree});                   // the d^0_1 face
    auto c2 = project_to_cube(parse_pcube("1]", 2));    // deleted {2}
    REQUIRE(c2.has_value());
    CHECK(*c2 == CubeFace{kFree, 1});
    CHECK_FALSE(project_to_cube(parse_pcube("0]12", 2)).has_value());
    // cell structure
    auto s = cell_structure(parse_pcube("0]12", 2));
    CHECK(s.base_m == 0);
    REQUIRE(s.factor_grounds.size() == 1);
    CHECK(s.factor_grounds[0] == Block{1, 2});
    auto s2 = cell_structure(parse_pcube("01]", 2));
    CHECK(s2.base_m == 1);
    CHECK(s2.factor_grounds.empty());
    auto s3 = cell_structure(pcube_top(3));
    CHECK(s3.base_m == 3);
}
