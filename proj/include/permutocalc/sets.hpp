#pragma once
// Ground-set combinatorics: ordered partitions, shuffles, indexing maps,
// disjoint unions, the square operation, and the sign functions used by the
// diagonals.

#include <optional>
#include <string>
#include <vector>

namespace permutocalc {

using Block = std::vector<int>;   // sorted ascending, no duplicates

// {1,...,n}; n = 0 gives the empty set.
Block iota_set(int n);
// {lo,...,hi}
Block range_set(int lo, int hi);

bool is_sorted_set(const Block& b);
bool disjoint(const Block& a, const Block& b);
Block set_union(const Block& a, const Block& b);
Block set_minus(const Block& a, const Block& b);
Block set_intersect(const Block& a, const Block& b);

// An ordered partition: disjoint nonempty blocks, order of blocks significant.
struct OrderedPartition {
    std::vector<Block> blocks;

    bool operator==(const OrderedPartition&) const = default;
    Block ground() const;            // union of blocks, sorted
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int size() const;                // total number of elements
};

bool operator<(const OrderedPartition& a, const OrderedPartition& b);

struct Shuffle {
    Block left;
    Block right;
};

// All ordered partitions of `ground` (into exactly num_blocks blocks when
// given), each exactly once; canonical order: block-count ascending, then
// lexicographic on block contents.
std::vector<OrderedPartition> ordered_partitions(const Block& ground,
                                                 std::optional<int> num_blocks = std::nullopt);

// Sign of the permutation sending a sequence of distinct ints to sorted order.
int perm_sign(const std::vector<int>& word);

// Parity of the permutation sending sorted(left u right) to (left, right).
// Throws if the blocks overlap.
int shuffle_sign(const Shuffle& s);
int shuffle_sign(const Block& left, const Block& right);

// I_M: rank relabeling of A inside M (1-based); A must be a subset of M.
Block index_map(const Block& M, const Block& A);
// Inverse of I_M on local labels 1..#M.
Block index_unmap(const Block& M, const Block& local);
// M + z elementwise; throws if a result would be negative.
Block translate(const Block& M, int z);

// Lower and upper disjoint unions with respect to an ambient U containing A u B.
Block lower_union(const Block& A, const Block& B, const Block& U);
Block upper_union(const Block& A, const Block& B, const Block& U);

// A square (B_1|...|B_k): lower branch when max A < max U, upper otherwise.
OrderedPartition square_op(const Block& A, const std::vector<Block>& Bs);
// Direction-forced variants used by the iterated factorization tables.
OrderedPartition square_op_lower(const Block& A, const std::vector<Block>& Bs);
OrderedPartition square_op_upper(const Block& A, const std::vector<Block>& Bs);

// The four signs of a full ordered partition (head conventions are handled by
// the caller; blocks are taken as given).  psgn is the sign of the permutation
// from the sorted ground set to the concatenation of blocks.
struct PartitionSigns {
    int psgn;
    int sgn1;
    int sgn2;
    int rsgn;
};
PartitionSigns partition_signs(const OrderedPartition& a);

// eps1 = sum over blocks of (distance from last block) * block size.
long eps1_weight(const std::vector<Block>& blocks);

// Textual grammar: block ('|' block)*; elements joined bare when all < 10,
// comma-separated otherwise.
std::string format_block(const Block& b);
std::string format_partition(const OrderedPartition& p);
OrderedPartition parse_partition(const std::string& text);

// Ordered Bell number via the recurrence a(n) = sum C(n,k) a(n-k).
long long ordered_bell(int n);

}  // namespace permutocalc
