#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gammak/fincat.hpp"
#include "gammak/wald.hpp"
#include "gammak/report.hpp"

namespace gammak {

using Int = mpz_class;

/* Dense integer matrix with exact arithmetic. */
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, Int(0)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    bool operator==(const IntMatrix&) const = default;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Int> data_;
};

/* Nonzero diagonal of the Smith normal form: positive d_1 | d_2 | ... | d_r
 * under unimodular row/column transforms (trailing zeros are not listed).
 * The result is cross-checked against the gcd-of-minors invariants whenever
 * the matrix is at most 4x4. */
struct SmithResult {
    std::vector<Int> diagonal;      // length rank
    int rank = 0;
};
SmithResult smith_normal_form(const IntMatrix& m);

/* Independent route: d_1 * ... * d_k = gcd of all k x k minors. Intended
 * for small matrices (determinants by Laplace expansion). */
std::vector<Int> gcd_of_minors_invariants(const IntMatrix& m);

/* Finitely generated abelian group as free rank plus invariant factors
 * (each > 1, each dividing the next). */
struct AbGroupInvariants {
    int rank = 0;
    std::vector<Int> torsion;
    bool operator==(const AbGroupInvariants&) const = default;
    std::string describe() const;
};
/* Cokernel of the row space: Z^cols / <rows of m>. */
AbGroupInvariants cokernel_invariants(const IntMatrix& m);

/* Finite commutative monoid on elements 0..size-1. */
struct FinCommMonoid {
    int size = 0;
    int unit = 0;
    std::vector<int> table;   // table[a*size+b]
    std::vector<std::string> labels;
    int op(int a, int b) const { return table[static_cast<std::size_t>(a) * size + b]; }
};
Report validate_monoid(const FinCommMonoid& m);

/* Components of the base category under zigzags of morphisms, with the
 * tensor-induced operation. Fails loudly (via the Report out-parameter)
 * if the operation is not well defined on classes. */
FinCommMonoid pi0_monoid(const FinPermCat& pcat, Report* report = nullptr);

/* Group completion via generators [a] with relations [a]+[b]-[a.b] and
 * [unit], computed by Smith normal form of the relation matrix. */
AbGroupInvariants grothendieck_group(const FinCommMonoid& m);

/* Independent oracle: the pair construction K(M) = (M x M)/~ with
 * (a,b) ~ (c,d) iff a+d+k = c+b+k for some k. Returns the group order and,
 * for each m in 1..order, the number of elements killed by m. Two finite
 * abelian groups are isomorphic iff these data agree. */
struct PairConstructionGroup {
    int order = 0;
    std::vector<std::int64_t> kill_counts;   // index m-1: #{x : m*x = 0}
};
PairConstructionGroup grothendieck_pairs_oracle(const FinCommMonoid& m);
/* Check a rank-0 invariant description against the oracle data. */
bool matches_oracle(const AbGroupInvariants& inv, const PairConstructionGroup& g,
                    std::string* why = nullptr);

AbGroupInvariants k0_segal(const FinPermCat& pcat, Report* report = nullptr);
AbGroupInvariants k0_waldhausen(const GammaWaldView& view, Report* report = nullptr);

/* Normalized chain complex of the nerve: degree-n generators are strings of
 * n composable non-identity morphisms; boundaries alternate outer drops and
 * inner compositions, with faces that produce an identity sent to zero. */
struct ChainComplex {
    /* generators[n] lists the degree-n strings (degree 0: objects). */
    std::vector<std::vector<std::vector<MorId>>> generators;
    std::vector<IntMatrix> boundary;   // boundary[n] : C_n -> C_{n-1}
    int max_dim = 0;
};
ChainComplex nerve_chain_complex(const FinCat& cat, int max_dim,
                                 std::int64_t max_generators = 2'000'000);

/* H_0 .. H_{max_dim-1} of the complex (the top degree is not reported:
 * its incoming boundary is outside the window). */
std::vector<AbGroupInvariants> homology(const ChainComplex& cc);

/* Number of connected components of a view under weak-equivalence zigzags. */
int weak_equivalence_components(const WaldView& view);

}  // namespace gammak
