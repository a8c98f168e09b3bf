#pragma once

#include "period_strata/matrix.hpp"
#include "period_strata/ring_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace period_strata {

// U * A * V = S with U, V invertible and S diagonal d_1 | d_2 | ...,
// nonzero entries monic.
struct SmithDecomposition {
    Matrix U, S, V;
    size_t rank;

    // nonzero diagonal entries d_1..d_rank
    std::vector<Poly> divisors() const;
};

// Over Q or Q[x]. Pivot: nonzero entry of least degree, ties to the
// smallest (row, col).
SmithDecomposition smith_normal_form(const Matrix& a);
// same pivoting without accumulating U and V; returns d_1..d_rank
std::vector<Poly> smith_divisors(const Matrix& a);

// R^free_rank + sum R/(t_i) over a PID R, torsion divisors monic of degree >= 1
struct ModuleSummary {
    size_t free_rank = 0;
    std::vector<Poly> torsion_divisors;

    friend bool operator==(const ModuleSummary&, const ModuleSummary&) = default;
    std::string to_string(const std::string& var = "x") const;
};

// Q-dimension of M (x) target for a summary of a module over the map's
// source. Throws for targets of infinite Q-dimension.
size_t tensor_qdim(const ModuleSummary& m, const RingMap& map);

struct KernelCokernel {
    // Over Q and Q[x]: a free basis of ker A as columns and the cokernel.
    std::optional<Matrix> kernel_basis;
    std::optional<ModuleSummary> cokernel;
    // Q-dimensions over Q and Q[x]/(f); generic ranks over Q[x].
    size_t kernel_dim = 0;
    size_t cokernel_dim = 0;
};

KernelCokernel kernel_and_cokernel(const Matrix& a);
// cokernel only, over Q or Q[x]; skips the kernel basis
ModuleSummary cokernel_summary(const Matrix& a);

// rank over the fraction field; fraction-free elimination
size_t generic_rank(const Matrix& a);

// det(T*I - A) by Faddeev-LeVerrier
RingPoly char_poly(const Matrix& a);

enum class BlockKind { cofactor, root };

struct SplitBlock {
    BlockKind kind;
    size_t root_index;  // 1-based for root blocks, 0 for the cofactor block
    Matrix projector;
    // a basis of the block over Q and Q[x]/(h^e), generators otherwise
    Matrix basis;
};

struct SplitResult {
    std::vector<SplitBlock> blocks;  // cofactor block first, then one per root
};

struct RootSpec {
    RingElement r;
    unsigned k;
};

// Splitting of the module along P = Q * prod (T - r_i)^{k_i}. Requires P(phi) = 0
// and prod Q(r_i) * prod_{i<j} (r_i - r_j) a unit; throws std::domain_error otherwise.
SplitResult split_by_operator(const Matrix& phi, const std::vector<RootSpec>& roots, const Poly& q);

struct FlatSummary {
    bool flat = false;
    size_t kernel_rank = 0;
    size_t cokernel_rank = 0;
    std::vector<Poly> offending;
};

// Flatness of ker/coker of A over Q[x] after inverting f.
FlatSummary localized_flat_summary(const Matrix& a, const Poly& f);

struct BaseChangeDefect {
    // nullopt stands for no exponent within the search bound
    std::optional<unsigned> r0;
    std::optional<unsigned> r1;
};

// Comparison (ker A) (x) target -> ker(A (x) target) and its cokernel analogue.
BaseChangeDefect base_change_defect(const Matrix& a, const RingMap& m, const RingElement& f, unsigned bound = 16);

}  // namespace period_strata
