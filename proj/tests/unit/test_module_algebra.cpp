#include "period_strata/module_algebra.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace period_strata;
using namespace period_strata::testing;

namespace {

Poly P(std::initializer_list<long> c)
{
    std::vector<Rational> v;
    for (long x : c)
        v.emplace_back(x);
    return Poly(std::move(v));
}

const Poly X = Poly::x();

Matrix M(const Ring& r, size_t rows, size_t cols, std::vector<Poly> e)
{
    return Matrix(r, rows, cols, e);
}

bool is_unimodular(const Matrix& u)
{
    Poly d;
    std::vector<std::vector<Poly>> rows(u.rows(), std::vector<Poly>(u.cols()));
    for (size_t i = 0; i < u.rows(); ++i)
        for (size_t j = 0; j < u.cols(); ++j)
            rows[i][j] = u(i, j);
    d = det_poly(rows);
    return d.degree() == 0;
}

void check_smith(const Matrix& a, const SmithDecomposition& sd)
{
    REQUIRE(sd.U * a * sd.V == sd.S);
    for (size_t i = 0; i < sd.S.rows(); ++i)
        for (size_t j = 0; j < sd.S.cols(); ++j)
            if (i != j)
                REQUIRE(sd.S(i, j).is_zero());
    auto d = sd.divisors();
    for (size_t i = 0; i < d.size(); ++i) {
        REQUIRE(d[i].is_monic());
        if (i + 1 < d.size())
            REQUIRE(divides(d[i], d[i + 1]));
    }
    for (size_t i = sd.rank; i < std::min(sd.S.rows(), sd.S.cols()); ++i)
        REQUIRE(sd.S(i, i).is_zero());
}

}  // namespace

TEST_CASE("smith_normal_form examples", "[module-algebra]")
{
    Ring qx = Ring::polynomials();
    auto z = smith_normal_form(Matrix(qx, 2, 2));
    CHECK(z.S.is_zero());
    CHECK(z.rank == 0);

    auto d = smith_normal_form(M(qx, 2, 2, {X, 0, 0, X * X}));
    CHECK(d.S == Matrix::diagonal(qx, {X, X * X}));

    Matrix a = M(qx, 2, 2, {X, 1, 0, X});
    auto s = smith_normal_form(a);
    CHECK(s.S == Matrix::diagonal(qx, {Poly(1), X * X}));
    check_smith(a, s);

    CHECK_THROWS_AS(smith_normal_form(Matrix(Ring::quotient(X * X), 1, 1)), std::invalid_argument);
}

TEST_CASE("smith_normal_form is deterministic", "[module-algebra]")
{
    Gen g(20);
    Matrix a = g.matrix(Ring::polynomials(), 4, 5, 2);
    auto s1 = smith_normal_form(a);
    auto s2 = smith_normal_form(a);
    CHECK(s1.U == s2.U);
    CHECK(s1.S == s2.S);
    CHECK(s1.V == s2.V);
}

TEST_CASE("smith invariants on random matrices", "[module-algebra][property]")
{
    Gen g(21);
    Ring qx = Ring::polynomials();
    for (int i = 0; i < 60; ++i) {
        size_t rows = g.range(1, 5), cols = g.range(1, 5);
        Matrix a = g.matrix(qx, rows, cols, static_cast<int>(g.range(0, 3)), 4, 40);
        auto sd = smith_normal_form(a);
        check_smith(a, sd);
        REQUIRE(is_unimodular(sd.U));
        REQUIRE(is_unimodular(sd.V));
        REQUIRE(sd.divisors() == smith_divisors(a));
        // d_1 ... d_t is the gcd of t x t minors
        if (rows <= 4 && cols <= 4) {
            Poly acc(1);
            for (size_t t = 1; t <= std::min(rows, cols); ++t) {
                acc = t <= sd.rank ? acc * sd.S(t - 1, t - 1) : Poly();
                REQUIRE(oracle_minors_gcd(a, t) == acc);
            }
        }
    }
}

TEST_CASE("kernel_and_cokernel examples", "[module-algebra]")
{
    Ring q = Ring::rationals();
    auto n = kernel_and_cokernel(M(q, 2, 2, {0, 1, 0, 0}));
    REQUIRE(n.kernel_basis->cols() == 1);
    CHECK(n.kernel_basis->column(0) == M(q, 2, 1, {1, 0}));
    CHECK(n.cokernel_dim == 1);

    Ring qx = Ring::polynomials();
    auto x = kernel_and_cokernel(M(qx, 1, 1, {X}));
    CHECK(x.kernel_basis->cols() == 0);
    CHECK(x.cokernel->free_rank == 0);
    CHECK(x.cokernel->torsion_divisors == std::vector<Poly>{X});

    auto j = kernel_and_cokernel(M(qx, 2, 2, {X, 1, 0, X}));
    CHECK(j.kernel_basis->cols() == 0);
    CHECK(j.cokernel->torsion_divisors == std::vector<Poly>{X * X});

    auto art = kernel_and_cokernel(M(Ring::quotient(X * X), 1, 1, {X}));
    CHECK(!art.kernel_basis);
    CHECK(art.kernel_dim == 1);
    CHECK(art.cokernel_dim == 1);
}

TEST_CASE("kernel basis spans the kernel", "[module-algebra][property]")
{
    Gen g(22);
    Ring qx = Ring::polynomials();
    for (int i = 0; i < 40; ++i) {
        size_t n = g.range(1, 5), r = g.range(0, n);
        Matrix a = g.matrix(qx, n, r, 1, 3, 30) * g.matrix(qx, r, n, 1, 3, 30);
        auto kc = kernel_and_cokernel(a);
        REQUIRE((a * *kc.kernel_basis).is_zero());
        REQUIRE(kc.kernel_basis->cols() == n - generic_rank(a));
        // saturated: the maximal minors of the basis are coprime
        if (kc.kernel_basis->cols() > 0)
            REQUIRE(oracle_minors_gcd(*kc.kernel_basis, kc.kernel_basis->cols()) == Poly(1));
        // rank equality for square matrices
        REQUIRE(kc.kernel_dim == kc.cokernel_dim);
    }
}

TEST_CASE("generic_rank examples", "[module-algebra]")
{
    Ring qx = Ring::polynomials();
    CHECK(generic_rank(Matrix::identity(qx, 3)) == 3);
    CHECK(generic_rank(M(qx, 2, 2, {X, X, X, X})) == 1);
    CHECK(generic_rank(M(qx, 2, 2, {X, 1, 1, X})) == 2);
    CHECK_THROWS_AS(generic_rank(Matrix(Ring::quotient(X), 1, 1)), std::invalid_argument);
}

TEST_CASE("generic_rank matches the Smith rank", "[module-algebra][property]")
{
    Gen g(23);
    Ring qx = Ring::polynomials();
    for (int i = 0; i < 80; ++i) {
        Matrix a = g.matrix(qx, g.range(1, 6), g.range(1, 6), 2, 4, 50);
        REQUIRE(generic_rank(a) == smith_divisors(a).size());
    }
}

TEST_CASE("char_poly examples", "[module-algebra]")
{
    Ring q = Ring::rationals();
    CHECK(char_poly(Matrix::diagonal(q, {0, 0, 2})) == RingPoly::from_rational(q, X * X * P({-2, 1})));
    CHECK(char_poly(M(q, 2, 2, {0, 1, 0, 0})) == RingPoly::from_rational(q, X * X));
    Ring qx = Ring::polynomials();
    CHECK(char_poly(M(qx, 2, 2, {0, 1, 0, X})) == RingPoly(qx, {Poly(), -X, Poly(1)}));
    CHECK_THROWS_AS(char_poly(Matrix(q, 2, 3)), std::invalid_argument);
}

TEST_CASE("char_poly agrees with cofactor expansion", "[module-algebra][property]")
{
    Gen g(24);
    for (int i = 0; i < 60; ++i) {
        Ring r = i % 3 == 0 ? Ring::rationals()
               : i % 3 == 1 ? Ring::polynomials()
                            : Ring::quotient(g.monic_poly(static_cast<int>(g.range(1, 3)), 3));
        size_t n = g.range(1, 5);
        Matrix a = g.matrix(r, n, n, 2, 4, 30);
        REQUIRE(char_poly(a) == oracle_char_poly(a));
    }
}

TEST_CASE("split_by_operator examples", "[module-algebra]")
{
    Ring q = Ring::rationals();
    auto zero = RingElement::constant(q, 0);
    Matrix phi = Matrix::diagonal(q, {0, 0, 2});
    auto s = split_by_operator(phi, {{zero, 2}}, P({-2, 1}));
    REQUIRE(s.blocks.size() == 2);
    CHECK(s.blocks[0].kind == BlockKind::cofactor);
    CHECK(s.blocks[0].projector == Matrix::diagonal(q, {0, 0, 1}));
    CHECK(s.blocks[1].projector == Matrix::diagonal(q, {1, 1, 0}));
    CHECK(s.blocks[1].basis.cols() == 2);

    auto all = split_by_operator(Matrix(q, 3, 3), {{zero, 1}}, Poly(1));
    CHECK(all.blocks[1].projector == Matrix::identity(q, 3));
    CHECK(all.blocks[0].basis.cols() == 0);

    auto nil = split_by_operator(M(q, 2, 2, {0, 1, 0, 0}), {{zero, 2}}, Poly(1));
    CHECK(nil.blocks[1].projector == Matrix::identity(q, 2));

    CHECK_THROWS_AS(split_by_operator(M(q, 2, 2, {0, 1, 0, 0}), {{zero, 1}}, Poly(1)), std::domain_error);
    // Q(0) = 0 breaks the unit hypothesis
    CHECK_THROWS_AS(split_by_operator(phi, {{zero, 2}}, X * P({-2, 1})), std::domain_error);
}

TEST_CASE("split over an Artinian ring with a non-constant root", "[module-algebra]")
{
    Ring r = Ring::quotient(X * X);
    RingElement a(r, X);          // nilpotent
    RingElement b(r, P({1, 1}));  // 1 + x
    Matrix phi = Matrix::diagonal(r, {X, P({1, 1})});
    auto s = split_by_operator(phi, {{a, 1}, {b, 1}}, Poly(1));
    CHECK(s.blocks[1].projector == Matrix::diagonal(r, {1, 0}));
    CHECK(s.blocks[2].projector == Matrix::diagonal(r, {0, 1}));
    CHECK(s.blocks[0].projector.is_zero());
    CHECK(s.blocks[1].basis.cols() == 1);
    CHECK(s.blocks[2].basis.cols() == 1);
}

TEST_CASE("block bases over a local ring are bases", "[module-algebra]")
{
    // phi = [[1, x], [0, 0]] over Q[x]/(x^2) is idempotent; its image is free
    // of rank 1 although both columns are nonzero
    Ring r = Ring::quotient(X * X);
    Matrix phi = M(r, 2, 2, {1, X, 0, 0});
    REQUIRE(phi * phi == phi);
    auto s = split_by_operator(phi, {{RingElement(r, Poly(0)), 1}, {RingElement(r, Poly(1)), 1}}, Poly(1));
    for (size_t b = 1; b <= 2; ++b) {
        CHECK(s.blocks[b].basis.cols() == 1);
        CHECK(rank(expand_over_q(s.blocks[b].basis)) == 2);
    }
}

TEST_CASE("localized_flat_summary examples", "[module-algebra]")
{
    Ring qx = Ring::polynomials();
    auto a = localized_flat_summary(M(qx, 1, 1, {X}), X);
    CHECK(a.flat);
    CHECK(a.kernel_rank == 0);
    CHECK(a.cokernel_rank == 0);

    auto b = localized_flat_summary(M(qx, 2, 2, {X, 1, 0, X}), X);
    CHECK(b.flat);

    auto c = localized_flat_summary(M(qx, 1, 1, {P({-1, 1})}), X);
    CHECK(!c.flat);
    CHECK(c.offending == std::vector<Poly>{P({-1, 1})});

    CHECK_THROWS_AS(localized_flat_summary(M(qx, 1, 1, {X}), Poly()), std::invalid_argument);
}

TEST_CASE("base_change_defect examples", "[module-algebra]")
{
    Ring qx = Ring::polynomials();
    Matrix a = M(qx, 1, 1, {X});
    RingMap at0 = RingMap::evaluate_at(qx, 0);
    auto one = base_change_defect(a, at0, RingElement(qx, 1));
    CHECK(!one.r0);
    CHECK(one.r1 == 0u);
    auto x = base_change_defect(a, at0, RingElement(qx, X));
    CHECK(x.r0 == 1u);
    CHECK(x.r1 == 0u);
    auto inv = base_change_defect(M(qx, 2, 2, {1, X, 0, 1}), RingMap::evaluate_at(qx, 5), RingElement(qx, 7));
    CHECK(inv.r0 == 0u);
    // square of x at the double point needs exponent 2
    auto sq = base_change_defect(M(qx, 1, 1, {X * X}), RingMap::project_to_quotient(qx, pow(X, 3)),
                                 RingElement(qx, X));
    CHECK(sq.r0 == 2u);
    CHECK_THROWS_AS(base_change_defect(a, RingMap::evaluate_at(qx, 0), RingElement(Ring::rationals(), 1)),
                    std::invalid_argument);
}

TEST_CASE("cokernel base change through the module summary", "[module-algebra][property]")
{
    Gen g(25);
    Ring qx = Ring::polynomials();
    for (int i = 0; i < 60; ++i) {
        Matrix a = g.matrix(qx, g.range(1, 4), g.range(1, 4), 2, 3, 40);
        Rational pt = g.rational(2, 1);
        RingMap m = g.chance(50) ? RingMap::evaluate_at(qx, pt)
                                 : RingMap::project_to_quotient(qx, pow(Poly::linear_root(pt), g.range(1, 3)));
        auto kc = kernel_and_cokernel(a);
        auto direct = kernel_and_cokernel(map_entries(a, m));
        REQUIRE(direct.cokernel_dim == tensor_qdim(*kc.cokernel, m));
        REQUIRE(base_change_defect(a, m, RingElement(qx, X - Poly(pt))).r1 == 0u);
    }
}
