//! Charlier polynomials for the Poisson weight with an extra point mass `N`
//! at `x = 0`.
//!
//! With `<f, g> = sum_x e^{-a} a^x/x! f(x) g(x) + N f(0) g(0)` the family is
//!
//! ```text
//! C_n^{a,N}(x) = [1 + N (-1)^n C_n(-1)] C_n(x) - N (-1)^n C_n(0) C_n(x-1)
//! ```
//!
//! `N` stays a ring indeterminate throughout, so every orthogonality claim is
//! checked as a polynomial identity in `a` and `N`.

use num_traits::{One, Signed};

use crate::charlier::{
    charlier, charlier_shifted, charlier_value_minus_one, charlier_value_zero,
    inner_product_classical,
};
use crate::poly::{factorial, int, rat, Poly, Rational, Var};
use crate::verdict::{ensure, expect_equal, expect_zero, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenCharlier {
    pub n: u32,
    pub poly: Poly,
}

fn sign(n: u32) -> Poly {
    Poly::from(if n.is_multiple_of(2) { 1 } else { -1 })
}

/// Coefficient `A_n = 1 + N (-1)^n C_n(-1)` of `C_n(x)`.
pub fn weight_current(n: u32) -> Poly {
    Poly::one() + Poly::n() * sign(n) * charlier_value_minus_one(n)
}

/// Coefficient `B_n = N (-1)^(n-1) C_n(0)` of `C_n(x-1)`.
pub fn weight_shifted(n: u32) -> Poly {
    -(Poly::n() * sign(n) * charlier_value_zero(n))
}

pub fn gen_charlier(n: u32) -> GenCharlier {
    let poly =
        weight_current(n) * charlier(n as i64) + weight_shifted(n) * charlier_shifted(n as i64, -1);
    GenCharlier { n, poly }
}

/// `<p, q>` including the point mass at zero.
pub fn inner_product_general(p: &Poly, q: &Poly) -> Poly {
    let zero = int(0);
    inner_product_classical(p, q)
        + Poly::n() * p.substitute(Var::X, &zero) * q.substitute(Var::X, &zero)
}

pub fn norm_general(n: u32) -> Poly {
    let g = gen_charlier(n).poly;
    inner_product_general(&g, &g)
}

/// The rewritten form
/// `[1 + N (-1)^(n-1) C_{n-1}(-1)] C_n(x) + N (-1)^n C_n(0) Delta C_n(x-1)`,
/// using `C_{-1} = 0` at `n = 0`.
pub fn verify_alternative_form(n: u32) -> Verdict {
    let prev_at_minus_one = if n == 0 {
        Poly::zero()
    } else {
        charlier_value_minus_one(n - 1)
    };
    let lead = Poly::one() - Poly::n() * sign(n) * prev_at_minus_one;
    let alt = lead * charlier(n as i64)
        + Poly::n() * sign(n) * charlier_value_zero(n) * charlier_shifted(n as i64, -1).delta();
    expect_equal("alternative form", &alt, &gen_charlier(n).poly)
}

/// `<C_m^{a,N}, C_n^{a,N}> = 0` for `m != n`.
pub fn verify_orthogonality(m: u32, n: u32) -> Verdict {
    assert!(m != n, "orthogonality is checked between distinct degrees");
    expect_zero(
        "generalized orthogonality",
        inner_product_general(&gen_charlier(m).poly, &gen_charlier(n).poly),
    )
}

/// Setting `N = 0` gives back `C_n`; the construction is affine in `N` and
/// has degree `n` in `x`.
pub fn verify_structure(n: u32) -> Verdict {
    let g = gen_charlier(n).poly;
    expect_equal(
        "mass-free reduction",
        &g.substitute(Var::N, &int(0)),
        &charlier(n as i64),
    )?;
    ensure(g.degree_in(Var::N) <= 1, || {
        format!("degree in N is {}", g.degree_in(Var::N))
    })?;
    ensure(g.degree_in(Var::X) == n as i64, || {
        format!("degree in x is {}, expected {n}", g.degree_in(Var::X))
    })
}

/// The two steps that fix `A_n` and `B_n`:
///
/// - `<x^(j+1), C_n^{a,N}> = 0` for `0 <= j <= n-2` (vacuous for `n < 2`);
/// - `N A_n C_n(0) + [(-1)^n + N C_n(-1)] B_n = 0` for `n >= 1`.
pub fn verify_construction_steps(n: u32) -> Verdict {
    let g = gen_charlier(n).poly;
    if n >= 2 {
        for j in 0..=n - 2 {
            expect_zero(
                &format!("<x^{}, C_n^(a,N)>", j + 1),
                inner_product_general(&Poly::x().pow(j + 1), &g),
            )?;
        }
    }
    if n >= 1 {
        let relation = Poly::n() * weight_current(n) * charlier_value_zero(n)
            + (sign(n) + Poly::n() * charlier_value_minus_one(n)) * weight_shifted(n);
        expect_zero("linear relation for A_n, B_n", relation)?;
        expect_equal(
            "mean of C_n(x-1)",
            &inner_product_classical(&Poly::one(), &charlier_shifted(n as i64, -1)),
            &sign(n),
        )?;
    }
    Ok(())
}

/// Sample points `(a, N)` for the positivity spot check.
pub const POSITIVITY_SAMPLES: [(i64, i64, i64, i64); 6] = [
    (1, 1, 0, 1),
    (1, 2, 1, 1),
    (1, 1, 1, 3),
    (3, 1, 2, 1),
    (7, 2, 5, 1),
    (10, 1, 100, 1),
];

/// The norm is nonzero, reduces to `a^n/n!` at `N = 0`, and is positive at
/// a handful of rational `a > 0`, `N >= 0`.
pub fn verify_norm(n: u32) -> Verdict {
    let norm = norm_general(n);
    ensure(!norm.is_zero(), || format!("norm of degree {n} vanishes"))?;
    let classical = Poly::a().pow(n).scale(&(Rational::one() / factorial(n)));
    expect_equal(
        "norm at N = 0",
        &norm.substitute(Var::N, &int(0)),
        &classical,
    )?;
    for (an, ad, nn, nd) in POSITIVITY_SAMPLES {
        let (a, mass) = (rat(an, ad), rat(nn, nd));
        let v = norm.eval(&int(0), &a, &mass);
        ensure(v.is_positive(), || {
            format!("norm of degree {n} is {v} at a = {a}, N = {mass}")
        })?;
    }
    Ok(())
}

/// `<1, 1> = 1 + N`; exposed for symmetry tests.
pub fn total_mass() -> Poly {
    inner_product_general(&Poly::one(), &Poly::one())
}
