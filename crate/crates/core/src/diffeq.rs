//! The infinite-order difference equation satisfied by the point-mass
//! Charlier polynomials:
//!
//! ```text
//! N sum_{i>=0} A_i(x) Delta^i y + x Delta nabla y + (a - x) Delta y + n y = 0,
//! y = C_n^{a,N}(x)
//! ```
//!
//! with `A_0 = (-1)^(n-1) C_{n-1}(-2)` depending on the degree only, and for
//! `i >= 1`
//!
//! ```text
//! A_i(a, x) = sum_{k=1}^{i} (-1)^k C_{i-k}^{(-a)}(-x+1)
//!             [C_k(-1) C_k(x-2) - C_k(-2) C_k(x-1)]
//! ```
//!
//! independent of `n`. Operator series are only ever applied to polynomials,
//! and `Delta` lowers the `x`-degree by exactly one, so a series applied to a
//! polynomial of degree `d` is cut at order `d` without loss.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::charlier::{charlier, charlier_at, charlier_shifted, laguerre};
use crate::generalized::gen_charlier;
use crate::poly::{factorial, int, Poly, Rational, Var};
use crate::verdict::{ensure, expect_equal, expect_zero, Failure, Verdict};

/// One term `coeff * Delta^delta_order nabla^nabla_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffTerm {
    pub coeff: Poly,
    pub delta_order: u32,
    pub nabla_order: u32,
}

impl DiffTerm {
    pub fn order(&self) -> u32 {
        self.delta_order + self.nabla_order
    }
}

/// Finite linear combination of `Delta^k nabla^m` with polynomial
/// coefficients, at most one term per `(k, m)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiffOperator {
    terms: BTreeMap<(u32, u32), Poly>,
}

impl DiffOperator {
    pub fn new() -> Self {
        DiffOperator::default()
    }

    /// Adds `coeff * Delta^delta_order nabla^nabla_order`, merging with an
    /// existing term of the same orders.
    pub fn add(&mut self, coeff: Poly, delta_order: u32, nabla_order: u32) -> &mut Self {
        let key = (delta_order, nabla_order);
        let merged = match self.terms.remove(&key) {
            Some(existing) => existing + coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(key, merged);
        }
        self
    }

    pub fn with(mut self, coeff: Poly, delta_order: u32, nabla_order: u32) -> Self {
        self.add(coeff, delta_order, nabla_order);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = DiffTerm> + '_ {
        self.terms.iter().map(|(&(d, m), c)| DiffTerm {
            coeff: c.clone(),
            delta_order: d,
            nabla_order: m,
        })
    }

    /// Multiplies every coefficient by `c`.
    pub fn scaled(&self, c: &Poly) -> DiffOperator {
        let mut out = DiffOperator::new();
        for (&(d, m), coeff) in &self.terms {
            out.add(coeff * c, d, m);
        }
        out
    }

    pub fn plus(mut self, other: &DiffOperator) -> DiffOperator {
        for (&(d, m), coeff) in &other.terms {
            self.add(coeff.clone(), d, m);
        }
        self
    }

    /// Applies the operator to `y`, skipping terms whose total order exceeds
    /// the `x`-degree of `y` (they annihilate it).
    pub fn apply(&self, y: &Poly) -> Poly {
        let deg = y.degree_in(Var::X);
        let mut out = Poly::zero();
        let mut deltas: BTreeMap<u32, Poly> = BTreeMap::new();
        for (&(d, m), coeff) in &self.terms {
            if (d + m) as i64 > deg {
                continue;
            }
            let base = deltas.entry(d).or_insert_with(|| y.delta_pow(d));
            out += &(coeff * base.nabla_pow(m));
        }
        out
    }

    /// `x Delta nabla + (a - x) Delta + n`, the classical second order operator.
    pub fn classical(n: u32) -> DiffOperator {
        DiffOperator::new()
            .with(Poly::x(), 1, 1)
            .with(Poly::a() - Poly::x(), 1, 0)
            .with(Poly::from(n as i64), 0, 0)
    }

    /// `x sum_{i=1}^{order} (-1)^i Delta^i + a Delta + n`: the classical
    /// operator with `nabla` expanded as a series in `Delta`.
    pub fn classical_series(n: u32, order: u32) -> DiffOperator {
        let mut op = DiffOperator::new()
            .with(Poly::a(), 1, 0)
            .with(Poly::from(n as i64), 0, 0);
        for i in 1..=order {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            op.add(Poly::x() * Poly::from(sign), i, 0);
        }
        op
    }

    /// `sum_{i=0}^{order} A_i Delta^i` with `A_0 = A_0(n, a)`.
    pub fn mass_series(table: &CoeffTable, n: u32, order: u32) -> DiffOperator {
        let mut op = DiffOperator::new().with(table.a0(n).clone(), 0, 0);
        for i in 1..=order {
            op.add(table.ai(i).clone(), i, 0);
        }
        op
    }

    /// The full operator `N sum A_i Delta^i + x Delta nabla + (a - x) Delta + n`.
    pub fn generalized(table: &CoeffTable, n: u32) -> DiffOperator {
        DiffOperator::mass_series(table, n, n)
            .scaled(&Poly::n())
            .plus(&DiffOperator::classical(n))
    }
}

fn sign(n: i64) -> Poly {
    Poly::from(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `A_0(n, a) = (-1)^(n-1) C_{n-1}(-2)`; zero at `n = 0`.
pub fn coeff_a0(n: u32) -> Poly {
    let n = n as i64;
    sign(n - 1) * charlier_at(n - 1, &int(-2))
}

/// `C_m^{(-a)}(-x + 1)`.
fn reflected_shifted(m: u32) -> Poly {
    charlier_shifted(m as i64, 1)
        .negate_var(Var::X)
        .negate_var(Var::A)
}

/// `C_k(-1) C_k(x-2) - C_k(-2) C_k(x-1)`.
fn bracket(k: u32) -> Poly {
    let k = k as i64;
    charlier_at(k, &int(-1)) * charlier_shifted(k, -2)
        - charlier_at(k, &int(-2)) * charlier_shifted(k, -1)
}

/// `A_i(a, x)` for `i >= 1`.
pub fn coeff_a(i: u32) -> Poly {
    assert!(i >= 1, "A_i is defined for i >= 1");
    (1..=i)
        .map(|k| sign(k as i64) * reflected_shifted(i - k) * bracket(k))
        .sum()
}

/// Degrees and leading coefficients of one `A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffInfo {
    pub i: u32,
    pub deg_x: i64,
    pub deg_a: i64,
    /// Coefficient of `x^i`.
    pub leading_x: Poly,
    /// Coefficient of `a^(2i-2)`.
    pub leading_a: Poly,
}

/// `A_0(n)` for `0 <= n <= max` and `A_i` for `1 <= i <= max`. Built once,
/// read-only afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    a0: Vec<Poly>,
    ai: Vec<Poly>,
}

impl CoeffTable {
    pub fn build(max: u32) -> Self {
        let a0 = (0..=max).into_par_iter().map(coeff_a0).collect();
        let ai = (1..=max).into_par_iter().map(coeff_a).collect();
        CoeffTable { a0, ai }
    }

    pub fn max_index(&self) -> u32 {
        self.ai.len() as u32
    }

    pub fn a0(&self, n: u32) -> &Poly {
        &self.a0[n as usize]
    }

    pub fn ai(&self, i: u32) -> &Poly {
        assert!(i >= 1, "A_i is indexed from 1");
        &self.ai[i as usize - 1]
    }

    /// Replaces `A_i`; used to build corrupted fixtures.
    pub fn with_ai(mut self, i: u32, poly: Poly) -> Self {
        assert!(i >= 1 && i <= self.max_index(), "A_{i} is not in the table");
        self.ai[i as usize - 1] = poly;
        self
    }

    pub fn info(&self, i: u32) -> CoeffInfo {
        let p = self.ai(i);
        CoeffInfo {
            i,
            deg_x: p.degree_in(Var::X),
            deg_a: p.degree_in(Var::A),
            leading_x: p.coeff_of(Var::X, i),
            leading_a: p.coeff_of(Var::A, 2 * i - 2),
        }
    }
}

fn mass_sum(table: &CoeffTable, n: u32, y: &Poly) -> Poly {
    DiffOperator::mass_series(table, n, n).apply(y)
}

/// `sum_i A_i Delta^i C_n(x) = (-1)^(n-1) C_n(0) C_{n-1}(x-2)`.
pub fn verify_form1(table: &CoeffTable, n: u32) -> Verdict {
    let ni = n as i64;
    let lhs = mass_sum(table, n, &charlier(ni));
    let rhs = sign(ni - 1) * charlier_at(ni, &int(0)) * charlier_shifted(ni - 1, -2);
    expect_equal("form1", &lhs, &rhs)
}

/// `sum_i A_i Delta^i C_n(x-1) = (-1)^(n-1) C_n(-1) C_{n-1}(x-2)`.
pub fn verify_form2(table: &CoeffTable, n: u32) -> Verdict {
    let ni = n as i64;
    let lhs = mass_sum(table, n, &charlier_shifted(ni, -1));
    let rhs = sign(ni - 1) * charlier_at(ni, &int(-1)) * charlier_shifted(ni - 1, -2);
    expect_equal("form2", &lhs, &rhs)
}

/// `C_n(-1) sum A_i Delta^i C_n(x) - C_n(0) sum A_i Delta^i C_n(x-1) = 0`.
pub fn verify_form0(table: &CoeffTable, n: u32) -> Verdict {
    let ni = n as i64;
    let lhs = charlier_at(ni, &int(-1)) * mass_sum(table, n, &charlier(ni))
        - charlier_at(ni, &int(0)) * mass_sum(table, n, &charlier_shifted(ni, -1));
    expect_zero("form0", lhs)
}

/// Left-hand side of the full equation applied to `C_n^{a,N}`, with the
/// series cut at order `n`. Vanishes identically when the table is correct.
pub fn apply_difference_equation(table: &CoeffTable, n: u32) -> Poly {
    DiffOperator::generalized(table, n).apply(&gen_charlier(n).poly)
}

/// The equation holds, and so does each power of `N` separately.
pub fn verify_difference_equation(table: &CoeffTable, n: u32) -> Verdict {
    let lhs = apply_difference_equation(table, n);
    ensure(lhs.degree_in(Var::N) <= 2, || {
        format!("left-hand side has degree {} in N", lhs.degree_in(Var::N))
    })?;
    for power in 0..=2 {
        expect_zero(
            &format!("difference equation, coefficient of N^{power}"),
            lhs.coeff_of(Var::N, power),
        )?;
    }
    expect_zero("difference equation", lhs)
}

/// `N sum A_i Delta^i y + x sum_{i>=1} (-1)^i Delta^i y + a Delta y + n y = 0`.
pub fn verify_combined_equation(table: &CoeffTable, n: u32) -> Verdict {
    let op = DiffOperator::mass_series(table, n, n)
        .scaled(&Poly::n())
        .plus(&DiffOperator::classical_series(n, n));
    expect_zero("combined equation", op.apply(&gen_charlier(n).poly))
}

/// `x sum_{i>=1} (-1)^i Delta^i C_n + a Delta C_n + n C_n = 0`.
pub fn verify_classical_infinite_order(n: u32) -> Verdict {
    expect_zero(
        "classical series equation",
        DiffOperator::classical_series(n, n).apply(&charlier(n as i64)),
    )
}

/// `y(x-1) = sum_{i=0}^{deg y} (-1)^i Delta^i y(x)`.
pub fn verify_expansion_identity(y: &Poly) -> Verdict {
    let deg = y.degree_in(Var::X).max(0) as u32;
    let mut series = Poly::zero();
    let mut term = y.clone();
    for i in 0..=deg {
        if i % 2 == 0 {
            series += &term;
        } else {
            series -= &term;
        }
        term = term.delta();
    }
    expect_equal("expansion identity", &y.shift_x(&int(-1)), &series)
}

/// `a C_n(x) + (n-a-x) C_n(x-1) + x C_n(x-2) = -C_{n-1}(x-2)` for `n >= 1`.
pub fn verify_reduction_lemma(n: u32) -> Verdict {
    assert!(n >= 1, "reduction lemma needs n >= 1");
    let ni = n as i64;
    let lhs = Poly::a() * charlier(ni)
        + (Poly::from(ni) - Poly::a() - Poly::x()) * charlier_shifted(ni, -1)
        + Poly::x() * charlier_shifted(ni, -2);
    expect_equal("reduction lemma", &lhs, &-charlier_shifted(ni - 1, -2))
}

/// `h_i`, the coefficient of `x^i` in `A_i`.
pub fn leading_x_coeff(table: &CoeffTable, i: u32) -> Poly {
    table.ai(i).coeff_of(Var::X, i)
}

/// `h_i = (-1)^i/i! C_{i-1}(i-2) = (-1)^i/i! L_{i-1}^{(-1)}(a)`, and for
/// `i >= 2` also `(-1)^i/i! * (-a/(i-1)) L_{i-2}^{(1)}(a)`; `h_i != 0`.
pub fn verify_leading_coefficient(table: &CoeffTable, i: u32) -> Verdict {
    let h = leading_x_coeff(table, i);
    ensure(!h.is_zero(), || format!("h_{i} vanishes"))?;
    let ii = i as i64;
    let scale = sign(ii).scale(&(Rational::one() / factorial(i)));
    let via_charlier = &scale * charlier_at(ii - 1, &int(ii - 2));
    expect_equal("h_i against C_{i-1}(i-2)", &h, &via_charlier)?;
    let via_laguerre = &scale * laguerre(i - 1, &Poly::from(-1), Var::A);
    expect_equal("h_i against L_{i-1}^(-1)(a)", &h, &via_laguerre)?;
    if i >= 2 {
        let factor = Poly::a().scale(&(-Rational::one() / int(ii - 1)));
        let via_charlier_next = &scale * &factor * charlier_at(ii - 2, &int(ii - 1));
        expect_equal("h_i against C_{i-2}(i-1)", &h, &via_charlier_next)?;
        let via_laguerre_next = &scale * &factor * laguerre(i - 2, &Poly::one(), Var::A);
        expect_equal("h_i against L_{i-2}^(1)(a)", &h, &via_laguerre_next)?;
    }
    Ok(())
}

/// `A_i(a, 0) = 0`, `deg_x A_i <= i`, `deg_a A_i = 2i - 2`, and the
/// coefficient of `a^(2i-2)` is `(-1)^i x / (i! (i-1)!)`.
pub fn verify_coefficient_structure(table: &CoeffTable, i: u32) -> Verdict {
    let p = table.ai(i);
    expect_zero("A_i at x = 0", p.substitute(Var::X, &int(0)))?;
    let info = table.info(i);
    ensure(info.deg_x <= i as i64, || {
        format!("deg_x A_{i} = {} exceeds {i}", info.deg_x)
    })?;
    ensure(info.deg_a == 2 * i as i64 - 2, || {
        format!(
            "deg_a A_{i} = {}, expected {}",
            info.deg_a,
            2 * i as i64 - 2
        )
    })?;
    let expected =
        (Poly::x() * sign(i as i64)).scale(&(Rational::one() / (factorial(i) * factorial(i - 1))));
    expect_equal("leading a-coefficient", &info.leading_a, &expected)
}

/// If `deg_x A_i < i` then `deg_x A_{i+1} = i + 1`.
pub fn verify_degree_escalation(table: &CoeffTable, i: u32) -> Verdict {
    let here = table.ai(i).degree_in(Var::X);
    let next = table.ai(i + 1).degree_in(Var::X);
    ensure(here >= i as i64 || next == i as i64 + 1, || {
        format!("deg_x A_{i} = {here} < {i} but deg_x A_{} = {next}", i + 1)
    })
}

/// `h_i` and `h_{i+1}` have no common root `a != 0`, so at any fixed
/// `a > 0` at least one of `A_i`, `A_{i+1}` has full `x`-degree.
pub fn verify_leading_coprime(table: &CoeffTable, i: u32) -> Verdict {
    let to_uni = |p: &Poly| {
        p.univariate_coeffs(Var::A)
            .ok_or_else(|| Failure::with_residual("h_i is not a polynomial in a alone", p.clone()))
    };
    let h = strip_zero_root(to_uni(&leading_x_coeff(table, i))?);
    let g = strip_zero_root(to_uni(&leading_x_coeff(table, i + 1))?);
    let d = univariate_gcd(h, g);
    ensure(d.len() == 1, || {
        format!(
            "h_{i} and h_{} share a factor of degree {}",
            i + 1,
            d.len() as i64 - 1
        )
    })
}

/// Drops the factor `a^v` from a coefficient list (lowest first).
fn strip_zero_root(mut p: Vec<Rational>) -> Vec<Rational> {
    let v = p.iter().take_while(|c| c.is_zero()).count();
    p.drain(..v);
    p
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Monic gcd over the rationals by the Euclidean algorithm; the empty vector
/// is the zero polynomial.
fn univariate_gcd(mut f: Vec<Rational>, mut g: Vec<Rational>) -> Vec<Rational> {
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        // f <- f mod g
        let lead = g.last().unwrap().clone();
        while f.len() >= g.len() {
            let q = f.last().unwrap() / &lead;
            let offset = f.len() - g.len();
            for (j, c) in g.iter().enumerate() {
                f[offset + j] -= &q * c;
            }
            f.pop();
            trim(&mut f);
        }
        std::mem::swap(&mut f, &mut g);
    }
    if let Some(lead) = f.last().cloned() {
        for c in &mut f {
            *c /= &lead;
        }
    }
    f
}

/// Result of solving for the coefficients from scratch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardSolution {
    /// `A_0(n)` for `0 <= n <= max`.
    pub a0: Vec<Poly>,
    /// `A_i` for `1 <= i <= max`.
    pub ai: Vec<Poly>,
}

/// Recovers `A_0(n)` and `A_1, ..., A_max` from the defining relations alone.
///
/// `A_0(n)` comes from the first relation at `x = 0` (all `A_i` with `i >= 1`
/// vanish there), after which the second relation reads
/// `sum_{i=1}^{n} A_i C_{n-i}(x-1) = R(n)`. That system is unitriangular
/// (`C_0 = 1` on the diagonal), so forward substitution gives the unique
/// solution.
pub fn forward_substitution(max: u32) -> Result<ForwardSolution, Failure> {
    let mut a0 = Vec::with_capacity(max as usize + 1);
    let mut ai: Vec<Poly> = Vec::with_capacity(max as usize);
    for n in 0..=max {
        let ni = n as i64;
        let at_zero = charlier_at(ni, &int(0));
        let rhs1_at_zero = sign(ni - 1) * &at_zero * charlier_at(ni - 1, &int(-2));
        let a0_n = rhs1_at_zero.div_term(&at_zero).ok_or_else(|| {
            Failure::with_residual(
                "C_n(0) does not divide the x = 0 relation",
                rhs1_at_zero.clone(),
            )
        })?;
        if n >= 1 {
            let rhs2 = sign(ni - 1) * charlier_at(ni, &int(-1)) * charlier_shifted(ni - 1, -2);
            let mut rest = rhs2 - &a0_n * charlier_shifted(ni, -1);
            for (idx, known) in ai.iter().enumerate() {
                let i = idx as i64 + 1;
                rest -= &(known * charlier_shifted(ni - i, -1));
            }
            ai.push(rest);
        }
        a0.push(a0_n);
    }
    Ok(ForwardSolution { a0, ai })
}

/// The right-hand side `(-1)^n [C_n(-1) C_n(x-2) - C_n(-2) C_n(x-1)]` of the
/// triangular system, in closed form.
pub fn triangular_rhs(n: u32) -> Poly {
    let ni = n as i64;
    sign(ni)
        * (charlier_at(ni, &int(-1)) * charlier_shifted(ni, -2)
            - charlier_at(ni, &int(-2)) * charlier_shifted(ni, -1))
}

/// The forward-substitution solution matches the table at index `i`
/// (both `A_0(i)` and `A_i`), and the system's right-hand side equals the
/// closed form.
pub fn verify_uniqueness(table: &CoeffTable, solution: &ForwardSolution, i: u32) -> Verdict {
    expect_equal("A_0 from x = 0", &solution.a0[i as usize], table.a0(i))?;
    expect_equal(
        "A_i by forward substitution",
        &solution.ai[i as usize - 1],
        table.ai(i),
    )?;
    let ii = i as i64;
    let lhs_rhs = sign(ii - 1) * charlier_at(ii, &int(-1)) * charlier_shifted(ii - 1, -2)
        - table.a0(i) * charlier_shifted(ii, -1);
    expect_equal("triangular right-hand side", &lhs_rhs, &triangular_rhs(i))
}

/// The coefficient of `x^(n-i)` in `Delta^k nabla^(i-k) C_n` equals the one
/// in `Delta^i C_n`.
pub fn verify_mixed_leading(i: u32, k: u32, n: u32) -> Verdict {
    assert!(k <= i && i <= n, "need 0 <= k <= i <= n");
    let c = charlier(n as i64);
    let mixed = c.delta_pow(k).nabla_pow(i - k).coeff_of(Var::X, n - i);
    let pure = c.delta_pow(i).coeff_of(Var::X, n - i);
    expect_equal("mixed-operator leading coefficient", &mixed, &pure)
}
