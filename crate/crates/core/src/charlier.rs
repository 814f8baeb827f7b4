//! Classical Charlier polynomials `C_n^{(a)}(x)` and the identities they obey.
//!
//! The normalization is
//!
//! ```text
//! C_n^{(a)}(x) = sum_{k=0}^{n} binom(x, k) (-a)^(n-k) / (n-k)!
//! ```
//!
//! so that the leading coefficient in `x` is `1/n!`, `Delta C_n = C_{n-1}`,
//! and `C_{-1} = 0` by convention. Orthogonality is with respect to the
//! Poisson weight `e^{-a} a^x / x!` on the nonnegative integers; the moment
//! functional here is normalized so that the total mass is one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{factorial, int, Poly, Rational, Var};
use crate::verdict::{ensure, expect_equal, expect_zero, Verdict};

/// Falling factorial `x (x-1) ... (x-k+1) / k!` as a polynomial in `x`.
pub fn binom_x(k: u32) -> Poly {
    let mut p = Poly::one();
    for j in 0..k {
        p = p * (Poly::x() - Poly::from(j as i64));
    }
    p.scale(&(Rational::one() / factorial(k)))
}

/// Generalized binomial coefficient `p (p-1) ... (p-k+1) / k!` for rational `p`.
pub fn binom_rational(p: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc *= p - int(j as i64);
    }
    acc / factorial(k)
}

/// `C_n^{(a)}(x)`. Index `-1` gives the zero polynomial.
///
/// # Panics
///
/// If `n < -1`.
pub fn charlier(n: i64) -> Poly {
    assert!(n >= -1, "Charlier index must be at least -1, got {n}");
    if n < 0 {
        return Poly::zero();
    }
    let n = n as u32;
    let minus_a = -Poly::a();
    (0..=n)
        .map(|k| {
            let power = minus_a
                .pow(n - k)
                .scale(&(Rational::one() / factorial(n - k)));
            binom_x(k) * power
        })
        .sum()
}

/// `C_n^{(a)}(x0)` for a constant `x0`, by substitution.
pub fn charlier_at(n: i64, x0: &Rational) -> Poly {
    charlier(n).substitute(Var::X, x0)
}

/// `C_n^{(a)}(x + c)`.
pub fn charlier_shifted(n: i64, c: i64) -> Poly {
    charlier(n).shift_x(&int(c))
}

/// `C_n^{(-a)}(-x)`: both `a` and `x` change sign.
pub fn charlier_reflected(n: i64) -> Poly {
    charlier(n).negate_var(Var::A).negate_var(Var::X)
}

/// Closed form `C_n^{(a)}(0) = (-a)^n / n!`.
pub fn charlier_value_zero(n: u32) -> Poly {
    (-Poly::a()).pow(n).scale(&(Rational::one() / factorial(n)))
}

/// Closed form `C_n^{(a)}(-1) = (-1)^n e_n(a)` with `e_n(a) = sum_{k<=n} a^k/k!`.
pub fn charlier_value_minus_one(n: u32) -> Poly {
    let partial_exp: Poly = (0..=n)
        .map(|k| Poly::a().pow(k).scale(&(Rational::one() / factorial(k))))
        .sum();
    if n.is_multiple_of(2) {
        partial_exp
    } else {
        -partial_exp
    }
}

/// Rising factorial `(p)_k = p (p+1) ... (p+k-1)` of a polynomial.
pub fn pochhammer(p: &Poly, k: u32) -> Poly {
    let mut acc = Poly::one();
    for j in 0..k {
        acc = acc * (p + &Poly::from(j as i64));
    }
    acc
}

/// Laguerre polynomial `L_n^{(alpha)}(t)`:
///
/// ```text
/// L_n^{(alpha)}(t) = (1/n!) sum_{k=0}^{n} (-n)_k (alpha+k+1)_{n-k} t^k / k!
/// ```
///
/// `alpha` may itself be a polynomial, provided `t` does not occur in it.
pub fn laguerre(n: u32, alpha: &Poly, t: Var) -> Poly {
    assert!(
        alpha.degree_in(t) <= 0,
        "Laguerre variable must not occur in the parameter"
    );
    let minus_n = int(-(n as i64));
    let mut out = Poly::zero();
    let mut rising = Rational::one(); // (-n)_k
    for k in 0..=n {
        let shifted = alpha + &Poly::from(k as i64 + 1);
        let term = pochhammer(&shifted, n - k) * Poly::var(t).pow(k);
        out += &term.scale(&(&rising / factorial(k)));
        rising *= &minus_n + int(k as i64);
    }
    out.scale(&(Rational::one() / factorial(n)))
}

/// Stirling numbers of the second kind `S(k, j)` for `0 <= j <= k <= max_k`,
/// by `S(k, j) = j S(k-1, j) + S(k-1, j-1)`.
pub fn stirling2_table(max_k: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for k in 1..=max_k {
        let prev = &rows[k - 1];
        let row = (0..=k)
            .map(|j| {
                let stay = if j < k {
                    prev[j].clone() * j
                } else {
                    BigInt::zero()
                };
                let grow = if j > 0 {
                    prev[j - 1].clone()
                } else {
                    BigInt::zero()
                };
                stay + grow
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Moments `m_0, ..., m_max_k` of the normalized Poisson weight,
/// `m_k(a) = sum_j S(k, j) a^j`.
pub fn moments(max_k: usize) -> Vec<Poly> {
    stirling2_table(max_k)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .enumerate()
                .map(|(j, s)| Poly::a().pow(j as u32).scale(&Rational::from_integer(s)))
                .sum()
        })
        .collect()
}

pub fn moment(k: usize) -> Poly {
    moments(k).pop().expect("moment table is never empty")
}

/// Bell numbers via the Bell triangle; independent of the Stirling recurrence.
pub fn bell_numbers(max_k: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for _ in 0..max_k {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let n = next.last().unwrap() + v;
            next.push(n);
        }
        out.push(next[0].clone());
        row = next;
    }
    out
}

/// Linear functional sending `x^k` to `m_k(a)`; any `a`, `N` dependence of
/// the inputs is carried along.
pub fn moment_functional(p: &Poly) -> Poly {
    let max_k = p.degree_in(Var::X);
    if max_k < 0 {
        return Poly::zero();
    }
    let table = moments(max_k as usize);
    (0..=max_k as u32)
        .map(|k| p.coeff_of(Var::X, k) * &table[k as usize])
        .sum()
}

/// `sum_{x>=0} e^{-a} a^x / x! * p(x) q(x)`, as a polynomial in `a` (and `N`).
pub fn inner_product_classical(p: &Poly, q: &Poly) -> Poly {
    moment_functional(&(p * q))
}

/// `Delta C_n = C_{n-1}`.
pub fn verify_lowering(n: u32) -> Verdict {
    let n = n as i64;
    expect_equal("lowering", &charlier(n).delta(), &charlier(n - 1))
}

/// `nabla C_n(x) = C_{n-1}(x-1)`.
pub fn verify_nabla_lowering(n: u32) -> Verdict {
    let n = n as i64;
    expect_equal(
        "nabla lowering",
        &charlier(n).nabla(),
        &charlier_shifted(n - 1, -1),
    )
}

/// `a y(x+1) + (n-a-x) y(x) + x y(x-1) = 0` for `y = C_n`.
pub fn verify_second_order(n: u32) -> Verdict {
    let y = charlier(n as i64);
    let lhs = Poly::a() * y.shift_x(&int(1))
        + (Poly::from(n as i64) - Poly::a() - Poly::x()) * &y
        + Poly::x() * y.shift_x(&int(-1));
    expect_zero("second order equation", lhs)
}

/// `C_n^{(a)}(x) = L_n^{(x-n)}(a)`.
pub fn verify_laguerre_relation(n: u32) -> Verdict {
    let alpha = Poly::x() - Poly::from(n as i64);
    expect_equal(
        "Laguerre relation",
        &charlier(n as i64),
        &laguerre(n, &alpha, Var::A),
    )
}

/// Substituting `x = 0` and `x = -1` agrees with the closed forms.
pub fn verify_special_values(n: u32) -> Verdict {
    expect_equal(
        "value at 0",
        &charlier_at(n as i64, &int(0)),
        &charlier_value_zero(n),
    )?;
    expect_equal(
        "value at -1",
        &charlier_at(n as i64, &int(-1)),
        &charlier_value_minus_one(n),
    )
}

/// `C_n(0) - C_n(-1) = C_{n-1}(-1)` for `n >= 1`.
pub fn verify_value_difference(n: u32) -> Verdict {
    assert!(n >= 1, "value difference needs n >= 1");
    let lhs = charlier_value_zero(n) - charlier_value_minus_one(n);
    expect_equal("value difference", &lhs, &charlier_value_minus_one(n - 1))
}

/// `C_n(x + p) = sum_k binom(p, k) C_{n-k}(x)` for rational `p`.
pub fn verify_shift_identity(n: u32, p: &Rational) -> Verdict {
    let lhs = charlier(n as i64).shift_x(p);
    let rhs: Poly = (0..=n)
        .map(|k| charlier((n - k) as i64).scale(&binom_rational(p, k)))
        .sum();
    expect_equal("shift identity", &lhs, &rhs)
}

/// `sum_{k=j}^{i} C_{i-k}^{(a)}(x) C_{k-j}^{(-a)}(-x) = delta_{ij}`.
pub fn verify_convolution(i: u32, j: u32) -> Verdict {
    assert!(j <= i, "convolution needs j <= i");
    let sum: Poly = (j..=i)
        .map(|k| charlier((i - k) as i64) * charlier_reflected((k - j) as i64))
        .sum();
    let expected = if i == j { Poly::one() } else { Poly::zero() };
    expect_equal("convolution", &sum, &expected)
}

/// Lower unitriangular matrix with entries `C_{i-j}^{(a)}(x)`.
pub fn charlier_matrix(n: usize) -> Vec<Vec<Poly>> {
    triangular(n, |d| charlier(d as i64))
}

/// Its claimed inverse, entries `C_{i-j}^{(-a)}(-x)`.
pub fn charlier_matrix_inverse(n: usize) -> Vec<Vec<Poly>> {
    triangular(n, |d| charlier_reflected(d as i64))
}

fn triangular(n: usize, entry: impl Fn(usize) -> Poly) -> Vec<Vec<Poly>> {
    let diagonals: Vec<Poly> = (0..n).map(entry).collect();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j <= i {
                        diagonals[i - j].clone()
                    } else {
                        Poly::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `T U = I` for the `n x n` matrices above, and `det T = 1`.
pub fn verify_inverse_matrix(n: usize) -> Verdict {
    assert!(n >= 1, "matrix size must be positive");
    let t = charlier_matrix(n);
    let u = charlier_matrix_inverse(n);
    let det: Poly = (0..n).fold(Poly::one(), |acc, i| acc * &t[i][i]);
    expect_equal("determinant", &det, &Poly::one())?;
    for i in 0..n {
        for j in 0..n {
            let entry: Poly = (0..n).map(|k| &t[i][k] * &u[k][j]).sum();
            let expected = if i == j { Poly::one() } else { Poly::zero() };
            expect_equal(&format!("(T U)[{i}][{j}]"), &entry, &expected)?;
        }
    }
    Ok(())
}

/// `<C_m, C_n> = a^n/n! delta_{mn}` under the Poisson weight.
pub fn verify_classical_orthogonality(m: u32, n: u32) -> Verdict {
    let ip = inner_product_classical(&charlier(m as i64), &charlier(n as i64));
    let expected = if m == n {
        Poly::a().pow(n).scale(&(Rational::one() / factorial(n)))
    } else {
        Poly::zero()
    };
    expect_equal("classical orthogonality", &ip, &expected)
}

/// Structural checks on `m_k`: nonnegative integer coefficients, degree
/// `k`, and value `Bell(k)` at `a = 1`.
pub fn verify_moment(k: usize) -> Verdict {
    let m = moment(k);
    ensure(m.degree_in(Var::A) == k as i64, || {
        format!("moment {k} has degree {} in a", m.degree_in(Var::A))
    })?;
    ensure(
        m.terms().all(|(_, c)| c.is_integer() && !c.is_negative()),
        || format!("moment {k} has a coefficient that is not a nonnegative integer"),
    )?;
    let at_one = m.substitute(Var::A, &int(1)).as_constant().unwrap();
    let bell = Rational::from_integer(bell_numbers(k)[k].clone());
    ensure(at_one == bell, || {
        format!("moment {k} at a=1 is {at_one}, Bell number is {bell}")
    })
}
