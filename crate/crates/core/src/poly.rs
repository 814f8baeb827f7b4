//! Exact sparse polynomials in the three indeterminates `x`, `a` and `N`.
//!
//! Every coefficient is an arbitrary precision rational, and the term map is
//! kept canonical (no zero coefficients, unique exponent triples), so two
//! polynomials are structurally equal exactly when their difference is zero.
//! Terms are ordered graded-lexicographically with `x > a > N`.
//!
//! Besides ring arithmetic this module carries the shift calculus on `x`:
//! [`Poly::shift_x`], the forward difference [`Poly::delta`] and the backward
//! difference [`Poly::nabla`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number; always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the reduced fraction `num/den`.
///
/// Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `k!` as a rational.
pub fn factorial(k: u32) -> Rational {
    (1..=k).fold(Rational::one(), |acc, j| acc * int(j as i64))
}

/// The fixed indeterminates. The derived order `X < A < N` is the variable
/// order used by the term ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    A,
    N,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::A, Var::N];

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::A => "a",
            Var::N => "N",
        }
    }
}

/// Exponent triple of a monomial `x^x * a^a * N^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub a: u32,
    pub n: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, a: 0, n: 0 };

    pub fn new(x: u32, a: u32, n: u32) -> Self {
        Monomial { x, a, n }
    }

    pub fn total_degree(&self) -> u32 {
        self.x + self.a + self.n
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match v {
            Var::X => self.x,
            Var::A => self.a,
            Var::N => self.n,
        }
    }

    fn with_exponent(mut self, v: Var, e: u32) -> Self {
        match v {
            Var::X => self.x = e,
            Var::A => self.a = e,
            Var::N => self.n = e,
        }
        self
    }

    fn mul(self, other: Monomial) -> Monomial {
        Monomial {
            x: self.x + other.x,
            a: self.a + other.a,
            n: self.n + other.n,
        }
    }

    fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    /// Factors in rendering order (`N`, `a`, `x`), skipping zero exponents.
    fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        [Var::N, Var::A, Var::X]
            .into_iter()
            .map(|v| (v, self.exponent(v)))
            .filter(|&(_, e)| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.x.cmp(&other.x))
            .then(self.a.cmp(&other.a))
            .then(self.n.cmp(&other.n))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `x`, `a`, `N` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rational::one(), Monomial::ONE.with_exponent(v, 1))
    }

    pub fn x() -> Self {
        Poly::var(Var::X)
    }

    pub fn a() -> Self {
        Poly::var(Var::A)
    }

    pub fn n() -> Self {
        Poly::var(Var::N)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the highest monomial down.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    /// The constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Maximal exponent of `v`, or `-1` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> i64 {
        self.terms
            .keys()
            .map(|m| m.exponent(v) as i64)
            .max()
            .unwrap_or(-1)
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| (m.with_exponent(v, 0), c.clone())),
        )
    }

    /// Replaces `v` by the constant `r`.
    pub fn substitute(&self, v: Var, r: &Rational) -> Poly {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * r;
                powers.push(next);
            }
            (m.with_exponent(v, 0), c * &powers[e])
        }))
    }

    /// Evaluates at a point given as `(x, a, N)`.
    pub fn eval(&self, x: &Rational, a: &Rational, n: &Rational) -> Rational {
        self.substitute(Var::X, x)
            .substitute(Var::A, a)
            .substitute(Var::N, n)
            .as_constant()
            .expect("all variables substituted")
    }

    /// Replaces `v` by `-v`.
    pub fn negate_var(&self, v: Var) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.exponent(v) % 2 == 1 {
                        -c
                    } else {
                        c.clone()
                    };
                    (*m, c)
                })
                .collect(),
        }
    }

    /// Replaces `x` by `x + c`.
    pub fn shift_x(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (m, coeff) in &self.terms {
            // (x + c)^e = sum_j binom(e, j) c^(e-j) x^j
            let e = m.x;
            let mut binom = Rational::one();
            let mut cpow = Rational::one();
            let mut cpows = Vec::with_capacity(e as usize + 1);
            for _ in 0..=e {
                cpows.push(cpow.clone());
                cpow *= c;
            }
            for j in (0..=e).rev() {
                out.add_term(
                    m.with_exponent(Var::X, j),
                    coeff * &binom * &cpows[(e - j) as usize],
                );
                if j > 0 {
                    binom = binom * int(j as i64) / int((e - j + 1) as i64);
                }
            }
        }
        out
    }

    /// Forward difference `p(x + 1) - p(x)`.
    pub fn delta(&self) -> Poly {
        &self.shift_x(&Rational::one()) - self
    }

    /// Backward difference `p(x) - p(x - 1)`.
    pub fn nabla(&self) -> Poly {
        self - &self.shift_x(&-Rational::one())
    }

    /// Applies `delta` `k` times; stops early once the result is zero.
    pub fn delta_pow(&self, k: u32) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.delta();
        }
        p
    }

    pub fn nabla_pow(&self, k: u32) -> Poly {
        let mut p = self.clone();
        for _ in 0..k {
            if p.is_zero() {
                break;
            }
            p = p.nabla();
        }
        p
    }

    /// Coefficients `c_0, ..., c_d` of a polynomial in `v` alone, or `None`
    /// if any other variable occurs.
    pub fn univariate_coeffs(&self, v: Var) -> Option<Vec<Rational>> {
        let d = self.degree_in(v);
        let mut out = vec![Rational::zero(); (d + 1).max(0) as usize];
        for (m, c) in &self.terms {
            if m.with_exponent(v, 0) != Monomial::ONE {
                return None;
            }
            out[m.exponent(v) as usize] = c.clone();
        }
        Some(out)
    }

    /// Exact quotient by a single-term polynomial, or `None` if the division
    /// leaves a remainder (or the divisor is not a single nonzero term).
    pub fn div_term(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.terms.len() != 1 {
            return None;
        }
        let (dm, dc) = divisor.terms.iter().next().unwrap();
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.x < dm.x || m.a < dm.a || m.n < dm.n {
                return None;
            }
            let q = Monomial::new(m.x - dm.x, m.a - dm.a, m.n - dm.n);
            out.insert(q, c / dc);
        }
        Some(Poly { terms: out })
    }

    /// LaTeX rendering using the same term order as [`fmt::Display`].
    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
            };
            if m.is_one() {
                s.push_str(&coeff);
                continue;
            }
            let mut parts = Vec::new();
            if !abs.is_one() {
                parts.push(coeff);
            }
            for (v, e) in m.factors() {
                if e == 1 {
                    parts.push(v.name().to_string());
                } else {
                    parts.push(format!("{}^{{{}}}", v.name(), e));
                }
            }
            s.push_str(&parts.join(" "));
        }
        s
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending graded-lex order, e.g.
    /// `-1/2*a*x^2 + 1/2*a^2*x + 3/2*a*x + x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            let mut first = true;
            if !abs.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (v, e) in m.factors() {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(v.name())?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(int(c))
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}
