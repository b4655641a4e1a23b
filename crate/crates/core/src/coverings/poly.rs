use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

/// A polynomial in `x` with integer coefficients; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<u32, i128>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn one() -> Self {
        IntPolynomial::monomial(1, 0)
    }

    pub fn x() -> Self {
        IntPolynomial::monomial(1, 1)
    }

    /// `c x^e`.
    pub fn monomial(c: i128, e: u32) -> Self {
        let mut p = IntPolynomial::zero();
        p.add_term(e, c);
        p
    }

    /// From dense coefficients, lowest degree first.
    pub fn from_coefficients(coeffs: &[i128]) -> Self {
        let mut p = IntPolynomial::zero();
        for (e, &c) in coeffs.iter().enumerate() {
            p.add_term(e as u32, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coefficient(&self, e: u32) -> i128 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    /// `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i128)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    /// Dense coefficients, lowest degree first; empty for zero.
    pub fn coefficients(&self) -> Vec<i128> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coefficient(e)).collect(),
        }
    }

    pub fn add_term(&mut self, e: u32, c: i128) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = IntPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = IntPolynomial::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = IntPolynomial::zero();
        let mut power = IntPolynomial::one();
        let mut at = 0;
        for (e, c) in self.terms() {
            while at < e {
                power = power.mul(other);
                at += 1;
            }
            for (pe, pc) in power.terms() {
                out.add_term(pe, c * pc);
            }
        }
        out
    }

    pub fn derivative(&self) -> Self {
        self.divided_derivative(1)
    }

    /// `(1/k!) d^k/dx^k`, which is integral: `x^n -> binom(n, k) x^(n-k)`.
    pub fn divided_derivative(&self, k: u32) -> Self {
        let mut out = IntPolynomial::zero();
        for (e, c) in self.terms() {
            if e >= k {
                out.add_term(e - k, c * binomial(e, k));
            }
        }
        out
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coefficients().iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// Coefficients reduced mod 2.
    pub fn mod2(&self) -> Self {
        let mut out = IntPolynomial::zero();
        for (e, c) in self.terms() {
            out.add_term(e, c.rem_euclid(2));
        }
        out
    }
}

/// `binom(n, k)`.
pub fn binomial(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: i128 = 1;
    for i in 0..k {
        c = c * (n - i) as i128 / (i + 1) as i128;
    }
    c
}

impl fmt::Display for IntPolynomial {
    /// Highest degree first, e.g. `3x^2 - x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match e {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.coefficients().serialize(s)
    }
}
