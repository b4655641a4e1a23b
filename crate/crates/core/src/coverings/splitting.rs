use serde::Serialize;

use super::covering::FiniteCovering;
use super::poly::IntPolynomial;
use super::CoveringError;

/// `s(g) = Σ_{k>=1} x^{k-1} (1/k!) g^(k)`.
pub fn splitting_map(g: &IntPolynomial) -> IntPolynomial {
    let mut out = IntPolynomial::zero();
    let Some(d) = g.degree() else {
        return out;
    };
    for k in 1..=d {
        out = out.add(&IntPolynomial::monomial(1, k - 1).mul(&g.divided_derivative(k)));
    }
    out
}

/// The covering `Σ_{k>=1} x^{k-1} × p^(k)/k!`, whose `χ` is `s(χ(p))`.
pub fn split_covering(p: &FiniteCovering) -> Result<FiniteCovering, CoveringError> {
    let top = p.fiber_sizes().into_iter().max().unwrap_or(0);
    let mut out = FiniteCovering::empty();
    let mut xpow = FiniteCovering::trivial(0);
    for k in 1..=top {
        out = out.sum(&xpow.product(&p.divided_derivative(k)?));
        xpow = xpow.product(&FiniteCovering::identity(1));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    /// `f`, reduced mod 2.
    pub input: IntPolynomial,
    /// `s(x f)` reduced mod 2.
    pub output: IntPolynomial,
    pub holds: bool,
}

/// Whether `s(x f) ≡ f (mod 2)`.
pub fn splitting_check(f: &IntPolynomial) -> SplittingReport {
    let input = f.mod2();
    let output = splitting_map(&IntPolynomial::x().mul(&input)).mod2();
    SplittingReport {
        holds: output == input,
        input,
        output,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r = splitting_check(&IntPolynomial::monomial(1, 2));
        assert!(r.holds);
        assert_eq!(splitting_map(&IntPolynomial::monomial(1, 3)).to_string(), "7x^2");
        assert!(splitting_check(&IntPolynomial::zero()).holds);
        assert!(splitting_check(&IntPolynomial::zero()).output.is_zero());
    }

    #[test]
    fn covering_level_matches_polynomial_level() {
        let p = FiniteCovering::with_fiber_sizes(&[3, 0, 1, 4]);
        let s = split_covering(&p).unwrap();
        assert_eq!(s.euler_char(), splitting_map(&p.euler_char()));
    }
}
