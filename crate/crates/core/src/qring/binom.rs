/// The coefficient of `z^b` in `(1 + z)^a` over GF(2), for any integer `a`.
///
/// For `a >= 0` this is Lucas' criterion `b & a == b`. For negative `a`,
/// `binom(a, b) = ± binom(b - a - 1, b)`. Negative `b` gives zero.
pub fn binom_mod2(a: i64, b: i64) -> bool {
    if b < 0 {
        return false;
    }
    let top = if a >= 0 { a } else { b - a - 1 };
    top & b == b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!(binom_mod2(-1, 5));
        assert!(!binom_mod2(4, 2));
        assert!(!binom_mod2(-2, 3));
        assert!(binom_mod2(-2, 4));
        assert!(binom_mod2(0, 0));
        assert!(!binom_mod2(0, 1));
        assert!(!binom_mod2(3, -1));
        assert!(binom_mod2(3, 3));
        assert!(!binom_mod2(3, 4));
        assert!(binom_mod2(1 << 40, 1 << 40));
    }

    /// Coefficients of `(1 + z)^a` by repeated multiplication or division, mod `z^16`.
    fn expanded(a: i64) -> Vec<bool> {
        let mut c = vec![false; 16];
        c[0] = true;
        for _ in 0..a.unsigned_abs() {
            if a > 0 {
                for i in (1..16).rev() {
                    c[i] ^= c[i - 1];
                }
            } else {
                for i in 1..16 {
                    c[i] ^= c[i - 1];
                }
            }
        }
        c
    }

    #[test]
    fn matches_expansion() {
        for a in -20..=20 {
            let c = expanded(a);
            for b in 0..16 {
                assert_eq!(binom_mod2(a, b), c[b as usize], "a={a} b={b}");
            }
        }
    }
}
