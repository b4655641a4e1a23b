//! Independent oracles, written without the library's series, ring or rewriting code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

/// `binom(a, b) mod 2` for `a >= 0` by Lucas' theorem, digit by digit.
pub fn lucas(a: u64, b: u64) -> bool {
    let (mut a, mut b) = (a, b);
    while b > 0 {
        if b & 1 > a & 1 {
            return false;
        }
        a >>= 1;
        b >>= 1;
    }
    true
}

/// Coefficients of `(1 + z)^a` mod 2 below `z^len`, for any integer `a`, by
/// repeated multiplication by `1 + z` or by its inverse `Σ z^k`.
pub fn binomial_series(a: i64, len: usize) -> Vec<bool> {
    let mut c = vec![false; len];
    c[0] = true;
    for _ in 0..a.unsigned_abs() {
        if a > 0 {
            for i in (1..len).rev() {
                c[i] ^= c[i - 1];
            }
        } else {
            for i in 1..len {
                c[i] ^= c[i - 1];
            }
        }
    }
    c
}

/// `binom(a, b) mod 2` with a possibly negative top.
pub fn binom_oracle(a: i64, b: i64) -> bool {
    if b < 0 {
        return false;
    }
    if a >= 0 {
        return lucas(a as u64, b as u64);
    }
    binomial_series(a, b as usize + 1)[b as usize]
}

/// The closed-form Adem sum for `q_m q_n`, as pairs `(m + 2n - 2i, i)`.
pub fn adem_closed_form(m: u32, n: u32) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    for i in 0..=(m + 2 * n) / 2 {
        if binom_oracle(i as i64 - n as i64 - 1, 2 * i as i64 - m as i64 - n as i64) {
            out.insert((m + 2 * n - 2 * i, i));
        }
    }
    out
}

/// Ranks of the order-two Lazard ring, from scratch.
///
/// The universal series `x + y + Σ c_ij x^i y^j` has coefficients in a polynomial
/// ring over GF(2) on symbols `c_ij` of degree `i + j - 1`. The relations are the
/// coefficients of `F(x, y) - F(y, x)`, `F(x, x)` and
/// `F(F(x, y), z) - F(x, F(y, z))`, computed through total degree `dmax + 1`. The
/// degree-`d` part of the ideal they generate is spanned by monomial multiples of
/// the relations, and its rank is found by elimination over GF(2).
pub mod lazard {
    use super::*;

    type Mono = Vec<u8>;
    type Poly = BTreeSet<Mono>;
    type Series = BTreeMap<[u32; 3], Poly>;

    struct Ctx {
        degrees: Vec<u32>,
        n: u32,
    }

    fn toggle(p: &mut Poly, m: Mono) {
        if !p.remove(&m) {
            p.insert(m);
        }
    }

    fn pmul(a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for x in a {
            for y in b {
                toggle(&mut out, x.iter().zip(y).map(|(p, q)| p + q).collect());
            }
        }
        out
    }

    impl Ctx {
        fn one(&self) -> Poly {
            [vec![0; self.degrees.len()]].into_iter().collect()
        }

        fn add_into(&self, s: &mut Series, e: [u32; 3], c: &Poly) {
            if e.iter().sum::<u32>() > self.n {
                return;
            }
            let slot = s.entry(e).or_default();
            for m in c {
                toggle(slot, m.clone());
            }
            if slot.is_empty() {
                s.remove(&e);
            }
        }

        fn smul(&self, a: &Series, b: &Series) -> Series {
            let mut out = Series::new();
            for (ea, ca) in a {
                for (eb, cb) in b {
                    let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                    if e.iter().sum::<u32>() <= self.n {
                        self.add_into(&mut out, e, &pmul(ca, cb));
                    }
                }
            }
            out
        }

        fn var(&self, i: usize) -> Series {
            let mut e = [0; 3];
            e[i] = 1;
            [(e, self.one())].into_iter().collect()
        }

        /// `Σ f_ij u^i v^j` for a bivariate `f` stored in the first two slots.
        fn apply(&self, f: &Series, u: &Series, v: &Series) -> Series {
            let mut upow = vec![[([0, 0, 0], self.one())].into_iter().collect::<Series>()];
            let mut vpow = upow.clone();
            for _ in 0..self.n {
                upow.push(self.smul(upow.last().unwrap(), u));
                vpow.push(self.smul(vpow.last().unwrap(), v));
            }
            let mut out = Series::new();
            for (e, c) in f {
                let term = self.smul(&upow[e[0] as usize], &vpow[e[1] as usize]);
                for (te, tc) in term {
                    self.add_into(&mut out, te, &pmul(&tc, c));
                }
            }
            out
        }
    }

    fn monomials(degrees: &[u32], d: u32) -> Vec<Mono> {
        fn go(degrees: &[u32], at: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
            if at == degrees.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let mut k = 0;
            while k * degrees[at] <= left {
                cur[at] = k as u8;
                go(degrees, at + 1, left - k * degrees[at], cur, out);
                k += 1;
            }
            cur[at] = 0;
        }
        let mut out = Vec::new();
        go(degrees, 0, d, &mut vec![0; degrees.len()], &mut out);
        out
    }

    fn gf2_rank(mut rows: Vec<Vec<u64>>) -> usize {
        let mut rank = 0;
        let width = rows.first().map_or(0, Vec::len) * 64;
        for col in 0..width {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Ranks in degrees `0..=dmax`.
    pub fn ranks(dmax: u32) -> Vec<usize> {
        let mut gens = Vec::new();
        for d in 1..=dmax {
            for i in 1..=d {
                gens.push((i, d + 1 - i));
            }
        }
        let degrees: Vec<u32> = gens.iter().map(|(i, j)| i + j - 1).collect();
        let ctx = Ctx { degrees: degrees.clone(), n: dmax + 1 };
        let mut f = Series::new();
        f.insert([1, 0, 0], ctx.one());
        f.insert([0, 1, 0], ctx.one());
        for (g, &(i, j)) in gens.iter().enumerate() {
            let mut m = vec![0u8; gens.len()];
            m[g] = 1;
            f.insert([i, j, 0], [m].into_iter().collect());
        }
        let (x, y, z) = (ctx.var(0), ctx.var(1), ctx.var(2));

        let mut relations: Vec<Poly> = Vec::new();
        let swapped = ctx.apply(&f, &y, &x);
        let mut diff = f.clone();
        for (e, c) in &swapped {
            ctx.add_into(&mut diff, *e, c);
        }
        relations.extend(diff.into_values());
        relations.extend(ctx.apply(&f, &x, &x).into_values());
        let fxy = ctx.apply(&f, &x, &y);
        let fyz = ctx.apply(&f, &y, &z);
        let mut assoc = ctx.apply(&f, &fxy, &z);
        for (e, c) in ctx.apply(&f, &x, &fyz) {
            ctx.add_into(&mut assoc, e, &c);
        }
        relations.extend(assoc.into_values());

        let degree_of = |m: &Mono| -> u32 { m.iter().zip(&degrees).map(|(&k, &d)| k as u32 * d).sum() };
        (0..=dmax)
            .map(|d| {
                let basis = monomials(&degrees, d);
                let index: BTreeMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
                let words = basis.len().div_ceil(64).max(1);
                let mut rows = Vec::new();
                for r in &relations {
                    let Some(rd) = r.iter().next().map(&degree_of) else {
                        continue;
                    };
                    if rd > d {
                        continue;
                    }
                    for m in monomials(&degrees, d - rd) {
                        let mut row = vec![0u64; words];
                        for t in r {
                            let prod: Mono = t.iter().zip(&m).map(|(a, b)| a + b).collect();
                            let i = index[&prod];
                            row[i / 64] ^= 1 << (i % 64);
                        }
                        rows.push(row);
                    }
                }
                basis.len() - gf2_rank(rows)
            })
            .collect()
    }
}

/// Number of degree-`d` monomials in one generator of each degree `>= 2` not of
/// the form `2^k - 1`.
pub fn polynomial_count(d: u32) -> usize {
    let mut counts = vec![0usize; d as usize + 1];
    counts[0] = 1;
    for g in (2..=d).filter(|g| !(g + 1).is_power_of_two()) {
        for e in g as usize..=d as usize {
            counts[e] += counts[e - g as usize];
        }
    }
    counts[d as usize]
}
