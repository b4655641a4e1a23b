use crate::fgl::{additive_over, lubin_quotient, LazardRing};
use crate::qring::b_series;
use crate::series::{invariant_rewrite, vars, CoefficientRing, RingElem, RingMap, TruncatedSeries};

use super::{dring_validate, t_vars, DringError, TotalSquare};

/// GF(2) with the additive law and no generators.
pub fn additive_total_square(truncation: u32) -> TotalSquare {
    let law = additive_over(&CoefficientRing::gf2(), truncation + 2);
    TotalSquare::new(law, Vec::new(), truncation, 0).expect("well-formed")
}

/// The total square on the order-two Lazard approximation with `D_t(F) = F_t`:
/// `D_t(a_i_j)` is the coefficient series of `X^i Y^j` in the Lubin quotient.
///
/// Needs `truncation >= dmax`, so that every image coefficient within the
/// ring's degree bound is read off.
pub fn nstar_total_square(dmax: u32, truncation: u32) -> Result<TotalSquare, DringError> {
    if truncation < dmax {
        return Err(DringError::Shape(format!(
            "truncation {truncation} is below the degree bound {dmax}"
        )));
    }
    let lazard = LazardRing::new(dmax)?;
    let ring = lazard.ring().clone();
    let law = lazard.law(truncation + 2)?;
    let quotient = lubin_quotient(&law)?;
    let ft = quotient.target().series();
    let t = t_vars();
    let action = lazard
        .generator_indices()
        .iter()
        .map(|&(i, j)| {
            let terms: Vec<([u32; 1], RingElem)> = (0..=truncation)
                .map(|n| ([n], ft.coefficient(&[i, j, n])))
                .collect();
            TruncatedSeries::from_terms(&ring, &t, truncation, terms.iter().map(|(e, c)| (&e[..], c.clone())))
        })
        .collect();
    let n = ring.num_generators();
    TotalSquare::new(law, action, truncation, n)
}

/// Adjoins `b_0, ..., b_T` (with `b_i` of degree `i`) to the base and sets
/// `D_t(b)(x F(x, t)) = b(x) b(F(x, t))` for `b(x) = Σ b_i x^i`.
///
/// The ring is truncated above total degree `T`. The images of the `b_k` involve
/// `b_j` with `j > k`, so all of `b_0, ..., b_T` are adjoined.
pub fn bo_dring(base: &TotalSquare) -> Result<TotalSquare, DringError> {
    let n = base.truncation();
    let gens = (0..=n).map(|i| (format!("b_{i}"), i)).collect();
    let ring = base.ring().adjoin_free(gens, Some(n))?;
    let first_b = base.ring().num_generators();
    let law = base.law().change_ring(&ring)?;

    let xt = vars(&[("x", 1), ("t", 1)]);
    let b = b_series(&ring, first_b, n + 1, &xt, n);
    let fxt = law.series().restrict(n).rename(&[("y", "t")]);
    let g = b.mul(&b.substitute(&[("x", &fxt)])?)?;
    let h = invariant_rewrite(&g, law.series())?;

    let t = t_vars();
    let mut action = Vec::with_capacity(ring.num_generators());
    for image in base.action() {
        action.push(image.change_ring(&ring)?);
    }
    for k in 0..=n {
        let terms: Vec<([u32; 1], RingElem)> = (0..=n).map(|m| ([m], h.coefficient(&[m, k]))).collect();
        action.push(TruncatedSeries::from_terms(
            &ring,
            &t,
            n,
            terms.iter().map(|(e, c)| (&e[..], c.clone())),
        ));
    }
    TotalSquare::new(law, action, n, base.coefficient_generators())
}

/// Sends the law's coefficient generators to zero, which makes the law additive,
/// and re-validates the reduced structure.
pub fn thom_reduction(ts: &TotalSquare) -> Result<TotalSquare, DringError> {
    let ring = ts.ring();
    let cut = ts.coefficient_generators();
    let keep: Vec<bool> = (0..ring.num_generators()).map(|g| g >= cut).collect();
    let target = ring.restrict_generators(&keep)?;
    let images: Vec<RingElem> = (0..ring.num_generators())
        .map(|g| if g < cut { RingElem::zero() } else { target.generator(g - cut) })
        .collect();
    let map = RingMap::new(ring.clone(), target, images)?;
    let law = ts.law().map_coefficients(&map)?;
    if !law.is_additive() {
        return Err(DringError::NotAdditive);
    }
    let action = ts.action()[cut..]
        .iter()
        .map(|a| a.map_coefficients(&map))
        .collect::<Result<Vec<_>, _>>()?;
    let reduced = TotalSquare::new(law, action, ts.truncation(), 0)?;
    let report = dring_validate(&reduced)?;
    if !report.passed() {
        return Err(DringError::Invalid(Box::new(report)));
    }
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dring::DringAxiom;
    use crate::qring::PriddyTable;

    #[test]
    fn nstar_squares_at_zero() {
        let ts = nstar_total_square(3, 4).unwrap();
        let report = dring_validate(&ts).unwrap();
        assert!(report.passed(), "{report}");
        for (g, image) in ts.action().iter().enumerate() {
            let a = ts.ring().generator(g);
            assert_eq!(image.constant_term(), ts.ring().mul(&a, &a));
        }
    }

    #[test]
    fn additive_bo_matches_the_priddy_table() {
        let bo = bo_dring(&additive_total_square(6)).unwrap();
        assert!(dring_validate(&bo).unwrap().passed());
        let table = PriddyTable::new(6).unwrap();
        for k in 0..=3 {
            let image = bo.image_of(&format!("b_{k}")).unwrap();
            for n in 0..=6 - 2 * k {
                assert_eq!(&image.coefficient(&[n]), table.q(n, k).unwrap(), "q_{n}(b_{k})");
            }
        }
    }

    #[test]
    fn corrupted_image_is_caught() {
        let ts = nstar_total_square(4, 6).unwrap();
        let g = ts.ring().generator_index("a_2_1").unwrap();
        let image = &ts.action()[g];
        let flip = TruncatedSeries::constant(ts.ring(), image.variables(), image.truncation(), &image.constant_term());
        let bad = ts.with_image(g, image.add(&flip).unwrap()).unwrap();
        let report = dring_validate(&bad).unwrap();
        assert!(!report.status(DringAxiom::QuotientLaw).unwrap().passed);
    }

    #[test]
    fn reduction_of_nstar_is_trivial() {
        let reduced = thom_reduction(&nstar_total_square(3, 4).unwrap()).unwrap();
        assert_eq!(reduced.ring().num_generators(), 0);
        assert!(reduced.law().is_additive());
    }
}
