use super::solve::solve_by_weight;
use super::{vars, SeriesError, TruncatedSeries, Variable};

/// Rewrites a series `G(x, t)` invariant under `x -> F(x, t)` as `H(t, u)` with
/// `H(t, x F(x, t)) = G(x, t)` up to the truncation of `G`.
///
/// `law` is a series in `x, y` of the same weight as `x`; `G` lives over the
/// variables `x, t`. The result lives over `t` (weight of `t`) and `u` (twice
/// the weight of `x`).
pub fn invariant_rewrite(g: &TruncatedSeries, law: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let gv = g.variables();
    let (xw, tw) = match gv {
        [x, t] if x.name == "x" && t.name == "t" => (x.weight, t.weight),
        _ => {
            return Err(SeriesError::VariableMismatch {
                left: describe(gv),
                right: "[x, t]".into(),
            })
        }
    };
    let lv = law.variables();
    if lv.len() != 2 || lv[0].name != "x" || lv[1].name != "y" || lv[0].weight != xw || lv[1].weight != tw {
        return Err(SeriesError::VariableMismatch {
            left: describe(lv),
            right: describe(&vars(&[("x", xw), ("y", tw)])),
        });
    }
    let n = g.truncation();
    if law.truncation() < n {
        return Err(SeriesError::TruncationMismatch {
            left: n,
            right: law.truncation(),
        });
    }
    let fxt = law.restrict(n).rename(&[("y", "t")]);
    if !std::sync::Arc::ptr_eq(g.ring(), fxt.ring()) && **g.ring() != **fxt.ring() {
        return Err(SeriesError::RingMismatch);
    }

    let moved = g.substitute(&[("x", &fxt)])?;
    if let Some((exps, c)) = moved.first_difference(g)? {
        return Err(SeriesError::NotInvariant {
            monomial: g.format_monomial(&exps),
            coefficient: g.ring().format(&c),
        });
    }

    let x = TruncatedSeries::variable(g.ring(), gv, n, "x")?;
    let uu = x.mul(&fxt)?;
    let uw = 2 * xw;
    let mut unknowns = Vec::new();
    for w in 0..=n {
        for b in (0..=w / uw).rev() {
            let rest = w - b * uw;
            if rest % tw == 0 {
                unknowns.push((rest / tw, b, w));
            }
        }
    }
    let mut upow = vec![TruncatedSeries::one(g.ring(), gv, n)];
    let columns: Vec<TruncatedSeries> = unknowns
        .iter()
        .map(|&(a, b, _)| {
            while upow.len() <= b as usize {
                let next = upow.last().expect("nonempty").mul(&uu).expect("same shape");
                upow.push(next);
            }
            upow[b as usize].mul_monomial(&[0, a], &g.ring().one())
        })
        .collect();
    let weights: Vec<u32> = unknowns.iter().map(|u| u.2).collect();
    let coeffs = solve_by_weight(g, &columns, &weights).map_err(|e| match e {
        SeriesError::Inconsistent { weight, monomial } => SeriesError::NotExpressible { weight, monomial },
        other => other,
    })?;

    let out_vars = vec![Variable::new("t", tw), Variable::new("u", uw)];
    let terms: Vec<(Vec<u32>, _)> = unknowns
        .iter()
        .zip(coeffs)
        .map(|(&(a, b, _), c)| (vec![a, b], c))
        .collect();
    Ok(TruncatedSeries::from_terms(
        g.ring(),
        &out_vars,
        n,
        terms.iter().map(|(e, c)| (e.as_slice(), c.clone())),
    ))
}

fn describe(v: &[Variable]) -> String {
    let names: Vec<String> = v.iter().map(|v| format!("{}:{}", v.name, v.weight)).collect();
    format!("[{}]", names.join(", "))
}
