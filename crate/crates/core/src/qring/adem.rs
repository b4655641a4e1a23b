use super::binom::binom_mod2;
use super::monomial::{QMonomial, QPolynomial};
use super::QringError;

/// Rewrite steps allowed before [`normal_form`] gives up.
pub const DEFAULT_STEP_GUARD: usize = 1_000_000;

/// `Σ_i binom(i - n - 1, 2i - m - n) q_{m+2n-2i} q_i`, over all `i >= 0` with
/// `m + 2n - 2i >= 0`. Not normalized.
pub fn adem_expand(m: u32, n: u32) -> QPolynomial {
    let top = (m + 2 * n) / 2;
    (0..=top)
        .filter(|&i| binom_mod2(i as i64 - n as i64 - 1, 2 * i as i64 - m as i64 - n as i64))
        .map(|i| QMonomial::new(vec![m + 2 * n - 2 * i, i]))
        .collect()
}

/// Which inadmissible pair of a monomial is rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Replaces the pair at positions `pos, pos + 1` of `mono` by its Adem expansion.
pub fn rewrite_at(mono: &QMonomial, pos: usize) -> QPolynomial {
    let idx = mono.indices();
    adem_expand(idx[pos], idx[pos + 1])
        .terms()
        .map(|pair| {
            let mut out = idx[..pos].to_vec();
            out.extend_from_slice(pair.indices());
            out.extend_from_slice(&idx[pos + 2..]);
            QMonomial::new(out)
        })
        .collect()
}

/// Rewrites until every monomial is admissible, leftmost pair first.
pub fn normal_form(p: &QPolynomial) -> Result<QPolynomial, QringError> {
    normal_form_with(p, Strategy::Leftmost, DEFAULT_STEP_GUARD, |_, _| {})
}

/// Rewrites until every monomial is admissible.
///
/// Each step takes the first inadmissible monomial in canonical order, rewrites
/// the pair chosen by `strategy`, and reports `(monomial, replacement)` to `on_step`.
pub fn normal_form_with(
    p: &QPolynomial,
    strategy: Strategy,
    guard: usize,
    mut on_step: impl FnMut(&QMonomial, &QPolynomial),
) -> Result<QPolynomial, QringError> {
    let mut current = p.clone();
    let mut steps = 0;
    loop {
        let next = current.terms().find_map(|m| {
            let pos = match strategy {
                Strategy::Leftmost => m.inadmissible_positions().next(),
                Strategy::Rightmost => m.inadmissible_positions().last(),
            };
            pos.map(|pos| (m.clone(), pos))
        });
        let Some((mono, pos)) = next else {
            return Ok(current);
        };
        if steps == guard {
            return Err(QringError::NonTermination {
                steps,
                pending: mono.to_string(),
            });
        }
        steps += 1;
        let replacement = rewrite_at(&mono, pos);
        on_step(&mono, &replacement);
        current.toggle(mono);
        current.add_assign(&replacement);
    }
}
