use super::monomial::{is_admissible_pair, QMonomial};

/// Admissible composites on a generator of grade `generator_grade`, of length at
/// most `max_length` and grade at most `max_grade`, in canonical order and paired
/// with their grades. The empty composite (the generator itself) is included.
pub fn free_q_basis(generator_grade: u32, max_length: usize, max_grade: u32) -> Vec<(QMonomial, u32)> {
    let mut out = Vec::new();
    if generator_grade <= max_grade {
        out.push((QMonomial::new(Vec::new()), generator_grade));
    }
    let mut inner_first = Vec::new();
    extend(generator_grade, None, max_length, max_grade, &mut inner_first, &mut out);
    out.sort();
    out
}

fn extend(
    grade: u32,
    previous: Option<u32>,
    max_length: usize,
    max_grade: u32,
    inner_first: &mut Vec<u32>,
    out: &mut Vec<(QMonomial, u32)>,
) {
    if inner_first.len() == max_length || 2 * grade > max_grade {
        return;
    }
    let top = max_grade - 2 * grade;
    for m in 0..=top {
        if previous.is_some_and(|n| !is_admissible_pair(m, n)) {
            break;
        }
        inner_first.push(m);
        let g = 2 * grade + m;
        out.push((QMonomial::new(inner_first.iter().rev().copied().collect()), g));
        extend(g, Some(m), max_length, max_grade, inner_first, out);
        inner_first.pop();
    }
}
