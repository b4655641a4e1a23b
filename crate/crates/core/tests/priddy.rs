use std::collections::{BTreeMap, BTreeSet};

use dyerlashof::qring::{free_q_basis, PriddyTable};
use dyerlashof::series::Monomial;

fn rank(rows: Vec<BTreeSet<Monomial>>) -> usize {
    let mut pivots: BTreeMap<Monomial, BTreeSet<Monomial>> = BTreeMap::new();
    for mut row in rows {
        while let Some(lead) = row.iter().next_back().cloned() {
            let Some(p) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            row = row.symmetric_difference(p).cloned().collect();
        }
    }
    pivots.len()
}

/// Images of admissible composites on `b_0`, grouped by length and grade, are
/// linearly independent in the Priddy model at low grades.
#[test]
fn admissible_images_are_independent() {
    let max_grade = 12;
    let table = PriddyTable::new(max_grade).unwrap();
    let mut groups: BTreeMap<(usize, u32), Vec<BTreeSet<Monomial>>> = BTreeMap::new();
    let basis = free_q_basis(0, 3, max_grade);
    assert!(basis.len() > 30);
    for (mono, grade) in basis {
        let mut image = table.b(0);
        for &m in mono.indices().iter().rev() {
            image = table.apply(m, &image).unwrap();
        }
        assert!(!image.is_zero(), "{mono} vanishes on b_0");
        groups.entry((mono.len(), grade)).or_default().push(image.terms().cloned().collect());
    }
    for ((len, grade), rows) in groups {
        let n = rows.len();
        assert_eq!(rank(rows), n, "length {len}, grade {grade}");
    }
}
