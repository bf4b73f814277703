//! Exact rank and left-kernel extraction for sparse integer matrices.
//!
//! Elimination is fraction-free: a row is reduced against a pivot row by
//! `row ← p·row − c·pivot` and then divided by the gcd of its entries, so no
//! rational arithmetic is ever performed and entry growth stays bounded by the
//! content of the data.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::Rat;

/// Sparse row: column index → nonzero entry.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Result of eliminating a sequence of rows in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub rank: usize,
    /// Coefficients `c_k` (keyed by row index) with `Σ c_k · row_k = 0`, involving the
    /// first row that depends on its predecessors. `None` when all rows are independent.
    pub first_dependency: Option<BTreeMap<usize, BigInt>>,
}

struct Pivot {
    row: SparseRow,
    combo: Option<BTreeMap<usize, BigInt>>,
}

fn content(row: &SparseRow, combo: Option<&BTreeMap<usize, BigInt>>) -> BigInt {
    let mut g = BigInt::zero();
    for v in row
        .values()
        .chain(combo.into_iter().flat_map(|c| c.values()))
    {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

fn axpy(
    target: &mut BTreeMap<usize, BigInt>,
    p: &BigInt,
    c: &BigInt,
    src: &BTreeMap<usize, BigInt>,
) {
    // target ← p·target − c·src
    for v in target.values_mut() {
        *v *= p;
    }
    for (k, s) in src {
        let e = target.entry(*k).or_insert_with(BigInt::zero);
        *e -= c * s;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

/// Eliminates `rows` in order. With `track`, records the combination of input rows that
/// produces the first zero row and stops there.
pub fn eliminate(rows: &[SparseRow], track: bool) -> Elimination {
    let mut pivots: HashMap<usize, Pivot> = HashMap::new();
    for (k, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut combo = track.then(|| BTreeMap::from([(k, BigInt::one())]));
        loop {
            let Some((&lead, lead_val)) = v.iter().next() else {
                if track {
                    return Elimination {
                        rank: pivots.len(),
                        first_dependency: combo,
                    };
                }
                break;
            };
            let Some(piv) = pivots.get(&lead) else {
                pivots.insert(lead, Pivot { row: v, combo });
                break;
            };
            let p = piv.row[&lead].clone();
            let c = lead_val.clone();
            let g = p.gcd(&c);
            let (p, c) = (&p / &g, &c / &g);
            axpy(&mut v, &p, &c, &piv.row);
            if let (Some(cm), Some(pc)) = (combo.as_mut(), piv.combo.as_ref()) {
                axpy(cm, &p, &c, pc);
            }
            let g = content(&v, combo.as_ref());
            if !g.is_zero() && !g.is_one() {
                for x in v.values_mut() {
                    *x = &*x / &g;
                }
                if let Some(cm) = combo.as_mut() {
                    for x in cm.values_mut() {
                        *x = &*x / &g;
                    }
                }
            }
        }
    }
    Elimination {
        rank: pivots.len(),
        first_dependency: None,
    }
}

pub fn rank(rows: &[SparseRow]) -> usize {
    eliminate(rows, false).rank
}

/// Clears denominators of a rational row; returns the integer row and the multiplier used.
pub fn integer_row(entries: impl IntoIterator<Item = (usize, Rat)>) -> (SparseRow, BigInt) {
    let entries: Vec<(usize, Rat)> = entries.into_iter().filter(|(_, q)| !q.is_zero()).collect();
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let row = entries
        .into_iter()
        .map(|(k, q)| (k, q.numer() * (&lcm / q.denom())))
        .collect();
    (row, lcm)
}

/// Scales an integer vector to be primitive with a positive first entry.
pub fn normalize_primitive(v: &mut BTreeMap<usize, BigInt>) {
    v.retain(|_, x| !x.is_zero());
    let g = v.values().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let neg = v.values().next().is_some_and(|x| x.is_negative());
    let g = if neg { -g } else { g };
    for x in v.values_mut() {
        *x = &*x / &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|(k, v)| (*k, BigInt::from(*v)))
            .collect()
    }

    // Plain Gaussian elimination over ℚ on a dense copy; independent of the sparse path.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| Rat::from_integer(BigInt::from(*v)))
                    .collect()
            })
            .collect();
        let cols = m.first().map_or(0, |r| r.len());
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in 0..m.len() {
                if i != r && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[r][c];
                    for j in 0..cols {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn small_examples() {
        let rows = vec![
            row(&[(0, 1), (1, 2)]),
            row(&[(0, 2), (1, 4)]),
            row(&[(2, 3)]),
        ];
        let e = eliminate(&rows, true);
        assert_eq!(e.rank, 1);
        let mut dep = e.first_dependency.unwrap();
        normalize_primitive(&mut dep);
        assert_eq!(
            dep,
            BTreeMap::from([(0, BigInt::from(2)), (1, BigInt::from(-1))])
        );
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[SparseRow::new()]), 0);
    }

    #[test]
    fn integer_row_clears_denominators() {
        let (r, s) = integer_row(vec![
            (0, Rat::new(1.into(), 2.into())),
            (3, Rat::new(2.into(), 3.into())),
        ]);
        assert_eq!(s, BigInt::from(6));
        assert_eq!(r, row(&[(0, 3), (3, 4)]));
    }

    proptest! {
        #[test]
        fn rank_matches_dense_oracle(m in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..7)) {
            let sparse: Vec<SparseRow> = m.iter().map(|r| row(&r.iter().copied().enumerate().collect::<Vec<_>>())).collect();
            prop_assert_eq!(rank(&sparse), dense_rank(&m));
        }

        #[test]
        fn dependency_is_in_left_kernel(m in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 1..7)) {
            let sparse: Vec<SparseRow> = m.iter().map(|r| row(&r.iter().copied().enumerate().collect::<Vec<_>>())).collect();
            let e = eliminate(&sparse, true);
            match e.first_dependency {
                None => prop_assert_eq!(dense_rank(&m), m.len()),
                Some(dep) => {
                    prop_assert!(!dep.is_empty());
                    for c in 0..3 {
                        let s: BigInt = dep.iter().map(|(k, v)| v * BigInt::from(m[*k][c])).sum();
                        prop_assert!(s.is_zero());
                    }
                    let last = *dep.keys().next_back().unwrap();
                    prop_assert_eq!(dense_rank(&m[..last]), last);
                    prop_assert!(dense_rank(&m[..=last]) == last);
                }
            }
        }
    }
}
