use super::{Matrix, Scalar};

/// `s = u · a · v` with `u`, `v` unimodular and `s` diagonal.
///
/// `divisors` lists the nonzero diagonal of `s` (units included), positive and
/// forming a divisibility chain. The zero tail of the diagonal is not listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm<T> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
    pub v: Matrix<T>,
    pub divisors: Vec<T>,
}

impl<T: Scalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

/// Cokernel of `a: Z^cols -> Z^rows` as `Z^free_rank ⊕ ⊕ Z/torsion[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CokernelInvariants<T> {
    pub free_rank: usize,
    /// Divisibility chain with units stripped; every entry is > 1.
    pub torsion: Vec<T>,
}

pub fn smith_normal_form<T: Scalar>(a: &Matrix<T>) -> SmithForm<T> {
    let (m, n) = a.shape();
    let mut s = a.clone();
    let mut u = Matrix::identity(m);
    let mut v = Matrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&s, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        move_to_pivot(&mut s, &mut u, &mut v, t, pi, pj);

        loop {
            let mut leftover = false;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = s.get(i, t).clone() / s.get(t, t).clone();
                let neg_q = -q;
                s.add_row_multiple(i, t, &neg_q);
                u.add_row_multiple(i, t, &neg_q);
                leftover |= !s.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = s.get(t, j).clone() / s.get(t, t).clone();
                let neg_q = -q;
                s.add_col_multiple(j, t, &neg_q);
                v.add_col_multiple(j, t, &neg_q);
                leftover |= !s.get(t, j).is_zero();
            }

            if leftover {
                // A remainder smaller than the pivot survived; promote the smallest one.
                let candidates = (t..m).map(|i| (i, t)).chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_abs_entry(&s, candidates).expect("pivot row is nonzero");
                move_to_pivot(&mut s, &mut u, &mut v, t, pi, pj);
                continue;
            }

            let pivot = s.get(t, t).clone();
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    s.add_row_multiple(t, i, &T::one());
                    u.add_row_multiple(t, i, &T::one());
                }
                None => break,
            }
        }

        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let divisors = (0..t).map(|i| s.get(i, i).clone()).collect();
    SmithForm { u, s, v, divisors }
}

fn min_abs_entry<T: Scalar>(
    s: &Matrix<T>,
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), T)> = None;
    for (i, j) in positions {
        let x = s.get(i, j);
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().map_or(true, |(_, b)| ax < *b) {
            let unit = ax.is_one();
            best = Some(((i, j), ax));
            if unit {
                break;
            }
        }
    }
    best.map(|(pos, _)| pos)
}

fn move_to_pivot<T: Scalar>(
    s: &mut Matrix<T>,
    u: &mut Matrix<T>,
    v: &mut Matrix<T>,
    t: usize,
    i: usize,
    j: usize,
) {
    s.swap_rows(t, i);
    u.swap_rows(t, i);
    s.swap_cols(t, j);
    v.swap_cols(t, j);
}

pub fn cokernel_invariants<T: Scalar>(a: &Matrix<T>) -> CokernelInvariants<T> {
    let snf = smith_normal_form(a);
    CokernelInvariants {
        free_rank: a.rows() - snf.rank(),
        torsion: snf.divisors.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Signed};

    type M = Matrix<BigInt>;

    fn m(rows: &[&[i64]]) -> M {
        M::from_i64_rows(rows).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(a: &M) -> SmithForm<BigInt> {
        let snf = smith_normal_form(a);
        let usv = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(usv, snf.s, "S != U A V for {a:?}");
        assert!(snf.u.determinant().abs().is_one());
        assert!(snf.v.determinant().abs().is_one());
        assert!(snf.s.is_diagonal());
        for w in snf.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(snf.divisors.iter().all(|d| d.is_positive()));
        snf
    }

    #[test]
    fn identity_two_by_two() {
        let snf = check(&M::identity(2));
        assert_eq!(snf.divisors, big(&[1, 1]));
        assert_eq!(snf.s, M::identity(2));
    }

    #[test]
    fn diag_two_three() {
        assert_eq!(check(&m(&[&[2, 0], &[0, 3]])).divisors, big(&[1, 6]));
    }

    #[test]
    fn two_four_six_eight() {
        assert_eq!(check(&m(&[&[2, 4], &[6, 8]])).divisors, big(&[2, 4]));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let snf = check(&m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]));
        assert_eq!(snf.divisors, big(&[1, 3]));
        let snf = check(&m(&[&[4, 6, 10]]));
        assert_eq!(snf.divisors, big(&[2]));
        assert_eq!(check(&m(&[&[0], &[0]])).divisors, big(&[]));
    }

    #[test]
    fn empty_matrices() {
        let snf = check(&M::zeros(0, 3));
        assert!(snf.divisors.is_empty());
        assert_eq!(snf.v, M::identity(3));
        let snf = check(&M::zeros(2, 0));
        assert_eq!(snf.u, M::identity(2));
    }

    #[test]
    fn fixed_width_scalar() {
        let a = Matrix::<i64>::from_rows(vec![vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(smith_normal_form(&a).divisors, vec![2, 4]);
    }

    #[test]
    fn cokernels() {
        let c = cokernel_invariants(&M::zeros(1, 1));
        assert_eq!((c.free_rank, c.torsion), (1, vec![]));
        let c = cokernel_invariants(&m(&[&[6]]));
        assert_eq!((c.free_rank, c.torsion), (0, big(&[6])));
        let c = cokernel_invariants(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!((c.free_rank, c.torsion), (0, big(&[6])));
        let c = cokernel_invariants(&M::zeros(2, 0));
        assert_eq!((c.free_rank, c.torsion), (2, vec![]));
    }

    #[test]
    fn large_entries_stay_exact() {
        let a = m(&[&[i64::MAX, 3], &[i64::MAX - 1, 5]]);
        let snf = check(&a);
        assert_eq!(snf.divisors[0], BigInt::from(1));
        assert_eq!(snf.divisors[1], a.determinant().abs());
    }
}
