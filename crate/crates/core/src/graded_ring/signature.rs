use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::field::Rational;

use super::element::RingElement;
use super::presentation::RingPresentation;

/// Inertia of the middle-degree pairing `H^{n/2} × H^{n/2} → Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub nullity: usize,
}

impl Signature {
    /// Signature of the nondegenerate part.
    pub fn value(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn is_singular(&self) -> bool {
        self.nullity > 0
    }
}

/// `M_ij = ⟨b_i · b_j, [M]⟩` over the middle-degree normal monomials.
pub fn intersection_matrix(pres: &Arc<RingPresentation>) -> Vec<Vec<Rational>> {
    let basis: Vec<RingElement> = pres
        .basis(pres.top_degree() / 2)
        .iter()
        .map(|m| RingElement::monomial(pres, m.clone()))
        .collect();
    basis
        .iter()
        .map(|a| basis.iter().map(|b| (a * b).pair_fundamental()).collect())
        .collect()
}

pub fn intersection_signature(pres: &Arc<RingPresentation>) -> Signature {
    inertia(intersection_matrix(pres))
}

/// Sylvester inertia of a symmetric rational matrix by symmetric Gaussian
/// elimination. With no pivoting the pivots are the ratios of consecutive
/// leading principal minors; a zero pivot is replaced by a later nonzero
/// diagonal entry, or, failing that, a nonzero off-diagonal entry is folded
/// onto the diagonal with a congruence.
pub fn inertia(mut a: Vec<Vec<Rational>>) -> Signature {
    let n = a.len();
    let mut sig = Signature { positive: 0, negative: 0, nullity: 0 };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_symmetric(&mut a, k, i);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // row_i += row_j, col_i += col_j makes a_ii = 2 a_ij (a_jj = 0 here).
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                swap_symmetric(&mut a, k, i);
            } else {
                sig.nullity += n - k;
                return sig;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] / &pivot;
            for c in k..n {
                let delta = &factor * &a[k][c];
                a[r][c] -= delta;
            }
            for rr in k..n {
                let delta = &factor * &a[rr][k];
                a[rr][r] -= delta;
            }
        }
    }
    sig
}

fn swap_symmetric(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn hyperbolic_plane_needs_off_diagonal_fold() {
        let s = inertia(m(&[&[0, 1], &[1, 0]]));
        assert_eq!(s, Signature { positive: 1, negative: 1, nullity: 0 });
    }

    #[test]
    fn diagonal_and_singular_forms() {
        assert_eq!(inertia(m(&[&[1, 0], &[0, 1]])).value(), 2);
        assert_eq!(inertia(m(&[&[-1, 0, 0], &[0, 1, 0], &[0, 0, -3]])).value(), -1);
        let s = inertia(m(&[&[1, 1], &[1, 1]]));
        assert_eq!((s.value(), s.nullity), (1, 1));
        assert!(inertia(m(&[&[0, 0], &[0, 0]])).is_singular());
    }

    #[test]
    fn zero_leading_minor_with_later_diagonal() {
        // Leading 1x1 minor vanishes; the pivot comes from a_22.
        let s = inertia(m(&[&[0, 1, 0], &[1, 2, 0], &[0, 0, -1]]));
        assert_eq!(s, Signature { positive: 1, negative: 2, nullity: 0 });
    }
}
