//! Exact rational linear algebra: rank and pivot-column extraction by
//! Gaussian elimination.  Used for the rank diagnostics of the curl operator
//! and to extract a basis of V = Im(*∂) from its spanning set.

use crate::chain::Chain2;
use crate::complex::{square_basis, unit_square};
use crate::lattice::Lattice;
use crate::scalar::{Rational, Scalar};
use crate::vorticity::curl;

/// Row-reduce `m` in place; returns (rank, pivot column indices).
/// Pivot columns of the original matrix index a maximal independent set of
/// its columns.
pub fn rank_with_pivots(m: &mut Vec<Vec<Rational>>) -> (usize, Vec<usize>) {
    let nrows = m.len();
    if nrows == 0 {
        return (0, Vec::new());
    }
    let ncols = m[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let piv = (row..nrows).find(|&r| !m[r][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(row, piv);
        let (pivot_row, rest) = {
            let (a, b) = m.split_at_mut(row + 1);
            (&a[row], b)
        };
        let pinv = invert(&pivot_row[col]);
        for r in rest.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let factor = r[col].mul(&pinv);
            for c in col..ncols {
                let delta = factor.mul(&pivot_row[c]);
                r[c].sub_assign(&delta);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (row, pivots)
}

fn invert(r: &Rational) -> Rational {
    use num::One;
    let one: Rational = One::one();
    one / r
}

/// The curl operator as a dense rational matrix whose columns are the curls
/// of the basis squares (plane-major ordering).
pub fn curl_matrix(lat: Lattice) -> Vec<Vec<Rational>> {
    let basis = square_basis(lat);
    let dim = basis.len();
    let mut m = vec![vec![Rational::zero(); dim]; dim];
    for (j, &(pl, s)) in basis.iter().enumerate() {
        let x: Chain2<Rational> = unit_square(lat, pl, s);
        let v = curl(&x);
        for (i, &(pl_i, s_i)) in basis.iter().enumerate() {
            let val = v.u[pl_i.index()].get(s_i);
            if !val.is_zero() {
                m[i][j] = val.clone();
            }
        }
    }
    m
}

/// Exact rank of the curl operator.
pub fn curl_rank(lat: Lattice) -> usize {
    let mut m = curl_matrix(lat);
    rank_with_pivots(&mut m).0
}

/// A basis of V = Im(*∂) as explicit 2-chains: the curls of the basis squares
/// whose columns are pivots of the curl matrix.
pub fn v_basis(lat: Lattice) -> Vec<Chain2<Rational>> {
    let mut m = curl_matrix(lat);
    let (_, pivots) = rank_with_pivots(&mut m);
    let basis = square_basis(lat);
    pivots
        .into_iter()
        .map(|j| {
            let (pl, s) = basis[j];
            curl(&unit_square::<Rational>(lat, pl, s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrix() {
        let r = |n: i64| Rational::from_int(n);
        let mut m = vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ];
        let (rank, pivots) = rank_with_pivots(&mut m);
        assert_eq!(rank, 2);
        assert_eq!(pivots, vec![0, 1]);
    }

    /// The Fourier symbol of the curl is the cross-product matrix with
    /// s(k) = (sin 2πk₁/N, ...), rank 2 off k = 0, so the exact rank is
    /// 2(N³−1).
    #[test]
    fn curl_rank_n3() {
        let lat = Lattice::new(3).unwrap();
        assert_eq!(curl_rank(lat), 2 * (27 - 1));
    }

    /// Harmonic 1-chains of the coarse complex (kernel of divergence and of
    /// the star-coboundary) are exactly the three constant axis fields.
    #[test]
    fn harmonic_kernel_is_three_dimensional() {
        use crate::chain::TwoHChain1;
        use crate::complex::{cboundary1, star1};
        let lat = Lattice::new(3).unwrap();
        let vol = lat.volume();
        let mut rows = Vec::new();
        for ax in 0..3 {
            for site in lat.sites() {
                let mut q: TwoHChain1<Rational> = TwoHChain1::zeros(lat);
                q.stick[ax].set(site, Rational::one());
                let div = cboundary1(&q);
                let cc = curl(&star1(&q));
                let mut row = Vec::with_capacity(4 * vol);
                for s in lat.sites() {
                    row.push(div.coeff.get(s).clone());
                }
                for pl in 0..3 {
                    for s in lat.sites() {
                        row.push(cc.u[pl].get(s).clone());
                    }
                }
                rows.push(row);
            }
        }
        let (rank, _) = rank_with_pivots(&mut rows);
        assert_eq!(rank, 3 * vol - 3);
    }

    /// The linking form restricted to V is non-degenerate: its Gram matrix on
    /// a basis of V has full rank.
    #[test]
    fn linking_nondegenerate_on_v() {
        use crate::intersection::linking;
        let lat = Lattice::new(3).unwrap();
        let basis = v_basis(lat);
        let mut gram: Vec<Vec<Rational>> = basis
            .iter()
            .map(|a| basis.iter().map(|b| linking(a, b)).collect())
            .collect();
        let (rank, _) = rank_with_pivots(&mut gram);
        assert_eq!(rank, basis.len());
    }

    #[test]
    fn v_basis_spans_v_n3() {
        let lat = Lattice::new(3).unwrap();
        let basis = v_basis(lat);
        assert_eq!(basis.len(), 52);
        // stacking the basis vectors gives a full-rank matrix
        let all = square_basis(lat);
        let mut m: Vec<Vec<Rational>> = basis
            .iter()
            .map(|x| {
                all.iter()
                    .map(|&(pl, s)| x.u[pl.index()].get(s).clone())
                    .collect()
            })
            .collect();
        let (rank, _) = rank_with_pivots(&mut m);
        assert_eq!(rank, 52);
    }
}
