//! Integer row lattices in Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// A sublattice of `Z^m` stored as a basis in row Hermite normal form:
/// strictly increasing pivot columns, positive pivots, and entries above each
/// pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermiteLattice {
    width: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl HermiteLattice {
    pub fn new(width: usize, generators: &[Vec<BigInt>]) -> Self {
        let mut work: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..width {
            // Euclid on column `col` across the remaining rows
            loop {
                let nonzero: Vec<usize> = (0..work.len())
                    .filter(|&i| !work[i][col].is_zero())
                    .collect();
                if nonzero.len() <= 1 {
                    break;
                }
                let best = *nonzero
                    .iter()
                    .min_by(|&&a, &&b| work[a][col].abs().cmp(&work[b][col].abs()))
                    .unwrap();
                let pivot_row = work[best].clone();
                for &i in &nonzero {
                    if i == best {
                        continue;
                    }
                    let f = work[i][col].div_floor(&pivot_row[col]);
                    for (x, p) in work[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            if let Some(i) = (0..work.len()).find(|&i| !work[i][col].is_zero()) {
                let mut row = work.swap_remove(i);
                if row[col].is_negative() {
                    row.iter_mut().for_each(|x| *x = -x.clone());
                }
                rows.push(row);
                pivots.push(col);
            }
            work.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        let mut lattice = HermiteLattice {
            width,
            rows,
            pivots,
        };
        lattice.reduce_above_pivots();
        lattice
    }

    fn reduce_above_pivots(&mut self) {
        for k in 0..self.rows.len() {
            let col = self.pivots[k];
            let pivot = self.rows[k].clone();
            for i in 0..k {
                let f = self.rows[i][col].div_floor(&pivot[col]);
                if f.is_zero() {
                    continue;
                }
                for (x, p) in self.rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Coordinates of `target` in the basis over `Q`, or `None` when
    /// `target` is outside the rational span.
    pub fn rational_coordinates(&self, target: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(target.len(), self.width);
        let mut rest = target.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        let mut next_col = 0;
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if rest[next_col..col].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let c = &rest[col] / BigRational::from_integer(row[col].clone());
            for (x, r) in rest.iter_mut().zip(row) {
                *x -= &c * BigRational::from_integer(r.clone());
            }
            coords.push(c);
            next_col = col + 1;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords)
    }

    /// Integer coordinates of `target`, if it is a lattice vector.
    pub fn solve(&self, target: &[BigRational]) -> Option<Vec<BigInt>> {
        self.rational_coordinates(target)?
            .into_iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(xs: &[i64]) -> Vec<BigRational> {
        xs.iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect()
    }

    #[test]
    fn hermite_form_of_dependent_rows() {
        let l = HermiteLattice::new(2, &[v(&[4, 6]), v(&[6, 9]), v(&[2, 0])]);
        assert_eq!(l.rank(), 2);
        assert_eq!(l.basis(), &[v(&[2, 0]), v(&[0, 3])]);
        assert!(l.solve(&q(&[6, 9])).is_some());
        assert!(l.solve(&q(&[1, 0])).is_none());
        assert!(l.solve(&q(&[0, 1])).is_none());
    }

    #[test]
    fn rank_one_lattice() {
        let l = HermiteLattice::new(2, &[v(&[3, 0]), v(&[2, 0])]);
        assert_eq!(l.basis(), &[v(&[1, 0])]);
        assert!(l.rational_coordinates(&q(&[0, 1])).is_none());
        assert_eq!(l.solve(&q(&[-5, 0])).unwrap(), v(&[-5]));
    }

    #[test]
    fn empty_lattice() {
        let l = HermiteLattice::new(2, &[v(&[0, 0])]);
        assert_eq!(l.rank(), 0);
        assert_eq!(l.solve(&q(&[0, 0])).unwrap(), Vec::<BigInt>::new());
        assert!(l.solve(&q(&[1, 0])).is_none());
    }
}
