//! Dense exact linear algebra on `FieldElement` vectors.

use crate::ordfield::FieldElement;

pub type Vector = Vec<FieldElement>;

pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

pub fn scale(v: &[FieldElement], k: &FieldElement) -> Vector {
    v.iter().map(|x| x * k).collect()
}

/// `a * x + b * y`.
pub fn combine(
    a: &FieldElement,
    x: &[FieldElement],
    b: &FieldElement,
    y: &[FieldElement],
) -> Vector {
    x.iter().zip(y).map(|(xi, yi)| a * xi + b * yi).collect()
}

pub fn from_ints(v: &[i64]) -> Vector {
    v.iter().map(|&x| FieldElement::from_int(x)).collect()
}

/// Positive rescaling with first nonzero coordinate of absolute value one.
pub fn canonical_direction(v: &[FieldElement]) -> Vector {
    match v.iter().find(|x| !x.is_zero()) {
        None => v.to_vec(),
        Some(lead) => {
            let inv = lead.abs().recip().unwrap();
            scale(v, &inv)
        }
    }
}

/// Reduced row echelon form. Returns the nonzero rows and their pivot
/// columns; unique for a given row space.
pub fn rref(rows: &[Vector], width: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip().unwrap();
        m[r] = scale(&m[r], &inv);
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vector], width: usize) -> usize {
    rref(rows, width).0.len()
}

/// Representative of `v` modulo the row space of an RREF basis: the
/// coordinates at the pivot columns are cleared.
pub fn reduce_modulo(v: &[FieldElement], basis: &[Vector], pivots: &[usize]) -> Vector {
    let mut out = v.to_vec();
    for (row, &col) in basis.iter().zip(pivots) {
        if !out[col].is_zero() {
            let f = out[col].clone();
            for (x, p) in out.iter_mut().zip(row) {
                *x = &*x - &(&f * p);
            }
        }
    }
    out
}

/// Basis of `{x : row . x = 0 for all rows}`.
pub fn nullspace(rows: &[Vector], width: usize) -> Vec<Vector> {
    let (basis, pivots) = rref(rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElement::zero(); width];
            v[f] = FieldElement::one();
            for (row, &p) in basis.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        })
        .collect()
}

/// Solves the square or overdetermined system `A x = b` if it has a unique
/// solution.
pub fn solve_unique(a: &[Vector], b: &[FieldElement], width: usize) -> Option<Vector> {
    let aug: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, width + 1);
    if pivots.contains(&width) || pivots.len() != width {
        return None;
    }
    Some(red.iter().map(|r| r[width].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_is_canonical() {
        let a = vec![from_ints(&[2, 4, 0]), from_ints(&[1, 2, 1])];
        let b = vec![from_ints(&[0, 0, 3]), from_ints(&[-1, -2, 0])];
        assert_eq!(rref(&a, 3), rref(&b, 3));
        assert_eq!(rank(&a, 3), 2);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let a = vec![from_ints(&[1, 1, 1]), from_ints(&[0, 1, -1])];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            assert!(dot(row, &ns[0]).is_zero());
        }
    }

    #[test]
    fn canonical_direction_keeps_orientation() {
        let v = canonical_direction(&from_ints(&[0, -3, 6]));
        assert_eq!(v, from_ints(&[0, -1, 2]));
    }

    #[test]
    fn unique_solve() {
        let a = vec![from_ints(&[1, 1]), from_ints(&[1, -1])];
        let x = solve_unique(&a, &from_ints(&[3, 1]), 2).unwrap();
        assert_eq!(x, from_ints(&[2, 1]));
        assert!(solve_unique(&[from_ints(&[1, 1])], &from_ints(&[1]), 2).is_none());
    }
}
