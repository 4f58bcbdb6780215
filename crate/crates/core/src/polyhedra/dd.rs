//! Double description conversion from inequalities to generators.
//!
//! Constraints are added one at a time to `lin(L) + cone(R)`, starting from
//! the whole space. While a lineality direction is not orthogonal to the new
//! normal it is consumed; otherwise rays are split by sign and adjacent pairs
//! are combined. Adjacency uses the combinatorial test on zero sets, which is
//! exact because `R` stays the set of extreme rays modulo `L`.

use crate::ordfield::{FieldElement, Sign};

use super::linalg::{canonical_direction, combine, dot, reduce_modulo, rref, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn with_capacity(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full(bits: usize) -> Self {
        let mut z = Self::with_capacity(bits);
        for i in 0..bits {
            z.insert(i);
        }
        z
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: Vector,
    zeros: ZeroSet,
}

/// Minimal generators of `{x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}`.
///
/// Returns `(rays, lineality)`: the lineality basis in reduced row echelon
/// form and the rays reduced modulo it, canonically scaled, sorted and
/// deduplicated.
pub fn double_description(
    dim: usize,
    ineqs: &[Vector],
    eqs: &[Vector],
) -> (Vec<Vector>, Vec<Vector>) {
    let total = ineqs.len();
    let mut lineality: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut e = vec![FieldElement::zero(); dim];
            e[i] = FieldElement::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = 0usize;

    for e in eqs {
        debug_assert_eq!(e.len(), dim);
        add_hyperplane(e, &mut lineality);
    }
    // dimension left after the equations; a 2-face needs this many minus
    // two independent tight inequalities beyond the lineality
    let base = lineality.len();

    for (idx, a) in ineqs.iter().enumerate() {
        debug_assert_eq!(a.len(), dim);
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(k);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let f = dot(a, l) / &al0;
                if !f.is_zero() {
                    *l = combine(&FieldElement::one(), l, &-f, &l0);
                }
            }
            for r in rays.iter_mut() {
                let f = dot(a, &r.v) / &al0;
                if !f.is_zero() {
                    r.v = combine(&FieldElement::one(), &r.v, &-f, &l0);
                }
                r.zeros.insert(idx);
            }
            // lineality directions were tight on every earlier constraint
            let mut zeros = ZeroSet::full(processed);
            zeros.0.resize(total.div_ceil(64).max(1), 0);
            rays.push(Ray { v: l0, zeros });
        } else {
            let signs: Vec<Sign> = rays.iter().map(|r| dot(a, &r.v).sign()).collect();
            let mut next: Vec<Ray> = Vec::new();
            let pos: Vec<usize> = (0..rays.len())
                .filter(|&i| signs[i] == Sign::Positive)
                .collect();
            let neg: Vec<usize> = (0..rays.len())
                .filter(|&i| signs[i] == Sign::Negative)
                .collect();
            let min_common = (base - lineality.len()).saturating_sub(2);
            for &p in &pos {
                for &n in &neg {
                    let common = rays[p].zeros.intersection(&rays[n].zeros);
                    if common.len() < min_common {
                        continue;
                    }
                    let adjacent = (0..rays.len())
                        .all(|r| r == p || r == n || !common.is_subset(&rays[r].zeros));
                    if !adjacent {
                        continue;
                    }
                    let ap = dot(a, &rays[p].v);
                    let an = dot(a, &rays[n].v);
                    let v = canonical_direction(&combine(&ap, &rays[n].v, &-an, &rays[p].v));
                    let mut zeros = common;
                    zeros.insert(idx);
                    next.push(Ray { v, zeros });
                }
            }
            for (i, mut r) in rays.into_iter().enumerate() {
                match signs[i] {
                    Sign::Positive => next.push(r),
                    Sign::Zero => {
                        r.zeros.insert(idx);
                        next.push(r);
                    }
                    Sign::Negative => {}
                }
            }
            rays = next;
        }
        processed += 1;
    }
    finish(dim, rays, lineality)
}

/// Intersects the (ray-free) linear space with the hyperplane `e.x = 0`.
fn add_hyperplane(e: &[FieldElement], lineality: &mut Vec<Vector>) {
    if let Some(k) = lineality.iter().position(|l| !dot(e, l).is_zero()) {
        let l0 = lineality.swap_remove(k);
        let el0 = dot(e, &l0);
        for l in lineality.iter_mut() {
            let f = dot(e, l) / &el0;
            if !f.is_zero() {
                *l = combine(&FieldElement::one(), l, &-f, &l0);
            }
        }
    }
}

fn finish(dim: usize, rays: Vec<Ray>, lineality: Vec<Vector>) -> (Vec<Vector>, Vec<Vector>) {
    let (basis, pivots) = rref(&lineality, dim);
    let mut out: Vec<Vector> = rays
        .into_iter()
        .map(|r| canonical_direction(&reduce_modulo(&r.v, &basis, &pivots)))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    (out, basis)
}
