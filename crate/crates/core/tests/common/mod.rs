//! Shared catalog and brute-force oracles for the integration suites.
//!
//! The oracles here use their own elimination and enumeration code and do
//! not call the library's polyhedral routines.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use toricval::admissible::{make_admissible, AdmissibleCone, SemigroupElement};
use toricval::ordfield::{FieldDescriptor, FieldElement as F, ValueGroup};
use toricval::polyhedra::HalfSpace;
use toricval::projtoric::{HeightValue, HeightedConfig};

pub fn int(k: i64) -> F {
    F::from_int(k)
}

pub fn rat(a: i64, b: i64) -> F {
    F::from_ratio(a, b)
}

pub fn sqrt2() -> F {
    F::sqrt(2)
}

pub fn hs(u: &[i64], c: F) -> HalfSpace {
    HalfSpace::new(u.to_vec(), c)
}

pub fn ints(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_int(x)).collect()
}

pub fn z() -> ValueGroup {
    ValueGroup::integers()
}

pub fn dense() -> ValueGroup {
    ValueGroup::quadratic_lattice(2).unwrap()
}

pub fn sixths() -> ValueGroup {
    ValueGroup::new(FieldDescriptor::RationalOnly, vec![rat(1, 2), rat(1, 3)]).unwrap()
}

pub fn trivial() -> ValueGroup {
    ValueGroup::trivial(FieldDescriptor::RationalOnly)
}

pub struct CatalogCone {
    pub name: &'static str,
    pub n: usize,
    pub gamma: ValueGroup,
    pub halfspaces: Vec<HalfSpace>,
    pub finite_type: bool,
}

impl CatalogCone {
    pub fn build(&self) -> AdmissibleCone {
        make_admissible(self.n, &self.halfspaces, &self.gamma)
            .unwrap_or_else(|e| panic!("{}: {e}", self.name))
    }
}

fn entry(
    name: &'static str,
    n: usize,
    gamma: ValueGroup,
    halfspaces: Vec<HalfSpace>,
    finite_type: bool,
) -> CatalogCone {
    CatalogCone {
        name,
        n,
        gamma,
        halfspaces,
        finite_type,
    }
}

/// Admissible cones with `n <= 3` over the four test groups.
pub fn catalog() -> Vec<CatalogCone> {
    vec![
        entry(
            "C1",
            1,
            z(),
            vec![hs(&[1], int(0)), hs(&[-1], int(1))],
            true,
        ),
        entry(
            "ray1",
            1,
            z(),
            vec![hs(&[1], int(0)), hs(&[-1], int(0))],
            true,
        ),
        entry("half1", 1, z(), vec![hs(&[1], int(0))], true),
        entry(
            "seg_half",
            1,
            z(),
            vec![hs(&[2], int(-1)), hs(&[-1], int(1))],
            true,
        ),
        entry(
            "tri2",
            2,
            z(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[-1, -1], int(1)),
            ],
            true,
        ),
        entry(
            "square2",
            2,
            z(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[-1, 0], int(1)),
                hs(&[0, -1], int(1)),
            ],
            true,
        ),
        entry(
            "strip2",
            2,
            z(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[-1, 0], int(1)),
                hs(&[0, 1], int(0)),
            ],
            true,
        ),
        entry(
            "thin_tri2",
            2,
            z(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[-2, -3], int(1)),
            ],
            true,
        ),
        entry(
            "ray2",
            2,
            z(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[-1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[0, -1], int(0)),
            ],
            true,
        ),
        entry(
            "cube3",
            3,
            z(),
            vec![
                hs(&[1, 0, 0], int(0)),
                hs(&[0, 1, 0], int(0)),
                hs(&[0, 0, 1], int(0)),
                hs(&[-1, 0, 0], int(1)),
                hs(&[0, -1, 0], int(1)),
                hs(&[0, 0, -1], int(1)),
            ],
            true,
        ),
        entry(
            "C1_sqrt2",
            1,
            dense(),
            vec![hs(&[1], int(0)), hs(&[-1], sqrt2())],
            true,
        ),
        entry(
            "C2",
            1,
            dense(),
            vec![hs(&[3], -sqrt2()), hs(&[-1], int(1))],
            false,
        ),
        entry("half1_sqrt2", 1, dense(), vec![hs(&[1], -sqrt2())], true),
        entry(
            "tri2_sqrt2",
            2,
            dense(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[-1, -1], sqrt2()),
            ],
            true,
        ),
        entry(
            "thin_tri2_sqrt2",
            2,
            dense(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[-1, -2], sqrt2()),
            ],
            false,
        ),
        entry(
            "Q1",
            1,
            sixths(),
            vec![hs(&[3], -rat(1, 2)), hs(&[-2], int(1))],
            true,
        ),
        entry(
            "Q2",
            2,
            sixths(),
            vec![
                hs(&[1, 0], int(0)),
                hs(&[0, 1], int(0)),
                hs(&[-1, -1], rat(1, 2)),
            ],
            true,
        ),
        entry("triv1", 1, trivial(), vec![hs(&[1], int(0))], true),
        entry(
            "triv2",
            2,
            trivial(),
            vec![hs(&[1, 0], int(0)), hs(&[0, 1], int(0))],
            true,
        ),
    ]
}

// ---------------------------------------------------------------------------
// Linear algebra oracle

/// Reduced row echelon form. Returns the nonzero rows and pivot columns.
pub fn echelon(rows: &[Vec<F>], width: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip().unwrap();
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let row_r = m[r].clone();
                m[i] = m[i]
                    .iter()
                    .zip(&row_r)
                    .map(|(a, b)| a - &(&f * b))
                    .collect();
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank_of(rows: &[Vec<F>], width: usize) -> usize {
    echelon(rows, width).1.len()
}

/// Basis of `{x : rows x = 0}`.
pub fn kernel(rows: &[Vec<F>], width: usize) -> Vec<Vec<F>> {
    let (m, pivots) = echelon(rows, width);
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); width];
        v[free] = F::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

pub fn dot(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales so the first nonzero entry has absolute value one.
pub fn normalize(v: &[F]) -> Vec<F> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .expect("nonzero vector")
        .abs();
    let inv = lead.recip().unwrap();
    v.iter().map(|x| x * &inv).collect()
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Extreme rays of `{x : <g, x> >= 0 for all g}` for generators spanning
/// `R^dim`, by enumerating `(dim - 1)`-subsets.
pub fn brute_dual_rays(gens: &[Vec<F>], dim: usize) -> BTreeSet<Vec<F>> {
    let mut out = BTreeSet::new();
    if dim == 1 {
        for s in [1, -1] {
            let x = vec![F::from_int(s)];
            if gens.iter().all(|g| !dot(g, &x).is_negative()) {
                out.insert(x);
            }
        }
        return out;
    }
    for sub in subsets(gens.len(), dim - 1) {
        let rows: Vec<Vec<F>> = sub.iter().map(|&i| gens[i].clone()).collect();
        let ker = kernel(&rows, dim);
        if ker.len() != 1 {
            continue;
        }
        for sign in [1, -1] {
            let x: Vec<F> = ker[0].iter().map(|c| c * &F::from_int(sign)).collect();
            if gens.iter().all(|g| !dot(g, &x).is_negative()) {
                out.insert(normalize(&x));
            }
        }
    }
    out
}

/// Vertices of `{w : <u_i, w> + c_i >= 0}` in `R^n` by solving every
/// `n`-subset of constraints.
pub fn brute_slice_vertices(halfspaces: &[HalfSpace], n: usize) -> BTreeSet<Vec<F>> {
    let mut out = BTreeSet::new();
    for sub in subsets(halfspaces.len(), n) {
        let rows: Vec<Vec<F>> = sub
            .iter()
            .map(|&i| {
                let mut r = ints(&halfspaces[i].u);
                r.push(halfspaces[i].c.clone());
                r
            })
            .collect();
        let ker = kernel(&rows, n + 1);
        if ker.len() != 1 || ker[0][n].is_zero() {
            continue;
        }
        let inv = ker[0][n].recip().unwrap();
        let w: Vec<F> = ker[0][..n].iter().map(|x| x * &inv).collect();
        let feasible = halfspaces
            .iter()
            .all(|h| !(&dot(&ints(&h.u), &w) + &h.c).is_negative());
        if feasible {
            out.insert(w);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Value group oracle

/// Membership by searching integer combinations of the generators with
/// coefficients in `[-r, r]`.
pub fn gamma_contains_search(gamma: &ValueGroup, x: &F, r: i64) -> bool {
    fn rec(gens: &[F], acc: F, x: &F, r: i64) -> bool {
        match gens.split_first() {
            None => &acc == x,
            Some((g, rest)) => (-r..=r).any(|k| rec(rest, &acc + &(g * &F::from_int(k)), x, r)),
        }
    }
    rec(gamma.generators(), F::zero(), x, r)
}

// ---------------------------------------------------------------------------
// Sign oracle

pub const INTERVAL_BITS: usize = 128;

/// Sign of `p + q sqrt(d)` from the enclosure
/// `floor(sqrt(d) 2^128) <= sqrt(d) 2^128 < floor(sqrt(d) 2^128) + 1`.
/// `None` when the enclosure straddles zero.
pub fn interval_sign(x: &F) -> Option<i8> {
    let p = x.rational_part();
    let q = x.radical_part();
    if q.is_zero() {
        return Some(if p.is_zero() {
            0
        } else if p.is_positive() {
            1
        } else {
            -1
        });
    }
    let d = x.radicand().expect("irrational part needs a radicand");
    let scale = BigInt::one() << INTERVAL_BITS;
    let root_lo = (BigInt::from(d) << (2 * INTERVAL_BITS)).sqrt();
    let root_hi = &root_lo + BigInt::one();
    // multiply through by the positive denominators and 2^128
    let a = p.numer() * q.denom() * &scale;
    let c = q.numer() * p.denom();
    let (lo, hi) = if c.is_positive() {
        (&a + &c * &root_lo, &a + &c * &root_hi)
    } else {
        (&a + &c * &root_hi, &a + &c * &root_lo)
    };
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Semigroup oracle

/// Minimal total height for each exponent reachable as a sum of at most
/// `max_terms` generators, by enumerating multisets.
pub fn multiset_sums(
    gens: &[SemigroupElement],
    n: usize,
    max_terms: usize,
) -> BTreeMap<Vec<i64>, F> {
    fn rec(
        gens: &[SemigroupElement],
        start: usize,
        left: usize,
        u: &mut Vec<i64>,
        g: F,
        out: &mut BTreeMap<Vec<i64>, F>,
    ) {
        match out.get(u) {
            Some(old) if old <= &g => {}
            _ => {
                out.insert(u.clone(), g.clone());
            }
        }
        if left == 0 {
            return;
        }
        for i in start..gens.len() {
            for (a, b) in u.iter_mut().zip(&gens[i].u) {
                *a += b;
            }
            rec(gens, i, left - 1, u, &g + &gens[i].g, out);
            for (a, b) in u.iter_mut().zip(&gens[i].u) {
                *a -= b;
            }
        }
    }
    let mut out = BTreeMap::new();
    rec(gens, 0, max_terms, &mut vec![0; n], F::zero(), &mut out);
    out
}

/// `(u, g)` is a sum of generators plus `(0, gamma)` with `gamma >= 0`.
pub fn reachable(sums: &BTreeMap<Vec<i64>, F>, u: &[i64], g: &F) -> bool {
    sums.get(u).is_some_and(|c| c <= g)
}

// ---------------------------------------------------------------------------
// Subdivision oracles

pub fn finite_config(n: usize, points: &[Vec<i64>], heights: &[F]) -> HeightedConfig {
    HeightedConfig::new(
        n,
        points.to_vec(),
        heights.iter().cloned().map(HeightValue::Finite).collect(),
    )
    .unwrap()
}

/// Lower cells of the lifted configuration as sets of indices tight on an
/// affine function lying below all lifted points, by trying every
/// affinely independent `(n + 1)`-subset.
pub fn brute_lower_cells(cfg: &HeightedConfig) -> BTreeSet<Vec<usize>> {
    let n = cfg.n();
    let finite = cfg.finite_indices();
    let point = |j: usize| ints(&cfg.points()[j]);
    let height = |j: usize| cfg.heights()[j].finite().unwrap().clone();
    let dim = affine_rank(
        &finite
            .iter()
            .map(|&j| cfg.points()[j].clone())
            .collect::<Vec<_>>(),
    );
    let mut out = BTreeSet::new();
    if dim == 0 {
        out.insert(finite.clone());
        return out;
    }
    for sub in subsets(finite.len(), dim + 1) {
        let idx: Vec<usize> = sub.iter().map(|&k| finite[k]).collect();
        // unknowns (w, b) with <w, u_j> + b = a_j; rows [u_j, 1, -a_j]
        let rows: Vec<Vec<F>> = idx
            .iter()
            .map(|&j| {
                let mut r = point(j);
                r.push(F::one());
                r.push(-height(j));
                r
            })
            .collect();
        let mut all_rows = rows.clone();
        // restrict w to the affine span of the configuration
        for v in normal_space(cfg) {
            let mut r = v.clone();
            r.push(F::zero());
            r.push(F::zero());
            all_rows.push(r);
        }
        let ker = kernel(&all_rows, n + 2);
        if ker.len() != 1 || ker[0][n + 1].is_zero() {
            continue;
        }
        let inv = ker[0][n + 1].recip().unwrap();
        let sol: Vec<F> = ker[0].iter().map(|x| x * &inv).collect();
        let l = |j: usize| &dot(&sol[..n], &point(j)) + &sol[n];
        if finite.iter().all(|&j| l(j) <= height(j)) {
            out.insert(
                finite
                    .iter()
                    .copied()
                    .filter(|&j| l(j) == height(j))
                    .collect(),
            );
        }
    }
    out
}

fn affine_rank(points: &[Vec<i64>]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<F>> = points
        .iter()
        .map(|p| {
            p.iter()
                .zip(first)
                .map(|(a, b)| F::from_int(a - b))
                .collect()
        })
        .collect();
    rank_of(&diffs, first.len())
}

/// Directions orthogonal to the affine span of the finite points.
fn normal_space(cfg: &HeightedConfig) -> Vec<Vec<F>> {
    let finite = cfg.finite_indices();
    let first = &cfg.points()[finite[0]];
    let diffs: Vec<Vec<F>> = finite
        .iter()
        .map(|&j| {
            cfg.points()[j]
                .iter()
                .zip(first)
                .map(|(a, b)| F::from_int(a - b))
                .collect()
        })
        .collect();
    kernel(&diffs, cfg.n())
}

/// All faces of the lower hull of a one-dimensional configuration, as index
/// sets of points lying in each face, by a monotone chain.
pub fn lower_hull_faces_1d(cfg: &HeightedConfig) -> BTreeSet<Vec<usize>> {
    let finite = cfg.finite_indices();
    let x = |j: usize| cfg.points()[j][0];
    let y = |j: usize| cfg.heights()[j].finite().unwrap().clone();
    // lowest lifted point per abscissa
    let mut lowest: BTreeMap<i64, F> = BTreeMap::new();
    for &j in &finite {
        let e = lowest.entry(x(j)).or_insert_with(|| y(j));
        if y(j) < *e {
            *e = y(j);
        }
    }
    let pts: Vec<(i64, F)> = lowest.into_iter().collect();
    let mut hull: Vec<(i64, F)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (x1, y1) = &hull[hull.len() - 2];
            let (x2, y2) = &hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            let cross =
                &(&F::from_int(x2 - x1) * &(&p.1 - y1)) - &(&F::from_int(p.0 - x1) * &(y2 - y1));
            if cross.is_positive() {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let in_range = |lo: i64, hi: i64| -> Vec<usize> {
        finite
            .iter()
            .copied()
            .filter(|&j| x(j) >= lo && x(j) <= hi)
            .collect()
    };
    let mut out = BTreeSet::new();
    for (xv, _) in &hull {
        out.insert(in_range(*xv, *xv));
    }
    for w in hull.windows(2) {
        out.insert(in_range(w[0].0, w[1].0));
    }
    out
}

/// Twice the area of a convex lattice polygon given by its vertices in any
/// order.
pub fn doubled_area(vertices: &[Vec<i64>]) -> i64 {
    if vertices.len() < 3 {
        return 0;
    }
    let m = vertices.len() as f64;
    let cx = vertices.iter().map(|v| v[0] as f64).sum::<f64>() / m;
    let cy = vertices.iter().map(|v| v[1] as f64).sum::<f64>() / m;
    let mut vs = vertices.to_vec();
    vs.sort_by(|a, b| {
        let ta = (a[1] as f64 - cy).atan2(a[0] as f64 - cx);
        let tb = (b[1] as f64 - cy).atan2(b[0] as f64 - cx);
        ta.total_cmp(&tb)
    });
    let mut s = 0;
    for i in 0..vs.len() {
        let a = &vs[i];
        let b = &vs[(i + 1) % vs.len()];
        s += a[0] * b[1] - a[1] * b[0];
    }
    s.abs()
}
