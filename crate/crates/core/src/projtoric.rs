//! Weight subdivisions of heighted point configurations and the
//! orbit-face correspondence.
//!
//! The lifted set `conv{(u_j, a_j)} + R_+ e_lambda` is homogenized to the
//! cone generated by `(u_j, a_j, 1)` and the vertical ray `(0, 1, 0)` in
//! `R^n x R x R`. Its lower faces are the nonzero faces avoiding the
//! vertical ray. In one dimension with `a = (1, 0, 1)` on `A = (0, 1, 2)`
//! the lower faces are the edges over `[0, 1]` and `[1, 2]` and the three
//! lifted points; the edge over `[0, 2]` at height 1 is not a face.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::ordfield::{FieldElement, OrdFieldError, ValueGroup};
use crate::polyhedra::linalg::{dot, from_ints, Vector};
use crate::polyhedra::{polyhedron_contains, Cone, PolyError, SlicePolyhedron};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjError {
    #[error("height {0} is not in the value group")]
    ValueNotInGamma(usize),
    #[error("every height is infinite")]
    NoFiniteHeight,
    #[error("{points} points but {heights} heights")]
    LengthMismatch { points: usize, heights: usize },
    #[error("point {0} does not have length n")]
    BadPoint(usize),
    #[error("heights mix different quadratic fields")]
    MixedFields,
    #[error("lattice rank must be at least 1")]
    ZeroRank,
    #[error(transparent)]
    Field(#[from] OrdFieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A height `v(y_j)`, possibly infinite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeightValue {
    Finite(FieldElement),
    Infinite,
}

impl HeightValue {
    pub fn finite(&self) -> Option<&FieldElement> {
        match self {
            HeightValue::Finite(x) => Some(x),
            HeightValue::Infinite => None,
        }
    }
}

/// Validates the finite values against Gamma.
pub fn heights_from_valuations(
    values: &[HeightValue],
    gamma: &ValueGroup,
) -> Result<Vec<HeightValue>, ProjError> {
    if values.iter().all(|v| v.finite().is_none()) {
        return Err(ProjError::NoFiniteHeight);
    }
    for (j, v) in values.iter().enumerate() {
        if let Some(x) = v.finite() {
            if !gamma.field().admits(x) || !gamma.contains(x)? {
                return Err(ProjError::ValueNotInGamma(j));
            }
        }
    }
    Ok(values.to_vec())
}

/// Exponents `u_0..u_R` in `M` with heights `a(0..R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightedConfig {
    n: usize,
    points: Vec<Vec<i64>>,
    heights: Vec<HeightValue>,
}

impl HeightedConfig {
    pub fn new(
        n: usize,
        points: Vec<Vec<i64>>,
        heights: Vec<HeightValue>,
    ) -> Result<Self, ProjError> {
        if n == 0 {
            return Err(ProjError::ZeroRank);
        }
        if points.len() != heights.len() {
            return Err(ProjError::LengthMismatch {
                points: points.len(),
                heights: heights.len(),
            });
        }
        if let Some(j) = points.iter().position(|p| p.len() != n) {
            return Err(ProjError::BadPoint(j));
        }
        if heights.iter().all(|h| h.finite().is_none()) {
            return Err(ProjError::NoFiniteHeight);
        }
        let radicands: BTreeSet<u64> = heights
            .iter()
            .filter_map(|h| h.finite()?.radicand())
            .collect();
        if radicands.len() > 1 {
            return Err(ProjError::MixedFields);
        }
        Ok(HeightedConfig { n, points, heights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn heights(&self) -> &[HeightValue] {
        &self.heights
    }

    /// Indices with finite height.
    pub fn finite_indices(&self) -> Vec<usize> {
        (0..self.heights.len())
            .filter(|&j| self.heights[j].finite().is_some())
            .collect()
    }

    /// Adds `shift` to every finite height.
    pub fn shifted(&self, shift: &FieldElement) -> HeightedConfig {
        let heights = self
            .heights
            .iter()
            .map(|h| match h {
                HeightValue::Finite(x) => HeightValue::Finite(x + shift),
                HeightValue::Infinite => HeightValue::Infinite,
            })
            .collect();
        HeightedConfig {
            n: self.n,
            points: self.points.clone(),
            heights,
        }
    }
}

/// Vertices of the convex hull of the finite-height points: counterclockwise
/// from the lexicographically least vertex for `n <= 2`, lexicographic
/// otherwise.
pub fn weight_polytope(cfg: &HeightedConfig) -> Vec<Vec<i64>> {
    let pts: BTreeSet<Vec<i64>> = cfg
        .finite_indices()
        .into_iter()
        .map(|j| cfg.points[j].clone())
        .collect();
    let gens: Vec<Vector> = pts
        .iter()
        .map(|p| {
            let mut v = from_ints(p);
            v.push(FieldElement::one());
            v
        })
        .collect();
    let cone = Cone::from_generators(cfg.n + 1, &gens, &[]).expect("points have length n");
    let mut verts: Vec<Vec<i64>> = cone.rays().iter().map(|r| dehomogenize(r, cfg.n)).collect();
    verts.sort();
    if cfg.n == 2 && verts.len() > 2 {
        counterclockwise(&mut verts);
    }
    verts
}

/// `r / r_last` restricted to the first `n` coordinates, as integers.
fn dehomogenize(r: &[FieldElement], n: usize) -> Vec<i64> {
    let t = &r[r.len() - 1];
    r[..n]
        .iter()
        .map(|x| {
            let v = (x / t).to_integer().expect("lattice point");
            num_traits::ToPrimitive::to_i64(&v).expect("fits in i64")
        })
        .collect()
}

/// Sorts polygon vertices counterclockwise starting at the least one.
fn counterclockwise(verts: &mut [Vec<i64>]) {
    let o = verts[0].clone();
    let cross = |a: &[i64], b: &[i64]| -> i128 {
        (a[0] - o[0]) as i128 * (b[1] - o[1]) as i128
            - (a[1] - o[1]) as i128 * (b[0] - o[0]) as i128
    };
    verts[1..].sort_by(|a, b| match cross(a, b) {
        c if c > 0 => Ordering::Less,
        c if c < 0 => Ordering::Greater,
        _ => a.cmp(b),
    });
}

/// One face `Q` of the weight subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionFace {
    pub dim: usize,
    /// Vertices of `Q`, sorted.
    pub vertices: Vec<Vec<i64>>,
    /// Finite-height `j` with `u_j in Q`.
    pub indices: Vec<usize>,
    /// Finite-height `j` whose lifted point lies on the lower face.
    pub lifted: Vec<usize>,
    /// Normal `(phi_u, phi_lambda, phi_t)` exposing the lower face, with
    /// `phi_lambda > 0`.
    pub normal: Vector,
}

impl SubdivisionFace {
    /// `Q` as a polyhedron.
    pub fn polytope(&self) -> SlicePolyhedron {
        SlicePolyhedron {
            vertices: self.vertices.iter().map(|v| from_ints(v)).collect(),
            recession_rays: vec![],
        }
    }

    /// The affine function `l(u) = w.u + b` agreeing with the heights on
    /// the lifted face and lying below them elsewhere, as `(w, b)`.
    pub fn affine_certificate(&self, n: usize) -> (Vector, FieldElement) {
        let lam = &self.normal[n];
        let w = self.normal[..n].iter().map(|x| -(x / lam)).collect();
        let b = -(&self.normal[n + 1] / lam);
        (w, b)
    }
}

/// Regular subdivision of the weight polytope induced by the heights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    pub n: usize,
    pub support_vertices: Vec<Vec<i64>>,
    /// Decreasing dimension, then lexicographic in `indices`.
    pub faces: Vec<SubdivisionFace>,
    /// `(i, j)`: face `i` is a facet of face `j`.
    pub covers: Vec<(usize, usize)>,
}

impl Subdivision {
    /// Faces not contained in another face.
    pub fn top_cells(&self) -> Vec<&SubdivisionFace> {
        (0..self.faces.len())
            .filter(|i| !self.covers.iter().any(|(a, _)| a == i))
            .map(|i| &self.faces[i])
            .collect()
    }

    /// Inclusion `Q_i ⊆ Q_j` as polytopes.
    pub fn face_contained(&self, i: usize, j: usize) -> bool {
        let q = self.faces[j].polytope();
        self.faces[i]
            .vertices
            .iter()
            .all(|v| polyhedron_contains(&q, &from_ints(v)))
    }
}

pub fn weight_subdivision(cfg: &HeightedConfig) -> Result<Subdivision, ProjError> {
    let n = cfg.n;
    let finite = cfg.finite_indices();
    let lift = |j: usize| -> Vector {
        let mut v = from_ints(&cfg.points[j]);
        v.push(cfg.heights[j].finite().expect("finite index").clone());
        v.push(FieldElement::one());
        v
    };
    let mut vertical = vec![FieldElement::zero(); n + 2];
    vertical[n] = FieldElement::one();
    let mut gens: Vec<Vector> = finite.iter().map(|&j| lift(j)).collect();
    gens.push(vertical.clone());
    let cone = Cone::from_generators(n + 2, &gens, &[])?;
    let lattice = cone.face_lattice()?;
    let vertical_ray = cone
        .rays()
        .iter()
        .position(|r| r == &crate::polyhedra::linalg::canonical_direction(&vertical))
        .expect("vertical direction is extreme");

    let mut kept: Vec<(usize, SubdivisionFace)> = Vec::new();
    for (fi, f) in lattice.faces.iter().enumerate() {
        if f.ray_indices.is_empty() || f.ray_indices.contains(&vertical_ray) {
            continue;
        }
        let mut vertices: Vec<Vec<i64>> = f
            .ray_indices
            .iter()
            .map(|&r| dehomogenize(&cone.rays()[r], n))
            .collect();
        vertices.sort();
        let poly = SlicePolyhedron {
            vertices: vertices.iter().map(|v| from_ints(v)).collect(),
            recession_rays: vec![],
        };
        let indices: Vec<usize> = finite
            .iter()
            .copied()
            .filter(|&j| polyhedron_contains(&poly, &from_ints(&cfg.points[j])))
            .collect();
        // the sum of the facet normals tight on a face exposes it
        let mut normal = vec![FieldElement::zero(); n + 2];
        for a in cone.facets() {
            if f.ray_indices
                .iter()
                .all(|&r| dot(a, &cone.rays()[r]).is_zero())
            {
                for (x, y) in normal.iter_mut().zip(a) {
                    *x = &*x + y;
                }
            }
        }
        let lifted: Vec<usize> = finite
            .iter()
            .copied()
            .filter(|&j| dot(&normal, &lift(j)).is_zero())
            .collect();
        kept.push((
            fi,
            SubdivisionFace {
                dim: f.cone.linear_dim() - 1,
                vertices,
                indices,
                lifted,
                normal,
            },
        ));
    }
    kept.sort_by(|a, b| {
        b.1.dim
            .cmp(&a.1.dim)
            .then_with(|| a.1.indices.cmp(&b.1.indices))
    });
    let covers = lattice
        .covers
        .iter()
        .filter_map(|(a, b)| {
            let a = kept.iter().position(|(fi, _)| fi == a)?;
            let b = kept.iter().position(|(fi, _)| fi == b)?;
            Some((a, b))
        })
        .collect();
    Ok(Subdivision {
        n,
        support_vertices: weight_polytope(cfg),
        faces: kept.into_iter().map(|(_, f)| f).collect(),
        covers,
    })
}

/// The torus orbit attached to a face: `x_j != 0` exactly for `j` in
/// `nonzero_coords`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDescriptor {
    /// Index into `Subdivision::faces`.
    pub face: usize,
    pub dim: usize,
    pub nonzero_coords: Vec<usize>,
}

/// One orbit per face, in the order of the faces.
pub fn orbit_correspondence(sub: &Subdivision) -> Vec<OrbitDescriptor> {
    sub.faces
        .iter()
        .enumerate()
        .map(|(i, f)| OrbitDescriptor {
            face: i,
            dim: f.dim,
            nonzero_coords: f.indices.clone(),
        })
        .collect()
}
