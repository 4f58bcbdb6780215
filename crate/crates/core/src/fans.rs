//! Gamma-admissible fans, their slice complexes and recession fans.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::admissible::{AdmissibleCone, AdmissibleError};
use crate::ordfield::ValueGroup;
use crate::polyhedra::linalg::{from_ints, Vector};
use crate::polyhedra::{
    first_bad_intersection, meets_properly, primitive_integer, Cone, HalfSpace, PolyError,
    SlicePolyhedron,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("a fan needs at least one cone")]
    Empty,
    #[error("cone {0} has a different lattice rank")]
    RankMismatch(usize),
    #[error("cone {0} has a different value group")]
    GammaMismatch(usize),
    #[error("cones {i} and {j} do not meet in a common face")]
    NotAFan {
        i: usize,
        j: usize,
        intersection: Cone,
    },
    #[error("cone {0} contains a line")]
    NotPointed(usize),
    #[error("cone {0} has a non-rational ray")]
    IrrationalRay(usize),
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite fan of Gamma-admissible cones in `N_R x R_+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    gamma: ValueGroup,
    n: usize,
    maximal: Vec<AdmissibleCone>,
    complex: LinearFan,
}

/// Sorts by `(dimension, cone)` and records covering pairs `(i, j)`, face
/// `i` being a facet of face `j`.
fn face_closure(dim: usize, cones: &[Cone]) -> Result<LinearFan, PolyError> {
    let mut all: BTreeSet<Cone> = BTreeSet::new();
    for c in cones {
        for f in c.face_lattice()?.faces {
            all.insert(f.cone);
        }
    }
    let mut cones: Vec<Cone> = all.into_iter().collect();
    cones.sort_by(|a, b| (a.linear_dim(), a).cmp(&(b.linear_dim(), b)));
    let mut covers = Vec::new();
    for (i, a) in cones.iter().enumerate() {
        for (j, b) in cones.iter().enumerate() {
            if b.linear_dim() == a.linear_dim() + 1 && a.is_face_of(b)? {
                covers.push((i, j));
            }
        }
    }
    Ok(LinearFan { dim, cones, covers })
}

/// Face-closed collection of pointed cones in `R^dim` meeting along faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFan {
    pub dim: usize,
    /// Sorted by dimension, then canonically.
    pub cones: Vec<Cone>,
    pub covers: Vec<(usize, usize)>,
}

impl LinearFan {
    /// Validates the common-face condition and closes under faces.
    pub fn new(dim: usize, cones: &[Cone]) -> Result<LinearFan, FanError> {
        for (i, c) in cones.iter().enumerate() {
            if c.dim() != dim {
                return Err(FanError::RankMismatch(i));
            }
            if !c.is_pointed() {
                return Err(FanError::NotPointed(i));
            }
        }
        if let Some((i, j, intersection)) = first_bad_intersection(cones)? {
            return Err(FanError::NotAFan { i, j, intersection });
        }
        Ok(face_closure(dim, cones)?)
    }

    /// Cones not contained in a larger cone of the fan.
    pub fn maximal(&self) -> Vec<&Cone> {
        (0..self.cones.len())
            .filter(|i| !self.covers.iter().any(|(a, _)| a == i))
            .map(|i| &self.cones[i])
            .collect()
    }
}

/// Checks that the cones form a fan and returns it with all its faces.
pub fn fan_from_cones(cones: &[AdmissibleCone]) -> Result<Fan, FanError> {
    let first = cones.first().ok_or(FanError::Empty)?;
    let n = first.n();
    let gamma = first.gamma().clone();
    for (i, c) in cones.iter().enumerate() {
        if c.n() != n {
            return Err(FanError::RankMismatch(i));
        }
        if c.gamma() != &gamma {
            return Err(FanError::GammaMismatch(i));
        }
    }
    let plain: Vec<Cone> = cones.iter().map(|c| c.cone().clone()).collect();
    let complex = LinearFan::new(n + 1, &plain)?;
    let tops: BTreeSet<&Cone> = complex.maximal().into_iter().collect();
    let mut maximal: Vec<AdmissibleCone> = Vec::new();
    for c in cones {
        if tops.contains(c.cone()) && !maximal.iter().any(|m| m.cone() == c.cone()) {
            maximal.push(c.clone());
        }
    }
    maximal.sort_by(|a, b| a.cone().cmp(b.cone()));
    Ok(Fan {
        gamma,
        n,
        maximal,
        complex,
    })
}

impl Fan {
    pub fn gamma(&self) -> &ValueGroup {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maximal_cones(&self) -> &[AdmissibleCone] {
        &self.maximal
    }

    /// Every cone of the fan, sorted by dimension then canonically.
    pub fn all_cones(&self) -> &[Cone] {
        &self.complex.cones
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.complex.covers
    }

    /// Each cone of the fan as an admissible cone, with constants inherited
    /// from a maximal cone containing it.
    pub fn admissible_faces(&self) -> Result<Vec<AdmissibleCone>, FanError> {
        self.complex
            .cones
            .iter()
            .map(|f| {
                let parent = self
                    .maximal
                    .iter()
                    .find(|m| f.is_face_of(m.cone()).unwrap_or(false))
                    .expect("every cone is a face of a maximal cone");
                Ok(parent.face(f)?)
            })
            .collect()
    }

    /// The polyhedral complex `fan ∩ (R^n x {1})`.
    pub fn slice_complex(&self) -> Result<SliceComplex, FanError> {
        let mut index = Vec::new();
        let mut cells = Vec::new();
        for (i, c) in self.complex.cones.iter().enumerate() {
            let s = c.slice_at_one()?;
            if !s.is_empty() {
                index.push(i);
                cells.push(s);
            }
        }
        let covers = self
            .complex
            .covers
            .iter()
            .filter_map(|(a, b)| {
                let a = index.iter().position(|x| x == a)?;
                let b = index.iter().position(|x| x == b)?;
                Some((a, b))
            })
            .collect();
        let vertices: BTreeSet<Vector> = cells
            .iter()
            .flat_map(|c| c.vertices.iter().cloned())
            .collect();
        Ok(SliceComplex {
            n: self.n,
            cells,
            covers,
            vertices: vertices.into_iter().collect(),
        })
    }

    /// Recession cones of all cells, i.e. `fan ∩ (R^n x {0})` in `R^n`.
    pub fn recession_fan(&self) -> Result<LinearFan, FanError> {
        let mut cones: BTreeSet<Cone> = BTreeSet::new();
        for c in &self.complex.cones {
            cones.insert(c.recession_cone()?);
        }
        let cones: Vec<Cone> = cones.into_iter().collect();
        LinearFan::new(self.n, &cones)
    }

    /// Vertex condition on every maximal cone.
    pub fn is_finite_type(&self) -> bool {
        self.gamma.is_discrete() || self.maximal.iter().all(AdmissibleCone::is_finite_type)
    }
}

/// `fan ∩ (R^n x {1})` with cells sorted like their cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceComplex {
    pub n: usize,
    pub cells: Vec<SlicePolyhedron>,
    pub covers: Vec<(usize, usize)>,
    /// Sorted, deduplicated 0-cells.
    pub vertices: Vec<Vector>,
}

impl SliceComplex {
    /// Number of irreducible components of the special fibre.
    pub fn component_count(&self) -> usize {
        self.vertices.len()
    }

    /// Pairwise common-face check computed on the polyhedra directly.
    pub fn cells_meet_properly(&self) -> bool {
        (0..self.cells.len()).all(|i| {
            (i + 1..self.cells.len())
                .all(|j| meets_properly(&self.cells[i], &self.cells[j], self.n))
        })
    }

    /// Cells that are not a face of another cell.
    pub fn top_cells(&self) -> Vec<&SlicePolyhedron> {
        (0..self.cells.len())
            .filter(|i| !self.covers.iter().any(|(a, _)| a == i))
            .map(|i| &self.cells[i])
            .collect()
    }
}

/// Cones `sigma x R_+` over a rational fan in `R^n`, with zero constants.
pub fn product_fan(base: &[Cone], n: usize, gamma: &ValueGroup) -> Result<Fan, FanError> {
    for (i, c) in base.iter().enumerate() {
        if c.dim() != n {
            return Err(FanError::RankMismatch(i));
        }
        if !c.is_pointed() {
            return Err(FanError::NotPointed(i));
        }
        if c.rays().iter().any(|r| primitive_integer(r).is_none()) {
            return Err(FanError::IrrationalRay(i));
        }
    }
    LinearFan::new(n, base)?;
    let mut cones = Vec::with_capacity(base.len());
    for (i, c) in base.iter().enumerate() {
        let mut hs = Vec::new();
        let normal = |v: &Vector| primitive_integer(v).ok_or(FanError::IrrationalRay(i));
        for f in c.facets() {
            hs.push(HalfSpace::new(normal(f)?, Default::default()));
        }
        for e in c.equations() {
            let u = normal(e)?;
            hs.push(HalfSpace::new(
                u.iter().map(|x| -x).collect(),
                Default::default(),
            ));
            hs.push(HalfSpace::new(u, Default::default()));
        }
        cones.push(AdmissibleCone::new(n, &hs, gamma)?);
    }
    fan_from_cones(&cones)
}

/// The cone `cone(rays)` in `R^n` from integer rays.
pub fn rational_cone(n: usize, rays: &[Vec<i64>]) -> Result<Cone, PolyError> {
    let rays: Vec<Vector> = rays.iter().map(|r| from_ints(r)).collect();
    Cone::from_generators(n, &rays, &[])
}
