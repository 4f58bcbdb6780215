use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ordfield::{common_denominator, gcd_all, FieldElement};

use super::dd::double_description;
use super::linalg::{dot, from_ints, rank, Vector};
use super::PolyError;

/// A defining inequality `<u, omega> + s c >= 0` on `N_R x R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfSpace {
    pub u: Vec<i64>,
    pub c: FieldElement,
}

impl HalfSpace {
    pub fn new(u: Vec<i64>, c: FieldElement) -> Self {
        HalfSpace { u, c }
    }

    /// Normal vector `(u, c)` in `M_R x R`.
    pub fn normal(&self) -> Vector {
        let mut v = from_ints(&self.u);
        v.push(self.c.clone());
        v
    }

    pub fn is_degenerate(&self) -> bool {
        self.c.is_zero() && self.u.iter().all(|&x| x == 0)
    }
}

/// Normal of the implicit constraint `s >= 0` on `R^n x R`.
pub(crate) fn last_coordinate_normal(n: usize) -> Vector {
    let mut v = vec![FieldElement::zero(); n + 1];
    v[n] = FieldElement::one();
    v
}

/// A polyhedral cone in `R^dim` with both representations cached.
///
/// The H-side is minimal: `facets` are the facet normals and `equations`
/// span the orthogonal complement of the linear span. The V-side holds the
/// extreme rays (reduced modulo the lineality space) and a lineality basis in
/// reduced row echelon form. All lists are canonically scaled and sorted, so
/// two cones are equal as sets iff they compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    dim: usize,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    facets: Vec<Vector>,
    equations: Vec<Vector>,
}

impl Cone {
    /// `{x : a.x >= 0, e.x = 0}`.
    pub fn from_constraints(
        dim: usize,
        ineqs: &[Vector],
        eqs: &[Vector],
    ) -> Result<Cone, PolyError> {
        check_lengths(dim, ineqs.iter().chain(eqs))?;
        let (rays, lineality) = double_description(dim, ineqs, eqs);
        Ok(Self::from_vrep(dim, rays, lineality))
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_generators(
        dim: usize,
        rays: &[Vector],
        lineality: &[Vector],
    ) -> Result<Cone, PolyError> {
        check_lengths(dim, rays.iter().chain(lineality))?;
        // H-rep via the dual, then minimal V-rep from that H-rep
        let (facets, equations) = double_description(dim, rays, lineality);
        let (rays, lineality) = double_description(dim, &facets, &equations);
        Ok(Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        })
    }

    /// The cone in `R^n x R` cut out by `halfspaces` and the implicit `s >= 0`.
    pub fn from_halfspaces(n: usize, halfspaces: &[HalfSpace]) -> Result<Cone, PolyError> {
        if n == 0 {
            return Err(PolyError::ZeroRank);
        }
        let mut ineqs = Vec::with_capacity(halfspaces.len() + 1);
        for (i, h) in halfspaces.iter().enumerate() {
            if h.u.len() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    found: h.u.len(),
                });
            }
            if h.is_degenerate() {
                return Err(PolyError::DegenerateHalfSpace(i));
            }
            ineqs.push(h.normal());
        }
        ineqs.push(last_coordinate_normal(n));
        Self::from_constraints(n + 1, &ineqs, &[])
    }

    /// The zero cone `{0}`.
    pub fn origin(dim: usize) -> Cone {
        Self::from_generators(dim, &[], &[]).unwrap()
    }

    fn from_vrep(dim: usize, rays: Vec<Vector>, lineality: Vec<Vector>) -> Cone {
        let (facets, equations) = double_description(dim, &rays, &lineality);
        Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Lattice rank `n` when the cone lives in `R^n x R`.
    pub fn lattice_rank(&self) -> usize {
        self.dim - 1
    }

    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn linear_dim(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn is_origin(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn contains_point(&self, x: &[FieldElement]) -> Result<bool, PolyError> {
        if x.len() != self.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        Ok(self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|a| !dot(a, x).is_negative()))
    }

    /// Dual cone in the dual space: the rays and lineality of `self` become
    /// the constraints of the result.
    pub fn dual(&self) -> Cone {
        let (rays, lineality) = double_description(self.dim, &self.rays, &self.lineality);
        Self::from_vrep(self.dim, rays, lineality)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, PolyError> {
        self.same_dim(other)?;
        let ineqs: Vec<Vector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vector> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Self::from_constraints(self.dim, &ineqs, &eqs)
    }

    pub fn contains_cone(&self, other: &Cone) -> Result<bool, PolyError> {
        self.same_dim(other)?;
        for r in other.rays.iter() {
            if !self.contains_point(r)? {
                return Ok(false);
            }
        }
        for l in other.lineality.iter() {
            let neg: Vector = l.iter().map(|x| -x).collect();
            if !self.contains_point(l)? || !self.contains_point(&neg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn same_dim(&self, other: &Cone) -> Result<(), PolyError> {
        if self.dim != other.dim {
            return Err(PolyError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// All faces of a pointed cone, from `{0}` up to the cone itself.
    pub fn face_lattice(&self) -> Result<FaceLattice, PolyError> {
        if !self.is_pointed() {
            return Err(PolyError::NotPointed);
        }
        let all: BTreeSet<usize> = (0..self.rays.len()).collect();
        let facet_sets: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|a| {
                (0..self.rays.len())
                    .filter(|&i| dot(a, &self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        // closure of {all rays} under intersection with facet ray sets
        let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut frontier = vec![all];
        while let Some(set) = frontier.pop() {
            if !found.insert(set.clone()) {
                continue;
            }
            for f in &facet_sets {
                let next: BTreeSet<usize> = set.intersection(f).copied().collect();
                if !found.contains(&next) {
                    frontier.push(next);
                }
            }
        }
        let mut faces: Vec<Face> = found
            .into_iter()
            .map(|set| {
                let rays: Vec<Vector> = set.iter().map(|&i| self.rays[i].clone()).collect();
                let cone =
                    Cone::from_generators(self.dim, &rays, &[]).expect("face generators fit");
                Face {
                    ray_indices: set.into_iter().collect(),
                    cone,
                }
            })
            .collect();
        faces.sort_by(|a, b| (a.cone.linear_dim(), &a.cone).cmp(&(b.cone.linear_dim(), &b.cone)));
        let mut covers = Vec::new();
        for (i, a) in faces.iter().enumerate() {
            for (j, b) in faces.iter().enumerate() {
                if b.cone.linear_dim() == a.cone.linear_dim() + 1
                    && is_subset(&a.ray_indices, &b.ray_indices)
                {
                    covers.push((i, j));
                }
            }
        }
        Ok(FaceLattice { faces, covers })
    }

    /// True iff `self` is a face of `other` (as point sets).
    pub fn is_face_of(&self, other: &Cone) -> Result<bool, PolyError> {
        self.same_dim(other)?;
        if !other.contains_cone(self)? {
            return Ok(false);
        }
        if other.is_pointed() {
            return Ok(other.face_lattice()?.faces.iter().any(|f| &f.cone == self));
        }
        // general case: compare with the minimal face containing `self`
        let tight: Vec<Vector> = other
            .facets
            .iter()
            .filter(|a| self.rays.iter().all(|r| dot(a, r).is_zero()))
            .cloned()
            .collect();
        let mut eqs = other.equations.clone();
        eqs.extend(tight);
        Ok(&Cone::from_constraints(self.dim, &other.facets, &eqs)? == self)
    }

    /// The slice `cone ∩ (R^n x {1})` of a pointed cone in `R^n x R_+`.
    pub fn slice_at_one(&self) -> Result<SlicePolyhedron, PolyError> {
        if !self.is_pointed() {
            return Err(PolyError::NotPointed);
        }
        let n = self.lattice_rank();
        let mut vertices = Vec::new();
        let mut recession_rays = Vec::new();
        for r in &self.rays {
            let s = &r[n];
            if s.is_negative() {
                return Err(PolyError::NotInUpperHalfSpace);
            }
            if s.is_zero() {
                recession_rays
                    .push(primitive_integer(&r[..n]).ok_or(PolyError::IrrationalRecession)?);
            } else {
                vertices.push(r[..n].iter().map(|x| x / s).collect());
            }
        }
        vertices.sort();
        recession_rays.sort();
        Ok(SlicePolyhedron {
            vertices,
            recession_rays,
        })
    }

    /// `cone ∩ {s = 0}` projected to `R^n`.
    pub fn recession_cone(&self) -> Result<Cone, PolyError> {
        let slice = self.slice_at_one()?;
        let rays: Vec<Vector> = slice.recession_rays.iter().map(|r| from_ints(r)).collect();
        Cone::from_generators(self.lattice_rank(), &rays, &[])
    }

    /// Rank of the ray span; equals `linear_dim` for pointed cones.
    pub fn span_rank(&self) -> usize {
        let rows: Vec<Vector> = self.rays.iter().chain(&self.lineality).cloned().collect();
        rank(&rows, self.dim)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn check_lengths<'a>(dim: usize, vs: impl Iterator<Item = &'a Vector>) -> Result<(), PolyError> {
    for v in vs {
        if v.len() != dim {
            return Err(PolyError::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    Ok(())
}

/// Primitive integer vector in the direction of a rational vector.
pub fn primitive_integer(v: &[FieldElement]) -> Option<Vec<i64>> {
    let rats: Vec<_> = v
        .iter()
        .map(|x| x.to_rational())
        .collect::<Option<Vec<_>>>()?;
    let den = common_denominator(rats.iter());
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * num_rational::BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return Some(vec![0; v.len()]);
    }
    ints.iter()
        .map(|x| num_traits::ToPrimitive::to_i64(&(x / &g)))
        .collect()
}

/// One face of a pointed cone, with the indices of its rays in the parent.
#[derive(Clone, Debug)]
pub struct Face {
    pub ray_indices: Vec<usize>,
    pub cone: Cone,
}

/// Faces sorted by dimension, with covering relations `(i, j)` meaning face
/// `i` is a facet of face `j`.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    pub faces: Vec<Face>,
    pub covers: Vec<(usize, usize)>,
}

impl FaceLattice {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// A polyhedron `conv(vertices) + cone(recession_rays)` in `R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlicePolyhedron {
    pub vertices: Vec<Vector>,
    pub recession_rays: Vec<Vec<i64>>,
}

impl SlicePolyhedron {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.recession_rays.is_empty()
    }

    /// The homogenizing cone `cone((v, 1), (r, 0))` in `R^n x R`.
    pub fn homogenize(&self, n: usize) -> Cone {
        let mut gens: Vec<Vector> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(FieldElement::one());
                w
            })
            .collect();
        gens.extend(self.recession_rays.iter().map(|r| {
            let mut w = from_ints(r);
            w.push(FieldElement::zero());
            w
        }));
        Cone::from_generators(n + 1, &gens, &[]).expect("slice generators fit")
    }
}
