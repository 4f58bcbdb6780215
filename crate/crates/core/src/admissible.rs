//! Gamma-admissible cones, their semigroups and algebra generators.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::ordfield::{FieldElement, OrdFieldError, ValueGroup};
use crate::polyhedra::linalg::{dot, from_ints, Vector};
use crate::polyhedra::{Cone, HalfSpace, PolyError, SlicePolyhedron};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibleError {
    #[error("constant of half-space {0} is not in the value group")]
    ConstantNotInGamma(usize),
    #[error("cone contains a line")]
    ContainsLine,
    #[error("cone is not of finite type")]
    NotFiniteType,
    #[error("degree bound {0} too small: generators do not span the dual cone")]
    BoundTooSmall(u32),
    #[error("degree bound must be positive")]
    ZeroBound,
    #[error("cone lies in s = 0, so every height is admissible")]
    DegenerateSlice,
    #[error("face lies in s = 0 and the value group is trivial")]
    FaceNotAdmissible,
    #[error("not a face of the cone")]
    NotAFace,
    #[error(transparent)]
    Field(#[from] OrdFieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A pointed cone in `N_R x R_+` cut out by half-spaces with constants in
/// the value group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleCone {
    cone: Cone,
    gamma: ValueGroup,
    halfspaces: Vec<HalfSpace>,
    slice: SlicePolyhedron,
    certified: bool,
}

/// Builds and certifies a Gamma-admissible cone.
pub fn make_admissible(
    n: usize,
    halfspaces: &[HalfSpace],
    gamma: &ValueGroup,
) -> Result<AdmissibleCone, AdmissibleError> {
    AdmissibleCone::new(n, halfspaces, gamma)
}

impl AdmissibleCone {
    pub fn new(
        n: usize,
        halfspaces: &[HalfSpace],
        gamma: &ValueGroup,
    ) -> Result<Self, AdmissibleError> {
        for (i, h) in halfspaces.iter().enumerate() {
            if !gamma.contains(&h.c)? {
                return Err(AdmissibleError::ConstantNotInGamma(i));
            }
        }
        let cone = Cone::from_halfspaces(n, halfspaces)?;
        if !cone.is_pointed() {
            return Err(AdmissibleError::ContainsLine);
        }
        let slice = cone.slice_at_one()?;
        Ok(AdmissibleCone {
            cone,
            gamma: gamma.clone(),
            halfspaces: halfspaces.to_vec(),
            slice,
            certified: true,
        })
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn gamma(&self) -> &ValueGroup {
        &self.gamma
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    /// Lattice rank `n`.
    pub fn n(&self) -> usize {
        self.cone.lattice_rank()
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    pub fn slice(&self) -> &SlicePolyhedron {
        &self.slice
    }

    /// A face of this cone as an admissible cone: the defining half-spaces
    /// plus the reversed tight ones.
    pub fn face(&self, face: &Cone) -> Result<AdmissibleCone, AdmissibleError> {
        if !face.is_face_of(&self.cone)? {
            return Err(AdmissibleError::NotAFace);
        }
        let n = self.n();
        let tight = |normal: &Vector| face.rays().iter().all(|r| dot(normal, r).is_zero());
        let mut hs = self.halfspaces.clone();
        for h in &self.halfspaces {
            if tight(&h.normal()) {
                hs.push(HalfSpace::new(h.u.iter().map(|x| -x).collect(), -&h.c));
            }
        }
        if face.rays().iter().all(|r| r[n].is_zero()) {
            let g0 = self
                .gamma
                .some_positive()
                .ok_or(AdmissibleError::FaceNotAdmissible)?;
            hs.push(HalfSpace::new(vec![0; n], -g0));
        }
        hs.sort();
        hs.dedup();
        let out = AdmissibleCone::new(n, &hs, &self.gamma)?;
        if &out.cone != face {
            return Err(AdmissibleError::NotAFace);
        }
        Ok(out)
    }

    /// Vertex condition: every slice vertex has coordinates in Gamma. Always
    /// true over a discrete value group.
    pub fn is_finite_type(&self) -> bool {
        if self.gamma.is_discrete() {
            return true;
        }
        if self.slice.is_empty() {
            return false;
        }
        self.first_bad_vertex().is_none()
    }

    /// A slice vertex with a coordinate outside Gamma.
    pub fn first_bad_vertex(&self) -> Option<Vector> {
        self.slice
            .vertices
            .iter()
            .find(|v| v.iter().any(|x| !self.gamma.contains(x).unwrap_or(false)))
            .cloned()
    }

    /// Infimum of the heights `g` with `(u, g)` in the dual cone.
    pub fn minimal_height(&self, u: &[i64]) -> Result<Height, AdmissibleError> {
        let n = self.n();
        if u.len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                found: u.len(),
            }
            .into());
        }
        let uv = from_ints(u);
        if self
            .slice
            .recession_rays
            .iter()
            .any(|r| dot(&uv, &from_ints(r)).is_negative())
        {
            return Ok(Height::Infeasible);
        }
        let Some(inf) = self.slice.vertices.iter().map(|v| -dot(&uv, v)).max() else {
            return Ok(Height::Unbounded);
        };
        if self.gamma.contains(&inf)? {
            Ok(Height::Value(inf))
        } else {
            Ok(Height::NotAttainedInGamma(inf))
        }
    }

    /// Least `g in Gamma` with `(u, g)` in the dual cone, if it exists.
    pub fn least_gamma_height(&self, u: &[i64]) -> Result<Option<FieldElement>, AdmissibleError> {
        Ok(match self.minimal_height(u)? {
            Height::Value(g) => Some(g),
            Height::NotAttainedInGamma(inf) => round_up_in(&self.gamma, &inf),
            Height::Infeasible | Height::Unbounded => None,
        })
    }

    /// Membership of `(e.u, e.g)` in `S = dual ∩ (M x Gamma)`.
    pub fn semigroup_membership(&self, e: &SemigroupElement) -> Result<bool, AdmissibleError> {
        if !self.gamma.contains(&e.g)? {
            return Ok(false);
        }
        Ok(match self.minimal_height(&e.u)? {
            Height::Value(g0) | Height::NotAttainedInGamma(g0) => g0 <= e.g,
            Height::Unbounded => true,
            Height::Infeasible => false,
        })
    }

    /// Indecomposable homogeneous generators `(u, g(u))` with
    /// `|u|_inf <= bound`, certified by equality of the generated cone with
    /// the dual cone.
    pub fn algebra_generators(&self, bound: u32) -> Result<GeneratorSet, AdmissibleError> {
        if bound == 0 {
            return Err(AdmissibleError::ZeroBound);
        }
        if !self.is_finite_type() {
            return Err(AdmissibleError::NotFiniteType);
        }
        if self.slice.is_empty() {
            return Err(AdmissibleError::DegenerateSlice);
        }
        let n = self.n();
        let points = box_points(n, bound as i64);
        let heights: Vec<Option<FieldElement>> = points
            .par_iter()
            .map(|u| self.least_gamma_height(u))
            .collect::<Result<_, _>>()?;
        let candidates: BTreeMap<Vec<i64>, FieldElement> = points
            .into_iter()
            .zip(heights)
            .filter(|(u, _)| u.iter().any(|&x| x != 0))
            .filter_map(|(u, g)| g.map(|g| (u, g)))
            .collect();
        // a dual cone with lineality has units, and splits through units
        // cycle; there only splits into strictly shorter summands count
        let has_units = !self.cone.equations().is_empty();
        let l1 = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
        let gens: BTreeSet<SemigroupElement> = candidates
            .iter()
            .filter(|(u, g)| {
                !candidates.iter().any(|(u1, g1)| {
                    let u2: Vec<i64> = u.iter().zip(u1.iter()).map(|(a, b)| a - b).collect();
                    if has_units && (l1(u1) >= l1(u) || l1(&u2) >= l1(u)) {
                        return false;
                    }
                    match candidates.get(&u2) {
                        Some(g2) => &(g1 + g2) == *g,
                        None => false,
                    }
                })
            })
            .map(|(u, g)| SemigroupElement::new(u.clone(), g.clone()))
            .collect();
        let set = GeneratorSet {
            gamma: self.gamma.clone(),
            gens: gens.into_iter().collect(),
        };
        if set.generated_cone(n)? != self.cone.dual() {
            return Err(AdmissibleError::BoundTooSmall(bound));
        }
        Ok(set)
    }

    /// Smallest bound `B <= max_bound` whose generators pass the cone
    /// equality certificate.
    pub fn sufficient_bound(&self, max_bound: u32) -> Result<u32, AdmissibleError> {
        for b in 1..=max_bound {
            match self.algebra_generators(b) {
                Ok(_) => return Ok(b),
                Err(AdmissibleError::BoundTooSmall(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(AdmissibleError::BoundTooSmall(max_bound))
    }
}

/// Least element of a discrete group that is `>= x`.
fn round_up_in(gamma: &ValueGroup, x: &FieldElement) -> Option<FieldElement> {
    if gamma.is_trivial() {
        return (!x.is_positive()).then(FieldElement::zero);
    }
    let g0 = gamma.discrete_generator()?;
    let k = (x / &g0).ceil();
    Some(&FieldElement::from_bigint(k) * &g0)
}

/// All integer vectors with entries in `[-b, b]`, lexicographic.
pub fn box_points(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Infimum of admissible heights over a fixed exponent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Height {
    Value(FieldElement),
    NotAttainedInGamma(FieldElement),
    /// Some recession ray pairs negatively with `u`.
    Infeasible,
    /// The slice is empty, so every height works.
    Unbounded,
}

/// A pair `(u, g)` in `M x Gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemigroupElement {
    pub u: Vec<i64>,
    pub g: FieldElement,
}

impl SemigroupElement {
    pub fn new(u: Vec<i64>, g: FieldElement) -> Self {
        SemigroupElement { u, g }
    }

    /// The vector `(u, g)` in `M_R x R`.
    pub fn vector(&self) -> Vector {
        let mut v = from_ints(&self.u);
        v.push(self.g.clone());
        v
    }
}

/// Homogeneous generators `a_i chi^{u_i}` recorded by `(u_i, v(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub gamma: ValueGroup,
    pub gens: Vec<SemigroupElement>,
}

impl GeneratorSet {
    /// Sorts and deduplicates.
    pub fn new(gamma: ValueGroup, mut gens: Vec<SemigroupElement>) -> Self {
        gens.sort();
        gens.dedup();
        GeneratorSet { gamma, gens }
    }

    /// `cone({(0, 1)} ∪ gens)` in `M_R x R`.
    pub fn generated_cone(&self, n: usize) -> Result<Cone, PolyError> {
        let mut rays = vec![crate::polyhedra::last_coordinate_normal(n)];
        for e in &self.gens {
            if e.u.len() != n {
                return Err(PolyError::DimensionMismatch {
                    expected: n,
                    found: e.u.len(),
                });
            }
            rays.push(e.vector());
        }
        Cone::from_generators(n + 1, &rays, &[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordfield::FieldDescriptor;
    use FieldElement as F;

    fn hs(u: &[i64], c: F) -> HalfSpace {
        HalfSpace::new(u.to_vec(), c)
    }

    fn c1(gamma_vertex: F, gamma: &ValueGroup) -> AdmissibleCone {
        make_admissible(1, &[hs(&[1], F::zero()), hs(&[-1], gamma_vertex)], gamma).unwrap()
    }

    fn dense() -> ValueGroup {
        ValueGroup::quadratic_lattice(2).unwrap()
    }

    fn c2() -> AdmissibleCone {
        make_admissible(1, &[hs(&[3], -F::sqrt(2)), hs(&[-1], F::one())], &dense()).unwrap()
    }

    #[test]
    fn construction_errors() {
        let z = ValueGroup::integers();
        assert!(matches!(
            make_admissible(1, &[], &z),
            Err(AdmissibleError::ContainsLine)
        ));
        let z2 = ValueGroup::new(FieldDescriptor::Quadratic(2), vec![F::one()]).unwrap();
        assert!(matches!(
            make_admissible(1, &[hs(&[1], F::sqrt(2))], &z2),
            Err(AdmissibleError::ConstantNotInGamma(0))
        ));
        let c = c1(F::one(), &z);
        assert_eq!(
            c.cone().rays(),
            &[vec![F::zero(), F::one()], vec![F::one(), F::one()]]
        );
    }

    #[test]
    fn finite_type() {
        assert!(c1(F::sqrt(2), &dense()).is_finite_type());
        assert!(!c2().is_finite_type());
        assert_eq!(
            c2().first_bad_vertex(),
            Some(vec![F::sqrt(2) / F::from_int(3)])
        );
    }

    #[test]
    fn heights() {
        let c = c1(F::one(), &ValueGroup::integers());
        assert_eq!(c.minimal_height(&[1]).unwrap(), Height::Value(F::zero()));
        assert_eq!(c.minimal_height(&[-1]).unwrap(), Height::Value(F::one()));
        assert_eq!(c2().minimal_height(&[-1]).unwrap(), Height::Value(F::one()));
        assert_eq!(
            c2().minimal_height(&[1]).unwrap(),
            Height::NotAttainedInGamma(-F::sqrt(2) / F::from_int(3))
        );
        let quad = make_admissible(1, &[hs(&[1], F::zero())], &ValueGroup::integers()).unwrap();
        assert_eq!(quad.minimal_height(&[-1]).unwrap(), Height::Infeasible);
    }

    #[test]
    fn membership() {
        let c = c1(F::one(), &ValueGroup::integers());
        let e = |u: i64, g: i64| SemigroupElement::new(vec![u], F::from_int(g));
        assert!(c.semigroup_membership(&e(0, 0)).unwrap());
        assert!(!c.semigroup_membership(&e(-1, 0)).unwrap());
        assert!(c.semigroup_membership(&e(-1, 1)).unwrap());
        assert!(!c.semigroup_membership(&e(2, -1)).unwrap());
    }

    #[test]
    fn generators() {
        let z = ValueGroup::integers();
        let line = make_admissible(1, &[hs(&[1], F::zero()), hs(&[-1], F::zero())], &z).unwrap();
        let g = line.algebra_generators(1).unwrap();
        let e = |u: i64, g: F| SemigroupElement::new(vec![u], g);
        assert_eq!(g.gens, vec![e(-1, F::zero()), e(1, F::zero())]);

        let g = c1(F::one(), &z).algebra_generators(2).unwrap();
        assert_eq!(g.gens, vec![e(-1, F::one()), e(1, F::zero())]);

        let g = c1(F::sqrt(2), &dense()).algebra_generators(2).unwrap();
        assert_eq!(g.gens, vec![e(-1, F::sqrt(2)), e(1, F::zero())]);

        assert_eq!(
            c2().algebra_generators(2),
            Err(AdmissibleError::NotFiniteType)
        );
    }

    #[test]
    fn rounded_heights_over_discrete_groups() {
        // slice [0, 1/2] over Z
        let z = ValueGroup::integers();
        let c = make_admissible(1, &[hs(&[1], F::zero()), hs(&[-2], F::one())], &z).unwrap();
        assert_eq!(c.least_gamma_height(&[-1]).unwrap(), Some(F::one()));
        let g = c.algebra_generators(2).unwrap();
        let e = |u: i64, g: i64| SemigroupElement::new(vec![u], F::from_int(g));
        // (-1, 1) = (-2, 1) + (1, 0)
        assert_eq!(g.gens, vec![e(-2, 1), e(1, 0)]);
    }

    #[test]
    fn faces_are_admissible() {
        let c = c1(F::one(), &ValueGroup::integers());
        for f in c.cone().face_lattice().unwrap().faces {
            let a = c.face(&f.cone).unwrap();
            assert_eq!(a.cone(), &f.cone);
        }
    }
}
