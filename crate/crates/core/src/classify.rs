//! Cones from generator sets and the cone-algebra-cone round trip.

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::admissible::{
    box_points, AdmissibleCone, AdmissibleError, GeneratorSet, SemigroupElement,
};
use crate::ordfield::{FieldElement, Rational};
use crate::polyhedra::linalg::{from_ints, rank, Vector};
use crate::polyhedra::lp::{LinearProgram, LpOutcome, Relation, Sense};
use crate::polyhedra::{Cone, HalfSpace, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("generator exponents do not span M_R")]
    RankDeficient,
    #[error("generator set is empty")]
    EmptyGenerators,
    #[error("target is not in the cone generated by (0, 1) and the generators")]
    NotInCone,
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `sigma = dual(cone({(0, 1)} ∪ G))`: the half-spaces are the generators
/// themselves.
pub fn cone_from_generators(g: &GeneratorSet) -> Result<AdmissibleCone, ClassifyError> {
    let n = g
        .gens
        .first()
        .ok_or(ClassifyError::EmptyGenerators)?
        .u
        .len();
    for e in &g.gens {
        if e.u.len() != n {
            return Err(PolyError::DimensionMismatch {
                expected: n,
                found: e.u.len(),
            }
            .into());
        }
    }
    let us: Vec<Vector> = g.gens.iter().map(|e| from_ints(&e.u)).collect();
    if n == 0 || rank(&us, n) != n {
        return Err(ClassifyError::RankDeficient);
    }
    let hs: Vec<HalfSpace> = g
        .gens
        .iter()
        .map(|e| HalfSpace::new(e.u.clone(), e.g.clone()))
        .collect();
    Ok(AdmissibleCone::new(n, &hs, &g.gamma)?)
}

/// `(u, g) = kappa (0, 1) + sum lambda_i (m_i, gamma_i)` with rational
/// `lambda_i >= 0` and `kappa >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRepresentation {
    pub kappa: FieldElement,
    pub lambdas: Vec<Rational>,
}

impl RationalRepresentation {
    /// The represented vector `(u, g)`.
    pub fn reconstruct(&self, g: &GeneratorSet, n: usize) -> Vector {
        let mut out = vec![FieldElement::zero(); n + 1];
        out[n] = self.kappa.clone();
        for (l, e) in self.lambdas.iter().zip(&g.gens) {
            let l = FieldElement::from_rational(l.clone());
            for (o, x) in out.iter_mut().zip(e.vector()) {
                *o = &*o + &(&l * &x);
            }
        }
        out
    }
}

/// Rational coefficients via the LP `min sum lambda_i gamma_i` subject to
/// `sum lambda_i m_i = u`, `lambda >= 0`; the equality constraints are
/// rational, so an optimal vertex is rational.
pub fn rationalize(
    target: &SemigroupElement,
    g: &GeneratorSet,
) -> Result<RationalRepresentation, ClassifyError> {
    let n = target.u.len();
    let cone = g.generated_cone(n)?;
    if !cone.contains_point(&target.vector())? {
        return Err(ClassifyError::NotInCone);
    }
    let k = g.gens.len();
    let mut lp = LinearProgram::new(k, Sense::Minimize);
    lp.set_objective(g.gens.iter().map(|e| e.g.clone()).collect());
    for (j, &uj) in target.u.iter().enumerate() {
        lp.add_constraint(
            g.gens
                .iter()
                .map(|e| FieldElement::from_int(e.u[j]))
                .collect(),
            Relation::Eq,
            FieldElement::from_int(uj),
        );
    }
    let cost =
        |l: &[FieldElement]| -> FieldElement { l.iter().zip(&g.gens).map(|(a, e)| a * &e.g).sum() };
    let lambdas: Vec<FieldElement> = match lp.solve() {
        LpOutcome::Optimal { point, .. } => point,
        LpOutcome::Unbounded { point, direction } => {
            // step along the rational improving ray until kappa >= 0
            let excess = &cost(&point) - &target.g;
            let rate = -cost(&direction);
            let steps = if excess.is_positive() {
                FieldElement::from_bigint((&excess / &rate).ceil())
            } else {
                FieldElement::zero()
            };
            point
                .iter()
                .zip(&direction)
                .map(|(p, d)| p + &(&steps * d))
                .collect()
        }
        LpOutcome::Infeasible => return Err(ClassifyError::NotInCone),
    };
    let kappa = &target.g - &cost(&lambdas);
    if kappa.is_negative() {
        return Err(ClassifyError::NotInCone);
    }
    let lambdas = lambdas
        .iter()
        .map(|l| l.to_rational().expect("vertex of a rational system"))
        .collect();
    Ok(RationalRepresentation { kappa, lambdas })
}

/// Search limits for the saturation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationBounds {
    /// Exponents `u` range over `|u|_inf <= box_radius`.
    pub box_radius: u32,
    /// Multiples `k = 2..=k_max`.
    pub k_max: u32,
    /// Heights range over `sum n_i b_i` with `|n_i| <= grid_radius` on a
    /// basis of Gamma.
    pub grid_radius: u32,
    /// Maximal number of generator summands in a combination.
    pub max_terms: u32,
}

impl SaturationBounds {
    pub fn new(box_radius: u32, k_max: u32, n: usize) -> Self {
        SaturationBounds {
            box_radius,
            k_max,
            grid_radius: 3,
            max_terms: 2 * k_max * box_radius * n as u32 + 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Saturation {
    Saturated,
    /// `k (u, g)` lies in the semigroup but `(u, g)` does not.
    Witness {
        u: Vec<i64>,
        g: FieldElement,
        k: u32,
    },
}

/// Minimal total height of `Z_+`-combinations of generators with at most
/// `max_terms` summands, per exponent.
pub struct CombinationCosts {
    costs: HashMap<Vec<i64>, FieldElement>,
}

impl CombinationCosts {
    pub fn new(g: &GeneratorSet, n: usize, radius: i64, max_terms: u32) -> Self {
        let mut costs: HashMap<Vec<i64>, FieldElement> = HashMap::new();
        costs.insert(vec![0; n], FieldElement::zero());
        for _ in 0..max_terms {
            let mut next = costs.clone();
            let mut changed = false;
            for (u, c) in &costs {
                for e in &g.gens {
                    let v: Vec<i64> = u.iter().zip(&e.u).map(|(a, b)| a + b).collect();
                    if v.iter().any(|x| x.abs() > radius) {
                        continue;
                    }
                    let cand = c + &e.g;
                    match next.get(&v) {
                        Some(old) if old <= &cand => {}
                        _ => {
                            next.insert(v, cand);
                            changed = true;
                        }
                    }
                }
            }
            costs = next;
            if !changed {
                break;
            }
        }
        CombinationCosts { costs }
    }

    /// `(u, g)` is a combination of the generators and `(0, gamma)` with
    /// `gamma >= 0` in Gamma.
    pub fn contains(&self, u: &[i64], g: &FieldElement) -> bool {
        self.costs.get(u).is_some_and(|c| c <= g)
    }
}

/// Brute-force check that `k (u, g) in <G>` implies `(u, g) in <G>` within
/// the bounds. The first witness in lexicographic order of `(u, g, k)` is
/// returned.
pub fn saturation_check(g: &GeneratorSet, n: usize, bounds: &SaturationBounds) -> Saturation {
    let max_gen = g
        .gens
        .iter()
        .flat_map(|e| e.u.iter().map(|x| x.abs()))
        .max()
        .unwrap_or(0);
    let b = bounds.box_radius as i64;
    let k_max = bounds.k_max as i64;
    // reordering summands keeps partial sums within n * max_gen of the path
    let radius = k_max * b + n as i64 * max_gen;
    let costs = CombinationCosts::new(g, n, radius, bounds.max_terms);
    let grid = g.gamma.grid(bounds.grid_radius);
    for u in box_points(n, b) {
        for h in &grid {
            if costs.contains(&u, h) {
                continue;
            }
            for k in 2..=k_max {
                let ku: Vec<i64> = u.iter().map(|x| k * x).collect();
                let kh = &FieldElement::from_int(k) * h;
                if costs.contains(&ku, &kh) {
                    return Saturation::Witness {
                        u,
                        g: h.clone(),
                        k: k as u32,
                    };
                }
            }
        }
    }
    Saturation::Saturated
}

/// Outcome of sigma -> generators -> sigma'.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundTrip {
    pub ok: bool,
    pub generators: GeneratorSet,
    pub reconstructed: Cone,
}

pub fn round_trip(sigma: &AdmissibleCone, bound: u32) -> Result<RoundTrip, ClassifyError> {
    let generators = sigma.algebra_generators(bound)?;
    let back = cone_from_generators(&generators)?;
    Ok(RoundTrip {
        ok: back.cone() == sigma.cone(),
        reconstructed: back.cone().clone(),
        generators,
    })
}

/// True iff every coefficient is a nonnegative rational.
pub fn is_nonnegative(lambdas: &[Rational]) -> bool {
    lambdas.iter().all(|l| l >= &Rational::zero())
}
