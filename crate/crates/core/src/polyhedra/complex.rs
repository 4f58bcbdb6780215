//! Pairwise intersection checks for collections of cones and polyhedra.

use crate::ordfield::FieldElement;

use super::cone::{Cone, SlicePolyhedron};
use super::linalg::{from_ints, Vector};
use super::lp::{LinearProgram, LpOutcome, Relation, Sense};
use super::PolyError;

/// Checks that every pairwise intersection is a face of both cones. Returns
/// the first offending pair with its intersection.
pub fn first_bad_intersection(cones: &[Cone]) -> Result<Option<(usize, usize, Cone)>, PolyError> {
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let inter = cones[i].intersect(&cones[j])?;
            if !inter.is_face_of(&cones[i])? || !inter.is_face_of(&cones[j])? {
                return Ok(Some((i, j, inter)));
            }
        }
    }
    Ok(None)
}

/// Exact membership of `x` in `conv(vertices) + cone(rays)` by LP.
pub fn polyhedron_contains(p: &SlicePolyhedron, x: &[FieldElement]) -> bool {
    if p.vertices.is_empty() {
        return false;
    }
    let nv = p.vertices.len();
    let nr = p.recession_rays.len();
    let rays: Vec<Vector> = p.recession_rays.iter().map(|r| from_ints(r)).collect();
    let mut lp = LinearProgram::new(nv + nr, Sense::Minimize);
    for (k, xk) in x.iter().enumerate() {
        let mut row: Vec<FieldElement> = p.vertices.iter().map(|v| v[k].clone()).collect();
        row.extend(rays.iter().map(|r| r[k].clone()));
        lp.add_constraint(row, Relation::Eq, xk.clone());
    }
    let mut row = vec![FieldElement::one(); nv];
    row.extend(std::iter::repeat_n(FieldElement::zero(), nr));
    lp.add_constraint(row, Relation::Eq, FieldElement::one());
    lp.solve().is_feasible()
}

/// Generators of `p` (vertices then rays) that lie on `a.x = b`.
fn tight_generators(p: &SlicePolyhedron, a: &[FieldElement], b: &FieldElement) -> SlicePolyhedron {
    let dot = |v: &[FieldElement]| -> FieldElement { v.iter().zip(a).map(|(x, y)| x * y).sum() };
    SlicePolyhedron {
        vertices: p
            .vertices
            .iter()
            .filter(|v| &dot(v) == b)
            .cloned()
            .collect(),
        recession_rays: p
            .recession_rays
            .iter()
            .filter(|r| dot(&from_ints(r)).is_zero())
            .cloned()
            .collect(),
    }
}

fn same_polyhedron(p: &SlicePolyhedron, q: &SlicePolyhedron) -> bool {
    if p.vertices.is_empty() || q.vertices.is_empty() {
        return p.vertices.is_empty() && q.vertices.is_empty();
    }
    let inside = |a: &SlicePolyhedron, b: &SlicePolyhedron| {
        a.vertices.iter().all(|v| polyhedron_contains(b, v))
            && a.recession_rays.iter().all(|r| {
                // r is a recession direction of b iff v + r stays in b
                let v0 = &a.vertices[0];
                let moved: Vec<FieldElement> = v0
                    .iter()
                    .zip(r)
                    .map(|(x, &y)| x + FieldElement::from_int(y))
                    .collect();
                polyhedron_contains(b, &moved) && ray_in_recession(b, r)
            })
    };
    inside(p, q) && inside(q, p)
}

fn ray_in_recession(b: &SlicePolyhedron, r: &[i64]) -> bool {
    let target = from_ints(r);
    let rays: Vec<Vector> = b.recession_rays.iter().map(|x| from_ints(x)).collect();
    if rays.is_empty() {
        return target.iter().all(FieldElement::is_zero);
    }
    let mut lp = LinearProgram::new(rays.len(), Sense::Minimize);
    for (k, t) in target.iter().enumerate() {
        lp.add_constraint(
            rays.iter().map(|x| x[k].clone()).collect(),
            Relation::Eq,
            t.clone(),
        );
    }
    lp.solve().is_feasible()
}

/// Decides whether two polyhedra intersect in a common face without going
/// through their facet descriptions.
///
/// Finds a weakly separating hyperplane `a.x = b` (`p` on the `>=` side,
/// `q` on the `<=` side) maximizing the number of generators strictly off
/// it; the polyhedra meet properly iff `p ∩ H = q ∩ H` for that hyperplane.
pub fn meets_properly(p: &SlicePolyhedron, q: &SlicePolyhedron, n: usize) -> bool {
    if p.is_empty() || q.is_empty() {
        return true;
    }
    let p_rays: Vec<Vector> = p.recession_rays.iter().map(|r| from_ints(r)).collect();
    let q_rays: Vec<Vector> = q.recession_rays.iter().map(|r| from_ints(r)).collect();
    let gens = p.vertices.len() + p_rays.len() + q.vertices.len() + q_rays.len();
    // variables: a (n, free), b (free), slack t per generator in [0, 1]
    let nvars = n + 1 + gens;
    let mut lp = LinearProgram::new(nvars, Sense::Maximize);
    for v in 0..=n {
        lp.set_free(v);
    }
    let mut obj = vec![FieldElement::zero(); nvars];
    for o in obj.iter_mut().skip(n + 1) {
        *o = FieldElement::one();
    }
    lp.set_objective(obj);
    let mut t = n + 1;
    let mut push = |coeff_a: Vec<FieldElement>, coeff_b: FieldElement, lp: &mut LinearProgram| {
        let mut row = coeff_a;
        row.push(coeff_b);
        row.resize(nvars, FieldElement::zero());
        row[t] = -FieldElement::one();
        lp.add_constraint(row, Relation::Ge, FieldElement::zero());
        let mut cap = vec![FieldElement::zero(); nvars];
        cap[t] = FieldElement::one();
        lp.add_constraint(cap, Relation::Le, FieldElement::one());
        t += 1;
    };
    // a.v - b - t >= 0 on p, b - a.w - t >= 0 on q
    for v in &p.vertices {
        push(v.clone(), -FieldElement::one(), &mut lp);
    }
    for r in &p_rays {
        push(r.clone(), FieldElement::zero(), &mut lp);
    }
    for w in &q.vertices {
        push(w.iter().map(|x| -x).collect(), FieldElement::one(), &mut lp);
    }
    for r in &q_rays {
        push(
            r.iter().map(|x| -x).collect(),
            FieldElement::zero(),
            &mut lp,
        );
    }
    let LpOutcome::Optimal { point, .. } = lp.solve() else {
        return false;
    };
    let a = &point[..n];
    let b = &point[n];
    same_polyhedron(&tight_generators(p, a, b), &tight_generators(q, a, b))
}
