//! Dense two-phase simplex over `FieldElement` with Bland's rule.
//!
//! Exact, so there are no tolerances; Bland's rule guarantees termination.
//! Problem sizes here are a few dozen rows and columns.

use crate::ordfield::FieldElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<FieldElement>,
    rel: Relation,
    rhs: FieldElement,
}

/// A linear program over variables that are nonnegative unless marked free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    free: Vec<bool>,
    rows: Vec<Row>,
    objective: Vec<FieldElement>,
    sense: Sense,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        point: Vec<FieldElement>,
        value: FieldElement,
    },
    Infeasible,
    /// A feasible point and a recession direction improving the objective.
    Unbounded {
        point: Vec<FieldElement>,
        direction: Vec<FieldElement>,
    },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        LinearProgram {
            free: vec![false; num_vars],
            rows: Vec::new(),
            objective: vec![FieldElement::zero(); num_vars],
            sense,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.free.len()
    }

    pub fn set_free(&mut self, var: usize) {
        self.free[var] = true;
    }

    pub fn set_objective(&mut self, coeffs: Vec<FieldElement>) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.objective = coeffs;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<FieldElement>, rel: Relation, rhs: FieldElement) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.rows.push(Row { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars();
        // standard form columns: each original var (plus a negative part if
        // free), then one slack per inequality row
        let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
        let mut ncols = 0;
        for &f in &self.free {
            let pos = ncols;
            ncols += 1;
            let neg = if f {
                ncols += 1;
                Some(pos + 1)
            } else {
                None
            };
            col_of.push((pos, neg));
        }
        let structural = ncols;
        let slack_count = self.rows.iter().filter(|r| r.rel != Relation::Eq).count();
        let total = structural + slack_count;

        let mut a: Vec<Vec<FieldElement>> = Vec::with_capacity(self.rows.len());
        let mut b: Vec<FieldElement> = Vec::with_capacity(self.rows.len());
        let mut slack = structural;
        for row in &self.rows {
            let mut r = vec![FieldElement::zero(); total];
            for (v, c) in row.coeffs.iter().enumerate() {
                let (pos, neg) = col_of[v];
                r[pos] = c.clone();
                if let Some(neg) = neg {
                    r[neg] = -c;
                }
            }
            match row.rel {
                Relation::Le => {
                    r[slack] = FieldElement::one();
                    slack += 1;
                }
                Relation::Ge => {
                    r[slack] = -FieldElement::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = row.rhs.clone();
            if rhs.is_negative() {
                r.iter_mut().for_each(|x| *x = -&*x);
                rhs = -rhs;
            }
            a.push(r);
            b.push(rhs);
        }

        let mut cost = vec![FieldElement::zero(); total];
        for (v, c) in self.objective.iter().enumerate() {
            let c = match self.sense {
                Sense::Minimize => c.clone(),
                Sense::Maximize => -c,
            };
            let (pos, neg) = col_of[v];
            if let Some(neg) = neg {
                cost[neg] = -&c;
            }
            cost[pos] = c;
        }

        let recover = |x: &[FieldElement]| -> Vec<FieldElement> {
            col_of
                .iter()
                .map(|&(pos, neg)| match neg {
                    Some(neg) => &x[pos] - &x[neg],
                    None => x[pos].clone(),
                })
                .collect()
        };

        match simplex(a, b, cost) {
            StdOutcome::Infeasible => LpOutcome::Infeasible,
            StdOutcome::Optimal(x) => {
                let point = recover(&x);
                let value = self.objective.iter().zip(&point).map(|(c, x)| c * x).sum();
                LpOutcome::Optimal { point, value }
            }
            StdOutcome::Unbounded(x, d) => LpOutcome::Unbounded {
                point: recover(&x),
                direction: recover(&d),
            },
        }
    }
}

enum StdOutcome {
    Optimal(Vec<FieldElement>),
    Infeasible,
    Unbounded(Vec<FieldElement>, Vec<FieldElement>),
}

struct Tableau {
    // m rows of [coefficients | rhs]
    rows: Vec<Vec<FieldElement>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip().expect("nonzero pivot");
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x = &*x - &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[FieldElement], allowed: usize) -> Vec<FieldElement> {
        (0..allowed)
            .map(|j| {
                let mut z = cost[j].clone();
                for (row, &bv) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bv].is_zero() {
                        z = z - &cost[bv] * &row[j];
                    }
                }
                z
            })
            .collect()
    }

    /// Runs primal simplex on columns `0..allowed`. Returns the entering
    /// column if the problem is unbounded.
    fn optimize(&mut self, cost: &[FieldElement], allowed: usize) -> Option<usize> {
        loop {
            let rc = self.reduced_costs(cost, allowed);
            let enter = (0..allowed).find(|&j| rc[j].is_negative() && !self.basis.contains(&j))?;
            let rhs = self.width;
            let mut best: Option<(usize, FieldElement)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Some(enter),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<FieldElement> {
        let mut x = vec![FieldElement::zero(); n];
        for (row, &bv) in self.rows.iter().zip(&self.basis) {
            if bv < n {
                x[bv] = row[self.width].clone();
            }
        }
        x
    }
}

/// `min cost.x  s.t.  A x = b, x >= 0` with `b >= 0`.
fn simplex(a: Vec<Vec<FieldElement>>, b: Vec<FieldElement>, cost: Vec<FieldElement>) -> StdOutcome {
    let m = a.len();
    let n = cost.len();
    let width = n + m;
    let rows: Vec<Vec<FieldElement>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut r, bi))| {
            r.extend((0..m).map(|k| {
                if k == i {
                    FieldElement::one()
                } else {
                    FieldElement::zero()
                }
            }));
            r.push(bi);
            r
        })
        .collect();
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        width,
    };

    // phase one: minimize the sum of artificials
    let mut phase1 = vec![FieldElement::zero(); width];
    for c in phase1.iter_mut().skip(n) {
        *c = FieldElement::one();
    }
    t.optimize(&phase1, width);
    let infeas: FieldElement = t
        .rows
        .iter()
        .zip(&t.basis)
        .filter(|(_, &bv)| bv >= n)
        .map(|(row, _)| row[width].clone())
        .sum();
    if !infeas.is_zero() {
        return StdOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&c| !t.rows[i][c].is_zero()) {
                t.pivot(i, c);
                i += 1;
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
            }
        } else {
            i += 1;
        }
    }

    let mut cost2 = cost;
    cost2.resize(width, FieldElement::zero());
    match t.optimize(&cost2, n) {
        None => StdOutcome::Optimal(t.solution(n)),
        Some(enter) => {
            let x = t.solution(n);
            let mut d = vec![FieldElement::zero(); n];
            d[enter] = FieldElement::one();
            for (row, &bv) in t.rows.iter().zip(&t.basis) {
                if bv < n {
                    d[bv] = -&row[enter];
                }
            }
            StdOutcome::Unbounded(x, d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordfield::FieldElement as F;

    fn ints(v: &[i64]) -> Vec<F> {
        v.iter().map(|&x| F::from_int(x)).collect()
    }

    #[test]
    fn small_maximization() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::new(2, Sense::Maximize);
        lp.set_objective(ints(&[1, 1]));
        lp.add_constraint(ints(&[1, 2]), Relation::Le, F::from_int(4));
        lp.add_constraint(ints(&[3, 1]), Relation::Le, F::from_int(6));
        match lp.solve() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(point, vec![F::from_ratio(8, 5), F::from_ratio(6, 5)]);
                assert_eq!(value, F::from_ratio(14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1, Sense::Minimize);
        lp.add_constraint(ints(&[1]), Relation::Le, F::from_int(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1, Sense::Minimize);
        lp.set_free(0);
        lp.set_objective(ints(&[1]));
        lp.add_constraint(ints(&[1]), Relation::Le, F::from_int(3));
        match lp.solve() {
            LpOutcome::Unbounded { direction, .. } => assert!(direction[0].is_negative()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn irrational_objective() {
        // min sqrt2 x + y s.t. x + y = 1
        let mut lp = LinearProgram::new(2, Sense::Minimize);
        lp.set_objective(vec![F::sqrt(2), F::one()]);
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, F::one());
        match lp.solve() {
            LpOutcome::Optimal { point, .. } => assert_eq!(point, ints(&[0, 1])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2, Sense::Minimize);
        lp.set_objective(ints(&[1, 0]));
        lp.add_constraint(ints(&[1, 1]), Relation::Eq, F::from_int(2));
        lp.add_constraint(ints(&[2, 2]), Relation::Eq, F::from_int(4));
        lp.add_constraint(ints(&[1, 0]), Relation::Ge, F::from_ratio(1, 2));
        match lp.solve() {
            LpOutcome::Optimal { point, .. } => {
                assert_eq!(point, vec![F::from_ratio(1, 2), F::from_ratio(3, 2)])
            }
            other => panic!("{other:?}"),
        }
    }
}
