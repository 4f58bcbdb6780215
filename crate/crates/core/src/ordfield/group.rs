use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{common_denominator, FieldDescriptor, FieldElement, Rational};
use super::lattice::HermiteLattice;
use super::OrdFieldError;

/// A finitely generated subgroup of `R` inside a fixed quadratic field.
///
/// Elements `p + q sqrt(d)` are identified with `(p, q)` in `Q^2`; after
/// clearing the common denominator of the generators the group becomes an
/// integer lattice of rank at most two, kept in Hermite normal form.
#[derive(Clone, Debug)]
pub struct ValueGroup {
    field: FieldDescriptor,
    generators: Vec<FieldElement>,
    scale: BigInt,
    lattice: HermiteLattice,
}

impl ValueGroup {
    pub fn new(
        field: FieldDescriptor,
        generators: Vec<FieldElement>,
    ) -> Result<Self, OrdFieldError> {
        for (i, g) in generators.iter().enumerate() {
            if !field.admits(g) {
                return Err(OrdFieldError::FieldMismatch);
            }
            if !g.is_positive() {
                return Err(OrdFieldError::NonPositiveGenerator(i));
            }
            if generators[..i].contains(g) {
                return Err(OrdFieldError::DuplicateGenerator(i));
            }
        }
        let scale = common_denominator(
            generators
                .iter()
                .flat_map(|g| [g.rational_part(), g.radical_part()]),
        );
        let scale_q = Rational::from_integer(scale.clone());
        let rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                vec![
                    (g.rational_part() * &scale_q).to_integer(),
                    (g.radical_part() * &scale_q).to_integer(),
                ]
            })
            .collect();
        let lattice = HermiteLattice::new(2, &rows);
        Ok(ValueGroup {
            field,
            generators,
            scale,
            lattice,
        })
    }

    /// `Gamma = Z`.
    pub fn integers() -> Self {
        Self::new(FieldDescriptor::RationalOnly, vec![FieldElement::one()]).unwrap()
    }

    /// The trivial valuation, `Gamma = {0}`.
    pub fn trivial(field: FieldDescriptor) -> Self {
        Self::new(field, Vec::new()).unwrap()
    }

    /// `Gamma = Z + Z sqrt(d)`.
    pub fn quadratic_lattice(d: u64) -> Result<Self, OrdFieldError> {
        let field = FieldDescriptor::quadratic(d)?;
        Self::new(field, vec![FieldElement::one(), FieldElement::sqrt(d)])
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn generators(&self) -> &[FieldElement] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.lattice.rank() == 0
    }

    /// Rank of the group as a free abelian group.
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// A group basis in Hermite form (rank entries).
    pub fn basis(&self) -> Vec<FieldElement> {
        let inv = Rational::new(BigInt::one(), self.scale.clone());
        self.lattice
            .basis()
            .iter()
            .map(|row| {
                let p = Rational::from_integer(row[0].clone()) * &inv;
                let q = Rational::from_integer(row[1].clone()) * &inv;
                FieldElement::new(p, q, self.field).expect("basis lies in the field")
            })
            .collect()
    }

    fn check_field(&self, x: &FieldElement) -> Result<(), OrdFieldError> {
        if self.field.admits(x) {
            Ok(())
        } else {
            Err(OrdFieldError::FieldMismatch)
        }
    }

    fn scaled(&self, x: &FieldElement) -> [Rational; 2] {
        let s = Rational::from_integer(self.scale.clone());
        [x.rational_part() * &s, x.radical_part() * &s]
    }

    /// Membership `x in Gamma`, decided by an integer solve in the lattice.
    pub fn contains(&self, x: &FieldElement) -> Result<bool, OrdFieldError> {
        self.check_field(x)?;
        Ok(self.lattice.solve(&self.scaled(x)).is_some())
    }

    /// Smallest `k >= 1` with `k x in Gamma`, or `None` if no multiple lies in
    /// `Gamma` (that is, `x` is outside `Gamma (x) Q`).
    pub fn minimal_multiple(&self, x: &FieldElement) -> Result<Option<BigInt>, OrdFieldError> {
        self.check_field(x)?;
        Ok(self
            .lattice
            .rational_coordinates(&self.scaled(x))
            .map(|coords| common_denominator(coords.iter())))
    }

    /// True iff `Gamma` has rank at most one, i.e. is a discrete subgroup.
    pub fn is_discrete(&self) -> bool {
        self.lattice.rank() <= 1
    }

    /// The positive generator `g0` with `Gamma = g0 Z` for a nontrivial
    /// discrete group.
    pub fn discrete_generator(&self) -> Option<FieldElement> {
        if self.lattice.rank() != 1 {
            return None;
        }
        self.basis().pop().map(|g| g.abs())
    }

    /// Some positive element of `Gamma`, `None` for the trivial group.
    pub fn some_positive(&self) -> Option<FieldElement> {
        self.generators.iter().min().cloned()
    }

    /// All `sum n_i b_i` over the Hermite basis with `|n_i| <= radius`,
    /// sorted ascending.
    pub fn grid(&self, radius: u32) -> Vec<FieldElement> {
        let r = radius as i64;
        let mut out = vec![FieldElement::zero()];
        for b in self.basis() {
            let mut next = Vec::with_capacity(out.len() * (2 * radius as usize + 1));
            for x in &out {
                for n in -r..=r {
                    next.push(x + &(&b * &FieldElement::from_int(n)));
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Whether `x` is an integer multiple of the discrete generator.
    pub fn divisible_by_generator(&self, x: &FieldElement) -> Option<bool> {
        let g = self.discrete_generator()?;
        let ratio = (x / &g).to_rational()?;
        Some(ratio.is_integer())
    }
}

impl PartialEq for ValueGroup {
    /// Equality as subgroups of `R`, independent of the chosen generators.
    fn eq(&self, other: &Self) -> bool {
        let within = |a: &ValueGroup, b: &ValueGroup| {
            a.basis().iter().all(|x| b.contains(x).unwrap_or(false))
        };
        self.field.radicand() == other.field.radicand()
            && within(self, other)
            && within(other, self)
    }
}

impl Eq for ValueGroup {}

/// gcd of a slice of integers, zero for an all-zero slice.
pub(crate) fn gcd_all(xs: &[BigInt]) -> BigInt {
    xs.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs()
}
