use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::combinatorics::{bits, size, Subset};
use crate::exactla::Rational;

/// Sign of e_a ∧ e_b for disjoint ascending monomials: the parity of pairs
/// (i in a, j in b) with i > j.
pub fn wedge_sign(a: Subset, b: Subset) -> i32 {
    debug_assert_eq!(a & b, 0);
    let inversions: u32 = bits(b).map(|j| (a >> (j + 1)).count_ones()).sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A homogeneous element of the exterior algebra, keyed by monomial bitsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExteriorElement {
    terms: BTreeMap<Subset, Rational>,
}

impl ExteriorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(s: Subset) -> Self {
        Self::term(s, Rational::one())
    }

    pub fn term(s: Subset, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(s, c);
        e
    }

    /// Degree-1 element Σ a_i e_i.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let mut e = Self::zero();
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(1 << i, c.clone());
        }
        e
    }

    pub fn add_term(&mut self, s: Subset, c: Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(d) = self.terms.keys().next().map(|&k| size(k)) {
            assert_eq!(d, size(s), "exterior elements are kept homogeneous");
        }
        let entry = self.terms.entry(s).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Subset, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|&k| size(k))
    }

    pub fn coefficient(&self, s: Subset) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut e = Self::zero();
        for (s, v) in &self.terms {
            e.add_term(*s, v * c);
        }
        e
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut e = self.clone();
        for (s, v) in &other.terms {
            e.add_term(*s, v.clone());
        }
        e
    }
}

/// The exterior product, with the shuffle sign on each pair of monomials.
pub fn wedge(x: &ExteriorElement, y: &ExteriorElement) -> ExteriorElement {
    let mut out = ExteriorElement::zero();
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            if a & b != 0 {
                continue;
            }
            let c = ca * cb;
            out.add_term(a | b, if wedge_sign(*a, *b) > 0 { c } else { -c });
        }
    }
    out
}

/// ∂e_S = Σ_q (−1)^q e_{S∖s_q} over the ascending elements s_0 < s_1 < ….
pub fn boundary(s: Subset) -> ExteriorElement {
    let mut out = ExteriorElement::zero();
    for (q, i) in bits(s).enumerate() {
        let c = if q % 2 == 0 { Rational::one() } else { -Rational::one() };
        out.add_term(s & !(1 << i), c);
    }
    out
}

/// ∂ extended linearly.
pub fn boundary_of(x: &ExteriorElement) -> ExteriorElement {
    let mut out = ExteriorElement::zero();
    for (s, c) in &x.terms {
        out = out.plus(&boundary(*s).scaled(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::subset_of;

    fn q(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn e(items: &[usize]) -> ExteriorElement {
        ExteriorElement::monomial(subset_of(items.iter().copied()))
    }

    #[test]
    fn basic_products() {
        assert_eq!(wedge(&e(&[1]), &e(&[2])), e(&[1, 2]));
        assert_eq!(wedge(&e(&[2]), &e(&[1])), e(&[1, 2]).scaled(&q(-1)));
        assert!(wedge(&e(&[1]), &e(&[1])).is_zero());
    }

    #[test]
    fn difference_product_is_boundary() {
        let a = e(&[1]).plus(&e(&[4]).scaled(&q(-1)));
        let b = e(&[1]).plus(&e(&[5]).scaled(&q(-1)));
        let prod = wedge(&a, &b);
        let mut want = e(&[1, 5]).scaled(&q(-1));
        want = want.plus(&e(&[1, 4])).plus(&e(&[4, 5]));
        assert_eq!(prod, want);
        assert_eq!(prod, boundary(subset_of([1, 4, 5])));
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary(subset_of([1, 2])), e(&[2]).plus(&e(&[1]).scaled(&q(-1))));
        let d = boundary(subset_of([1, 4, 5]));
        assert_eq!(d, e(&[4, 5]).plus(&e(&[1, 5]).scaled(&q(-1))).plus(&e(&[1, 4])));
        let d4 = boundary(subset_of([0, 1, 2, 3]));
        assert_eq!(d4.terms().len(), 4);
        assert_eq!(d4.coefficient(subset_of([1, 2, 3])), q(1));
        assert_eq!(d4.coefficient(subset_of([0, 1, 2])), q(-1));
    }

    #[test]
    fn boundary_squares_to_zero() {
        for s in 1u64..(1 << 7) {
            if size(s) >= 2 {
                assert!(boundary_of(&boundary(s)).is_zero(), "{s:#b}");
            }
        }
    }
}
