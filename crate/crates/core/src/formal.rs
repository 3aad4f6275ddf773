//! Formal finite ℚ-linear combinations over an ordered term domain.
//!
//! Invariant: no stored coefficient is zero, so `FormalSum` equality is
//! structural equality of the underlying map.

use crate::rat::Q;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<T: Ord>(BTreeMap<T, Q>);

impl<T: Ord> Default for FormalSum<T> {
    fn default() -> Self {
        FormalSum(BTreeMap::new())
    }
}

impl<T: Ord> FormalSum<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(t: T) -> Self {
        let mut s = Self::zero();
        s.add_term(t, Q::from_integer(1.into()));
        s
    }

    pub fn term(t: T, c: Q) -> Self {
        let mut s = Self::zero();
        s.add_term(t, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, t: &T) -> Q {
        self.0.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Q)> {
        self.0.iter()
    }

    /// Removes and returns the least term — the worklist primitive.
    pub fn pop_first(&mut self) -> Option<(T, Q)> {
        self.0.pop_first()
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (T, Q)> {
        self.0.into_iter()
    }

    pub fn add_term(&mut self, t: T, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(t);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self)
    where
        T: Clone,
    {
        for (t, c) in other.iter() {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &Q)
    where
        T: Clone,
    {
        if k.is_zero() {
            return;
        }
        for (t, c) in other.iter() {
            self.add_term(t.clone(), c.clone() * k);
        }
    }

    pub fn scale(&mut self, k: &Q) {
        if k.is_zero() {
            self.0.clear();
            return;
        }
        for c in self.0.values_mut() {
            *c = c.clone() * k;
        }
    }

    pub fn scaled(mut self, k: &Q) -> Self {
        self.scale(k);
        self
    }

    pub fn neg(mut self) -> Self {
        for c in self.0.values_mut() {
            *c = -c.clone();
        }
        self
    }

    /// Linear extension of a term-level map: each `(t, c)` contributes
    /// `c · f(t)`.
    pub fn map_sum<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> FormalSum<U>) -> FormalSum<U> {
        let mut out = FormalSum::zero();
        for (t, c) in self.iter() {
            out.add_scaled(&f(t), c);
        }
        out
    }
}

impl<T: Ord + Clone> std::ops::Add for FormalSum<T> {
    type Output = FormalSum<T>;
    fn add(mut self, rhs: Self) -> Self {
        self.add_assign(&rhs);
        self
    }
}

impl<T: Ord + Clone> std::ops::Sub for FormalSum<T> {
    type Output = FormalSum<T>;
    fn sub(mut self, rhs: Self) -> Self {
        for (t, c) in rhs.0 {
            self.add_term(t, -c);
        }
        self
    }
}

impl<T: Ord> FromIterator<(T, Q)> for FormalSum<T> {
    fn from_iter<I: IntoIterator<Item = (T, Q)>>(iter: I) -> Self {
        let mut s = Self::zero();
        for (t, c) in iter {
            s.add_term(t, c);
        }
        s
    }
}
