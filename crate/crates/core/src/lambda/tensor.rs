use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::combin::SubsetMask;
use crate::ring::Coeff;

/// A pure tensor `f_{E_1} ⊗ ... ⊗ f_{E_k}` of basis vectors.
pub type Basis = SmallVec<[SubsetMask; 4]>;

pub fn basis(parts: &[SubsetMask]) -> Basis {
    SmallVec::from_slice(parts)
}

/// Sparse linear combination of `k`-fold basis tensors. Arity 0 is the
/// scalar line.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<C> {
    arity: usize,
    terms: BTreeMap<Basis, C>,
}

impl<C: Coeff> Tensor<C> {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The basis tensor itself, coefficient 1.
    pub fn basis(parts: &[SubsetMask]) -> Self {
        Self::term(parts, C::one())
    }

    pub fn term(parts: &[SubsetMask], c: C) -> Self {
        let mut out = Self::zero(parts.len());
        out.add_term(basis(parts), c);
        out
    }

    pub fn scalar(c: C) -> Self {
        Self::term(&[], c)
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Basis, C)>) -> Self {
        let mut out = Self::zero(arity);
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Basis, &C)> {
        self.terms.iter()
    }

    pub fn get(&self, parts: &[SubsetMask]) -> Option<&C> {
        self.terms.get(parts)
    }

    pub fn coeff(&self, parts: &[SubsetMask]) -> C {
        self.get(parts).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, b: Basis, c: C) {
        debug_assert_eq!(b.len(), self.arity, "arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        for (b, x) in &other.terms {
            self.add_term(b.clone(), x.mul(c));
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(b, x)| (b.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &C::one().neg());
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    /// Outer product `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity + other.arity);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut key = a.clone();
                key.extend_from_slice(b);
                out.add_term(key, x.mul(y));
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Tensor<D> {
        Tensor::from_terms(
            self.arity,
            self.terms.iter().map(|(b, x)| (b.clone(), f(x))),
        )
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<Tensor<D>, E> {
        let mut out = Tensor::zero(self.arity);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), f(x)?);
        }
        Ok(out)
    }

    /// `[{"coeff": .., "basis": [[..], ..]}, ..]` in key order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(b, c)| json!({ "coeff": c.to_json(), "basis": basis_json(b) }))
                .collect(),
        )
    }
}

pub fn basis_json(b: &[SubsetMask]) -> Value {
    serde_json::to_value(b).expect("subsets serialize")
}

pub fn basis_to_string(b: &[SubsetMask]) -> String {
    let parts: Vec<String> = b.iter().map(|s| s.to_string()).collect();
    format!("f[{}]", parts.join(","))
}

impl<C: Coeff> fmt::Display for Tensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) {}", basis_to_string(b))?;
        }
        Ok(())
    }
}
