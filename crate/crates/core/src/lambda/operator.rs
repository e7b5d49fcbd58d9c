use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combin::{BasisOrder, SubsetMask};
use crate::ring::Coeff;

use super::tensor::{basis_json, Basis, Tensor};

/// All `arity`-fold tuples of subsets of `{1..n}`, lexicographic in the
/// bitmask order of each slot.
pub fn all_tuples(n: usize, arity: usize) -> Vec<Basis> {
    let order = BasisOrder::new(n).expect("valid dimension");
    let singles: Vec<SubsetMask> = order.subsets().collect();
    let mut out: Vec<Basis> = vec![Basis::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                singles.iter().map(move |s| {
                    let mut b = prefix.clone();
                    b.push(*s);
                    b
                })
            })
            .collect();
    }
    out
}

/// Sparse linear map between tensor powers of `Λ(V)`, stored column-wise:
/// each domain basis tuple maps to its image. Missing columns are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<C> {
    dim: usize,
    domain_arity: usize,
    codomain_arity: usize,
    columns: BTreeMap<Basis, Tensor<C>>,
}

/// First domain tuple on which two operators differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<C> {
    pub input: Basis,
    pub lhs: Tensor<C>,
    pub rhs: Tensor<C>,
}

impl<C: Coeff> Operator<C> {
    pub fn zero(dim: usize, domain_arity: usize, codomain_arity: usize) -> Self {
        Self {
            dim,
            domain_arity,
            codomain_arity,
            columns: BTreeMap::new(),
        }
    }

    /// Builds the operator from its action on every domain basis tuple.
    pub fn from_fn<F>(dim: usize, domain_arity: usize, codomain_arity: usize, f: F) -> Self
    where
        F: Fn(&Basis) -> Tensor<C> + Sync,
    {
        Self::from_fn_on(
            dim,
            domain_arity,
            codomain_arity,
            all_tuples(dim, domain_arity),
            f,
        )
    }

    /// Like [`Operator::from_fn`] but only on the given domain tuples; the
    /// operator is zero elsewhere.
    pub fn from_fn_on<F>(
        dim: usize,
        domain_arity: usize,
        codomain_arity: usize,
        domain: Vec<Basis>,
        f: F,
    ) -> Self
    where
        F: Fn(&Basis) -> Tensor<C> + Sync,
    {
        let images: Vec<(Basis, Tensor<C>)> = domain
            .into_par_iter()
            .map(|b| {
                let img = f(&b);
                debug_assert_eq!(img.arity(), codomain_arity);
                (b, img)
            })
            .collect();
        let columns = images.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        Self {
            dim,
            domain_arity,
            codomain_arity,
            columns,
        }
    }

    /// Builds the operator from explicit columns; zero images are dropped.
    pub fn from_columns(
        dim: usize,
        domain_arity: usize,
        codomain_arity: usize,
        columns: impl IntoIterator<Item = (Basis, Tensor<C>)>,
    ) -> Self {
        let columns = columns.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        Self {
            dim,
            domain_arity,
            codomain_arity,
            columns,
        }
    }

    pub fn identity(dim: usize, arity: usize) -> Self {
        Self::from_fn(dim, arity, arity, |b| Tensor::basis(b))
    }

    /// Diagonal operator on arity-1 tensors.
    pub fn diagonal(dim: usize, f: impl Fn(SubsetMask) -> C + Sync) -> Self {
        Self::from_fn(dim, 1, 1, |b| Tensor::term(b, f(b[0])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain_arity(&self) -> usize {
        self.domain_arity
    }

    pub fn codomain_arity(&self) -> usize {
        self.codomain_arity
    }

    pub fn columns(&self) -> impl Iterator<Item = (&Basis, &Tensor<C>)> {
        self.columns.iter()
    }

    pub fn column(&self, input: &[SubsetMask]) -> Option<&Tensor<C>> {
        self.columns.get(input)
    }

    /// Image of one basis tuple.
    pub fn apply_basis(&self, input: &[SubsetMask]) -> Tensor<C> {
        self.columns
            .get(input)
            .cloned()
            .unwrap_or_else(|| Tensor::zero(self.codomain_arity))
    }

    /// Matrix entry: coefficient of `output` in the image of `input`.
    pub fn entry(&self, input: &[SubsetMask], output: &[SubsetMask]) -> C {
        self.columns
            .get(input)
            .map_or_else(C::zero, |t| t.coeff(output))
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn num_entries(&self) -> usize {
        self.columns.values().map(Tensor::len).sum()
    }

    pub fn apply(&self, x: &Tensor<C>) -> Tensor<C> {
        self.apply_at(x, 0)
    }

    /// Applies the operator to slots `slot .. slot + domain_arity` of every
    /// term of `x`, leaving the other slots untouched.
    pub fn apply_at(&self, x: &Tensor<C>, slot: usize) -> Tensor<C> {
        assert!(
            slot + self.domain_arity <= x.arity(),
            "operator does not fit in the tensor"
        );
        let out_arity = x.arity() - self.domain_arity + self.codomain_arity;
        let mut out = Tensor::zero(out_arity);
        for (b, c) in x.iter() {
            let Some(col) = self.columns.get(&b[slot..slot + self.domain_arity]) else {
                continue;
            };
            for (ob, oc) in col.iter() {
                let mut key = Basis::with_capacity(out_arity);
                key.extend_from_slice(&b[..slot]);
                key.extend_from_slice(ob);
                key.extend_from_slice(&b[slot + self.domain_arity..]);
                out.add_term(key, c.mul(oc));
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            other.codomain_arity, self.domain_arity,
            "arity mismatch in composition"
        );
        let entries: Vec<(&Basis, &Tensor<C>)> = other.columns.iter().collect();
        let columns = entries
            .into_par_iter()
            .map(|(b, t)| (b.clone(), self.apply(t)))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|(_, t)| !t.is_zero())
            .collect();
        Self {
            dim: self.dim,
            domain_arity: other.domain_arity,
            codomain_arity: self.codomain_arity,
            columns,
        }
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut columns = BTreeMap::new();
        for (a, x) in &self.columns {
            for (b, y) in &other.columns {
                let mut key = a.clone();
                key.extend_from_slice(b);
                columns.insert(key, x.tensor(y));
            }
        }
        Self {
            dim: self.dim,
            domain_arity: self.domain_arity + other.domain_arity,
            codomain_arity: self.codomain_arity + other.codomain_arity,
            columns,
        }
    }

    /// `id^{⊗left} ⊗ self ⊗ id^{⊗right}`, materialized on the full domain.
    pub fn embed(&self, left: usize, right: usize) -> Self {
        let arity = left + self.domain_arity + right;
        Self::from_fn(self.dim, arity, left + self.codomain_arity + right, |b| {
            self.apply_at(&Tensor::basis(b), left)
        })
    }

    fn combine(&self, other: &Self, sign: C) -> Self {
        assert_eq!(
            (self.domain_arity, self.codomain_arity),
            (other.domain_arity, other.codomain_arity),
            "arity mismatch"
        );
        let mut columns = self.columns.clone();
        for (b, t) in &other.columns {
            let col = columns
                .entry(b.clone())
                .or_insert_with(|| Tensor::zero(self.codomain_arity));
            col.add_scaled(t, &sign);
        }
        columns.retain(|_, t| !t.is_zero());
        Self { columns, ..*self }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, C::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, C::one().neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        let columns = self
            .columns
            .iter()
            .map(|(b, t)| (b.clone(), t.scale(c)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        Self { columns, ..*self }
    }

    /// Trace over tensor slot `slot` (0-based); requires equal domain and
    /// codomain arity.
    pub fn partial_trace(&self, slot: usize) -> Self {
        assert_eq!(
            self.domain_arity, self.codomain_arity,
            "partial trace needs an endomorphism"
        );
        assert!(slot < self.domain_arity);
        let mut columns: BTreeMap<Basis, Tensor<C>> = BTreeMap::new();
        for (b, t) in &self.columns {
            let mut key = b.clone();
            let traced = key.remove(slot);
            let col = columns
                .entry(key)
                .or_insert_with(|| Tensor::zero(self.codomain_arity - 1));
            for (ob, c) in t.iter() {
                if ob[slot] == traced {
                    let mut okey = ob.clone();
                    okey.remove(slot);
                    col.add_term(okey, c.clone());
                }
            }
        }
        columns.retain(|_, t| !t.is_zero());
        Self {
            dim: self.dim,
            domain_arity: self.domain_arity - 1,
            codomain_arity: self.codomain_arity - 1,
            columns,
        }
    }

    /// Keeps only the columns whose input satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(&Basis) -> bool) -> Self {
        let columns = self
            .columns
            .iter()
            .filter(|(b, _)| keep(b))
            .map(|(b, t)| (b.clone(), t.clone()))
            .collect();
        Self { columns, ..*self }
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Sync) -> Operator<D> {
        let columns = self
            .columns
            .iter()
            .map(|(b, t)| (b.clone(), t.map_coeffs(&f)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        Operator {
            dim: self.dim,
            domain_arity: self.domain_arity,
            codomain_arity: self.codomain_arity,
            columns,
        }
    }

    pub fn try_map_coeffs<D: Coeff, E>(
        &self,
        f: impl Fn(&C) -> Result<D, E>,
    ) -> Result<Operator<D>, E> {
        let mut columns = BTreeMap::new();
        for (b, t) in &self.columns {
            let img = t.try_map_coeffs(&f)?;
            if !img.is_zero() {
                columns.insert(b.clone(), img);
            }
        }
        Ok(Operator {
            dim: self.dim,
            domain_arity: self.domain_arity,
            codomain_arity: self.codomain_arity,
            columns,
        })
    }

    /// First input (in key order) on which `self` and `other` differ.
    pub fn diff(&self, other: &Self) -> Option<Mismatch<C>> {
        let mut keys: Vec<&Basis> = self.columns.keys().chain(other.columns.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|k| {
            let lhs = self.apply_basis(k);
            let rhs = other.apply_basis(k);
            (lhs != rhs).then(|| Mismatch {
                input: k.clone(),
                lhs,
                rhs,
            })
        })
    }

    /// `{"domain_arity": k, "entries": [{"in": .., "out": [..]}, ..]}`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .columns
            .iter()
            .map(|(b, t)| json!({ "in": basis_json(b), "out": t.to_json() }))
            .collect();
        json!({
            "dim": self.dim,
            "domain_arity": self.domain_arity,
            "codomain_arity": self.codomain_arity,
            "entries": entries,
        })
    }
}

/// A sequence of operators applied at given slot offsets, evaluated lazily
/// on each input so that large tensor powers are never materialized.
pub struct Pipeline<'a, C> {
    steps: Vec<(&'a Operator<C>, usize)>,
}

impl<'a, C: Coeff> Pipeline<'a, C> {
    pub fn new() -> Self {
        Self { steps: Vec::new() }
    }

    /// Appends `op` acting on slots starting at `slot`; steps run in the
    /// order they are added.
    pub fn then(mut self, op: &'a Operator<C>, slot: usize) -> Self {
        self.steps.push((op, slot));
        self
    }

    pub fn eval(&self, x: &Tensor<C>) -> Tensor<C> {
        let mut cur = x.clone();
        for (op, slot) in &self.steps {
            cur = op.apply_at(&cur, *slot);
        }
        cur
    }
}

impl<C: Coeff> Default for Pipeline<'_, C> {
    fn default() -> Self {
        Self::new()
    }
}
