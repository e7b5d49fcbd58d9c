use std::sync::OnceLock;

use crate::combin::{k_subsets, subsets, theta, BasisOrder, SubsetMask};
use crate::error::Result;
use crate::ring::{gauss_gamma, qfactorial, LaurentPoly};

use super::operator::Operator;
use super::tensor::{basis, Tensor};

pub type Op = Operator<LaurentPoly>;

/// Which degree-moving operator a divided power refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mover {
    /// `L`: moves one element from the right factor into the left one.
    L,
    /// `R`: moves one element from the left factor into the right one.
    R,
}

fn sign(e: usize) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(-p)^e`.
fn minus_p_pow(e: usize) -> LaurentPoly {
    LaurentPoly::monomial(sign(e), e as i32, 0)
}

/// The braided Hopf algebra `Λ_p(V)` on an `N`-dimensional `V`, with its
/// structure maps and derived operators built lazily and cached.
#[derive(Debug)]
pub struct Lambda {
    order: BasisOrder,
    product: OnceLock<Op>,
    coproduct: OnceLock<Op>,
    antipode: OnceLock<Op>,
    unit: OnceLock<Op>,
    counit: OnceLock<Op>,
    l_powers: OnceLock<Vec<Op>>,
    r_powers: OnceLock<Vec<Op>>,
    pub(crate) hat_tau: OnceLock<Op>,
    pub(crate) rho: OnceLock<Op>,
}

impl Lambda {
    pub fn new(n: usize) -> Result<Self> {
        Ok(Self {
            order: BasisOrder::new(n)?,
            product: OnceLock::new(),
            coproduct: OnceLock::new(),
            antipode: OnceLock::new(),
            unit: OnceLock::new(),
            counit: OnceLock::new(),
            l_powers: OnceLock::new(),
            r_powers: OnceLock::new(),
            hat_tau: OnceLock::new(),
            rho: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    pub fn order(&self) -> BasisOrder {
        self.order
    }

    /// Dimension `2^N` of `Λ_p(V)`.
    pub fn total_dim(&self) -> usize {
        1 << self.dim()
    }

    pub fn identity(&self, arity: usize) -> Op {
        Operator::identity(self.dim(), arity)
    }

    /// `f_E f_F = δ_{E∩F,∅} (-1)^{θ_{E,F}} f_{E∪F}`.
    pub fn product_basis(e: SubsetMask, f: SubsetMask) -> Option<(i64, SubsetMask)> {
        e.is_disjoint(f).then(|| (sign(theta(e, f)), e.union(f)))
    }

    /// `Δ f_E = Σ_{A⊆E} (-p)^{θ_{A,E∖A}} f_A ⊗ f_{E∖A}`.
    pub fn coproduct_basis(e: SubsetMask) -> Tensor<LaurentPoly> {
        Tensor::from_terms(
            2,
            subsets(e).into_iter().map(|a| {
                let rest = e.difference(a);
                (basis(&[a, rest]), minus_p_pow(theta(a, rest)))
            }),
        )
    }

    pub fn product(&self) -> &Op {
        self.product.get_or_init(|| {
            Operator::from_fn(self.dim(), 2, 1, |b| {
                match Self::product_basis(b[0], b[1]) {
                    Some((s, u)) => Tensor::term(&[u], LaurentPoly::constant(s)),
                    None => Tensor::zero(1),
                }
            })
        })
    }

    pub fn coproduct(&self) -> &Op {
        self.coproduct
            .get_or_init(|| Operator::from_fn(self.dim(), 1, 2, |b| Self::coproduct_basis(b[0])))
    }

    /// `S f_E = γ_{|E|} f_E`.
    pub fn antipode(&self) -> &Op {
        self.antipode
            .get_or_init(|| Operator::diagonal(self.dim(), |e| gauss_gamma(e.len())))
    }

    /// `η: 1 ↦ f_∅`, an arity 0 → 1 map.
    pub fn unit(&self) -> &Op {
        self.unit.get_or_init(|| {
            Operator::from_fn(self.dim(), 0, 1, |_| Tensor::basis(&[SubsetMask::EMPTY]))
        })
    }

    /// `ε f_E = δ_{|E|,0}`, an arity 1 → 0 map.
    pub fn counit(&self) -> &Op {
        self.counit.get_or_init(|| {
            Operator::from_fn(self.dim(), 1, 0, |b| {
                if b[0].is_empty() {
                    Tensor::scalar(LaurentPoly::one())
                } else {
                    Tensor::zero(0)
                }
            })
        })
    }

    pub fn unit_element(&self) -> Tensor<LaurentPoly> {
        Tensor::basis(&[SubsetMask::EMPTY])
    }

    /// Coefficient of `f_∅`.
    pub fn counit_of(&self, x: &Tensor<LaurentPoly>) -> LaurentPoly {
        x.coeff(&[SubsetMask::EMPTY])
    }

    /// Projection `π_k` onto degree `k`.
    pub fn projector(&self, k: usize) -> Op {
        Operator::from_fn(self.dim(), 1, 1, |b| {
            if b[0].len() == k {
                Tensor::basis(b)
            } else {
                Tensor::zero(1)
            }
        })
    }

    /// `Δ_{k)} = (π_k ⊗ id) Δ`.
    pub fn delta_left(&self, k: usize) -> Op {
        self.projector(k)
            .tensor(&self.identity(1))
            .compose(self.coproduct())
    }

    /// `Δ_{(k} = (id ⊗ π_k) Δ`.
    pub fn delta_right(&self, k: usize) -> Op {
        self.identity(1)
            .tensor(&self.projector(k))
            .compose(self.coproduct())
    }

    /// Diagonal automorphism `φ_x f_E = x^{|E|} f_E`.
    pub fn phi(&self, x: &LaurentPoly) -> Op {
        Operator::diagonal(self.dim(), |e| x.pow(e.len() as u32))
    }

    pub fn op_t1(&self) -> Op {
        self.phi(&LaurentPoly::p()).tensor(&self.identity(1))
    }

    pub fn op_t2(&self) -> Op {
        self.identity(1).tensor(&self.phi(&LaurentPoly::p()))
    }

    pub fn op_l(&self) -> &Op {
        self.divided_power(Mover::L, 1)
    }

    pub fn op_r(&self) -> &Op {
        self.divided_power(Mover::R, 1)
    }

    fn powers(&self, which: Mover) -> &Vec<Op> {
        let cell = match which {
            Mover::L => &self.l_powers,
            Mover::R => &self.r_powers,
        };
        cell.get_or_init(|| {
            let id = self.identity(1);
            let nabla = self.product();
            (0..=self.dim() + 1)
                .map(|k| match which {
                    // L^<k> = (∇ ⊗ id)(id ⊗ Δ_{k)})
                    Mover::L => nabla.tensor(&id).compose(&id.tensor(&self.delta_left(k))),
                    // R^<k> = (id ⊗ ∇)(Δ_{(k} ⊗ id)
                    Mover::R => id.tensor(nabla).compose(&self.delta_right(k).tensor(&id)),
                })
                .collect()
        })
    }

    /// Divided power `X^{<k>}` by its closed form; zero for `k > N`.
    pub fn divided_power(&self, which: Mover, k: usize) -> &Op {
        let powers = self.powers(which);
        &powers[k.min(powers.len() - 1)]
    }

    /// `X^k / [k]_p!`, the defining route to the divided power; fails if the
    /// division is not exact.
    pub fn divided_power_by_powers(&self, which: Mover, k: usize) -> Result<Op> {
        let x = self.divided_power(which, 1);
        let mut acc = self.identity(2);
        for _ in 0..k {
            acc = x.compose(&acc);
        }
        let fact = qfactorial(k);
        acc.try_map_coeffs(|c| c.exact_divide(&fact))
    }

    /// `exp_p(X) = Σ_k X^{<k>}`, truncated where it vanishes.
    pub fn exp_p(&self, which: Mover) -> Op {
        self.powers(which)
            .iter()
            .fold(Operator::zero(self.dim(), 2, 2), |acc, op| acc.add(op))
    }

    /// `B = (∇ ⊗ id)(S ⊗ Δ∇)(Δ ⊗ id)` from the structure maps.
    pub fn op_b_structure(&self) -> Op {
        let id = self.identity(1);
        let delta_nabla = self.coproduct().compose(self.product());
        let first = self.coproduct().tensor(&id);
        let middle = self.antipode().tensor(&delta_nabla);
        let last = self.product().tensor(&id);
        last.compose(&middle.compose(&first))
    }

    /// `B = exp_p(L) (S ⊗ id) exp_p(R)`.
    pub fn op_b_exponential(&self) -> Op {
        let s = self.antipode().tensor(&self.identity(1));
        self.exp_p(Mover::L)
            .compose(&s.compose(&self.exp_p(Mover::R)))
    }

    /// Basis pairs `(E, F)` of bidegree `(m, n)`.
    pub fn bidegree_block(&self, m: usize, n: usize) -> Vec<super::Basis> {
        let full = self.order.full();
        let left = k_subsets(full, m);
        let right = k_subsets(full, n);
        left.iter()
            .flat_map(|&e| right.iter().map(move |&f| basis(&[e, f])))
            .collect()
    }
}
