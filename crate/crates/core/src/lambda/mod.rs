//! `Λ_p(V)`: basis tensors, sparse operators, structure maps and the
//! degree-moving operators `T1, T2, L, R`.

mod operator;
mod structure;
mod tensor;

pub use operator::{all_tuples, Mismatch, Operator, Pipeline};
pub use structure::{Lambda, Mover, Op};
pub use tensor::{basis, basis_json, basis_to_string, Basis, Tensor};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::SubsetMask;
    use crate::ring::LaurentPoly;

    fn s(e: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(e).unwrap()
    }

    fn lp(x: &str) -> LaurentPoly {
        x.parse().unwrap()
    }

    #[test]
    fn product_examples() {
        let l = Lambda::new(2).unwrap();
        let m = l.product();
        assert_eq!(
            m.apply_basis(&[s(&[1]), s(&[2])]),
            Tensor::basis(&[s(&[1, 2])])
        );
        assert_eq!(
            m.apply_basis(&[s(&[2]), s(&[1])]),
            Tensor::term(&[s(&[1, 2])], lp("-1"))
        );
        assert!(m.apply_basis(&[s(&[1]), s(&[1])]).is_zero());
    }

    #[test]
    fn coproduct_examples() {
        let l = Lambda::new(2).unwrap();
        let d = l.coproduct();
        assert_eq!(d.apply_basis(&[s(&[])]), Tensor::basis(&[s(&[]), s(&[])]));
        let prim = Tensor::basis(&[s(&[1]), s(&[])]).add(&Tensor::basis(&[s(&[]), s(&[1])]));
        assert_eq!(d.apply_basis(&[s(&[1])]), prim);
        let expected = Tensor::from_terms(
            2,
            [
                (basis(&[s(&[1, 2]), s(&[])]), lp("1")),
                (basis(&[s(&[]), s(&[1, 2])]), lp("1")),
                (basis(&[s(&[1]), s(&[2])]), lp("1")),
                (basis(&[s(&[2]), s(&[1])]), lp("-p")),
            ],
        );
        assert_eq!(d.apply_basis(&[s(&[1, 2])]), expected);
    }

    #[test]
    fn antipode_unit_counit() {
        let l = Lambda::new(2).unwrap();
        assert_eq!(
            l.antipode().apply_basis(&[s(&[])]),
            Tensor::basis(&[s(&[])])
        );
        assert_eq!(
            l.antipode().apply_basis(&[s(&[1])]),
            Tensor::term(&[s(&[1])], lp("-1"))
        );
        assert_eq!(
            l.antipode().apply_basis(&[s(&[1, 2])]),
            Tensor::term(&[s(&[1, 2])], lp("p"))
        );
        assert_eq!(l.unit().apply_basis(&[]), l.unit_element());
        assert_eq!(l.counit().apply_basis(&[s(&[])]), Tensor::scalar(lp("1")));
        assert!(l.counit().apply_basis(&[s(&[2])]).is_zero());
    }

    #[test]
    fn projections() {
        let l = Lambda::new(2).unwrap();
        assert!(l.projector(1).apply_basis(&[s(&[1, 2])]).is_zero());
        assert_eq!(
            l.delta_left(1).apply_basis(&[s(&[1])]),
            Tensor::basis(&[s(&[1]), s(&[])])
        );
        assert_eq!(
            l.delta_right(1).apply_basis(&[s(&[1])]),
            Tensor::basis(&[s(&[]), s(&[1])])
        );
        let sum = (0..=2).fold(Operator::zero(2, 1, 1), |acc, k| acc.add(&l.projector(k)));
        assert!(sum.diff(&l.identity(1)).is_none());
    }

    #[test]
    fn moy_operator_examples() {
        let l = Lambda::new(2).unwrap();
        let t1 = l.op_t1();
        assert_eq!(
            t1.apply_basis(&[s(&[1, 2]), s(&[])]),
            Tensor::term(&[s(&[1, 2]), s(&[])], lp("p^2"))
        );
        assert_eq!(
            l.op_r().apply_basis(&[s(&[1]), s(&[])]),
            Tensor::basis(&[s(&[]), s(&[1])])
        );
        let rl = l.op_r().compose(l.op_l());
        let lr = l.op_l().compose(l.op_r());
        let comm = rl.sub(&lr);
        assert_eq!(
            comm.apply_basis(&[s(&[1]), s(&[])]),
            Tensor::term(&[s(&[1]), s(&[])], lp("-1"))
        );
    }

    #[test]
    fn divided_powers_agree() {
        let l = Lambda::new(3).unwrap();
        for which in [Mover::L, Mover::R] {
            assert!(l.divided_power(which, 0).diff(&l.identity(2)).is_none());
            for k in 0..=4 {
                let closed = l.divided_power(which, k);
                let powered = l.divided_power_by_powers(which, k).unwrap();
                assert!(closed.diff(&powered).is_none(), "{which:?} k={k}");
            }
        }
    }

    #[test]
    fn b_operator_constructions_agree() {
        for n in 1..=3 {
            let l = Lambda::new(n).unwrap();
            assert!(
                l.op_b_structure().diff(&l.op_b_exponential()).is_none(),
                "N={n}"
            );
        }
        let l = Lambda::new(1).unwrap();
        let b = l.op_b_structure();
        assert_eq!(
            b.apply_basis(&[s(&[]), s(&[])]),
            Tensor::basis(&[s(&[]), s(&[])])
        );
        assert_eq!(
            b.apply_basis(&[s(&[1]), s(&[])]),
            Tensor::basis(&[s(&[]), s(&[1])])
        );
        let expected = Tensor::basis(&[s(&[]), s(&[1])]).add(&Tensor::basis(&[s(&[1]), s(&[])]));
        assert_eq!(b.apply_basis(&[s(&[]), s(&[1])]), expected);
    }

    #[test]
    fn phi_is_multiplicative() {
        let l = Lambda::new(3).unwrap();
        let phi = l.phi(&LaurentPoly::t());
        assert_eq!(phi.apply_basis(&[s(&[])]), Tensor::basis(&[s(&[])]));
        assert_eq!(
            phi.apply_basis(&[s(&[1, 3])]),
            Tensor::term(&[s(&[1, 3])], lp("t^2"))
        );
        let lhs = phi.compose(l.product());
        let rhs = l.product().compose(&phi.tensor(&phi));
        assert!(lhs.diff(&rhs).is_none());
    }
}
