//! Koszul homology `H_{p,q}(A) = Tor^S_p(A, k)_q` of `A = S/I`, computed
//! from the complex `K_{p,q} = Λ^p(k^n) ⊗ A_{q-p}` with explicit cycle
//! representatives and the induced product.
//!
//! The complex splits along the finest multigrading that makes the ideal
//! homogeneous; each multidegree block is eliminated independently.

mod betti;
mod complex;
mod homology;
mod ring;

pub use betti::BettiTable;
pub use complex::{boundary_of, cell_dim, differential_matrix, mask_indices, wedge_sign, Subsets};
pub use homology::{homology_basis, HomologyBasis, HomologyElement, KoszulOptions, PairingMatrix};
pub use ring::{finest_grading, GradedPiece, QuotientRing};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Field, FieldMode, MonomialOrder, Polynomial, Rational, Zp};
    use crate::groebner::{buchberger, buchberger_in, hilbert_numerator_auto, GroebnerBasis};

    const Q: FieldMode = FieldMode::Rational;

    fn basis_of(gens: &[Polynomial<Rational>], n: usize) -> HomologyBasis<Rational> {
        let gb: GroebnerBasis<Rational> =
            buchberger_in(gens, &MonomialOrder::grevlex(n), n, Q).unwrap();
        let (num, _) = hilbert_numerator_auto(&gb).unwrap();
        HomologyBasis::compute(gb, Some(&num), &KoszulOptions::default()).unwrap()
    }

    fn two_quadrics() -> Vec<Polynomial<Rational>> {
        vec![
            Polynomial::from_int_terms(4, Q, &[(1, &[2, 0, 0, 0]), (-1, &[0, 0, 2, 0])]),
            Polynomial::from_int_terms(4, Q, &[(1, &[0, 2, 0, 0]), (-1, &[0, 0, 0, 2])]),
        ]
    }

    #[test]
    fn twisted_cubic_betti() {
        let h = basis_of(&crate::groebner::tests::twisted_cubic(), 4);
        assert_eq!(h.betti().triples(), vec![[0, 0, 1], [1, 2, 3], [2, 3, 2]]);
        assert_eq!(h.betti().cm_type(), 2);
        assert!(h.top_class().is_err());
        // the rule stops at deg N + 2 = 5 since slices 4 and 5 vanish
        assert_eq!(h.q_max(), 5);
    }

    #[test]
    fn polynomial_ring_has_only_the_unit() {
        let h = basis_of(&[], 3);
        assert_eq!(h.betti().triples(), vec![[0, 0, 1]]);
        assert_eq!(h.format_representative(0, 0, 0), "1");
    }

    #[test]
    fn complete_intersection_pairing() {
        let h = basis_of(&two_quadrics(), 4);
        assert_eq!(h.betti().triples(), vec![[0, 0, 1], [1, 2, 2], [2, 4, 1]]);
        assert_eq!(h.top_class().unwrap(), (2, 4));
        for p in 0..=2 {
            let m = h.pairing_matrix(p).unwrap();
            assert!(m.is_perfect(), "pairing at p={p} degenerate");
        }
        // product of the two degree-2 classes spans the top
        let a = HomologyElement::basis(1, 2, 0, Rational::from_i64(1, Q));
        let b = HomologyElement::basis(1, 2, 1, Rational::from_i64(1, Q));
        let ab = h.dg_product(&a, &b).unwrap();
        let ba = h.dg_product(&b, &a).unwrap();
        assert_eq!(ab.coefficients.len(), 1);
        assert_eq!(ab.coefficients[0].1, -ba.coefficients[0].1.clone());
        // odd classes square to zero
        assert!(h.dg_product(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn unit_acts_trivially() {
        let h = basis_of(&crate::groebner::tests::twisted_cubic(), 4);
        let one = h.unit();
        for k in 0..3 {
            let x = HomologyElement::basis(1, 2, k, Rational::from_i64(1, Q));
            assert_eq!(h.dg_product(&one, &x).unwrap(), x);
            assert_eq!(h.dg_product(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn representatives_are_cycles() {
        let h = basis_of(&crate::groebner::tests::twisted_cubic(), 4);
        let s = Subsets::new(4);
        for (p, q, b) in h.betti().entries().collect::<Vec<_>>() {
            if p == 0 {
                continue;
            }
            let d = differential_matrix(h.ring(), &s, p, q);
            for k in 0..b {
                let z = h.representative(p, q, k);
                assert!(d.apply(&z).is_zero());
                let e = h.decompose(p, q, &z).unwrap();
                assert_eq!(e.coefficients, vec![(k, Rational::from_i64(1, Q))]);
            }
        }
    }

    #[test]
    fn fixed_q_max_below_numerator_degree() {
        let gb = buchberger(
            &crate::groebner::tests::twisted_cubic(),
            &MonomialOrder::grevlex(4),
        )
        .unwrap();
        let (num, _) = hilbert_numerator_auto(&gb).unwrap();
        let opts = KoszulOptions {
            q_max: Some(2),
            ..KoszulOptions::default()
        };
        assert!(matches!(
            HomologyBasis::compute(gb, Some(&num), &opts),
            Err(crate::Error::QMaxTooSmall(_))
        ));
    }

    #[test]
    fn prime_field_agrees() {
        let p = FieldMode::Prime(32003);
        let gens: Vec<Polynomial<Zp>> = two_quadrics()
            .iter()
            .map(|g| g.convert(p).unwrap())
            .collect();
        let gb = buchberger(&gens, &MonomialOrder::grevlex(4)).unwrap();
        let h = homology_basis(&gb, 6).unwrap();
        assert_eq!(h.betti().triples(), vec![[0, 0, 1], [1, 2, 2], [2, 4, 1]]);
    }

    #[test]
    fn deadline_in_the_past() {
        let gb = buchberger(&two_quadrics(), &MonomialOrder::grevlex(4)).unwrap();
        let opts = KoszulOptions {
            deadline: Some(std::time::Instant::now() - std::time::Duration::from_secs(1)),
            ..KoszulOptions::default()
        };
        assert!(matches!(
            HomologyBasis::compute(gb, None, &opts),
            Err(crate::Error::Resource(_))
        ));
    }
}
