use std::sync::Arc;

use cocyclic::groups::{FiniteGroup, TranspositionClass};
use cocyclic::linalg::SparseMatrix;
use cocyclic::scalars::{GroupRingScalar, Rational, Ring};
use cocyclic::spin::{cocycle_family_on, compare_with_vendramin, CocycleClass, VendraminMatch};
use cocyclic::yd::{
    braid_equation_holds, rack_module, rack_module_qz, trivial_module, RackCocycle, RackVariant, YDModule,
};
use proptest::prelude::*;

#[test]
fn braid_equation_for_built_in_modules() {
    for n in 3..=5 {
        for v in [RackVariant::Q1, RackVariant::Qm1] {
            let y = rack_module(n, v).unwrap();
            assert!(braid_equation_holds(&y.braiding(), y.rank()), "X{n}:{v}");
        }
        let y = rack_module_qz(n).unwrap();
        assert!(braid_equation_holds(&y.braiding(), y.rank()), "X{n}:qz");
        let a = YDModule::adjoint(Arc::new(FiniteGroup::symmetric(n)));
        assert!(braid_equation_holds(&a.braiding(), a.rank()), "adjoint S{n}");
    }
}

#[test]
fn braiding_examples() {
    let g = Arc::new(FiniteGroup::symmetric(3));
    let t = trivial_module::<Rational>(g.clone(), 2);
    let flip = SparseMatrix::from_columns(4, vec![
        vec![(0, Rational::one())],
        vec![(2, Rational::one())],
        vec![(1, Rational::one())],
        vec![(3, Rational::one())],
    ]);
    assert_eq!(t.braiding(), flip);
    let a = YDModule::adjoint(g.clone());
    let psi = a.braiding();
    let r = a.rank();
    for x in 0..r {
        for y in 0..r {
            assert_eq!(psi.column(x * r + y).to_vec(), vec![(g.conj(x, y) * r + x, Rational::one())]);
        }
    }
    let x3 = rack_module(3, RackVariant::Q1).unwrap().braiding();
    assert_eq!((x3.rows(), x3.cols()), (9, 9));
    assert!(x3.is_monomial());
}

#[test]
fn duals_and_pairing() {
    let g = Arc::new(FiniteGroup::symmetric(3));
    let t = trivial_module::<Rational>(g, 3);
    let td = t.dual();
    assert_eq!(td.degrees(), t.degrees());
    assert!((0..6).all(|x| td.action(x) == t.action(x)));
    for n in [3, 4] {
        let y = rack_module(n, RackVariant::Q1).unwrap();
        let d = y.dual();
        assert_eq!(d.degrees(), y.degrees());
        let ones = vec![Rational::one(); y.rank()];
        assert!(y.diagonal_isomorphism(&d, &ones), "X{n} self-dual");
        assert!(y.pairing_invariant(&d));
    }
    let z = rack_module_qz(4).unwrap();
    assert!(z.pairing_invariant(&z.dual()));
}

#[test]
fn twist_by_spin_cocycle_gives_qz_up_to_rescaling() {
    for n in 3..=5 {
        let y = rack_module(n, RackVariant::Q1).unwrap();
        let mu = cocycle_family_on(y.group(), CocycleClass::Spin).unwrap();
        let twisted = y.extend(&mu).unwrap();
        let qz = rack_module_qz(n).unwrap();
        let psi = match compare_with_vendramin(&mu).unwrap() {
            VendraminMatch::Exact => vec![0; y.rank()],
            VendraminMatch::Coboundary { psi } => psi,
            VendraminMatch::Mismatch { mismatches } => panic!("n = {n}: {mismatches:?}"),
        };
        let scales: Vec<GroupRingScalar> = psi.iter().map(|&p| GroupRingScalar::z_pow(2, p as i64)).collect();
        assert!(twisted.diagonal_isomorphism(&qz, &scales), "n = {n}");
        // At z = −1 the same rescaling relates the twist to (X_n, q₋₁).
        let at_minus = twisted.specialize_rational(2, &Rational::from_int(-1)).unwrap();
        let signs: Vec<Rational> = psi.iter().map(|&p| Rational::from_int(if p == 1 { -1 } else { 1 })).collect();
        assert!(at_minus.diagonal_isomorphism(&rack_module(n, RackVariant::Qm1).unwrap(), &signs));
        assert_eq!(qz.specialize_rational(2, &Rational::one()).unwrap(), y);
    }
}

#[test]
fn twist_functor_is_invertible_and_twists_the_braiding() {
    let y = rack_module(4, RackVariant::Q1).unwrap();
    let z = GroupRingScalar::z(2);
    for class in CocycleClass::ALL {
        let mu = cocycle_family_on(y.group(), class).unwrap();
        let ext = y.extend(&mu).unwrap();
        let base = y.map_coefficients(|c| GroupRingScalar::constant(c.clone()));
        assert_eq!(ext.twist(&mu.inverse(), &z).unwrap(), base, "{class}");
        // Ψ_μ = μ ∘ Ψ ∘ μ⁻¹ with μ acting diagonally on the square.
        let m = base.cocycle_on_square(&mu, &z);
        let m_inv = base.cocycle_on_square(&mu.inverse(), &z);
        assert_eq!(ext.braiding(), m.mul(&base.braiding()).mul(&m_inv), "{class}");
    }
    let trivial = cocycle_family_on(y.group(), CocycleClass::Trivial).unwrap();
    let base = y.map_coefficients(|c| GroupRingScalar::constant(c.clone()));
    assert_eq!(y.extend(&trivial).unwrap(), base);
}

#[test]
fn qm1_is_the_sign_on_all_of_sn() {
    let q = RackCocycle::<Rational>::qm1(5).unwrap();
    let g = q.group().clone();
    for s in 0..g.order() {
        let sign = if g.length(s) % 2 == 0 { Rational::one() } else { Rational::from_int(-1) };
        assert!((0..q.class().len()).all(|t| *q.get(s, t) == sign));
    }
}

#[test]
fn rack_degree_bounds() {
    assert!(rack_module(1, RackVariant::Q1).is_err());
    assert!(rack_module(7, RackVariant::Q1).is_err());
    assert!(rack_module(3, RackVariant::Qz).is_err());
    assert!(RackCocycle::<Rational>::q1(6).is_ok());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn compatibility_of_action_and_grading(n in 3usize..6, g_seed in 0usize..10_000) {
        let y = rack_module_qz(n).unwrap();
        let g = y.group().clone();
        let s = g_seed % g.order();
        let x = TranspositionClass::new(n);
        for t in 0..y.rank() {
            let col = y.action(s).column(t);
            prop_assert_eq!(col.len(), 1);
            prop_assert_eq!(col[0].0, x.conjugate(g.perm(s), t));
            prop_assert_eq!(y.degree(col[0].0), g.conj(s, y.degree(t)));
        }
    }

    #[test]
    fn braiding_is_invertible(n in 3usize..5, v in prop_oneof![Just(RackVariant::Q1), Just(RackVariant::Qm1)]) {
        let y = rack_module(n, v).unwrap();
        let psi = y.braiding();
        // Ψ⁻¹(e_k ⊗ e_i) = e_i ⊗ (deg e_i)⁻¹ ▷ e_k.
        let r = y.rank();
        let g = y.group();
        let cols = (0..r * r).map(|x| {
            let (k, i) = (x / r, x % r);
            let mut c: Vec<(usize, Rational)> = y.action(g.inv(y.degree(i))).column(k).iter().map(|(j, c)| (i * r + j, c.clone())).collect();
            c.sort_by_key(|p| p.0);
            c
        }).collect();
        let inv = SparseMatrix::from_columns(r * r, cols);
        prop_assert_eq!(psi.mul(&inv), SparseMatrix::identity(r * r));
    }
}
