use std::sync::Arc;

use cocyclic::doubles::{
    cherednik_relations_check, covariance_check, dunkl_commute_check, heisenberg_check, heisenberg_pairing,
    kernel_dependency_check, minimal_degree1_relations, rescaling_exponents, shift_check, specialize_double,
    theta_tilde, weyl_check, CherednikParams, DunklFamily, FockFamily, FockModel,
};
use cocyclic::groups::FiniteGroup;
use cocyclic::scalars::{Rational, Ring};
use cocyclic::spin::{cocycle_family_on, CocycleClass};
use cocyclic::yd::{rack_module, trivial_module, RackVariant, YDModule};
use proptest::prelude::*;
use std::sync::OnceLock;

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

#[test]
fn heisenberg_and_weyl_relations_for_rack_modules() {
    for n in [3, 4] {
        let y = rack_module(n, RackVariant::Q1).unwrap();
        let m = FockModel::build(&y, 3).unwrap();
        assert_eq!(m.dim_b(), m.truncation().hilbert().iter().sum::<usize>());
        for check in [heisenberg_check(&m), weyl_check(&m), covariance_check(&m)] {
            assert!(check.status, "X{n}: {} {:?}", check.name, check.witness);
        }
        assert!(shift_check(&y), "X{n}");
    }
    assert_eq!(FockModel::build(&rack_module(4, RackVariant::Q1).unwrap(), 3).unwrap().dim(), 68 * 24);
}

#[test]
fn relations_for_adjoint_and_trivial_modules() {
    let g = Arc::new(FiniteGroup::symmetric(3));
    let a = YDModule::adjoint(g.clone());
    assert!(shift_check(&a));
    let m = FockModel::build(&a, 2).unwrap();
    assert!(heisenberg_check(&m).status);
    assert!(weyl_check(&m).status);
    assert!(shift_check(&trivial_module::<Rational>(g, 2)));
}

#[test]
fn twisted_fock_components() {
    let y = rack_module(3, RackVariant::Q1).unwrap();
    let mu = cocycle_family_on(y.group(), CocycleClass::Spin).unwrap();
    let fam = FockFamily::twisted(&y, &mu, 3).unwrap();
    for m in fam.components() {
        assert!(heisenberg_check(m).status, "z = {}", m.epsilon());
        assert!(weyl_check(m).status, "z = {}", m.epsilon());
        assert!(covariance_check(m).status, "z = {}", m.epsilon());
    }
    let plus = specialize_double(&fam, &q(1)).unwrap();
    assert_eq!(plus.module(), &y);
    assert!(specialize_double(&fam, &q(2)).is_err());
}

#[test]
fn covering_cherednik_relations() {
    let params = CherednikParams { n: 4, t: q(0), c: q(1) };
    let report = cherednik_relations_check(&params, CocycleClass::Spin, 3).unwrap();
    for r in &report.relations {
        assert!(r.status, "{}: {:?}", r.name, r.witness);
    }
    assert!(report.passed(), "{:?}", report.specializations);
    assert_eq!(report.dependency_rank, 1);
    // Without the factor z the exchange relation fails, and only at z = −1.
    for r in &report.z_free {
        assert!(!r.status);
        assert!(r.witness.as_ref().unwrap().starts_with("z=-1"), "{:?}", r.witness);
    }
    let json = serde_json::to_string(&report).unwrap();
    assert!(json.contains("\"relations\""));
}

#[test]
fn rational_cherednik_relations_at_trivial_cocycle() {
    let params = CherednikParams { n: 3, t: q(0), c: Rational::new(3, 2) };
    let report = cherednik_relations_check(&params, CocycleClass::Trivial, 3).unwrap();
    assert!(report.passed(), "{:#?}", report.relations);
    let bad = CherednikParams { n: 3, t: q(1), c: q(1) };
    assert!(cherednik_relations_check(&bad, CocycleClass::Trivial, 3).is_err());
    assert!(cherednik_relations_check(&params, CocycleClass::Length, 3).is_err());
}

#[test]
fn relations_hold_for_other_values_of_c() {
    for c in [q(0), Rational::new(-2, 3)] {
        let params = CherednikParams { n: 3, t: q(0), c };
        let report = cherednik_relations_check(&params, CocycleClass::Spin, 2).unwrap();
        assert!(report.passed(), "{:#?}", report.relations);
    }
}

#[test]
fn dunkl_elements_commute_as_expected() {
    for n in 3..=5 {
        for family in [DunklFamily::Theta, DunklFamily::Alpha, DunklFamily::ThetaTilde] {
            let r = dunkl_commute_check(family, n).unwrap();
            assert!(r.holds, "{family} n = {n}: {:?}", r.failures);
        }
    }
}

#[test]
fn kernel_dependency_and_degree_one_relations() {
    for n in 3..=5 {
        let d = kernel_dependency_check(n).unwrap();
        assert!(d.passed());
        assert_eq!(d.component_kernel_dims, [1, 0]);
    }
    let y = rack_module(4, RackVariant::Q1).unwrap();
    let beta = heisenberg_pairing(&y);
    assert!(beta.is_equivariant(&y));
    let rel = minimal_degree1_relations(&beta);
    assert!(rel.v_kernel.is_empty() && rel.f_kernel.is_empty());
    // On the θ's and θ*'s the pairing kills Σ θ_j.
    let at_one = |v: Vec<(usize, cocyclic::scalars::GroupRingScalar)>| -> Vec<(usize, Rational)> {
        v.iter().map(|(k, s)| (*k, s.specialize_rational(2, &q(1)).unwrap())).collect()
    };
    let thetas: Vec<_> = (0..4).map(|j| at_one(theta_tilde(4, j))).collect();
    let rel = minimal_degree1_relations(&beta.restrict(&thetas, &thetas));
    assert_eq!(rel.v_kernel.len(), 1);
    assert!(rel.v_kernel[0].iter().all(|c| *c == rel.v_kernel[0][0] && !c.is_zero()));
    assert_eq!(rel.f_kernel.len(), 1);
}

#[test]
fn rescaling_is_normalized_on_simple_transpositions() {
    for n in 3..=5 {
        let g = Arc::new(FiniteGroup::symmetric(n));
        let mu = cocycle_family_on(&g, CocycleClass::Spin).unwrap();
        let psi = rescaling_exponents(&mu).unwrap();
        let x = cocyclic::groups::TranspositionClass::new(n);
        assert!((0..n - 1).all(|i| psi[x.index(i, i + 1)] == 0), "n = {n}: {psi:?}");
    }
}

fn x3_fock() -> &'static FockModel {
    static M: OnceLock<FockModel> = OnceLock::new();
    M.get_or_init(|| FockModel::build(&rack_module(3, RackVariant::Q1).unwrap(), 3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_conjugates_creations(g in 0usize..6, coeffs in proptest::collection::vec(-3i64..4, 3)) {
        let m = x3_fock();
        let v: Vec<(usize, Rational)> = coeffs.iter().enumerate().filter(|p| *p.1 != 0).map(|(i, c)| (i, q(*c))).collect();
        let moved = m.module().action(g).apply(&v);
        let lhs = m.group_op(g).mul(&m.creation(&v)).mul(&m.group_op_inverse(g));
        prop_assert_eq!(lhs, m.creation(&moved));
    }

    #[test]
    fn heisenberg_relation_is_bilinear(f in proptest::collection::vec(-2i64..3, 3), v in proptest::collection::vec(-2i64..3, 3)) {
        // [D_f, L_v] = Σ_a f_a v_a ρ(deg e_a) on degrees ≤ 2.
        let m = x3_fock();
        let fv: Vec<(usize, Rational)> = f.iter().enumerate().filter(|p| *p.1 != 0).map(|(i, c)| (i, q(*c))).collect();
        let vv: Vec<(usize, Rational)> = v.iter().enumerate().filter(|p| *p.1 != 0).map(|(i, c)| (i, q(*c))).collect();
        let (df, lv) = (m.annihilation(&fv), m.creation(&vv));
        let lhs = df.mul(&lv).sub(&lv.mul(&df));
        let mut rhs = cocyclic::linalg::SparseMatrix::zeros(m.dim(), m.dim());
        for a in 0..3 {
            rhs = rhs.add(&m.group_op(m.module().degree(a)).scale(&q(f[a] * v[a])));
        }
        prop_assert!(m.disagreement(&lhs, &rhs, 2).is_none());
    }
}
