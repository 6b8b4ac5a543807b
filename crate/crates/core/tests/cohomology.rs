use std::sync::Arc;

use cocyclic::cohomology::{h2_bar, h2_cayley, h2_structure, schur_multiplier_abelian, ZmCocycle};
use cocyclic::groups::FiniteGroup;

#[test]
fn h2_routes_agree_on_small_groups() {
    let cases: Vec<(&str, usize, Vec<i64>)> = vec![
        ("C2", 2, vec![2]),
        ("C4", 4, vec![4]),
        ("C2^2", 2, vec![2, 2, 2]),
        ("C3^2", 3, vec![3, 3, 3]),
        ("S3", 2, vec![2]),
        ("S3", 3, vec![]),
        ("C6", 6, vec![2, 3]),
    ];
    for (spec, m, want) in cases {
        let g = FiniteGroup::from_spec(spec).unwrap();
        let bar = h2_bar(&g, m).unwrap();
        let cay = h2_cayley(&g, m).unwrap();
        assert_eq!(bar.elementary_divisors, want, "bar route for {spec}, m={m}");
        assert_eq!(cay.elementary_divisors, want, "cayley route for {spec}, m={m}");
    }
}

#[test]
fn h2_symmetric_groups() {
    let s4 = FiniteGroup::symmetric(4);
    assert_eq!(h2_bar(&s4, 2).unwrap().elementary_divisors, vec![2, 2]);
    assert_eq!(h2_cayley(&s4, 2).unwrap().elementary_divisors, vec![2, 2]);
    let s5 = FiniteGroup::symmetric(5);
    assert_eq!(h2_structure(&s5, 2).unwrap().elementary_divisors, vec![2, 2]);
}

#[test]
fn schur_multipliers_of_elementary_abelian_groups() {
    let g = FiniteGroup::from_spec("C2^2").unwrap();
    assert_eq!(schur_multiplier_abelian(&g, 2).unwrap(), vec![2]);
    let g = FiniteGroup::from_spec("C2^3").unwrap();
    assert_eq!(schur_multiplier_abelian(&g, 2).unwrap(), vec![2, 2, 2]);
    let g = FiniteGroup::from_spec("C3^2").unwrap();
    assert_eq!(schur_multiplier_abelian(&g, 3).unwrap(), vec![3]);
    assert!(schur_multiplier_abelian(&FiniteGroup::symmetric(3), 2).is_err());
    assert!(schur_multiplier_abelian(&FiniteGroup::cyclic(4), 2).is_err());
}

#[test]
fn trivial_cocycle_checks() {
    let g = Arc::new(FiniteGroup::symmetric(3));
    let mu = ZmCocycle::trivial(g.clone(), 2);
    assert!(mu.is_cocycle());
    assert!(mu.cohomologous(&mu).unwrap().unwrap().is_zero());
}
