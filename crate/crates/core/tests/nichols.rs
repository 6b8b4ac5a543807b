use std::sync::Arc;

use cocyclic::groups::{FiniteGroup, TranspositionClass};
use cocyclic::linalg::{SparseMatrix, SparseVec};
use cocyclic::nichols::{
    block_rank, dense_rank_oracle, group_closure, hilbert_prefix, hilbert_prefix_split, qz_quadratic_relations,
    span_rank, split_braiding, tensor_action, twist_equivalence_check, Braiding, FactorialMethod, NicholsTruncation,
    RankCache,
};
use cocyclic::scalars::{Rational, Ring};
use cocyclic::spin::{cocycle_family_on, CocycleClass};
use cocyclic::yd::{rack_module, rack_module_qz, RackVariant, YDModule};
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

fn rational_braidings(n: usize) -> Vec<(String, Braiding<Rational>)> {
    [RackVariant::Q1, RackVariant::Qm1]
        .into_iter()
        .map(|v| (format!("X{n}:{v}"), Braiding::from_module(&rack_module(n, v).unwrap()).unwrap()))
        .collect()
}

#[test]
fn factorial_constructions_agree() {
    for n in 3..=5 {
        let qz = Braiding::from_module(&rack_module_qz(n).unwrap()).unwrap();
        for d in 0..=4 {
            for (name, b) in rational_braidings(n) {
                let p = b.factorial(d, FactorialMethod::Product).unwrap();
                assert_eq!(p, b.factorial(d, FactorialMethod::WordSum).unwrap(), "{name} degree {d}");
            }
            let p = qz.factorial(d, FactorialMethod::Product).unwrap();
            assert_eq!(p, qz.factorial(d, FactorialMethod::WordSum).unwrap(), "X{n}:qz degree {d}");
        }
    }
    let adj = Braiding::from_module(&YDModule::adjoint(Arc::new(FiniteGroup::symmetric(3)))).unwrap();
    for d in 0..=4 {
        assert_eq!(adj.factorial(d, FactorialMethod::Product).unwrap(), adj.factorial(d, FactorialMethod::WordSum).unwrap());
    }
}

fn binomial_theorem<R: Ring>(b: &Braiding<R>, n: usize) -> bool {
    let full = b.factorial(n, FactorialMethod::Product).unwrap();
    (0..=n).all(|k| {
        let left = b.factorial(k, FactorialMethod::Product).unwrap();
        let right = b.factorial(n - k, FactorialMethod::Product).unwrap();
        left.kron(&right).mul(&b.binomial(n, k).unwrap()) == full
    })
}

#[test]
fn braided_binomial_theorem() {
    for n in [3, 4] {
        let qz = Braiding::from_module(&rack_module_qz(n).unwrap()).unwrap();
        for d in 1..=4 {
            for (name, b) in rational_braidings(n) {
                assert!(binomial_theorem(&b, d), "{name} degree {d}");
            }
            assert!(binomial_theorem(&qz, d), "X{n}:qz degree {d}");
        }
    }
    let b = &rational_braidings(3)[0].1;
    assert_eq!(b.binomial(3, 0).unwrap(), SparseMatrix::identity(27));
    assert!(b.binomial(2, 3).is_err());
}

#[test]
fn x3_hilbert_series_with_dense_oracle() {
    let b = Braiding::from_module(&rack_module(3, RackVariant::Q1).unwrap()).unwrap();
    let ranks = hilbert_prefix(&b, 5, None).unwrap();
    assert_eq!(ranks, vec![1, 3, 4, 3, 1, 0]);
    assert_eq!(ranks.iter().sum::<usize>(), 12);
    let oracle: Vec<usize> = (0..=5).map(|d| dense_rank_oracle(&b.factorial(d, FactorialMethod::WordSum).unwrap())).collect();
    assert_eq!(oracle, ranks);
    // Degree two: rank 4, kernel 5.
    let two = b.factorial(2, FactorialMethod::Product).unwrap();
    assert_eq!((block_rank(&two), 9 - block_rank(&two)), (4, 5));
}

#[test]
fn q1_and_qm1_prefixes_agree_and_qz_is_flat() {
    for n in [3, 4] {
        let [p1, pm1]: [Vec<usize>; 2] = rational_braidings(n)
            .into_iter()
            .map(|(_, b)| hilbert_prefix(&b, 4, None).unwrap())
            .collect::<Vec<_>>()
            .try_into()
            .unwrap();
        assert_eq!(p1, pm1, "n = {n}");
        let report = hilbert_prefix_split(&Braiding::from_module(&rack_module_qz(n).unwrap()).unwrap(), 4, None).unwrap();
        assert!(report.flat);
        assert_eq!(report.components.as_ref().unwrap()[0], p1);
        assert_eq!(report.components.as_ref().unwrap()[1], p1);
        println!("X{n}: {p1:?}");
    }
}

#[test]
fn components_of_qz_are_q1_and_qm1_up_to_rescaling() {
    for n in [3, 4] {
        let [plus, minus] = split_braiding(&Braiding::from_module(&rack_module_qz(n).unwrap()).unwrap()).unwrap();
        let b1 = Braiding::from_module(&rack_module(n, RackVariant::Q1).unwrap()).unwrap();
        assert_eq!(plus, b1);
        let bm = Braiding::from_module(&rack_module(n, RackVariant::Qm1).unwrap()).unwrap();
        for d in 0..=3 {
            let a = block_rank(&minus.factorial(d, FactorialMethod::Product).unwrap());
            assert_eq!(a, block_rank(&bm.factorial(d, FactorialMethod::Product).unwrap()));
        }
    }
}

#[test]
fn kernels_are_submodules() {
    let y = rack_module(4, RackVariant::Q1).unwrap();
    let t = NicholsTruncation::build(&Braiding::from_module(&y).unwrap(), 3).unwrap();
    for d in 2..=3 {
        let f = t.braiding().factorial(d, FactorialMethod::Product).unwrap();
        for g in [1, 5, 17, 23] {
            for v in t.kernel(d) {
                let w = tensor_action(&y, g, d, v);
                assert!(f.apply(&w).is_empty(), "degree {d}, g{g}");
            }
        }
        // Homogeneous in the grading: each kernel vector lives in one degree.
        let g = y.group();
        for v in t.kernel(d) {
            let deg = |w: usize| t.letters(d, w).iter().fold(g.identity(), |acc, &a| g.mul(acc, y.degree(a)));
            let first = deg(v[0].0);
            assert!(v.iter().all(|(w, _)| deg(*w) == first));
        }
    }
}

#[test]
fn quadratic_relations_of_qz_span_the_kernel() {
    for (n, literal, kernel) in [(3, 4, 5), (4, 13, 17)] {
        let y = rack_module_qz(n).unwrap();
        let b = Braiding::from_module(&y).unwrap();
        let r = y.rank();
        let rels = qz_quadratic_relations(n);
        assert_eq!(rels.len(), literal);
        let two = b.factorial(2, FactorialMethod::Product).unwrap();
        let closed = group_closure(&y, 2, &rels);
        for rel in &closed {
            assert!(two.apply(rel).is_empty());
        }
        let [plus, minus] = split_braiding(&b).unwrap();
        for (sign, comp) in [(1, plus), (-1, minus)] {
            let kdim = r * r - block_rank(&comp.factorial(2, FactorialMethod::Product).unwrap());
            assert_eq!(kdim, kernel);
            let spec: Vec<SparseVec<Rational>> = closed
                .iter()
                .map(|v| v.iter().map(|(i, c)| (*i, c.specialize_rational(2, &q(sign)).unwrap())).filter(|p| !p.1.is_zero()).collect())
                .collect();
            assert_eq!(span_rank(&spec, r * r), kernel, "n = {n}, z = {sign}");
            let literal_only: Vec<SparseVec<Rational>> = rels
                .iter()
                .map(|v| v.iter().map(|(i, c)| (*i, c.specialize_rational(2, &q(sign)).unwrap())).collect())
                .collect();
            assert_eq!(span_rank(&literal_only, r * r), literal);
        }
    }
}

#[test]
fn twisting_conjugates_symmetrizers() {
    let y = rack_module(4, RackVariant::Q1).unwrap();
    let mu = cocycle_family_on(y.group(), CocycleClass::Spin).unwrap();
    let report = twist_equivalence_check(&y, &mu, 3).unwrap();
    assert!(report.passed(), "{report:?}");
    let trivial = cocycle_family_on(y.group(), CocycleClass::Trivial).unwrap();
    assert!(twist_equivalence_check(&y, &trivial, 3).unwrap().passed());
}

#[test]
fn multiplication_examples() {
    let x = TranspositionClass::new(3);
    let t1 = NicholsTruncation::build(&Braiding::from_module(&rack_module(3, RackVariant::Q1).unwrap()).unwrap(), 3).unwrap();
    let e12 = t1.generator(x.index(0, 1));
    assert!(t1.multiply(&e12, &e12).unwrap().coords.is_empty());
    assert_eq!(t1.multiply(&t1.one(), &e12).unwrap(), e12);
    let theta = |j: usize, tr: &NicholsTruncation<Rational>| {
        let mut v = Vec::new();
        for i in 0..3 {
            if i < j {
                v.push((x.index(i, j), q(-1)));
            } else if i > j {
                v.push((x.index(j, i), q(1)));
            }
        }
        v.sort_by_key(|p| p.0);
        tr.from_degree1(v)
    };
    let (a, b) = (theta(0, &t1), theta(1, &t1));
    assert_eq!(t1.multiply(&a, &b).unwrap(), t1.multiply(&b, &a).unwrap());
    let tm = NicholsTruncation::build(&Braiding::from_module(&rack_module(3, RackVariant::Qm1).unwrap()).unwrap(), 2).unwrap();
    let alpha = |j: usize| {
        let mut v: Vec<(usize, Rational)> = (0..3).filter(|&i| i != j).map(|i| (x.index(i, j), q(-1))).collect();
        v.sort_by_key(|p| p.0);
        tm.from_degree1(v)
    };
    let ab = tm.multiply(&alpha(0), &alpha(1)).unwrap();
    let ba = tm.multiply(&alpha(1), &alpha(0)).unwrap();
    assert_eq!(ab, tm.scale(&ba, &q(-1)));
    assert!(!ab.coords.is_empty());
}

#[test]
fn cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("cocyclic-cache-test-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let b = Braiding::from_module(&rack_module(3, RackVariant::Q1).unwrap()).unwrap();
    let cold = RankCache::new(&dir).unwrap();
    let first = hilbert_prefix(&b, 4, Some(&cold)).unwrap();
    assert_eq!(cold.hits(), 0);
    let warm = RankCache::new(&dir).unwrap();
    assert_eq!(hilbert_prefix(&b, 4, Some(&warm)).unwrap(), first);
    assert_eq!(warm.hits(), 5);
    assert_ne!(RankCache::key(&b, 2), RankCache::key(&b, 3));
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn truncation_is_associative(a in 0usize..6, b in 0usize..6, c in 0usize..6, w in 0usize..36) {
        let t = truncation_x4();
        let x = t.generator(a);
        let y = t.generator(b);
        let z = t.generator(c);
        let left = t.multiply(&t.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = t.multiply(&x, &t.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        // A degree-two class times a generator.
        let u = t.reduce(2, &[(w, q(1))]).unwrap();
        let l2 = t.multiply(&t.multiply(&x, &u).unwrap(), &y);
        let r2 = t.multiply(&x, &t.multiply(&u, &y).unwrap());
        prop_assert_eq!(l2.is_ok(), false);
        prop_assert_eq!(r2.is_ok(), false);
        let s = t.multiply(&u, &x).unwrap();
        let s2 = t.multiply(&t.multiply(&t.generator(w / 6), &t.generator(w % 6)).unwrap(), &x).unwrap();
        prop_assert_eq!(s, s2);
    }

    #[test]
    fn factorial_is_zero_on_its_kernel(n in 3usize..5, d in 2usize..4) {
        let b = Braiding::from_module(&rack_module(n, RackVariant::Qm1).unwrap()).unwrap();
        let t = NicholsTruncation::build(&b, d).unwrap();
        let f = b.factorial(d, FactorialMethod::WordSum).unwrap();
        for v in t.kernel(d) {
            prop_assert!(f.apply(v).is_empty());
        }
        prop_assert_eq!(t.kernel(d).len() + t.dim(d), b.tensor_dim(d).unwrap());
    }
}

fn truncation_x4() -> &'static NicholsTruncation<Rational> {
    use std::sync::OnceLock;
    static T: OnceLock<NicholsTruncation<Rational>> = OnceLock::new();
    T.get_or_init(|| NicholsTruncation::build(&Braiding::from_module(&rack_module(4, RackVariant::Q1).unwrap()).unwrap(), 3).unwrap())
}

#[test]
fn group_ring_reports_components() {
    let y = rack_module_qz(3).unwrap();
    let b = Braiding::from_module(&y).unwrap();
    let r = hilbert_prefix_split(&b, 5, None).unwrap();
    assert_eq!(r.components, Some([vec![1, 3, 4, 3, 1, 0], vec![1, 3, 4, 3, 1, 0]]));
}
