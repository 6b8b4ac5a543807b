//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.

use std::panic;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cocyclic::cohomology::{chi_from_cocycle, h2_structure, schur_multiplier_abelian, ZmCocycle};
use cocyclic::doubles::{
    cherednik_relations_check, dunkl_commute_check, heisenberg_check, kernel_dependency_check, shift_check,
    weyl_check, CherednikParams, DunklFamily, FockModel,
};
use cocyclic::graded::{clifford_cocycle, clifford_gamma, GradedAlgebra};
use cocyclic::groups::FiniteGroup;
use cocyclic::linalg::{vec_scale, SparseVec};
use cocyclic::nichols::{
    block_rank, dense_rank_oracle, group_closure, hilbert_prefix, hilbert_prefix_split, qz_quadratic_relations,
    span_rank, split_braiding, Braiding, FactorialMethod,
};
use cocyclic::scalars::{Rational, Ring};
use cocyclic::spin::{cocycle_family_on, compare_with_vendramin, cover_invariants, spin_cocycle, CocycleClass, VendraminMatch};
use cocyclic::yd::{braid_equation_holds, rack_module, rack_module_qz, RackVariant, YDModule};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(v: i64) -> Rational {
    Rational::from_int(v)
}

fn cohomology() -> Outcome {
    for n in [4, 5] {
        let d = h2_structure(&FiniteGroup::symmetric(n), 2).map_err(|e| e.to_string())?.elementary_divisors;
        ensure(d == vec![2, 2], format!("H2(S{n}, C2) = {d:?}"))?;
    }
    for (p, k, want) in [(2, 2, vec![2]), (2, 3, vec![2, 2, 2]), (3, 2, vec![3])] {
        let got = schur_multiplier_abelian(&FiniteGroup::elementary_abelian(p, k), p).map_err(|e| e.to_string())?;
        ensure(got == want, format!("M(C{p}^{k}) = {got:?}"))?;
    }
    Ok("H2(S4,C2) = H2(S5,C2) = C2^2; M(C2^2) = C2, M(C2^3) = C2^3, M(C3^2) = C3".into())
}

fn spin_cover() -> Outcome {
    for n in 3..=5 {
        let mu = spin_cocycle(n).map_err(|e| e.to_string())?;
        ensure(mu.is_cocycle(), format!("spin cocycle check fails for n = {n}"))?;
        let inv = cover_invariants(&mu).map_err(|e| e.to_string())?;
        let fact: usize = (1..=n).product();
        ensure(inv.order == 2 * fact, format!("extension order {} for n = {n}", inv.order))?;
        ensure(inv.transposition_square == Some(0), format!("transposition lifts square to z for n = {n}"))?;
        if n >= 4 {
            ensure(inv.disjoint_commutator == Some(1), format!("disjoint lifts commute for n = {n}"))?;
        }
    }
    let g = Arc::new(FiniteGroup::symmetric(4));
    let fam: Vec<ZmCocycle> =
        CocycleClass::ALL.iter().map(|&c| cocycle_family_on(&g, c)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    for a in 0..4 {
        for b in a + 1..4 {
            let c = fam[a].cohomologous(&fam[b]).map_err(|e| e.to_string())?;
            ensure(c.is_none(), format!("classes {a} and {b} are cohomologous"))?;
        }
    }
    Ok("n = 3,4,5: cocycle, order 2n!, t^2 = 1, disjoint lifts anticommute; 4 classes distinct on S4".into())
}

fn chi_rule() -> Outcome {
    let mu = spin_cocycle(4).map_err(|e| e.to_string())?;
    ensure(chi_from_cocycle(&mu).check_z1().is_ok(), "chi is not a 1-cocycle")?;
    match compare_with_vendramin(&mu).map_err(|e| e.to_string())? {
        VendraminMatch::Exact => Ok("exact agreement".into()),
        VendraminMatch::Coboundary { psi } => Ok(format!("agrees after coboundary correction psi = {psi:?}")),
        VendraminMatch::Mismatch { mismatches } => Err(format!("{mismatches} mismatching pairs, no correction")),
    }
}

fn clifford() -> Outcome {
    let minus = q(-1);
    for n in 1..=4 {
        let g = Arc::new(FiniteGroup::elementary_abelian(2, n));
        let c = GradedAlgebra::<Rational>::group_algebra(g.clone()).twist(&clifford_cocycle(g, n), &minus).map_err(|e| e.to_string())?;
        let one = vec![(c.unit(), Rational::one())];
        for i in 1..=n {
            let gi = clifford_gamma::<Rational>(n, i);
            ensure(c.mul(&gi, &gi) == one, format!("gamma_{i}^2 != 1 for n = {n}"))?;
            for j in i + 1..=n {
                let gj = clifford_gamma::<Rational>(n, j);
                ensure(c.mul(&gj, &gi) == vec_scale(&c.mul(&gi, &gj), &minus), format!("gamma_{j} gamma_{i} for n = {n}"))?;
            }
        }
    }
    Ok("Clifford relations for n = 1..4".into())
}

fn braidings() -> Outcome {
    for n in 3..=5 {
        for v in [RackVariant::Q1, RackVariant::Qm1] {
            let y = rack_module(n, v).map_err(|e| e.to_string())?;
            ensure(braid_equation_holds(&y.braiding(), y.rank()), format!("X{n}:{v}"))?;
        }
        let y = rack_module_qz(n).map_err(|e| e.to_string())?;
        ensure(braid_equation_holds(&y.braiding(), y.rank()), format!("X{n}:qz"))?;
        let a = YDModule::adjoint(Arc::new(FiniteGroup::symmetric(n)));
        ensure(braid_equation_holds(&a.braiding(), a.rank()), format!("adjoint S{n}"))?;
    }
    Ok("q1, qm1, qz and adjoint modules for n = 3,4,5".into())
}

fn symmetrizer_forms<R: Ring>(name: &str, b: &Braiding<R>) -> Result<(), String> {
    for d in 0..=4 {
        let p = b.factorial(d, FactorialMethod::Product).map_err(|e| e.to_string())?;
        let w = b.factorial(d, FactorialMethod::WordSum).map_err(|e| e.to_string())?;
        ensure(p == w, format!("{name}: product and word-sum differ in degree {d}"))?;
        for k in 0..=d {
            let left = b.factorial(k, FactorialMethod::Product).map_err(|e| e.to_string())?;
            let right = b.factorial(d - k, FactorialMethod::Product).map_err(|e| e.to_string())?;
            let bin = b.binomial(d, k).map_err(|e| e.to_string())?;
            ensure(left.kron(&right).mul(&bin) == p, format!("{name}: binomial theorem fails at ({d}, {k})"))?;
        }
    }
    Ok(())
}

fn symmetrizers() -> Outcome {
    let err = |e: cocyclic::nichols::NicholsError| e.to_string();
    for n in [3, 4] {
        for v in [RackVariant::Q1, RackVariant::Qm1] {
            let b = Braiding::from_module(&rack_module(n, v).map_err(|e| e.to_string())?).map_err(err)?;
            symmetrizer_forms(&format!("X{n}:{v}"), &b)?;
        }
        let b = Braiding::from_module(&rack_module_qz(n).map_err(|e| e.to_string())?).map_err(err)?;
        symmetrizer_forms(&format!("X{n}:qz"), &b)?;
    }
    let b = Braiding::from_module(&YDModule::adjoint(Arc::new(FiniteGroup::symmetric(3)))).map_err(err)?;
    symmetrizer_forms("adjoint S3", &b)?;
    Ok("product = word sum and binomial theorem, degrees <= 4".into())
}

fn nichols_flatness() -> Outcome {
    let err = |e: cocyclic::nichols::NicholsError| e.to_string();
    let mut detail = Vec::new();
    for n in [3, 4] {
        let b1 = Braiding::from_module(&rack_module(n, RackVariant::Q1).map_err(|e| e.to_string())?).map_err(err)?;
        let bm = Braiding::from_module(&rack_module(n, RackVariant::Qm1).map_err(|e| e.to_string())?).map_err(err)?;
        let p1 = hilbert_prefix(&b1, 4, None).map_err(err)?;
        let pm = hilbert_prefix(&bm, 4, None).map_err(err)?;
        ensure(p1 == pm, format!("n = {n}: q1 {p1:?} vs qm1 {pm:?}"))?;
        let bz = Braiding::from_module(&rack_module_qz(n).map_err(|e| e.to_string())?).map_err(err)?;
        let rep = hilbert_prefix_split(&bz, 4, None).map_err(err)?;
        let comps = rep.components.clone().unwrap_or_default();
        ensure(comps[0] == p1 && comps[1] == p1, format!("n = {n}: qz components {comps:?}"))?;
        detail.push(format!("X{n}: {p1:?}"));
    }
    let b = Braiding::from_module(&rack_module(3, RackVariant::Q1).map_err(|e| e.to_string())?).map_err(err)?;
    let ranks = hilbert_prefix(&b, 5, None).map_err(err)?;
    ensure(ranks == vec![1, 3, 4, 3, 1, 0], format!("X3 prefix {ranks:?}"))?;
    ensure(ranks.iter().sum::<usize>() == 12, "X3 total")?;
    for d in 0..=5 {
        let oracle = dense_rank_oracle(&b.factorial(d, FactorialMethod::WordSum).map_err(err)?);
        ensure(oracle == ranks[d], format!("dense oracle rank {oracle} in degree {d}"))?;
    }
    detail.push("X3 prefix 1,3,4,3,1,0 (dense oracle agrees)".into());
    Ok(detail.join("; "))
}

fn quadratic_relations() -> Outcome {
    let err = |e: cocyclic::nichols::NicholsError| e.to_string();
    let mut detail = Vec::new();
    for n in [3, 4] {
        let y = rack_module_qz(n).map_err(|e| e.to_string())?;
        let b = Braiding::from_module(&y).map_err(err)?;
        let r = y.rank();
        let rels = qz_quadratic_relations(n);
        let two = b.factorial(2, FactorialMethod::Product).map_err(err)?;
        let closed = group_closure(&y, 2, &rels);
        ensure(closed.iter().all(|v| two.apply(v).is_empty()), format!("n = {n}: a relation is not in ker [2]!"))?;
        let [plus, minus] = split_braiding(&b).map_err(err)?;
        let mut dims = Vec::new();
        for (point, comp) in [(1, plus), (-1, minus)] {
            let kernel = r * r - block_rank(&comp.factorial(2, FactorialMethod::Product).map_err(err)?);
            let spec: Vec<SparseVec<Rational>> = closed
                .iter()
                .map(|v| v.iter().map(|(i, c)| (*i, c.specialize_rational(2, &q(point)).unwrap())).filter(|p| !p.1.is_zero()).collect())
                .collect();
            let rank = span_rank(&spec, r * r);
            ensure(rank == kernel, format!("n = {n}, z = {point}: relations span {rank} of {kernel}"))?;
            dims.push(kernel);
        }
        detail.push(format!("n = {n}: {} listed, kernel dim {}", rels.len(), dims[0]));
    }
    Ok(detail.join("; "))
}

fn dunkl() -> Outcome {
    for n in 3..=5 {
        for f in [DunklFamily::Theta, DunklFamily::Alpha, DunklFamily::ThetaTilde] {
            let r = dunkl_commute_check(f, n).map_err(|e| e.to_string())?;
            ensure(r.holds, format!("{f} n = {n}: failures {:?}", r.failures))?;
        }
    }
    Ok("theta commute, alpha anticommute, theta-tilde z-commute, n = 3,4,5".into())
}

fn heisenberg_weyl() -> Outcome {
    for n in [3, 4] {
        let y = rack_module(n, RackVariant::Q1).map_err(|e| e.to_string())?;
        let m = FockModel::build(&y, 3).map_err(|e| e.to_string())?;
        for c in [heisenberg_check(&m), weyl_check(&m)] {
            ensure(c.status, format!("X{n}: {} at {:?}", c.name, c.witness))?;
        }
        ensure(shift_check(&y), format!("shift lemma fails for X{n}"))?;
    }
    Ok("X3, X4 with q1: Heisenberg and Weyl relations on degrees <= 2, shift lemma".into())
}

fn covering_cherednik() -> Outcome {
    let params = CherednikParams { n: 4, t: q(0), c: q(1) };
    let report = cherednik_relations_check(&params, CocycleClass::Spin, 3).map_err(|e| e.to_string())?;
    for r in &report.relations {
        ensure(r.status, format!("{} fails at {:?}", r.name, r.witness))?;
    }
    for (k, v) in &report.specializations {
        ensure(*v, format!("specialization {k} fails"))?;
    }
    let dep = kernel_dependency_check(4).map_err(|e| e.to_string())?;
    ensure(dep.passed() && dep.component_kernel_dims == [1, 0], format!("dependency {dep:?}"))?;
    let z_free_fails = report.z_free.iter().all(|r| !r.status);
    Ok(format!(
        "{} relations hold, dependency rank {}; (vi)/(b) for x hold as t_i x_i = z x_{{i+1}} t_i{}",
        report.relations.len(),
        report.dependency_rank,
        if z_free_fails { ", the z-free form fails at z = -1" } else { "" }
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 11] = [
        (1, "cohomology golden values", 120, cohomology),
        (2, "spin cover", 120, spin_cover),
        (3, "chi consistency", 30, chi_rule),
        (4, "Clifford as twist", 60, clifford),
        (5, "braid equations", 120, braidings),
        (6, "symmetrizer cross-check", 300, symmetrizers),
        (7, "Nichols flatness", 600, nichols_flatness),
        (8, "quadratic relations of B(RX_n, q_z)", 120, quadratic_relations),
        (9, "Dunkl families", 60, dunkl),
        (10, "Heisenberg/Weyl model", 120, heisenberg_weyl),
        (11, "covering Cherednik", 300, covering_cherednik),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(limit) => Err(format!("{d} but took longer than {limit} s")),
            o => o,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name} ({secs:.2} s, limit {limit} s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} ({secs:.2} s, limit {limit} s): {why}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
