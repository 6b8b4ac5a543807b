use std::path::PathBuf;
use std::sync::Arc;

use serde_json::{json, Value};

use cocyclic::cohomology::{h2_structure, schur_multiplier_abelian, CocycleJson, ZmCocycle};
use cocyclic::doubles::{
    cherednik_relations_check, covariance_check, dunkl_commute_check, heisenberg_check, shift_check, weyl_check,
    CherednikParams, DunklFamily, FockModel,
};
use cocyclic::graded::{clifford_cocycle, clifford_gamma, coaction_realization_check, GradedAlgebra};
use cocyclic::groups::FiniteGroup;
use cocyclic::linalg::vec_scale;
use cocyclic::nichols::{
    block_rank, group_closure, hilbert_prefix, hilbert_prefix_split, qz_quadratic_relations, span_rank,
    split_braiding, Braiding, FactorialMethod, HilbertReport, RankCache, DEFAULT_BUDGET,
};
use cocyclic::scalars::{Rational, Ring};
use cocyclic::spin::{
    cocycle_family_on, compare_with_vendramin, cover_invariants, spin_cocycle, CocycleClass, VendraminMatch,
};
use cocyclic::yd::{braid_equation_witness, rack_module_qz};

use crate::spec::{parse_module, ModuleSpec};

/// Largest truncation degree accepted by the Nichols commands.
pub const MAX_NICHOLS_DEGREE: usize = 8;
/// Largest truncation degree accepted by the Fock-model commands.
pub const MAX_FOCK_DEGREE: usize = 4;

pub struct Outcome {
    pub result: Value,
    pub passed: bool,
    pub text: String,
    pub cache_hits: usize,
}

impl Outcome {
    fn new(result: Value, passed: bool, text: String) -> Outcome {
        Outcome { result, passed, text, cache_hits: 0 }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn parse_group(spec: &str) -> Result<Arc<FiniteGroup>, String> {
    Ok(Arc::new(FiniteGroup::from_spec(spec).map_err(err)?))
}

pub fn schur(group: &str, p: usize) -> Result<Outcome, String> {
    let g = parse_group(group)?;
    let (divisors, method) = match schur_multiplier_abelian(&g, p) {
        Ok(d) => (d, "bicharacters".to_string()),
        Err(_) => {
            let r = h2_structure(&g, p).map_err(err)?;
            (r.elementary_divisors, serde_json::to_value(r.method).map_err(err)?.as_str().unwrap_or("").to_string())
        }
    };
    let text = format!("H^2({group}, C_{p}) elementary divisors: {divisors:?}");
    Ok(Outcome::new(json!({"group": group, "p": p, "elementary_divisors": divisors, "method": method}), true, text))
}

fn cocycle_summary(mu: &ZmCocycle, group: &str, show_table: bool) -> (Value, bool, String) {
    let check = mu.check();
    let mut result = json!({
        "group": group,
        "modulus": mu.modulus(),
        "is_cocycle": check.is_ok(),
    });
    if let Err(v) = check {
        result["witness"] = json!(v.to_string());
    }
    let mut text = format!("cocycle check: {}", status(check.is_ok()));
    if let (true, Ok(inv)) = (check.is_ok(), cover_invariants(mu)) {
        result["extension_order"] = json!(inv.order);
        result["transposition_square"] = json!(inv.transposition_square);
        result["disjoint_commutator"] = json!(inv.disjoint_commutator);
        result["class"] = json!(inv.class().map(|c| c.to_string()));
        text.push_str(&format!(
            "\nextension order {}, class {}",
            inv.order,
            inv.class().map_or("?".to_string(), |c| c.to_string())
        ));
    }
    if show_table {
        result["exponents"] = json!(mu.rows());
    }
    (result, check.is_ok(), text)
}

pub fn cocycle(group: Option<&str>, class: Option<&str>, input: Option<&PathBuf>, show_table: bool) -> Result<Outcome, String> {
    let (mu, gid) = match (input, group, class) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let j: CocycleJson = serde_json::from_str(&text).map_err(|e| format!("malformed cocycle JSON: {e}"))?;
            let g = parse_group(&j.group_id)?;
            if j.exponents.len() != g.order() || j.exponents.iter().any(|r| r.len() != g.order()) {
                return Err(format!("exponent table must be {0}x{0}", g.order()));
            }
            let mu = ZmCocycle::from_fn(g, j.m, |a, b| j.exponents[a][b] as i64);
            (mu, j.group_id)
        }
        (None, Some(group), Some(class)) => {
            let g = parse_group(group)?;
            let c: CocycleClass = class.parse().map_err(err)?;
            (cocycle_family_on(&g, c).map_err(err)?, group.to_string())
        }
        _ => return Err("give either --input FILE or both --group and --class".into()),
    };
    let (result, ok, text) = cocycle_summary(&mu, &gid, show_table);
    Ok(Outcome::new(result, ok, text))
}

pub fn spin(n: usize) -> Result<Outcome, String> {
    if !(2..=6).contains(&n) {
        return Err(format!("spin-cocycle needs 2 <= n <= 6, got {n}"));
    }
    let mu = spin_cocycle(n).map_err(err)?;
    let gid = format!("S{n}");
    let (mut result, mut ok, mut text) = cocycle_summary(&mu, &gid, false);
    let inv = cover_invariants(&mu).map_err(err)?;
    let fact: usize = (1..=n).product();
    ok &= inv.order == 2 * fact && inv.transposition_square == Some(0);
    if n >= 4 {
        ok &= inv.disjoint_commutator == Some(1);
    }
    let vend = compare_with_vendramin(&mu).map_err(err)?;
    ok &= !matches!(vend, VendraminMatch::Mismatch { .. });
    text.push_str(&format!("\nchi versus the sign rule: {}", match &vend {
        VendraminMatch::Exact => "exact".to_string(),
        VendraminMatch::Coboundary { psi } => format!("after coboundary correction psi = {psi:?}"),
        VendraminMatch::Mismatch { mismatches } => format!("mismatch ({mismatches} pairs)"),
    }));
    result["chi_rule"] = serde_json::to_value(&vend).map_err(err)?;
    result["passed"] = json!(ok);
    Ok(Outcome::new(result, ok, text))
}

pub fn twist_algebra(group: Option<&str>, class: Option<&str>, clifford: Option<usize>, dump: bool) -> Result<Outcome, String> {
    let minus = Rational::from_int(-1);
    if let Some(n) = clifford {
        if !(1..=8).contains(&n) {
            return Err(format!("--clifford needs 1 <= n <= 8, got {n}"));
        }
        let g = Arc::new(FiniteGroup::elementary_abelian(2, n));
        let mu = clifford_cocycle(g.clone(), n);
        let c = GradedAlgebra::<Rational>::group_algebra(g).twist(&mu, &minus).map_err(err)?;
        let one = vec![(c.unit(), Rational::one())];
        let mut ok = true;
        for i in 1..=n {
            let gi = clifford_gamma::<Rational>(n, i);
            ok &= c.mul(&gi, &gi) == one;
            for j in i + 1..=n {
                let gj = clifford_gamma::<Rational>(n, j);
                ok &= c.mul(&gj, &gi) == vec_scale(&c.mul(&gi, &gj), &minus);
            }
        }
        let mut result = json!({"clifford": n, "rank": c.rank(), "relations_hold": ok});
        if dump {
            result["algebra"] = serde_json::to_value(c.to_json("Q")).map_err(err)?;
        }
        let text = format!("Clifford algebra on {n} generators as a twist of k[C2^{n}]: {}", status(ok));
        return Ok(Outcome::new(result, ok, text));
    }
    let (Some(group), Some(class)) = (group, class) else {
        return Err("give --clifford N or both --group and --class".into());
    };
    let g = parse_group(group)?;
    let c: CocycleClass = class.parse().map_err(err)?;
    let mu = cocycle_family_on(&g, c).map_err(err)?;
    let a = GradedAlgebra::<Rational>::group_algebra(g.clone());
    let t = a.twist(&mu, &minus).map_err(err)?;
    let assoc = t.check_associativity().is_ok();
    let realized = coaction_realization_check(&a, &t, &mu, &minus);
    let back = t.twist(&mu.inverse(), &minus).map_err(err)? == a;
    let ok = assoc && realized && back;
    let mut result = json!({
        "group": group, "class": c.to_string(), "rank": t.rank(),
        "associative": assoc, "coaction_realization": realized, "twist_back": back,
    });
    if dump {
        result["algebra"] = serde_json::to_value(t.to_json("Q")).map_err(err)?;
    }
    let text = format!(
        "k[{group}] twisted by {c} at z = -1: associative {}, realization {}, twist back {}",
        status(assoc), status(realized), status(back)
    );
    Ok(Outcome::new(result, ok, text))
}

pub fn yd_check(module: &str) -> Result<Outcome, String> {
    let m = parse_module(module)?;
    let (valid, braid, pairing) = match &m {
        ModuleSpec::Field(y) => (y.check().is_ok(), braid_equation_witness(&y.braiding(), y.rank()), y.pairing_invariant(&y.dual())),
        ModuleSpec::GroupRing(y) => (y.check().is_ok(), braid_equation_witness(&y.braiding(), y.rank()), y.pairing_invariant(&y.dual())),
    };
    let ok = valid && braid.is_none() && pairing;
    let mut result = json!({
        "module": module, "rank": m.rank(), "group_order": m.group().order(),
        "yd_module": valid, "braid_equation": braid.is_none(), "dual_pairing": pairing,
    });
    if let Some(w) = braid {
        result["witness"] = json!(w);
    }
    let text = format!(
        "{module}: YD axioms {}, braid equation {}, dual pairing {}",
        status(valid), status(braid.is_none()), status(pairing)
    );
    Ok(Outcome::new(result, ok, text))
}

fn open_cache(dir: Option<&PathBuf>) -> Result<Option<RankCache>, String> {
    dir.map(|d| RankCache::new(d).map_err(err)).transpose()
}

pub fn nichols_hilbert(module: &str, max_degree: usize, budget: usize, cache_dir: Option<&PathBuf>) -> Result<Outcome, String> {
    if max_degree > MAX_NICHOLS_DEGREE {
        return Err(format!("--max-degree is capped at {MAX_NICHOLS_DEGREE}"));
    }
    let cache = open_cache(cache_dir)?;
    let report = match parse_module(module)? {
        ModuleSpec::Field(y) => {
            let b = Braiding::from_module(&y).map_err(err)?.with_budget(budget);
            HilbertReport::over_field(hilbert_prefix(&b, max_degree, cache.as_ref()).map_err(err)?)
        }
        ModuleSpec::GroupRing(y) => {
            let b = Braiding::from_module(&y).map_err(err)?.with_budget(budget);
            hilbert_prefix_split(&b, max_degree, cache.as_ref()).map_err(err)?
        }
    };
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut text = format!("{module} Hilbert prefix: {}", join(&report.ranks));
    if let Some([p, m]) = &report.components {
        text.push_str(&format!("\n  z=1: {}\n  z=-1: {}\n  flat: {}", join(p), join(m), report.flat));
    }
    let mut result = serde_json::to_value(&report).map_err(err)?;
    result["module"] = json!(module);
    result["total"] = json!(report.ranks.iter().sum::<usize>());
    let mut out = Outcome::new(result, report.flat, text);
    out.cache_hits = cache.map_or(0, |c| c.hits());
    Ok(out)
}

pub fn relations(n: usize) -> Result<Outcome, String> {
    if !(3..=5).contains(&n) {
        return Err(format!("relations needs 3 <= n <= 5, got {n}"));
    }
    let y = rack_module_qz(n).map_err(err)?;
    let b = Braiding::from_module(&y).map_err(err)?;
    let r = y.rank();
    let rels = qz_quadratic_relations(n);
    let two = b.factorial(2, FactorialMethod::Product).map_err(err)?;
    let closed = group_closure(&y, 2, &rels);
    let in_kernel = closed.iter().all(|v| two.apply(v).is_empty());
    let [plus, minus] = split_braiding(&b).map_err(err)?;
    let mut components = Vec::new();
    let mut spans = true;
    for (point, comp) in [(1i64, plus), (-1, minus)] {
        let kernel = r * r - block_rank(&comp.factorial(2, FactorialMethod::Product).map_err(err)?);
        let at = Rational::from_int(point);
        let spec = |vs: &[Vec<(usize, cocyclic::scalars::GroupRingScalar)>]| -> Result<Vec<Vec<(usize, Rational)>>, String> {
            vs.iter()
                .map(|v| {
                    let c = v.iter().map(|(i, c)| Ok((*i, c.specialize_rational(2, &at).map_err(err)?))).collect::<Result<Vec<_>, String>>()?;
                    Ok(c.into_iter().filter(|p| !p.1.is_zero()).collect())
                })
                .collect()
        };
        let closed_rank = span_rank(&spec(&closed)?, r * r);
        let literal_rank = span_rank(&spec(&rels)?, r * r);
        spans &= closed_rank == kernel;
        components.push(json!({"z": point, "kernel_dim": kernel, "closure_rank": closed_rank, "literal_rank": literal_rank}));
    }
    let ok = in_kernel && spans;
    let text = format!(
        "X{n}:qz quadratic relations: {} listed, in ker[2]! {}, S_n-closure spans the kernel {}\n  {}",
        rels.len(),
        status(in_kernel),
        status(spans),
        components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n  ")
    );
    let result = json!({"n": n, "listed": rels.len(), "in_kernel": in_kernel, "spans_kernel": spans, "components": components});
    Ok(Outcome::new(result, ok, text))
}

pub fn dunkl(family: &str, n: usize) -> Result<Outcome, String> {
    if !(2..=6).contains(&n) {
        return Err(format!("dunkl needs 2 <= n <= 6, got {n}"));
    }
    let f: DunklFamily = family.parse()?;
    let report = dunkl_commute_check(f, n).map_err(err)?;
    let text = format!("{f} for n = {n}: {} {}", report.relation, status(report.holds));
    Ok(Outcome::new(serde_json::to_value(&report).map_err(err)?, report.holds, text))
}

pub fn heisenberg(module: &str, max_degree: usize) -> Result<Outcome, String> {
    if !(1..=MAX_FOCK_DEGREE).contains(&max_degree) {
        return Err(format!("--max-degree must be between 1 and {MAX_FOCK_DEGREE}"));
    }
    let ModuleSpec::Field(y) = parse_module(module)? else {
        return Err("heisenberg-check needs a module over the rationals (q1, qm1 or adjoint)".into());
    };
    let m = FockModel::build(&y, max_degree).map_err(err)?;
    let checks = vec![heisenberg_check(&m), weyl_check(&m), covariance_check(&m)];
    let shift = shift_check(&y);
    let ok = shift && checks.iter().all(|c| c.status);
    let mut text = format!("{module}, Fock module of dimension {}:", m.dim());
    for c in &checks {
        text.push_str(&format!("\n  {} {}", status(c.status), c.name));
        if let Some(w) = &c.witness {
            text.push_str(&format!(" (witness: {w})"));
        }
    }
    text.push_str(&format!("\n  {} shift lemma", status(shift)));
    let result = json!({
        "module": module, "max_degree": max_degree, "fock_dim": m.dim(),
        "hilbert": m.truncation().hilbert(), "relations": checks, "shift_check": shift,
    });
    Ok(Outcome::new(result, ok, text))
}

pub fn cherednik(n: usize, c: &str, t: &str, class: &str, max_degree: usize) -> Result<Outcome, String> {
    if !(2..=5).contains(&n) {
        return Err(format!("cherednik-check needs 2 <= n <= 5, got {n}"));
    }
    if !(2..=MAX_FOCK_DEGREE).contains(&max_degree) {
        return Err(format!("--max-degree must be between 2 and {MAX_FOCK_DEGREE}"));
    }
    let c: Rational = c.parse().map_err(|_| format!("bad rational '{c}'"))?;
    let t: Rational = t.parse().map_err(|_| format!("bad rational '{t}'"))?;
    let class: CocycleClass = class.parse().map_err(err)?;
    let report = cherednik_relations_check(&CherednikParams { n, t, c }, class, max_degree).map_err(err)?;
    let mut text = format!("Cherednik relations, n = {n}, c = {}, cocycle {}:", report.c, report.cocycle);
    for r in &report.relations {
        text.push_str(&format!("\n  {} {}", status(r.status), r.name));
        if let Some(w) = &r.witness {
            text.push_str(&format!(" (witness: {w})"));
        }
    }
    for (k, v) in &report.specializations {
        text.push_str(&format!("\n  {} {k}", status(*v)));
    }
    text.push_str(&format!("\n  dependency rank {}", report.dependency_rank));
    for r in &report.z_free {
        text.push_str(&format!("\n  without the factor z: {} {}", status(r.status), r.name));
        if let Some(w) = &r.witness {
            text.push_str(&format!(" (witness: {w})"));
        }
    }
    let ok = report.passed();
    Ok(Outcome::new(serde_json::to_value(&report).map_err(err)?, ok, text))
}

pub fn default_budget() -> usize {
    DEFAULT_BUDGET
}
