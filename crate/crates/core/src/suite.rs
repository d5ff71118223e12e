//! The acceptance battery: ten numbered checks, each seeded from one run
//! seed through its own ChaCha stream.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{betti_bareiss, coboundary, cohomology, comparison_check, decode, tuple_count, Cochain, Kind};
use crate::error::{Error, Result};
use crate::extensions::{
    build_extension, find_nontrivial_cocycle, is_group_coboundary, lemma_independent_coordinate, verify_gmt,
    FiniteAbelianGroup, QuandleCocycle2,
};
use crate::fixtures::{conjugacy_classes, random_quandle, s3_transpositions, small_fixtures};
use crate::group::FiniteGroup;
use crate::metrics::{farey_distance, min_twist_word_length, quandle_distance, replay, BfsConfig, SignMode, TwistStep};
use crate::perm::DEFAULT_ELEMENT_CAP;
use crate::quandle::{
    component_diameters, conj_quandle, coset_decomposition, coset_quandle, is_isomorphism, verify_quandle, CosetPart,
    CosetQuandleSpec, FiniteQuandle,
};
use crate::ring::{
    distinct_curves_audit, enumerate_idempotents, is_idempotent, random_primitive, torus_idempotent_scan,
    torus_universe, IdemScanConfig, RingElement,
};
use crate::torus::{
    braid_check, op_c1, op_c1_inverse, op_d1, op_w1, op_w1_inverse, phi, phi_inverse, twist_matrix, CurveClass,
    WeightedMulticurve,
};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "quandle axioms on every constructed structure"),
    (2, "coset decomposition over Inn(X)"),
    (3, "phi: C1 -> W1+ is an isomorphism"),
    (4, "quandle and Farey distances from (1,0) to (1,n)"),
    (5, "d < d' witness (1,0), (3,4)"),
    (6, "twist word length of T_(0,1)^n"),
    (7, "cohomology exactness and rank agreement"),
    (8, "averaging map on abelian extensions"),
    (9, "quandle ring idempotents"),
    (10, "comparison map consistency"),
];

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Replaces every node cap used by the battery.
    pub node_cap: Option<usize>,
    /// Criteria to run; empty means all.
    pub only: Vec<u8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub summary: String,
    pub details: Value,
    /// Wall time; left out of JSON so output depends only on the seed.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub criteria: Vec<CriterionReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// The generator behind every seeded command.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for criterion `id`: the run seed with stream `id`.
pub fn criterion_rng(seed: u64, id: u8) -> ChaCha8Rng {
    let mut rng = seeded_rng(seed);
    rng.set_stream(id as u64);
    rng
}

struct Outcome {
    passed: bool,
    summary: String,
    details: Value,
}

fn outcome(passed: bool, summary: impl Into<String>, details: Value) -> Result<Outcome> {
    Ok(Outcome { passed, summary: summary.into(), details })
}

pub fn run(opts: &SuiteOptions) -> SuiteReport {
    let criteria: Vec<CriterionReport> = CRITERIA
        .iter()
        .filter(|(id, _)| opts.only.is_empty() || opts.only.contains(id))
        .map(|&(id, _)| run_criterion(id, opts))
        .collect();
    let passed = criteria.iter().filter(|c| c.passed).count();
    SuiteReport { seed: opts.seed, passed, failed: criteria.len() - passed, criteria }
}

/// Runs one criterion. Errors, including exhausted caps, count as failures.
pub fn run_criterion(id: u8, opts: &SuiteOptions) -> CriterionReport {
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
    let mut rng = criterion_rng(opts.seed, id);
    let start = Instant::now();
    let res = match id {
        1 => axioms(&mut rng),
        2 => decomposition(&mut rng),
        3 => phi_isomorphism(&mut rng),
        4 => small_distances(opts.node_cap),
        5 => strict_witness(opts.node_cap),
        6 => word_lengths(opts.node_cap),
        7 => exactness(),
        8 => averaging(&mut rng),
        9 => idempotents(&mut rng, opts.node_cap),
        10 => comparison(),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let o = res.unwrap_or_else(|e| Outcome { passed: false, summary: format!("error: {e}"), details: Value::Null });
    CriterionReport { id, title: title.to_string(), passed: o.passed, summary: o.summary, details: o.details, elapsed }
}

fn within(start: Instant, budget_secs: u64) -> bool {
    start.elapsed() <= Duration::from_secs(budget_secs)
}

const TRIPLES: usize = 10_000;

/// Exhaustive table check plus random triples against the three axioms.
fn finite_axiom_failures<R: Rng>(q: &FiniteQuandle, rng: &mut R) -> Result<usize> {
    let mut failures = usize::from(!verify_quandle(&q.table())?.valid);
    let n = q.size();
    for _ in 0..TRIPLES {
        let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let ok = q.op(x, x) == x
            && q.dual(q.op(x, y), y) == x
            && q.op(q.dual(x, y), y) == x
            && q.op(q.op(x, y), z) == q.op(q.op(x, z), q.op(y, z));
        failures += usize::from(!ok);
    }
    Ok(failures)
}

fn torus_axiom_failures<T: PartialEq>(
    mut sample: impl FnMut() -> T,
    op: impl Fn(&T, &T) -> Result<T>,
    inv: impl Fn(&T, &T) -> T,
) -> Result<usize> {
    let mut failures = 0;
    for _ in 0..TRIPLES {
        let (x, y, z) = (sample(), sample(), sample());
        let ok = op(&x, &x)? == x
            && inv(&op(&x, &y)?, &y) == x
            && op(&inv(&x, &y), &y)? == x
            && op(&op(&x, &y)?, &z)? == op(&op(&x, &z)?, &op(&y, &z)?)?;
        failures += usize::from(!ok);
    }
    Ok(failures)
}

fn random_class<R: Rng>(rng: &mut R, cap: i64) -> CurveClass {
    CurveClass::from((rng.gen_range(-cap..=cap), rng.gen_range(-cap..=cap)))
}

fn random_weighted<R: Rng>(rng: &mut R, cap: i64) -> WeightedMulticurve {
    let m0 = rng.gen_range(-cap..=cap);
    if rng.gen_bool(0.2) {
        return WeightedMulticurve::zero_only(m0);
    }
    let mut w = 0;
    while w == 0 {
        w = rng.gen_range(-cap..=cap);
    }
    WeightedMulticurve::new(m0, Some((BigInt::from(w), random_primitive(rng, cap)))).expect("valid by construction")
}

/// The 2-cocycles exercised by the averaging checks.
pub fn extension_cases() -> Result<Vec<(String, QuandleCocycle2)>> {
    let r3 = FiniteQuandle::dihedral(3);
    let z2 = FiniteAbelianGroup::cyclic(2);
    let z3 = FiniteAbelianGroup::cyclic(3);
    let cap = DEFAULT_ELEMENT_CAP;
    let nonzero = |q: &FiniteQuandle, a: &FiniteAbelianGroup, beyond: bool| {
        find_nontrivial_cocycle(q, a, beyond, cap)?
            .ok_or_else(|| Error::Precondition(format!("no nonzero cocycle on a quandle of size {}", q.size())))
    };
    Ok(vec![
        ("R3 x Z/2, phi = 0".into(), QuandleCocycle2::zero(r3.clone(), z2.clone())),
        ("R3 x Z/2, phi nonzero".into(), nonzero(&r3, &z2, false)?),
        ("T2 x Z/3, phi nonzero".into(), nonzero(&FiniteQuandle::trivial(2), &z3, true)?),
        ("R4 x Z/2, phi not a coboundary".into(), nonzero(&FiniteQuandle::dihedral(4), &z2, true)?),
    ])
}

fn axioms(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let start = Instant::now();
    let mut structures: Vec<(String, FiniteQuandle)> = Vec::new();

    let (s3, _) = FiniteGroup::symmetric(3);
    let (s4, _) = FiniteGroup::symmetric(4);
    structures.push(("Conj(S3)".into(), conj_quandle(&s3, None)?.0));
    for (i, class) in conjugacy_classes(&s4).iter().enumerate().skip(1) {
        structures.push((format!("Conj(S4) class {i}"), conj_quandle(&s4, Some(class))?.0));
    }
    let t = conjugacy_classes(&s3).into_iter().find(|c| c.len() == 3).expect("transpositions")[0];
    let spec = CosetQuandleSpec { group: s3, parts: vec![CosetPart { z: t, subgroup: vec![0, t] }] };
    structures.push(("(S3/<t>, t)".into(), coset_quandle(&spec)?.quandle));
    for (name, q) in small_fixtures() {
        structures.push((format!("coset form of {name}"), coset_decomposition(&q, DEFAULT_ELEMENT_CAP)?.coset.quandle));
    }
    for (name, c) in extension_cases()? {
        structures.push((format!("extension {name}"), build_extension(&c)?.quandle));
    }

    let mut failed: Vec<Value> = Vec::new();
    for (name, q) in &structures {
        let f = finite_axiom_failures(q, rng)?;
        if f > 0 {
            failed.push(json!({ "structure": name, "failures": f }));
        }
    }

    let cap = 100;
    let d1_sample = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.05) {
            CurveClass::zero()
        } else {
            random_primitive(rng, cap)
        }
    };
    let torus = [
        ("D1", torus_axiom_failures(|| d1_sample(rng), op_d1, op_c1_inverse)?),
        ("C1", torus_axiom_failures(|| random_class(rng, cap), |a, b| Ok(op_c1(a, b)), op_c1_inverse)?),
        ("W1", torus_axiom_failures(|| random_weighted(rng, cap), |a, b| Ok(op_w1(a, b)), op_w1_inverse)?),
    ];
    for (name, f) in torus {
        if f > 0 {
            failed.push(json!({ "structure": name, "failures": f }));
        }
    }
    let count = structures.len() + torus.len();
    let in_time = within(start, 10);
    outcome(
        failed.is_empty() && in_time,
        format!("{count} structures, {TRIPLES} random triples each, {} with failures", failed.len()),
        json!({ "structures": count, "triples_per_structure": TRIPLES, "failed": failed, "within_10s": in_time }),
    )
}

fn decomposition(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut cases: Vec<(String, FiniteQuandle)> = vec![
        ("R3".into(), FiniteQuandle::dihedral(3)),
        ("T4".into(), FiniteQuandle::trivial(4)),
        ("S3-transpositions".into(), s3_transpositions()),
    ];
    for i in 0..20 {
        cases.push((format!("random #{i}"), random_quandle(rng, 8)));
    }
    let mut failures = Vec::new();
    for (name, q) in &cases {
        match coset_decomposition(q, DEFAULT_ELEMENT_CAP) {
            Ok(d) if is_isomorphism(&d.coset.quandle, q, &d.iso) => {}
            Ok(_) => failures.push(json!({ "case": name, "error": "map is not an isomorphism" })),
            Err(e) => failures.push(json!({ "case": name, "error": e.to_string() })),
        }
    }
    let sizes: Vec<usize> = cases.iter().map(|c| c.1.size()).collect();
    outcome(
        failures.is_empty(),
        format!("{} quandles decomposed, {} failures", cases.len(), failures.len()),
        json!({ "sizes": sizes, "failures": failures }),
    )
}

fn phi_isomorphism(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    const SAMPLES: usize = 10_000;
    let cap = 1_000_000;
    let sample = |rng: &mut ChaCha8Rng| {
        // Mix in non-primitive classes, which are rare under uniform sampling.
        let c = random_class(rng, cap);
        if rng.gen_bool(0.3) {
            let k = rng.gen_range(2..=9);
            CurveClass::new(c.p() / k * k, c.q() / k * k)
        } else {
            c
        }
    };
    let (mut round_trip, mut hom, mut inverse_hom) = (0, 0, 0);
    for _ in 0..SAMPLES {
        let (a, b) = (sample(rng), sample(rng));
        let (pa, pb) = (phi(&a), phi(&b));
        if phi_inverse(&pa)? != a || phi(&phi_inverse(&pa)?) != pa {
            round_trip += 1;
        }
        if phi(&op_c1(&b, &a)) != op_w1(&pb, &pa) {
            hom += 1;
        }
        if phi_inverse(&op_w1(&pb, &pa))? != op_c1(&phi_inverse(&pb)?, &phi_inverse(&pa)?) {
            inverse_hom += 1;
        }
    }
    outcome(
        round_trip + hom + inverse_hom == 0,
        format!("{SAMPLES} samples: {round_trip} round-trip, {hom} phi and {inverse_hom} phi^-1 homomorphism failures"),
        json!({
            "samples": SAMPLES, "coordinate_cap": cap, "round_trip_failures": round_trip,
            "phi_homomorphism_failures": hom, "phi_inverse_homomorphism_failures": inverse_hom,
        }),
    )
}

fn capped(mut cfg: BfsConfig, node_cap: Option<usize>) -> BfsConfig {
    if let Some(n) = node_cap {
        cfg.node_cap = n;
    }
    cfg
}

fn small_distances(node_cap: Option<usize>) -> Result<Outcome> {
    let start = Instant::now();
    let cfg = capped(BfsConfig { coord_cap: 200, twist_cap: 30, depth_cap: 6, ..Default::default() }, node_cap);
    let source = CurveClass::from((1, 0));
    let (mut d, mut dp, mut exact) = (Vec::new(), Vec::new(), true);
    for n in 1..=4 {
        let target = CurveClass::from((1, n));
        let q = quandle_distance(&source, &target, &cfg)?;
        let f = farey_distance(&source, &target, &cfg)?;
        exact &= q.exact_within_caps && f.exact_within_caps && replay(&source, &q.path) == target;
        d.push(q.value);
        dp.push(f.value);
    }
    let expected: Vec<Option<usize>> = (1..=4).map(Some).collect();

    // α = (1,0), β = (0,1): one twist along T_α(β) carries α to β.
    let (alpha, beta) = (CurveClass::from((1, 0)), CurveClass::from((0, 1)));
    let braid_path = [TwistStep { twist: op_c1(&beta, &alpha), exponent: 1 }];
    let braid = braid_check(&alpha, &beta)? && replay(&alpha, &braid_path) == beta;
    let one = quandle_distance(&alpha, &beta, &cfg)?.value == Some(1);
    let in_time = within(start, 60);
    outcome(
        d == expected && dp == expected && exact && braid && one && in_time,
        format!("n = 1..4: d = {}, d' = {}, expected {}", fmt_values(&d), fmt_values(&dp), fmt_values(&expected)),
        json!({
            "quandle_distance": d, "farey_distance": dp, "expected": expected, "exact_within_caps": exact,
            "braid_path_ok": braid, "d_10_01_is_1": one, "caps": cfg, "within_60s": in_time,
        }),
    )
}

fn fmt_values(v: &[Option<usize>]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.map_or("-".into(), |k| k.to_string())).collect();
    format!("[{}]", parts.join(","))
}

fn strict_witness(node_cap: Option<usize>) -> Result<Outcome> {
    let cfg = capped(BfsConfig::default(), node_cap);
    let (a, b) = (CurveClass::from((1, 0)), CurveClass::from((3, 4)));
    let d = quandle_distance(&a, &b, &cfg)?;
    let dp = farey_distance(&a, &b, &cfg)?;
    let ok = d.value == Some(1) && dp.value == Some(2) && d.exact_within_caps && dp.exact_within_caps;
    outcome(
        ok,
        format!("d = {}, d' = {}", fmt_values(&[d.value]), fmt_values(&[dp.value])),
        json!({ "d": d, "d_prime": dp }),
    )
}

fn word_lengths(node_cap: Option<usize>) -> Result<Outcome> {
    let cfg = capped(BfsConfig { twist_cap: 20, node_cap: 10_000_000, ..Default::default() }, node_cap);
    let t = twist_matrix(&CurveClass::from((0, 1)))?;
    let mut values = Vec::new();
    let mut ok = true;
    for n in 1..=4usize {
        let r = min_twist_word_length(&t.pow(n as i64), n, &cfg, SignMode::Exact)?;
        ok &= r.value == Some(n) && r.exact_within_caps;
        values.push(r.value);
    }
    outcome(
        ok,
        format!("lengths for n = 1..4: {}", fmt_values(&values)),
        json!({ "lengths": values, "caps": cfg, "sign_mode": SignMode::Exact }),
    )
}

fn exactness() -> Result<Outcome> {
    let mut dd_failures = Vec::new();
    let mut rank_mismatches = Vec::new();
    let mut trivial_mismatches = Vec::new();
    let mut checked = 0;
    for (name, q) in small_fixtures() {
        let order = q.size();
        for n in 0..=3 {
            for i in 0..tuple_count(order, n)? {
                let f = Cochain::indicator(order, n, &decode(i, order, n))?;
                if !coboundary(&q, &coboundary(&q, &f)?)?.is_zero() {
                    dd_failures.push(json!({ "quandle": name, "degree": n, "tuple": i }));
                }
            }
            for kind in [Kind::Rack, Kind::Sub, Kind::Quotient] {
                let a = cohomology(&q, n, kind)?;
                let b = betti_bareiss(&q, n, kind)?;
                checked += 1;
                if (a.dim_cocycles, a.dim_coboundaries, a.betti) != b {
                    rank_mismatches.push(json!({ "quandle": name, "degree": n, "kind": kind }));
                }
                if q.is_trivial() && kind == Kind::Rack && a.betti != order.pow(n as u32) {
                    trivial_mismatches.push(json!({ "quandle": name, "degree": n, "betti": a.betti }));
                }
            }
        }
    }
    outcome(
        dd_failures.is_empty() && rank_mismatches.is_empty() && trivial_mismatches.is_empty(),
        format!(
            "{} nonzero dd, {} rank mismatches in {checked} groups, {} trivial-quandle mismatches",
            dd_failures.len(),
            rank_mismatches.len(),
            trivial_mismatches.len()
        ),
        json!({ "dd_failures": dd_failures, "rank_mismatches": rank_mismatches, "trivial_mismatches": trivial_mismatches }),
    )
}

fn averaging(rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let mut reports = Vec::new();
    let mut ok = true;
    for (name, c) in extension_cases()? {
        let coboundary = is_group_coboundary(&c, DEFAULT_ELEMENT_CAP)?;
        let r = verify_gmt(&c, 3, 100, rng)?;
        ok &= r.passed();
        reports.push(json!({ "case": name, "phi": c.phi, "phi_is_coboundary": coboundary, "report": r }));
    }
    let mut lemma = Vec::new();
    for a in [FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3), FiniteAbelianGroup::new(vec![2, 2])?] {
        for n in 1..=4 {
            let f = lemma_independent_coordinate(&a, n, 100, rng)?;
            ok &= f == 0;
            lemma.push(json!({ "group": a.orders(), "degree": n, "trials": 100, "failures": f }));
        }
    }
    outcome(
        ok,
        format!("{} extensions through degree 3, mean lemma on 3 groups through degree 4", reports.len()),
        json!({ "extensions": reports, "independent_coordinate": lemma }),
    )
}

/// All `u` with coefficients in `[−B, B]` on at most `L` elements and
/// `u² = u`, by walking every coefficient vector.
pub fn naive_idempotents(q: &FiniteQuandle, max_length: usize, bound: i64) -> Vec<RingElement<usize>> {
    let n = q.size();
    let width = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    loop {
        let u: Vec<i64> = digits.iter().map(|&d| d as i64 - bound).collect();
        let support = u.iter().filter(|&&c| c != 0).count();
        if support > 0 && support <= max_length {
            let mut sq = vec![0i64; n];
            for x in 0..n {
                for y in 0..n {
                    sq[q.op(x, y)] += u[x] * u[y];
                }
            }
            if sq == u {
                out.push(RingElement::from_terms(u.iter().enumerate().map(|(k, &c)| (k, BigInt::from(c)))));
            }
        }
        let Some(p) = (0..n).find(|&p| digits[p] + 1 < width) else {
            break;
        };
        digits[p] += 1;
        for d in digits.iter_mut().take(p) {
            *d = 0;
        }
    }
    out.sort();
    out
}

fn idempotents(rng: &mut ChaCha8Rng, node_cap: Option<usize>) -> Result<Outcome> {
    let start = Instant::now();
    let mut cfg =
        IdemScanConfig { max_length: 3, coeff_bound: 3, coord_cap: 10, include_zero_curve: true, ..Default::default() };
    if let Some(n) = node_cap {
        cfg.node_cap = n;
    }
    let mut finite = Vec::new();
    let mut ok = true;
    for (name, q) in
        [("T2", FiniteQuandle::trivial(2)), ("T3", FiniteQuandle::trivial(3)), ("R3", FiniteQuandle::dihedral(3))]
    {
        let mut found = enumerate_idempotents(&q, &cfg)?;
        let augment_ok = found.iter().all(|u| {
            let e = u.augmentation();
            e.is_zero() || e == BigInt::from(1)
        });
        found.sort();
        let agree = found == naive_idempotents(&q, 3, 3);
        ok &= agree && augment_ok;
        finite.push(
            json!({ "quandle": name, "count": found.len(), "agrees_with_naive": agree, "augmentation_ok": augment_ok }),
        );
    }

    let scan = torus_idempotent_scan(&cfg)?;
    // Expected: singletons, and n·0 + (1−n)·α with n, 1−n ∈ [−3, 3] \ {0}.
    let universe = torus_universe(&cfg);
    let mut expected: Vec<RingElement<CurveClass>> = universe.iter().cloned().map(RingElement::basis).collect();
    for a in universe.iter().filter(|c| !c.is_zero()) {
        for n in [-2i64, -1, 2, 3] {
            expected.push(RingElement::from_terms([
                (CurveClass::zero(), BigInt::from(n)),
                (a.clone(), BigInt::from(1 - n)),
            ]));
        }
    }
    expected.sort();
    let mut got: Vec<RingElement<CurveClass>> = scan.found.iter().map(|t| t.element.clone()).collect();
    got.sort();
    let classification = got == expected;
    let expected_idempotent = expected.iter().all(|u| is_idempotent(&crate::ring::TorusDehn, u).unwrap_or(false));
    ok &= scan.all_convex_disjoint && scan.intersecting_pair_supports == 0 && classification && expected_idempotent;

    let audit = distinct_curves_audit(10_000, 1000, rng)?;
    ok &= audit.distinct_four_failures == 0 && audit.squared_intersection_failures == 0;
    let in_time = within(start, 300);
    ok &= in_time;
    let negative = scan.found.iter().filter(|t| t.has_negative_coefficient).count();
    outcome(
        ok,
        format!(
            "torus scan found {} idempotents over {} classes, all convex disjoint: {}",
            scan.found.len(),
            scan.universe_size,
            scan.all_convex_disjoint
        ),
        json!({
            "finite": finite,
            "torus": {
                "universe_size": scan.universe_size, "found": scan.found.len(),
                "all_convex_disjoint": scan.all_convex_disjoint,
                "matches_convex_classification": classification,
                "with_negative_coefficients": negative,
                "intersecting_pair_supports": scan.intersecting_pair_supports,
            },
            "lemma_6_1": audit,
            "within_300s": in_time,
        }),
    )
}

fn comparison() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, q) in small_fixtures() {
        let diam = component_diameters(&q);
        let mut kernels = Vec::new();
        for n in 1..=3 {
            let r = comparison_check(&q, n)?;
            ok &= r.kernel_dim == 0 && r.all_components_bounded && r.dim_bounded_cochains == r.dim_cochains;
            kernels.push(r.kernel_dim);
        }
        rows.push(json!({ "quandle": name, "component_diameters": diam, "kernel_dims": kernels }));
    }
    outcome(ok, format!("{} fixtures: finite diameters, trivial comparison kernel", rows.len()), json!(rows))
}
