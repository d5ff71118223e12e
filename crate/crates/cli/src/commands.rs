use std::fmt::Display;

use serde_json::{json, Value};

use qk_core::cohomology::{coboundary, cohomology, is_coboundary, is_cocycle, CochainFile};
use qk_core::extensions::{
    build_extension, find_nontrivial_cocycle, verify_gmt, CocycleFile, FiniteAbelianGroup, QuandleCocycle2,
};
use qk_core::fixtures::{by_name, small_fixtures};
use qk_core::group::{GroupFile, GroupOps};
use qk_core::metrics::{farey_distance, min_twist_word_length, quandle_distance, BfsConfig, SignMode};
use qk_core::perm::DEFAULT_ELEMENT_CAP;
use qk_core::quandle::{
    component_diameters, components, conj_quandle, coset_decomposition, find_isomorphism, verify_quandle,
    FiniteQuandle, QuandleFile,
};
use qk_core::ring::{
    distinct_curves_audit, enumerate_idempotents, is_idempotent, multiply, torus_idempotent_scan, IdemScanConfig,
    RingElement, TorusDehn,
};
use qk_core::suite::{self, seeded_rng, SuiteOptions};
use qk_core::torus::{
    braid_check, dehn_twist, distinct_four, intersection, op_c1, op_c1_inverse, op_d1, op_w1, op_w1_inverse, phi,
    phi_inverse, twist_matrix, CurveClass, MappingClassT, WeightedMulticurve,
};

use crate::output::{read_json, CliError, Report};
use crate::{
    BoxArgs, CapArgs, Cli, CohomologyArgs, Command, ExtensionCmd, MetricCmd, QuandleCmd, RingCmd, TorusCmd,
    TorusQuandle, MAX_NODES_ENV,
};

type Res = Result<Report, CliError>;

pub fn dispatch(cli: &Cli) -> Res {
    match &cli.command {
        Command::Quandle(c) => quandle(c),
        Command::Torus(c) => torus(c),
        Command::Metric(c) => metric(c),
        Command::Cohomology(a) => cohomology_cmd(a),
        Command::Extension(c) => extension(c, cli.seed),
        Command::Ring(c) => ring(c, cli.seed),
        Command::Suite(a) => suite_cmd(cli.seed, &a.only),
    }
}

/// `$QK_MAX_NODES`, if set.
fn env_node_cap() -> Result<Option<usize>, CliError> {
    match std::env::var(MAX_NODES_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| CliError::Usage(format!("{MAX_NODES_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn node_cap(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    Ok(flag.or(env_node_cap()?))
}

fn load_quandle(path: &std::path::Path) -> Result<FiniteQuandle, CliError> {
    Ok(read_json::<QuandleFile>(path)?.into_quandle()?)
}

/// A cocycle file, or the output of `extension search`.
fn read_cocycle(path: &std::path::Path) -> Result<QuandleCocycle2, CliError> {
    let mut v: Value = read_json(path)?;
    if let Some(inner) = v.get_mut("cocycle") {
        v = inner.take();
    }
    let f: CocycleFile =
        serde_json::from_value(v).map_err(|e| CliError::Json { path: path.to_owned(), message: e.to_string() })?;
    Ok(f.into_cocycle()?)
}

fn s(x: impl Display) -> Value {
    Value::String(x.to_string())
}

/// Integer as a JSON number when it fits in i64, else as a string.
fn int(x: impl Display) -> Value {
    let t = x.to_string();
    t.parse::<i64>().map_or(Value::String(t), Value::from)
}

fn matrix_json(m: &MappingClassT) -> Value {
    let [a, b, c, d] = m.entries();
    json!([[int(a), int(b)], [int(c), int(d)]])
}

fn quandle(c: &QuandleCmd) -> Res {
    match c {
        QuandleCmd::Verify { file } => {
            let f: QuandleFile = read_json(file)?;
            f.check_size()?;
            let r = verify_quandle(&f.table)?;
            Ok(Report::check(serde_json::to_value(&r).expect("serializable"), r.valid))
        }
        QuandleCmd::Components { file } => {
            let q = load_quandle(file)?;
            Ok(Report::ok(json!({ "components": components(&q), "diameters": component_diameters(&q) })))
        }
        QuandleCmd::Decompose { file } => {
            let q = load_quandle(file)?;
            let d = coset_decomposition(&q, DEFAULT_ELEMENT_CAP)?;
            let g = &d.spec.group;
            let parts: Vec<Value> = d
                .spec
                .parts
                .iter()
                .zip(&d.representatives)
                .map(|(p, x)| {
                    json!({
                        "representative": x,
                        "z": g.element(p.z).images(),
                        "stabilizer_order": p.subgroup.len(),
                        "cosets": g.order() / p.subgroup.len(),
                    })
                })
                .collect();
            Ok(Report::ok(json!({
                "inner_group_order": g.order(),
                "parts": parts,
                "iso": d.iso,
                "coset_quandle": QuandleFile::from(&d.coset.quandle),
                "verified": true,
            })))
        }
        QuandleCmd::Isomorphic { lhs, rhs } => {
            let (a, b) = (load_quandle(lhs)?, load_quandle(rhs)?);
            let map = find_isomorphism(&a, &b);
            Ok(Report::ok(json!({ "isomorphic": map.is_some(), "map": map })))
        }
        QuandleCmd::Conj { group, subset } => {
            let g = read_json::<GroupFile>(group)?.into_group()?;
            let (q, elements) = conj_quandle(&g, subset.as_deref())?;
            Ok(Report::ok(json!({ "elements": elements, "quandle": QuandleFile::from(&q) })))
        }
        QuandleCmd::Fixture { name: None } => {
            let names: Vec<Value> =
                small_fixtures().iter().map(|(n, q)| json!({ "name": n, "size": q.size() })).collect();
            Ok(Report::ok(json!({ "fixtures": names })))
        }
        QuandleCmd::Fixture { name: Some(name) } => {
            let q = by_name(name).ok_or_else(|| CliError::Usage(format!("no fixture named {name:?}")))?;
            Ok(Report::ok(serde_json::to_value(QuandleFile::from(&q)).expect("serializable")))
        }
    }
}

fn parse<T: std::str::FromStr<Err = qk_core::Error>>(text: &str) -> Result<T, CliError> {
    text.parse::<T>().map_err(|e| CliError::Usage(e.to_string()))
}

fn torus(c: &TorusCmd) -> Res {
    let v = match c {
        TorusCmd::Normalize { curve } => json!({ "result": s(curve), "class": curve }),
        TorusCmd::Op { lhs, rhs, quandle, inverse } => match quandle {
            TorusQuandle::D1 | TorusQuandle::C1 => {
                let (b, a): (CurveClass, CurveClass) = (parse(lhs)?, parse(rhs)?);
                let r = match (quandle, inverse) {
                    (_, true) => {
                        if *quandle == TorusQuandle::D1 {
                            op_d1(&b, &a)?;
                        }
                        op_c1_inverse(&b, &a)
                    }
                    (TorusQuandle::D1, false) => op_d1(&b, &a)?,
                    _ => op_c1(&b, &a),
                };
                json!({ "result": s(&r) })
            }
            TorusQuandle::W1 => {
                let (x, y): (WeightedMulticurve, WeightedMulticurve) = (parse(lhs)?, parse(rhs)?);
                let r = if *inverse { op_w1_inverse(&x, &y) } else { op_w1(&x, &y) };
                json!({ "result": s(&r), "multicurve": r })
            }
        },
        TorusCmd::Intersection { a, b } => json!({ "result": int(intersection(a, b)) }),
        TorusCmd::Twist { gamma, k, v } => json!({ "result": s(dehn_twist(gamma, *k, v)) }),
        TorusCmd::Matrix { gamma } => json!({ "matrix": matrix_json(&twist_matrix(gamma)?) }),
        TorusCmd::Phi { curve } => {
            let w = phi(curve);
            json!({ "result": s(&w), "multicurve": w })
        }
        TorusCmd::PhiInverse { multicurve } => {
            let w: WeightedMulticurve = parse(multicurve)?;
            json!({ "result": s(phi_inverse(&w)?) })
        }
        TorusCmd::Braid { alpha, beta } => json!({ "result": braid_check(alpha, beta)? }),
        TorusCmd::Distinct { a, b } => json!({ "result": distinct_four(a, b)? }),
    };
    Ok(Report::ok(v))
}

fn bfs_config(caps: &CapArgs) -> Result<BfsConfig, CliError> {
    let d = BfsConfig::default();
    Ok(BfsConfig {
        coord_cap: caps.coord_cap.unwrap_or(d.coord_cap),
        twist_cap: caps.twist_cap.unwrap_or(d.twist_cap),
        depth_cap: caps.depth_cap.unwrap_or(d.depth_cap),
        node_cap: node_cap(caps.node_cap)?.unwrap_or(d.node_cap),
    })
}

fn metric(c: &MetricCmd) -> Res {
    let v = match c {
        MetricCmd::Quandle { from, to, caps } => serde_json::to_value(quandle_distance(from, to, &bfs_config(caps)?)?),
        MetricCmd::Farey { from, to, caps } => serde_json::to_value(farey_distance(from, to, &bfs_config(caps)?)?),
        MetricCmd::Twistlen { matrix, target, modulo_sign, caps } => {
            let cfg = bfs_config(caps)?;
            if matrix.len() != 4 {
                return Err(CliError::Usage(format!("--matrix takes 4 entries, got {}", matrix.len())));
            }
            let f = MappingClassT::new(matrix[0], matrix[1], matrix[2], matrix[3])?;
            let mode = if *modulo_sign { SignMode::ModuloSign } else { SignMode::Exact };
            serde_json::to_value(min_twist_word_length(&f, target.unwrap_or(cfg.depth_cap), &cfg, mode)?)
        }
    };
    Ok(Report::ok(v.expect("serializable")))
}

fn cohomology_cmd(a: &CohomologyArgs) -> Res {
    let q = load_quandle(&a.quandle)?;
    let r = cohomology(&q, a.degree, a.kind)?;
    let mut v = serde_json::to_value(&r).expect("serializable");
    if a.basis {
        let basis: Vec<CochainFile> = r.cocycle_basis.iter().map(CochainFile::from).collect();
        v["cocycle_basis"] = serde_json::to_value(basis).expect("serializable");
    }
    if let Some(path) = &a.cochain {
        let f = read_json::<CochainFile>(path)?.into_cochain(q.size())?;
        let df = coboundary(&q, &f)?;
        let primitive = if f.degree() == 0 { None } else { is_coboundary(&q, &f)? };
        v["cochain"] = json!({
            "degree": f.degree(),
            "is_cocycle": is_cocycle(&q, &f)?,
            "coboundary": CochainFile::from(&df),
            "is_coboundary": primitive.is_some() || (f.degree() == 0 && f.is_zero()),
            "primitive": primitive.as_ref().map(CochainFile::from),
        });
    }
    Ok(Report::ok(v))
}

fn extension(c: &ExtensionCmd, seed: u64) -> Res {
    match c {
        ExtensionCmd::Build { cocycle } => {
            let c = read_cocycle(cocycle)?;
            let e = build_extension(&c)?;
            Ok(Report::ok(json!({
                "size": e.quandle.size(),
                "fiber_size": e.fiber_size(),
                "is_covering": e.is_covering(),
                "quandle": QuandleFile::from(&e.quandle),
            })))
        }
        ExtensionCmd::VerifyGmt { cocycle, nmax, trials } => {
            let c = read_cocycle(cocycle)?;
            let r = verify_gmt(&c, *nmax, *trials, &mut seeded_rng(seed))?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["passed"] = json!(r.passed());
            Ok(Report::check(v, r.passed()))
        }
        ExtensionCmd::Search { quandle, orders, non_coboundary } => {
            let q = load_quandle(quandle)?;
            let a = FiniteAbelianGroup::new(orders.clone())?;
            let found = find_nontrivial_cocycle(&q, &a, *non_coboundary, DEFAULT_ELEMENT_CAP)?;
            Ok(Report::ok(json!({ "found": found.is_some(), "cocycle": found.as_ref().map(CocycleFile::from) })))
        }
    }
}

fn scan_config(b: &BoxArgs) -> Result<IdemScanConfig, CliError> {
    let mut cfg = IdemScanConfig { max_length: b.max_length, coeff_bound: b.coeff_bound, ..Default::default() };
    if let Some(n) = node_cap(b.node_cap)? {
        cfg.node_cap = n;
    }
    Ok(cfg)
}

fn ring(c: &RingCmd, seed: u64) -> Res {
    let v = match c {
        RingCmd::Idempotents { quandle, bounds } => {
            let q = load_quandle(quandle)?;
            let found = enumerate_idempotents(&q, &scan_config(bounds)?)?;
            json!({ "count": found.len(), "idempotents": found })
        }
        RingCmd::ScanTorus { bounds, cap, no_zero } => {
            let cfg = IdemScanConfig { coord_cap: *cap, include_zero_curve: !no_zero, ..scan_config(bounds)? };
            serde_json::to_value(torus_idempotent_scan(&cfg)?).expect("serializable")
        }
        RingCmd::Multiply { lhs, rhs } => {
            let (u, w): (RingElement<CurveClass>, RingElement<CurveClass>) = (parse(lhs)?, parse(rhs)?);
            json!({ "result": s(multiply(&TorusDehn, &u, &w)?) })
        }
        RingCmd::Inspect { element } => {
            let u: RingElement<CurveClass> = parse(element)?;
            json!({
                "element": s(&u),
                "idempotent": is_idempotent(&TorusDehn, &u)?,
                "augmentation": int(u.augmentation()),
                "length": u.length(),
                "square": s(multiply(&TorusDehn, &u, &u)?),
            })
        }
        RingCmd::Audit { samples, cap } => {
            let a = distinct_curves_audit(*samples, *cap, &mut seeded_rng(seed))?;
            let ok = a.distinct_four_failures == 0 && a.squared_intersection_failures == 0;
            return Ok(Report::check(serde_json::to_value(a).expect("serializable"), ok));
        }
    };
    Ok(Report::ok(v))
}

fn suite_cmd(seed: u64, only: &[u8]) -> Res {
    if let Some(bad) = only.iter().find(|&&id| !(1..=10).contains(&id)) {
        return Err(CliError::Usage(format!("no criterion {bad}; choose from 1 to 10")));
    }
    let report = suite::run(&SuiteOptions { seed, node_cap: env_node_cap()?, only: only.to_vec() });
    let mut table = String::new();
    for c in &report.criteria {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        table +=
            &format!("criterion {:>2} {verdict} {} ({:.2}s): {}\n", c.id, c.title, c.elapsed.as_secs_f64(), c.summary);
    }
    table += &format!("{} passed, {} failed (seed {})\n", report.passed, report.failed, report.seed);
    let ok = report.all_passed();
    Ok(Report { value: serde_json::to_value(&report).expect("serializable"), ok, table: Some(table) })
}
