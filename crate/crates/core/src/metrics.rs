//! The quandle metric and the Farey metric on torus curve classes, and
//! shortest twist words for mapping classes, by bounded breadth-first search.
//!
//! Every search enumerates a finite generator set (primitive twisting curves
//! within `twist_cap`), so a returned distance is an absolute upper bound and
//! a lower bound relative to that generator set.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::torus::{dehn_twist, twist_matrix, CurveClass, MappingClassT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsConfig {
    pub coord_cap: u64,
    pub twist_cap: u64,
    pub depth_cap: usize,
    pub node_cap: usize,
}

impl Default for BfsConfig {
    fn default() -> Self {
        BfsConfig { coord_cap: 200, twist_cap: 30, depth_cap: 8, node_cap: 1_000_000 }
    }
}

impl BfsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.coord_cap == 0 || self.twist_cap == 0 || self.depth_cap == 0 || self.node_cap == 0 {
            return Err(Error::Precondition("all BFS caps must be positive".into()));
        }
        if self.coord_cap > 1 << 20 || self.twist_cap > 1 << 20 {
            return Err(Error::Precondition("coordinate caps above 2^20 are not supported".into()));
        }
        Ok(())
    }
}

/// One letter `T_γ^{±1}` of a twist path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistStep {
    pub twist: CurveClass,
    pub exponent: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    #[serde(serialize_with = "value_or_unreached")]
    pub value: Option<usize>,
    pub exact_within_caps: bool,
    pub path: Vec<TwistStep>,
    pub caps: BfsConfig,
}

fn value_or_unreached<S: Serializer>(v: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(k) => s.serialize_u64(*k as u64),
        None => s.serialize_str("unreached"),
    }
}

/// Applies a twist path to a class.
pub fn replay(source: &CurveClass, path: &[TwistStep]) -> CurveClass {
    path.iter().fold(source.clone(), |v, step| dehn_twist(&step.twist, step.exponent as i64, &v))
}

type Pt = (i64, i64);

fn norm(p: i64, q: i64) -> Pt {
    if q < 0 || (q == 0 && p < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

#[inline]
fn twist_small(v: Pt, g: Pt, k: i64) -> Pt {
    let s = (v.0 * g.1 - v.1 * g.0) * k;
    norm(v.0 + s * g.0, v.1 + s * g.1)
}

#[inline]
fn within(v: Pt, cap: i64) -> bool {
    v.0.abs() <= cap && v.1.abs() <= cap
}

/// Primitive classes in normal form with both coordinates at most `cap`,
/// in lexicographic order.
pub fn primitive_classes(cap: u64) -> Vec<CurveClass> {
    primitive_small(cap as i64).into_iter().map(CurveClass::from).collect()
}

fn primitive_small(cap: i64) -> Vec<Pt> {
    let mut out = Vec::new();
    for p in -cap..=cap {
        for q in 0..=cap {
            if (q > 0 || p > 0) && p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

fn small(c: &CurveClass, what: &str, cap: u64) -> Result<Pt> {
    match c.to_i64() {
        Some(v) if within(v, cap as i64) => Ok(v),
        _ => Err(Error::Precondition(format!("{what} {c} lies outside coord_cap {cap}"))),
    }
}

fn check_same_component(x: &CurveClass, y: &CurveClass) -> Result<Option<DistanceResult>> {
    for c in [x, y] {
        if !c.is_zero() && !c.is_primitive() {
            return Err(Error::Precondition(format!("{c} is not a simple closed curve")));
        }
    }
    match (x.is_zero(), y.is_zero()) {
        (true, true) => Ok(Some(DistanceResult {
            value: Some(0),
            exact_within_caps: true,
            path: Vec::new(),
            caps: BfsConfig::default(),
        })),
        (false, false) => Ok(None),
        _ => Err(Error::Precondition(format!("{x} and {y} lie in different components"))),
    }
}

struct Search {
    parent: HashMap<Pt, (Pt, TwistStep)>,
}

impl Search {
    fn path_to(&self, source: Pt, mut v: Pt) -> Vec<TwistStep> {
        let mut path = Vec::new();
        while v != source {
            let (prev, step) = &self.parent[&v];
            path.push(step.clone());
            v = *prev;
        }
        path.reverse();
        path
    }
}

/// Layer-synchronous BFS. `neighbours` lists the successors of a node in a
/// fixed order; the first discovery in that order wins.
fn bfs<F>(source: Pt, target: Pt, cfg: &BfsConfig, neighbours: F) -> Result<(Option<usize>, Search)>
where
    F: Fn(Pt, &HashMap<Pt, (Pt, TwistStep)>) -> Vec<(Pt, TwistStep)> + Sync,
{
    let mut search = Search { parent: HashMap::new() };
    if source == target {
        return Ok((Some(0), search));
    }
    let mut layer = vec![source];
    for depth in 1..=cfg.depth_cap {
        let found: Vec<Vec<(Pt, TwistStep)>> = {
            let parent = &search.parent;
            layer.par_iter().map(|&v| neighbours(v, parent)).collect()
        };
        let mut next = Vec::new();
        for (&v, succ) in layer.iter().zip(found) {
            for (w, step) in succ {
                if w == source {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = search.parent.entry(w) {
                    e.insert((v, step));
                    next.push(w);
                }
            }
        }
        if search.parent.len() > cfg.node_cap {
            return Err(Error::cap("BFS nodes", cfg.node_cap));
        }
        if search.parent.contains_key(&target) {
            return Ok((Some(depth), search));
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok((None, search))
}

fn finish(
    source: &CurveClass,
    target: &CurveClass,
    cfg: &BfsConfig,
    outcome: (Option<usize>, Search),
) -> DistanceResult {
    let (value, search) = outcome;
    let path = match value {
        Some(_) => {
            let s = source.to_i64().expect("checked");
            let t = target.to_i64().expect("checked");
            search.path_to(s, t)
        }
        None => Vec::new(),
    };
    debug_assert!(value.is_none() || replay(source, &path) == *target);
    DistanceResult { value, exact_within_caps: value.is_some(), path, caps: *cfg }
}

/// The quandle metric on `D₁`: least number of twists `T_γ^{±1}` (primitive
/// `γ` within `twist_cap`) carrying `x` to `y`, through classes within
/// `coord_cap`.
pub fn quandle_distance(x: &CurveClass, y: &CurveClass, cfg: &BfsConfig) -> Result<DistanceResult> {
    cfg.validate()?;
    if let Some(mut r) = check_same_component(x, y)? {
        r.caps = *cfg;
        return Ok(r);
    }
    let (s, t) = (small(x, "source", cfg.coord_cap)?, small(y, "target", cfg.coord_cap)?);
    let gens = primitive_small(cfg.twist_cap as i64);
    let cap = cfg.coord_cap as i64;
    let outcome = bfs(s, t, cfg, |v, seen| {
        let mut out = Vec::new();
        for &g in &gens {
            for e in [-1i64, 1] {
                let w = twist_small(v, g, e);
                if w != v && within(w, cap) && !seen.contains_key(&w) {
                    out.push((w, TwistStep { twist: g.into(), exponent: e as i8 }));
                }
            }
        }
        out
    })?;
    Ok(finish(x, y, cfg, outcome))
}

/// Extended Euclid: `(g, a, b)` with `a x + b y = g`.
fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let e = x.extended_gcd(&y);
    (e.gcd, e.x, e.y)
}

/// Classes `(r, s)` with `|p s − q r| = 1` inside the cap, in increasing
/// parameter order.
fn farey_neighbours(v: Pt, cap: i64) -> Vec<Pt> {
    let (p, q) = v;
    let (g, a, b) = ext_gcd(p, q);
    debug_assert_eq!(g.abs(), 1);
    // p·s0 − q·r0 = 1 with s0 = a·g, r0 = −b·g.
    let (r0, s0) = (-b * g, a * g);
    // Solutions are (r0 + t p, s0 + t q); the −1 solutions are their negatives.
    let bounds = |base: i64, step: i64| -> (i64, i64) {
        if step == 0 {
            if base.abs() <= cap {
                (i64::MIN, i64::MAX)
            } else {
                (1, 0)
            }
        } else {
            // |base + t·step| ≤ cap
            let (lo, hi) = (-cap - base, cap - base);
            if step > 0 {
                (Integer::div_ceil(&lo, &step), Integer::div_floor(&hi, &step))
            } else {
                (Integer::div_ceil(&hi, &step), Integer::div_floor(&lo, &step))
            }
        }
    };
    let (l1, h1) = bounds(r0, p);
    let (l2, h2) = bounds(s0, q);
    let (lo, hi) = (l1.max(l2), h1.min(h2));
    let mut out: Vec<Pt> = (lo..=hi).map(|t| norm(r0 + t * p, s0 + t * q)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// The Farey-graph distance: edges join classes meeting exactly once.
/// Each edge `a → b` is recorded as the twist `T_{T_a(b)}`, which carries
/// `a` to `b` by the braid relation.
pub fn farey_distance(a: &CurveClass, b: &CurveClass, cfg: &BfsConfig) -> Result<DistanceResult> {
    cfg.validate()?;
    for c in [a, b] {
        if !c.is_primitive() {
            return Err(Error::Precondition(format!("{c} is not an essential simple closed curve")));
        }
    }
    let (s, t) = (small(a, "source", cfg.coord_cap)?, small(b, "target", cfg.coord_cap)?);
    let cap = cfg.coord_cap as i64;
    let outcome = bfs(s, t, cfg, |v, seen| {
        farey_neighbours(v, cap)
            .into_iter()
            .filter(|w| !seen.contains_key(w))
            .map(|w| {
                let via = twist_small(w, v, 1);
                (w, TwistStep { twist: via.into(), exponent: 1 })
            })
            .collect()
    })?;
    Ok(finish(a, b, cfg, outcome))
}

/// Whether matrices are compared exactly in `SL(2, Z)` or modulo `±I`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMode {
    #[default]
    Exact,
    ModuloSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordLengthResult {
    /// Least word length found, if any within the searched depth.
    pub value: Option<usize>,
    /// Every word shorter than this was ruled out (within the generator set).
    pub lower_bound: usize,
    pub exact_within_caps: bool,
    /// A shortest word `f = T_{γ₁}^{e₁} ⋯ T_{γₖ}^{eₖ}` (matrix product).
    pub word: Vec<TwistStep>,
    pub sign_mode: SignMode,
    pub caps: BfsConfig,
}

type Key = [i64; 4];

fn key_of(m: &MappingClassT, mode: SignMode) -> Option<Key> {
    let m = match mode {
        SignMode::Exact => m.clone(),
        SignMode::ModuloSign => m.canonical_mod_sign(),
    };
    Some([m.a.to_i64()?, m.b.to_i64()?, m.c.to_i64()?, m.d.to_i64()?])
}

fn canon(k: Key, mode: SignMode) -> Key {
    match mode {
        SignMode::Exact => k,
        SignMode::ModuloSign => {
            let first = k.iter().copied().find(|&x| x != 0).unwrap_or(1);
            if first < 0 {
                k.map(|x| -x)
            } else {
                k
            }
        }
    }
}

/// `m · g` with overflow detection.
#[inline]
fn mul_key(m: &Key, g: &Key) -> Option<Key> {
    let f = |a: i64, b: i64, c: i64, d: i64| -> Option<i64> {
        (a as i128 * b as i128 + c as i128 * d as i128).try_into().ok()
    };
    Some([
        f(m[0], g[0], m[1], g[2])?,
        f(m[0], g[1], m[1], g[3])?,
        f(m[2], g[0], m[3], g[2])?,
        f(m[2], g[1], m[3], g[3])?,
    ])
}

struct Tree {
    nodes: Vec<(Key, u32, u32)>,
    index: HashMap<Key, u32>,
    layer: std::ops::Range<usize>,
}

impl Tree {
    fn new(root: Key) -> Self {
        Tree { nodes: vec![(root, u32::MAX, u32::MAX)], index: HashMap::from([(root, 0)]), layer: 0..1 }
    }

    fn letters(&self, mut i: u32) -> Vec<u32> {
        let mut out = Vec::new();
        while self.nodes[i as usize].1 != u32::MAX {
            out.push(self.nodes[i as usize].2);
            i = self.nodes[i as usize].1;
        }
        out.reverse();
        out
    }
}

/// Least number of twists `T_γ^{±1}` (primitive `γ` within `twist_cap`)
/// whose product is `f`, searched to depth `min(depth_cap, n_target)`.
///
/// Meet-in-the-middle: words from the identity grow on the right by
/// generators, words from `f` grow on the right by inverse generators.
pub fn min_twist_word_length(
    f: &MappingClassT,
    n_target: usize,
    cfg: &BfsConfig,
    mode: SignMode,
) -> Result<WordLengthResult> {
    cfg.validate()?;
    if !f.det().eq(&BigInt::from(1)) {
        return Err(Error::Precondition("matrix must have determinant 1".into()));
    }
    if n_target == 0 {
        return Err(Error::Precondition("n_target must be positive".into()));
    }
    let depth = cfg.depth_cap.min(n_target);
    let mut result = WordLengthResult {
        value: None,
        lower_bound: 0,
        exact_within_caps: false,
        word: Vec::new(),
        sign_mode: mode,
        caps: *cfg,
    };
    let id_key = key_of(&MappingClassT::identity(), mode).expect("small");
    let Some(f_key) = key_of(f, mode) else {
        result.lower_bound = 0;
        return Ok(result);
    };
    if f_key == id_key {
        result.value = Some(0);
        result.exact_within_caps = true;
        return Ok(result);
    }

    // Generators in lexicographic class order, exponent −1 before +1.
    let classes = primitive_classes(cfg.twist_cap);
    let mut gens: Vec<(Key, TwistStep)> = Vec::with_capacity(classes.len() * 2);
    for c in &classes {
        let t = twist_matrix(c)?;
        for e in [-1i8, 1] {
            let m = if e < 0 { t.inverse() } else { t.clone() };
            gens.push((key_of(&m, mode).expect("small"), TwistStep { twist: c.clone(), exponent: e }));
        }
    }
    // Index of the inverse letter: exponents come in adjacent pairs.
    let inv = |i: u32| i ^ 1;

    let mut fwd = Tree::new(id_key);
    let mut bwd = Tree::new(f_key);
    let (mut df, mut db) = (0usize, 0usize);
    let mut overflowed = false;

    while df + db < depth {
        let grow_fwd = df <= db;
        let last = df + db + 1 == depth;
        let (this, other) = if grow_fwd { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };
        let frontier: Vec<(u32, Key)> = this.layer.clone().map(|i| (i as u32, this.nodes[i].0)).collect();

        // Candidates per frontier node, in generator order.
        let expanded: Vec<(Vec<(u32, Key)>, Option<(u32, u32, u32)>, bool)> = frontier
            .par_iter()
            .map(|&(i, k)| {
                let mut out = Vec::new();
                let mut hit = None;
                let mut over = false;
                for (gi, (g, _)) in gens.iter().enumerate() {
                    let gk = if grow_fwd { *g } else { gens[inv(gi as u32) as usize].0 };
                    let Some(n) = mul_key(&k, &gk) else {
                        over = true;
                        continue;
                    };
                    let n = canon(n, mode);
                    if let Some(&j) = other.index.get(&n) {
                        if hit.is_none() {
                            hit = Some((i, gi as u32, j));
                        }
                    }
                    if !last && !this.index.contains_key(&n) {
                        out.push((gi as u32, n));
                    }
                }
                (out, hit, over)
            })
            .collect();

        overflowed |= expanded.iter().any(|e| e.2);
        if let Some((i, gi, j)) = expanded.iter().find_map(|e| e.1) {
            // Forward word · letter · reversed backward word (or mirrored).
            let (fi, fl, bj) = if grow_fwd { (i, Some(gi), j) } else { (j, None, i) };
            let mut letters = fwd.letters(fi);
            letters.extend(fl);
            if !grow_fwd {
                letters.push(gi);
            }
            let mut back = bwd.letters(bj);
            back.reverse();
            letters.extend(back);
            result.value = Some(letters.len());
            result.lower_bound = letters.len();
            result.exact_within_caps = !overflowed;
            result.word = letters.iter().map(|&l| gens[l as usize].1.clone()).collect();
            debug_assert_eq!(result.value, Some(df + db + 1));
            return Ok(result);
        }

        if !last {
            let start = this.nodes.len();
            for ((i, _), (cands, _, _)) in frontier.iter().zip(expanded) {
                for (gi, n) in cands {
                    if let std::collections::hash_map::Entry::Vacant(e) = this.index.entry(n) {
                        e.insert(this.nodes.len() as u32);
                        this.nodes.push((n, *i, gi));
                    }
                }
            }
            this.layer = start..this.nodes.len();
            if fwd.nodes.len() + bwd.nodes.len() > cfg.node_cap {
                return Err(Error::cap("twist-word search nodes", cfg.node_cap));
            }
        }
        if grow_fwd {
            df += 1;
        } else {
            db += 1;
        }
    }
    result.lower_bound = depth + 1;
    Ok(result)
}

/// Product of a twist word as a matrix.
pub fn word_product(word: &[TwistStep]) -> Result<MappingClassT> {
    word.iter()
        .try_fold(MappingClassT::identity(), |acc, s| Ok(acc.mul(&twist_matrix(&s.twist)?.pow(s.exponent as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(p: i64, q: i64) -> CurveClass {
        CurveClass::from((p, q))
    }

    fn small_cfg() -> BfsConfig {
        BfsConfig { coord_cap: 40, twist_cap: 8, depth_cap: 4, node_cap: 1_000_000 }
    }

    #[test]
    fn primitive_enumeration() {
        let p = primitive_classes(1);
        assert_eq!(p, vec![c(-1, 1), c(0, 1), c(1, 0), c(1, 1)]);
    }

    #[test]
    fn farey_neighbours_meet_once() {
        for v in [(1, 0), (0, 1), (3, 4), (-5, 7)] {
            let ns = farey_neighbours(v, 20);
            assert!(!ns.is_empty());
            for w in &ns {
                assert_eq!((v.0 * w.1 - v.1 * w.0).abs(), 1, "{v:?} {w:?}");
                assert!(within(*w, 20));
            }
            // Completeness against a direct scan.
            let direct: Vec<Pt> =
                primitive_small(20).into_iter().filter(|w| (v.0 * w.1 - v.1 * w.0).abs() == 1).collect();
            assert_eq!(ns, direct, "{v:?}");
        }
    }

    #[test]
    fn distances_small_cases() {
        let cfg = small_cfg();
        assert_eq!(quandle_distance(&c(1, 0), &c(1, 0), &cfg).unwrap().value, Some(0));
        let r = quandle_distance(&c(1, 0), &c(0, 1), &cfg).unwrap();
        assert_eq!(r.value, Some(1));
        assert_eq!(replay(&c(1, 0), &r.path), c(0, 1));
        assert_eq!(quandle_distance(&c(1, 0), &c(3, 4), &cfg).unwrap().value, Some(1));

        assert_eq!(farey_distance(&c(1, 0), &c(0, 1), &cfg).unwrap().value, Some(1));
        let r = farey_distance(&c(1, 0), &c(3, 4), &cfg).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(replay(&c(1, 0), &r.path), c(3, 4));
    }

    #[test]
    fn component_errors() {
        let cfg = small_cfg();
        assert!(quandle_distance(&c(1, 0), &CurveClass::zero(), &cfg).is_err());
        assert_eq!(quandle_distance(&CurveClass::zero(), &CurveClass::zero(), &cfg).unwrap().value, Some(0));
        assert!(quandle_distance(&c(2, 0), &c(1, 0), &cfg).is_err());
        assert!(farey_distance(&c(1, 0), &CurveClass::zero(), &cfg).is_err());
    }

    #[test]
    fn unreached_when_caps_bind() {
        let cfg = BfsConfig { coord_cap: 40, twist_cap: 1, depth_cap: 1, node_cap: 1_000_000 };
        let r = quandle_distance(&c(1, 0), &c(3, 4), &cfg).unwrap();
        assert_eq!(r.value, None);
        assert!(!r.exact_within_caps);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["value"], "unreached");
    }

    #[test]
    fn node_cap_is_a_resource_error() {
        let cfg = BfsConfig { coord_cap: 40, twist_cap: 8, depth_cap: 4, node_cap: 10 };
        let e = quandle_distance(&c(1, 0), &c(17, 39), &cfg).unwrap_err();
        assert!(e.is_resource());
    }

    #[test]
    fn twist_words() {
        let cfg = BfsConfig { coord_cap: 200, twist_cap: 6, depth_cap: 4, node_cap: 2_000_000 };
        let b = twist_matrix(&c(0, 1)).unwrap();
        let a = twist_matrix(&c(1, 0)).unwrap();

        let r = min_twist_word_length(&MappingClassT::identity(), 3, &cfg, SignMode::Exact).unwrap();
        assert_eq!(r.value, Some(0));

        let f = b.mul(&a);
        let r = min_twist_word_length(&f, 3, &cfg, SignMode::Exact).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(word_product(&r.word).unwrap(), f);

        for n in 1..=3 {
            let f = b.pow(n);
            let r = min_twist_word_length(&f, n as usize, &cfg, SignMode::Exact).unwrap();
            assert_eq!(r.value, Some(n as usize), "n = {n}");
            assert_eq!(word_product(&r.word).unwrap(), f);
        }
    }

    #[test]
    fn sign_quotient_shortens_fourth_power() {
        // T⁴ = −(T_a T_b) for two twists meeting once, so modulo ±I the
        // fourth power of a twist has length 2.
        let cfg = BfsConfig { coord_cap: 200, twist_cap: 6, depth_cap: 4, node_cap: 2_000_000 };
        let f = twist_matrix(&c(0, 1)).unwrap().pow(4);
        let r = min_twist_word_length(&f, 4, &cfg, SignMode::ModuloSign).unwrap();
        assert_eq!(r.value, Some(2));
        assert!(word_product(&r.word).unwrap().eq_mod_sign(&f));
        let r = min_twist_word_length(&f, 4, &cfg, SignMode::Exact).unwrap();
        assert_eq!(r.value, Some(4));
    }

    #[test]
    fn word_search_reports_lower_bound() {
        let cfg = BfsConfig { coord_cap: 200, twist_cap: 4, depth_cap: 2, node_cap: 2_000_000 };
        let f = twist_matrix(&c(0, 1)).unwrap().pow(3);
        let r = min_twist_word_length(&f, 5, &cfg, SignMode::Exact).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.lower_bound, 3);
        assert!(!r.exact_within_caps);
    }
}
