//! Integral quandle rings `Z[X]` and exhaustive idempotent searches.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::primitive_classes;
use crate::quandle::FiniteQuandle;
use crate::torus::{distinct_four, intersection, op_c1, parse_terms, CurveClass, TermElem};

/// A quandle whose ring we multiply in.
pub trait Carrier {
    type Elem: Clone + Ord;

    fn check(&self, x: &Self::Elem) -> Result<()>;
    fn op(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
}

impl Carrier for FiniteQuandle {
    type Elem = usize;

    fn check(&self, x: &usize) -> Result<()> {
        if *x >= self.size() {
            return Err(Error::Mismatch(format!("element {x} not in a quandle of size {}", self.size())));
        }
        Ok(())
    }

    fn op(&self, x: &usize, y: &usize) -> usize {
        FiniteQuandle::op(self, *x, *y)
    }
}

/// The Dehn quandle of the torus: primitive classes and **0**.
#[derive(Clone, Copy, Debug, Default)]
pub struct TorusDehn;

impl Carrier for TorusDehn {
    type Elem = CurveClass;

    fn check(&self, x: &CurveClass) -> Result<()> {
        if x.is_zero() || x.is_primitive() {
            Ok(())
        } else {
            Err(Error::Mismatch(format!("{x} is not a simple closed curve")))
        }
    }

    fn op(&self, x: &CurveClass, y: &CurveClass) -> CurveClass {
        op_c1(x, y)
    }
}

/// A finitely supported integer combination of quandle elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord + Clone> RingElement<K> {
    pub fn zero() -> Self {
        RingElement { terms: BTreeMap::new() }
    }

    pub fn basis(x: K) -> Self {
        Self::from_terms([(x, BigInt::one())])
    }

    /// Collects like terms and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (K, BigInt)>) -> Self {
        let mut out = RingElement::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: K, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k.clone()).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn terms(&self) -> &BTreeMap<K, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, k: &K) -> BigInt {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, c)| (k.clone(), c * s)))
    }

    /// Coefficient sum.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Support size.
    pub fn length(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `uv = Σ nᵢ mⱼ (xᵢ ∗ yⱼ)`.
pub fn multiply<C: Carrier>(c: &C, u: &RingElement<C::Elem>, v: &RingElement<C::Elem>) -> Result<RingElement<C::Elem>> {
    for k in u.terms.keys().chain(v.terms.keys()) {
        c.check(k)?;
    }
    let mut out = RingElement::zero();
    for (x, n) in &u.terms {
        for (y, m) in &v.terms {
            out.add_term(c.op(x, y), n * m);
        }
    }
    Ok(out)
}

pub fn is_idempotent<C: Carrier>(c: &C, u: &RingElement<C::Elem>) -> Result<bool> {
    Ok(multiply(c, u, u)? == *u)
}

fn fmt_sum<K: Ord>(f: &mut fmt::Formatter<'_>, terms: &BTreeMap<K, BigInt>, key: impl Fn(&K) -> String) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (k, c)) in terms.iter().enumerate() {
        let sign = if c.is_negative() { "-" } else { "+" };
        match (i, sign) {
            (0, "-") => write!(f, "-")?,
            (0, _) => {}
            _ => write!(f, " {sign} ")?,
        }
        write!(f, "{}*{}", c.abs(), key(k))?;
    }
    Ok(())
}

impl fmt::Display for RingElement<CurveClass> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.terms, |k| if k.is_zero() { "o".into() } else { format!("({},{})", k.p(), k.q()) })
    }
}

impl fmt::Display for RingElement<usize> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_sum(f, &self.terms, |k| format!("x{k}"))
    }
}

/// Parses `"2*(1,0) - 1*(0,1) + 3*o"`, with `o` the null curve.
impl std::str::FromStr for RingElement<CurveClass> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Self::from_terms(parse_terms(s)?.into_iter().map(|(c, e)| match e {
            TermElem::Zero => (CurveClass::zero(), c),
            TermElem::Curve(k) => (k, c),
        })))
    }
}

impl<K: Ord> Serialize for RingElement<K>
where
    RingElement<K>: fmt::Display,
{
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Search box for idempotents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IdemScanConfig {
    pub max_length: usize,
    pub coeff_bound: i64,
    pub coord_cap: u64,
    pub include_zero_curve: bool,
    pub node_cap: usize,
}

impl Default for IdemScanConfig {
    fn default() -> Self {
        IdemScanConfig { max_length: 3, coeff_bound: 3, coord_cap: 10, include_zero_curve: true, node_cap: 1 << 32 }
    }
}

impl IdemScanConfig {
    fn validate(&self) -> Result<()> {
        if self.max_length == 0 || self.coeff_bound <= 0 || self.coord_cap == 0 {
            return Err(Error::Precondition("scan bounds must be positive".into()));
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of candidates `Σ_k C(m, k) (2B)^k` in the box.
pub fn box_size(universe: usize, cfg: &IdemScanConfig) -> u128 {
    (1..=cfg.max_length.min(universe))
        .map(|k| binomial(universe, k) * (2 * cfg.coeff_bound as u128).pow(k as u32))
        .sum()
}

/// Core search on a universe `0..m` whose products are `table[i][j]`,
/// identifiers that may lie outside the universe.
fn search_box(m: usize, table: &[Vec<u32>], cfg: &IdemScanConfig) -> Result<Vec<Vec<(usize, i64)>>> {
    cfg.validate()?;
    let size = box_size(m, cfg);
    if size > cfg.node_cap as u128 {
        return Err(Error::cap("idempotent search box", cfg.node_cap));
    }
    let b = cfg.coeff_bound;
    let coeffs: Vec<i64> = (-b..=b).filter(|&c| c != 0).collect();
    let mut supports: Vec<Vec<usize>> = Vec::new();
    for k in 1..=cfg.max_length.min(m) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            supports.push(idx.clone());
            // Next k-subset in lexicographic order.
            let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    let found: Vec<Vec<Vec<(usize, i64)>>> = supports
        .par_iter()
        .map(|s| {
            let k = s.len();
            // Products landing outside the support that are hit exactly once
            // force nᵢnⱼ = 0, impossible with nonzero coefficients.
            let mut hits: HashMap<u32, usize> = HashMap::new();
            for &i in s {
                for &j in s {
                    *hits.entry(table[i][j]).or_default() += 1;
                }
            }
            let in_support = |t: u32| s.iter().any(|&i| i as u32 == t);
            if hits.iter().any(|(&t, &h)| h == 1 && !in_support(t)) {
                return Vec::new();
            }
            let mut out = Vec::new();
            let mut digits = vec![0usize; k];
            let mut acc: Vec<(u32, i64)> = Vec::with_capacity(k * k);
            loop {
                let n: Vec<i64> = digits.iter().map(|&d| coeffs[d]).collect();
                let aug: i64 = n.iter().sum();
                if aug == 0 || aug == 1 {
                    acc.clear();
                    for (a, &i) in s.iter().enumerate() {
                        for (c, &j) in s.iter().enumerate() {
                            let t = table[i][j];
                            let v = n[a] * n[c];
                            match acc.iter_mut().find(|e| e.0 == t) {
                                Some(e) => e.1 += v,
                                None => acc.push((t, v)),
                            }
                        }
                    }
                    let ok = acc.iter().all(|&(t, v)| match s.iter().position(|&i| i as u32 == t) {
                        Some(a) => v == n[a],
                        None => v == 0,
                    }) && s.iter().enumerate().all(|(a, &i)| acc.iter().any(|e| e.0 == i as u32) || n[a] == 0);
                    if ok {
                        out.push(s.iter().copied().zip(n.iter().copied()).collect());
                    }
                }
                // Odometer over coefficient digits, last digit fastest.
                let Some(p) = (0..k).rev().find(|&p| digits[p] + 1 < coeffs.len()) else {
                    break;
                };
                digits[p] += 1;
                for d in digits.iter_mut().skip(p + 1) {
                    *d = 0;
                }
            }
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

fn canonical_sort<K: Ord + Clone>(v: &mut [RingElement<K>]) {
    v.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.terms.iter().cmp(b.terms.iter())));
}

/// All idempotents of `Z[Q]` with at most `max_length` terms and
/// coefficients in `[−B, B] \ {0}`.
pub fn enumerate_idempotents(q: &FiniteQuandle, cfg: &IdemScanConfig) -> Result<Vec<RingElement<usize>>> {
    let n = q.size();
    let table: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| q.op(i, j) as u32).collect()).collect();
    let mut out: Vec<RingElement<usize>> = search_box(n, &table, cfg)?
        .into_iter()
        .map(|terms| RingElement::from_terms(terms.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
        .collect();
    canonical_sort(&mut out);
    Ok(out)
}

/// How an idempotent found on the torus relates to the disjoint convex
/// combinations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusIdempotent {
    pub element: RingElement<CurveClass>,
    /// Support pairwise disjoint (with **0** disjoint from everything) and
    /// augmentation 1.
    pub convex_disjoint: bool,
    pub uses_zero_curve: bool,
    pub has_negative_coefficient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusScan {
    pub config: IdemScanConfig,
    pub universe_size: usize,
    pub found: Vec<TorusIdempotent>,
    pub all_convex_disjoint: bool,
    pub intersecting_pair_supports: usize,
}

/// The universe of a torus scan: **0** (optionally) followed by the
/// primitive classes within `coord_cap`, in lexicographic order.
pub fn torus_universe(cfg: &IdemScanConfig) -> Vec<CurveClass> {
    let mut u = Vec::new();
    if cfg.include_zero_curve {
        u.push(CurveClass::zero());
    }
    u.extend(primitive_classes(cfg.coord_cap));
    u
}

/// Exhaustive idempotent scan in `Z[D₁]` over the configured box.
pub fn torus_idempotent_scan(cfg: &IdemScanConfig) -> Result<TorusScan> {
    cfg.validate()?;
    let universe = torus_universe(cfg);
    let m = universe.len();
    let mut ids: HashMap<CurveClass, u32> = universe.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
    let mut table = vec![vec![0u32; m]; m];
    for i in 0..m {
        for j in 0..m {
            let p = op_c1(&universe[i], &universe[j]);
            let next = ids.len() as u32;
            table[i][j] = *ids.entry(p).or_insert(next);
        }
    }
    let mut found: Vec<RingElement<CurveClass>> = search_box(m, &table, cfg)?
        .into_iter()
        .map(|terms| RingElement::from_terms(terms.into_iter().map(|(k, c)| (universe[k].clone(), BigInt::from(c)))))
        .collect();
    canonical_sort(&mut found);
    let found: Vec<TorusIdempotent> = found.into_iter().map(classify).collect();
    let intersecting_pair_supports = found
        .iter()
        .filter(|t| {
            let ks: Vec<&CurveClass> = t.element.terms.keys().collect();
            ks.len() == 2 && !intersection(ks[0], ks[1]).is_zero()
        })
        .count();
    Ok(TorusScan {
        config: *cfg,
        universe_size: m,
        all_convex_disjoint: found.iter().all(|t| t.convex_disjoint),
        found,
        intersecting_pair_supports,
    })
}

fn classify(element: RingElement<CurveClass>) -> TorusIdempotent {
    let keys: Vec<&CurveClass> = element.terms.keys().collect();
    let disjoint = keys.iter().enumerate().all(|(i, a)| keys[i + 1..].iter().all(|b| intersection(a, b).is_zero()));
    TorusIdempotent {
        convex_disjoint: disjoint && element.augmentation().is_one(),
        uses_zero_curve: keys.iter().any(|k| k.is_zero()),
        has_negative_coefficient: element.terms.values().any(Signed::is_negative),
        element,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvesAudit {
    pub pairs: usize,
    pub distinct_four_failures: usize,
    pub squared_intersection_failures: usize,
}

/// Random primitive class with coordinates at most `cap`.
pub fn random_primitive<R: Rng>(rng: &mut R, cap: i64) -> CurveClass {
    loop {
        let (p, q) = (rng.gen_range(-cap..=cap), rng.gen_range(-cap..=cap));
        let c = CurveClass::from((p, q));
        if c.is_primitive() {
            return c;
        }
    }
}

/// For random intersecting pairs: the four classes `α₁, α₂, α₁∗α₂, α₂∗α₁`
/// are distinct, and `i(T_γ(α), α) = i(α, γ)²`.
pub fn distinct_curves_audit<R: Rng>(samples: usize, cap: i64, rng: &mut R) -> Result<CurvesAudit> {
    let mut audit = CurvesAudit { pairs: samples, distinct_four_failures: 0, squared_intersection_failures: 0 };
    let mut done = 0;
    while done < samples {
        let (a, g) = (random_primitive(rng, cap), random_primitive(rng, cap));
        let i = intersection(&a, &g);
        if i.is_zero() {
            continue;
        }
        done += 1;
        if !distinct_four(&a, &g)? {
            audit.distinct_four_failures += 1;
        }
        if intersection(&op_c1(&a, &g), &a) != &i * &i {
            audit.squared_intersection_failures += 1;
        }
    }
    Ok(audit)
}
