//! Curves on the torus and the quandles `D₁ ⊂ C₁` and `W₁`.
//!
//! An unoriented closed curve is the class `±(p, q)` of its homology
//! coordinates; primitive classes are the essential simple closed curves
//! and `(0, 0)` is the null-homotopic curve **0**. A class `g·(p', q')`
//! with `g = gcd > 1` stands for `g` parallel copies of `(p', q')`.
//!
//! Dehn twists act on homology as transvections. The single convention
//! used throughout is
//!
//! ```text
//! T_γ(v) = v + ⟨v, γ⟩ γ,    ⟨(r, s), (p, q)⟩ = r q − s p,
//! ```
//!
//! and a non-primitive `γ = g·γ'` twists along `γ'` with multiplicity `g`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unoriented curve class on the torus, kept in normal form
/// (`q > 0`, or `q = 0` and `p ≥ 0`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass {
    p: BigInt,
    q: BigInt,
}

/// Normal form of `±(p, q)`.
pub fn normalize(p: impl Into<BigInt>, q: impl Into<BigInt>) -> CurveClass {
    let (p, q) = (p.into(), q.into());
    if q.is_negative() || (q.is_zero() && p.is_negative()) {
        CurveClass { p: -p, q: -q }
    } else {
        CurveClass { p, q }
    }
}

impl CurveClass {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        normalize(p, q)
    }

    /// The null-homotopic curve **0**.
    pub fn zero() -> Self {
        CurveClass { p: BigInt::zero(), q: BigInt::zero() }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// `gcd(p, q)`, zero for **0**.
    pub fn gcd(&self) -> BigInt {
        self.p.gcd(&self.q)
    }

    /// Essential simple closed curve.
    pub fn is_primitive(&self) -> bool {
        self.gcd().is_one()
    }

    /// `(g, γ')` with `self = g·γ'` and `γ'` primitive. `None` for **0**.
    pub fn split(&self) -> Option<(BigInt, CurveClass)> {
        if self.is_zero() {
            return None;
        }
        let g = self.gcd();
        Some((g.clone(), CurveClass { p: &self.p / &g, q: &self.q / &g }))
    }

    /// Small-integer coordinates, if they fit.
    pub fn to_i64(&self) -> Option<(i64, i64)> {
        Some((self.p.to_i64()?, self.q.to_i64()?))
    }

    /// Largest absolute coordinate.
    pub fn height(&self) -> BigInt {
        self.p.abs().max(self.q.abs())
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

impl From<(i64, i64)> for CurveClass {
    fn from((p, q): (i64, i64)) -> Self {
        normalize(p, q)
    }
}

/// Parses `"p/q"` or `"(p,q)"`.
impl FromStr for CurveClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (a, b) = if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            inner.split_once(',')
        } else {
            t.split_once('/')
        }
        .ok_or_else(|| Error::Parse(format!("expected \"p/q\" or \"(p,q)\", got {s:?}")))?;
        let num =
            |x: &str| x.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {x:?} in curve {s:?}")));
        Ok(normalize(num(a)?, num(b)?))
    }
}

/// The algebraic pairing `⟨(r, s), (p, q)⟩ = r q − s p`.
pub fn pairing(v: &CurveClass, w: &CurveClass) -> BigInt {
    &v.p * &w.q - &v.q * &w.p
}

/// Geometric intersection number `|p_a q_b − q_a p_b|`.
pub fn intersection(a: &CurveClass, b: &CurveClass) -> BigInt {
    pairing(a, b).abs()
}

/// A torus mapping class as an integer matrix `[[a, b], [c, d]]` of
/// determinant one, acting on column vectors `(p, q)ᵀ`.
///
/// Equality is exact (the mapping class group of the torus is `SL(2, Z)`,
/// where `−I` is the nontrivial hyperelliptic involution). Use
/// [`MappingClassT::canonical_mod_sign`] when only the action on unoriented
/// curves matters.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MappingClassT {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl MappingClassT {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = MappingClassT { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        if !m.det().is_one() {
            return Err(Error::Precondition(format!("determinant {} ≠ 1", m.det())));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MappingClassT { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn mul(&self, o: &MappingClassT) -> MappingClassT {
        MappingClassT {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> MappingClassT {
        MappingClassT { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn pow(&self, k: i64) -> MappingClassT {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = MappingClassT::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    pub fn neg(&self) -> MappingClassT {
        MappingClassT { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    /// Image of a curve class.
    pub fn apply(&self, v: &CurveClass) -> CurveClass {
        normalize(&self.a * &v.p + &self.b * &v.q, &self.c * &v.p + &self.d * &v.q)
    }

    /// Representative of `±M` whose first nonzero entry is positive.
    pub fn canonical_mod_sign(&self) -> MappingClassT {
        let first = [&self.a, &self.b, &self.c, &self.d].into_iter().find(|x| !x.is_zero()).expect("determinant one");
        if first.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eq_mod_sign(&self, o: &MappingClassT) -> bool {
        self == o || *self == o.neg()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// The matrix of `T_γ = T_{γ'}^g` for `γ = g·γ'`, namely
/// `[[1 + g p q, −g p²], [g q², 1 − g p q]]` with `γ' = (p, q)`.
pub fn twist_matrix(gamma: &CurveClass) -> Result<MappingClassT> {
    let (g, prim) = gamma.split().ok_or_else(|| Error::Precondition("twist along the null curve".into()))?;
    let (p, q) = (&prim.p, &prim.q);
    let gpq = &g * p * q;
    Ok(MappingClassT { a: BigInt::one() + &gpq, b: -(&g * p * p), c: &g * q * q, d: BigInt::one() - &gpq })
}

/// `T_γ^k(v)`; twisting along **0** is the identity.
///
/// Powers of a transvection stay linear in `k`:
/// `T_γ^k(v) = v + k g ⟨v, γ'⟩ γ'`.
pub fn dehn_twist(gamma: &CurveClass, k: i64, v: &CurveClass) -> CurveClass {
    let Some((g, prim)) = gamma.split() else {
        return v.clone();
    };
    let s = pairing(v, &prim) * g * k;
    normalize(&v.p + &s * &prim.p, &v.q + &s * &prim.q)
}

/// `β ∗ α = T_α(β)` on `C₁`, with `α` twisting as its multicurve.
pub fn op_c1(beta: &CurveClass, alpha: &CurveClass) -> CurveClass {
    dehn_twist(alpha, 1, beta)
}

/// `β ∗⁻¹ α = T_α⁻¹(β)`.
pub fn op_c1_inverse(beta: &CurveClass, alpha: &CurveClass) -> CurveClass {
    dehn_twist(alpha, -1, beta)
}

fn check_simple(c: &CurveClass) -> Result<()> {
    if c.is_zero() || c.is_primitive() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{c} is not a simple closed curve")))
    }
}

/// The Dehn quandle operation `β ∗ α = T_α(β)` on simple curves
/// (primitive classes, or **0**).
pub fn op_d1(beta: &CurveClass, alpha: &CurveClass) -> Result<CurveClass> {
    check_simple(beta)?;
    check_simple(alpha)?;
    Ok(op_c1(beta, alpha))
}

/// Checks the braid relation `T_{T_α(β)}(α) = β` for `i(α, β) = 1`.
pub fn braid_check(alpha: &CurveClass, beta: &CurveClass) -> Result<bool> {
    if !intersection(alpha, beta).is_one() {
        return Err(Error::Precondition(format!(
            "braid relation needs i({alpha}, {beta}) = 1, got {}",
            intersection(alpha, beta)
        )));
    }
    let twisted = dehn_twist(alpha, 1, beta);
    Ok(dehn_twist(&twisted, 1, alpha) == *beta)
}

/// Whether `{α₁, α₂, α₁∗α₂, α₂∗α₁}` consists of four distinct classes.
pub fn distinct_four(a1: &CurveClass, a2: &CurveClass) -> Result<bool> {
    check_simple(a1)?;
    check_simple(a2)?;
    if a1 == a2 || intersection(a1, a2).is_zero() {
        return Err(Error::Precondition(format!("{a1} and {a2} must be distinct and intersect")));
    }
    let four = [a1.clone(), a2.clone(), op_c1(a1, a2), op_c1(a2, a1)];
    Ok((0..4).all(|i| (i + 1..4).all(|j| four[i] != four[j])))
}

/// Whether all reduced words of length ≤ `max_len` in `T_α^{±1}, T_β^{±1}`
/// give distinct matrices modulo `±I`.
pub fn reduced_twist_words_distinct(alpha: &CurveClass, beta: &CurveClass, max_len: usize) -> Result<bool> {
    let gens = {
        let ta = twist_matrix(alpha)?;
        let tb = twist_matrix(beta)?;
        [ta.inverse(), ta, tb.inverse(), tb]
    };
    let mut seen = std::collections::HashSet::new();
    seen.insert(MappingClassT::identity().canonical_mod_sign());
    // (matrix, index of last generator); generator 2k and 2k+1 are inverse.
    let mut layer = vec![(MappingClassT::identity(), usize::MAX)];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for (m, last) in &layer {
            for (i, g) in gens.iter().enumerate() {
                if *last != usize::MAX && i ^ 1 == *last {
                    continue;
                }
                let w = m.mul(g);
                if !seen.insert(w.canonical_mod_sign()) {
                    return Ok(false);
                }
                next.push((w, i));
            }
        }
        layer = next;
    }
    Ok(true)
}

/// An integral weighted multicurve on the torus: `m₀·0 + n·β` where the
/// essential part (at most one class, since distinct essential classes
/// intersect) is optional.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeightedMulticurve {
    zero_weight: BigInt,
    essential: Option<(BigInt, CurveClass)>,
}

impl WeightedMulticurve {
    /// Builds `m₀·0 + n·base`; the base must be primitive and `n ≠ 0`.
    pub fn new(zero_weight: impl Into<BigInt>, essential: Option<(BigInt, CurveClass)>) -> Result<Self> {
        if let Some((n, base)) = &essential {
            if n.is_zero() {
                return Err(Error::Precondition("essential weight must be nonzero".into()));
            }
            if !base.is_primitive() {
                return Err(Error::Precondition(format!("{base} is not a primitive class")));
            }
        }
        Ok(WeightedMulticurve { zero_weight: zero_weight.into(), essential })
    }

    pub fn zero_only(m0: impl Into<BigInt>) -> Self {
        WeightedMulticurve { zero_weight: m0.into(), essential: None }
    }

    pub fn essential(weight: impl Into<BigInt>, base: CurveClass) -> Result<Self> {
        Self::new(BigInt::zero(), Some((weight.into(), base)))
    }

    pub fn zero_weight(&self) -> &BigInt {
        &self.zero_weight
    }

    pub fn essential_part(&self) -> Option<(&BigInt, &CurveClass)> {
        self.essential.as_ref().map(|(n, b)| (n, b))
    }

    /// The multitwist `T_β^n`, if any.
    fn twist(&self) -> Option<(i64, &CurveClass, &BigInt)> {
        self.essential.as_ref().map(|(n, b)| (1, b, n))
    }

    fn act(&self, by: &WeightedMulticurve, sign: i64) -> WeightedMulticurve {
        let essential = match (&self.essential, by.twist()) {
            (Some((w, base)), Some((_, tb, tn))) => {
                let s = pairing(base, tb) * tn * sign;
                Some((w.clone(), normalize(&base.p + &s * &tb.p, &base.q + &s * &tb.q)))
            }
            (e, _) => e.clone(),
        };
        WeightedMulticurve { zero_weight: self.zero_weight.clone(), essential }
    }

    pub fn is_positive(&self) -> bool {
        match &self.essential {
            Some((n, _)) => n.is_positive() && !self.zero_weight.is_negative(),
            None => self.zero_weight.is_positive(),
        }
    }
}

/// `x ∗ y`: the essential base of `x` is moved by `T_β^n` where
/// `y = m₀·0 + n·β`; weights are unchanged.
pub fn op_w1(x: &WeightedMulticurve, y: &WeightedMulticurve) -> WeightedMulticurve {
    x.act(y, 1)
}

pub fn op_w1_inverse(x: &WeightedMulticurve, y: &WeightedMulticurve) -> WeightedMulticurve {
    x.act(y, -1)
}

/// The covering `C₁ → W₁⁺`: `(p, q) ↦ g·(p/g, q/g)` and `0 ↦ 1·0`.
pub fn phi(alpha: &CurveClass) -> WeightedMulticurve {
    match alpha.split() {
        None => WeightedMulticurve::zero_only(1),
        Some((g, prim)) => WeightedMulticurve { zero_weight: BigInt::zero(), essential: Some((g, prim)) },
    }
}

/// Inverse of [`phi`] on its image: `n·β ↦ nβ` for `n > 0` and `1·0 ↦ 0`.
pub fn phi_inverse(w: &WeightedMulticurve) -> Result<CurveClass> {
    match &w.essential {
        Some((n, base)) => {
            if !n.is_positive() || w.zero_weight.is_negative() {
                return Err(Error::Precondition(format!("nonpositive weight in {w}")));
            }
            if !w.zero_weight.is_zero() {
                return Err(Error::Precondition(format!("{w} is not the multicurve of a closed curve")));
            }
            Ok(normalize(n * &base.p, n * &base.q))
        }
        None => {
            if !w.zero_weight.is_positive() {
                return Err(Error::Precondition(format!("nonpositive weight in {w}")));
            }
            if !w.zero_weight.is_one() {
                return Err(Error::Precondition(format!("{w} is not the multicurve of a closed curve")));
            }
            Ok(CurveClass::zero())
        }
    }
}

impl fmt::Display for WeightedMulticurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let curve = |f: &mut fmt::Formatter<'_>, n: &BigInt, b: &CurveClass| write!(f, "{n}*({},{})", b.p, b.q);
        match &self.essential {
            None => write!(f, "{}*o", self.zero_weight),
            Some((n, b)) if self.zero_weight.is_zero() => curve(f, n, b),
            Some((n, b)) => {
                write!(f, "{}*o + ", self.zero_weight)?;
                curve(f, n, b)
            }
        }
    }
}

/// Parses sums like `"m0*o + n*(p,q)"`, `"2*(1,0)"`, `"o"` or `"-1*o + (0,1)"`.
impl FromStr for WeightedMulticurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut zero = BigInt::zero();
        let mut essential: Option<(BigInt, CurveClass)> = None;
        for (coeff, elem) in parse_terms(s)? {
            match elem {
                TermElem::Zero => zero += coeff,
                TermElem::Curve(c) => {
                    let (g, prim) = c.split().ok_or_else(|| Error::Parse("use \"o\" for the null curve".into()))?;
                    if !g.is_one() {
                        return Err(Error::Parse(format!("{c} is not primitive")));
                    }
                    match &mut essential {
                        None => essential = Some((coeff, prim)),
                        Some((n, b)) if *b == prim => *n += coeff,
                        Some(_) => {
                            return Err(Error::Parse("a torus multicurve holds at most one essential class".into()))
                        }
                    }
                }
            }
        }
        let essential = essential.filter(|(n, _)| !n.is_zero());
        WeightedMulticurve::new(zero, essential)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum TermElem {
    Zero,
    Curve(CurveClass),
}

/// Splits `"a*x + b*y - z"` into signed terms. Elements are `o` or a curve
/// literal `(p,q)`; a missing coefficient means 1.
pub(crate) fn parse_terms(s: &str) -> Result<Vec<(BigInt, TermElem)>> {
    let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty sum".into()));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    while i < src.len() {
        let mut sign = BigInt::one();
        if src[i] == '+' || src[i] == '-' {
            if src[i] == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(Error::Parse(format!("expected '+' or '-' in {s:?}")));
        }
        let start = i;
        while i < src.len() && src[i].is_ascii_digit() {
            i += 1;
        }
        let coeff = if i > start {
            let digits: String = src[start..i].iter().collect();
            let c: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?;
            if i < src.len() && src[i] == '*' {
                i += 1;
            } else {
                return Err(Error::Parse(format!("expected '*' after coefficient in {s:?}")));
            }
            c
        } else {
            BigInt::one()
        };
        let elem = if i < src.len() && src[i] == 'o' {
            i += 1;
            TermElem::Zero
        } else if i < src.len() && src[i] == '(' {
            let close = src[i..]
                .iter()
                .position(|&c| c == ')')
                .ok_or_else(|| Error::Parse(format!("unclosed '(' in {s:?}")))?;
            let lit: String = src[i..=i + close].iter().collect();
            i += close + 1;
            TermElem::Curve(lit.parse()?)
        } else {
            return Err(Error::Parse(format!("expected 'o' or '(p,q)' in {s:?}")));
        };
        terms.push((sign * coeff, elem));
    }
    Ok(terms)
}

// JSON forms: {"p":int,"q":int} and {"zero":int,"weight":int,"base":{...}}.
// Integers outside the i64 range are written as decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for JsonInt {
    fn from(n: &BigInt) -> Self {
        n.to_i64().map_or_else(|| JsonInt::Big(n.to_string()), JsonInt::Small)
    }
}

impl JsonInt {
    fn into_bigint<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            JsonInt::Small(v) => Ok(v.into()),
            JsonInt::Big(s) => s.parse().map_err(E::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CurveJson {
    p: JsonInt,
    q: JsonInt,
}

impl Serialize for CurveClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveJson { p: (&self.p).into(), q: (&self.q).into() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = CurveJson::deserialize(d)?;
        Ok(normalize(c.p.into_bigint()?, c.q.into_bigint()?))
    }
}

#[derive(Serialize, Deserialize)]
struct MulticurveJson {
    zero: JsonInt,
    weight: JsonInt,
    base: Option<CurveClass>,
}

impl Serialize for WeightedMulticurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let zero = BigInt::zero();
        let (weight, base) = match &self.essential {
            Some((n, b)) => (n, Some(b.clone())),
            None => (&zero, None),
        };
        MulticurveJson { zero: (&self.zero_weight).into(), weight: weight.into(), base }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedMulticurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MulticurveJson::deserialize(d)?;
        let weight: BigInt = m.weight.into_bigint()?;
        let essential = match m.base {
            Some(b) if !weight.is_zero() => Some((weight, b)),
            _ => None,
        };
        WeightedMulticurve::new(m.zero.into_bigint::<D::Error>()?, essential).map_err(serde::de::Error::custom)
    }
}
