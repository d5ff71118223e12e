//! Abelian extensions `E = X ×_φ A`, uniform means on finite abelian groups
//! and the averaging map `κ` from cochains on `E` to cochains on `X`.
//!
//! A quandle 2-cocycle is `φ: X × X → A` with `φ(x, x) = 0` and
//! `φ(x, y) + φ(x∗y, z) = φ(x, z) + φ(x∗z, y∗z)`; the extension operation is
//! `(x, a) ⋆ (y, b) = (x∗y, a + φ(x, y))`. Element `(x, a)` has index
//! `x·|A| + a`.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    coboundary, cohomology, coordinates, decode, delta_matrix, encode, tuple_count, Cochain, Kind,
};
use crate::error::{Error, Result};
use crate::linalg::{to_sparse, Rref, SparseRow};
use crate::quandle::{verify_quandle, FiniteQuandle, QuandleFile};

/// `Z/n₁ ⊕ … ⊕ Z/nₖ`; element indices are mixed-radix with the last
/// summand varying fastest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    orders: Vec<usize>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Precondition("cyclic orders must be positive".into()));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(n: usize) -> Self {
        FiniteAbelianGroup::new(vec![n]).expect("positive order")
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn tuple(&self, mut a: usize) -> Vec<usize> {
        let mut t = vec![0; self.orders.len()];
        for (slot, &n) in t.iter_mut().zip(&self.orders).rev() {
            *slot = a % n;
            a /= n;
        }
        t
    }

    pub fn index(&self, t: &[usize]) -> Result<usize> {
        if t.len() != self.orders.len() || t.iter().zip(&self.orders).any(|(&x, &n)| x >= n) {
            return Err(Error::Mismatch(format!("{t:?} is not an element of Z/{:?}", self.orders)));
        }
        Ok(t.iter().zip(&self.orders).fold(0, |acc, (&x, &n)| acc * n + x))
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.tuple(a), self.tuple(b));
        let s: Vec<usize> = ta.iter().zip(&tb).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect();
        self.index(&s).expect("in range")
    }

    pub fn neg(&self, a: usize) -> usize {
        let s: Vec<usize> = self.tuple(a).iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect();
        self.index(&s).expect("in range")
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

/// `φ: X × X → A`, stored as group element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuandleCocycle2 {
    pub quandle: FiniteQuandle,
    pub group: FiniteAbelianGroup,
    pub phi: Vec<Vec<usize>>,
}

impl QuandleCocycle2 {
    pub fn zero(quandle: FiniteQuandle, group: FiniteAbelianGroup) -> Self {
        let n = quandle.size();
        QuandleCocycle2 { quandle, group, phi: vec![vec![0; n]; n] }
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.quandle.size();
        if self.phi.len() != n || self.phi.iter().any(|r| r.len() != n) {
            return Err(Error::Mismatch(format!("φ must be {n}×{n}")));
        }
        if self.phi.iter().flatten().any(|&a| a >= self.group.size()) {
            return Err(Error::Mismatch("φ value outside the group".into()));
        }
        Ok(())
    }

    /// First failure of the cocycle identities: `[x]` for `φ(x,x) ≠ 0`, or
    /// `[x, y, z]` for the 3-term identity.
    pub fn violation(&self) -> Result<Option<Vec<usize>>> {
        self.check_shape()?;
        let (q, a, phi) = (&self.quandle, &self.group, &self.phi);
        let n = q.size();
        if let Some(x) = (0..n).find(|&x| phi[x][x] != 0) {
            return Ok(Some(vec![x]));
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = a.add(phi[x][y], phi[q.op(x, y)][z]);
                    let rhs = a.add(phi[x][z], phi[q.op(x, z)][q.op(y, z)]);
                    if lhs != rhs {
                        return Ok(Some(vec![x, y, z]));
                    }
                }
            }
        }
        Ok(None)
    }
}

pub fn is_cocycle2(c: &QuandleCocycle2) -> Result<bool> {
    Ok(c.violation()?.is_none())
}

/// The raw `⋆` table, built without checking the cocycle identities.
pub fn extension_table(c: &QuandleCocycle2) -> Result<Vec<Vec<usize>>> {
    c.check_shape()?;
    let (q, a) = (&c.quandle, &c.group);
    let m = a.size();
    let n = q.size() * m;
    Ok((0..n)
        .map(|u| {
            (0..n)
                .map(|v| {
                    let (x, ea) = (u / m, u % m);
                    let y = v / m;
                    q.op(x, y) * m + a.add(ea, c.phi[x][y])
                })
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionQuandle {
    pub base: FiniteQuandle,
    pub group: FiniteAbelianGroup,
    pub quandle: FiniteQuandle,
}

impl ExtensionQuandle {
    pub fn fiber_size(&self) -> usize {
        self.group.size()
    }

    /// `π(x, a) = x`.
    pub fn project(&self, e: usize) -> usize {
        e / self.group.size()
    }

    /// Whether `S_{(x,a)}` depends only on `x`.
    pub fn is_covering(&self) -> bool {
        let m = self.group.size();
        (0..self.quandle.size()).all(|e| self.quandle.symmetry(e) == self.quandle.symmetry(e - e % m))
    }
}

/// `X ×_φ A`; fails with [`Error::InvalidCocycle`] unless `φ` is a cocycle.
pub fn build_extension(c: &QuandleCocycle2) -> Result<ExtensionQuandle> {
    if let Some(w) = c.violation()? {
        return Err(Error::InvalidCocycle(format!("identity fails at {w:?}")));
    }
    let table = extension_table(c)?;
    let quandle = FiniteQuandle::new(table)?;
    Ok(ExtensionQuandle { base: c.quandle.clone(), group: c.group.clone(), quandle })
}

/// Whether `φ = δg` for some `g: X → A`, i.e. `φ(x, y) = g(x) − g(x∗y)`.
/// Exhaustive over `A^X`.
pub fn is_group_coboundary(c: &QuandleCocycle2, cap: usize) -> Result<bool> {
    c.check_shape()?;
    let (q, a) = (&c.quandle, &c.group);
    let n = q.size();
    let count = a.size().checked_pow(n as u32).filter(|&k| k <= cap).ok_or_else(|| Error::cap("A^X", cap))?;
    Ok((0..count).into_par_iter().any(|code| {
        let g = decode(code, a.size(), n);
        (0..n).all(|x| (0..n).all(|y| c.phi[x][y] == a.sub(g[x], g[q.op(x, y)])))
    }))
}

/// All 2-cocycles `X × X → A` in odometer order over `A^{X×X}` (first entry
/// most significant).
pub fn all_cocycles(q: &FiniteQuandle, a: &FiniteAbelianGroup, cap: usize) -> Result<Vec<QuandleCocycle2>> {
    let n = q.size();
    let count = a.size().checked_pow((n * n) as u32).filter(|&k| k <= cap).ok_or_else(|| Error::cap("A^(X×X)", cap))?;
    let found: Vec<QuandleCocycle2> = (0..count)
        .into_par_iter()
        .filter_map(|code| {
            let flat = decode(code, a.size(), n * n);
            let phi: Vec<Vec<usize>> = flat.chunks(n).map(<[usize]>::to_vec).collect();
            let c = QuandleCocycle2 { quandle: q.clone(), group: a.clone(), phi };
            matches!(c.violation(), Ok(None)).then_some(c)
        })
        .collect();
    Ok(found)
}

/// First nonzero cocycle in odometer order; with `beyond_coboundaries`, the
/// first one that is not `δg` for any `g: X → A`.
pub fn find_nontrivial_cocycle(
    q: &FiniteQuandle,
    a: &FiniteAbelianGroup,
    beyond_coboundaries: bool,
    cap: usize,
) -> Result<Option<QuandleCocycle2>> {
    for c in all_cocycles(q, a, cap)? {
        if c.phi.iter().flatten().all(|&v| v == 0) {
            continue;
        }
        if beyond_coboundaries && is_group_coboundary(&c, cap)? {
            continue;
        }
        return Ok(Some(c));
    }
    Ok(None)
}

/// The uniform mean of `f` over `A`.
pub fn mean(a: &FiniteAbelianGroup, f: impl Fn(usize) -> BigRational) -> BigRational {
    let n = a.size();
    let total: BigRational = (0..n).map(f).sum();
    total / BigRational::from_integer(n.into())
}

/// `m⁽ⁿ⁾(f)` for `f: Aⁿ → Q` given densely (last coordinate fastest), by
/// the recursion `m⁽ⁿ⁺¹⁾(f) = m(aₙ₊₁ ↦ m⁽ⁿ⁾(f(−, aₙ₊₁)))`.
pub fn iterated_mean(a: &FiniteAbelianGroup, n: usize, f: &[BigRational]) -> Result<BigRational> {
    let m = a.size();
    if f.len() != tuple_count(m, n)? {
        return Err(Error::Mismatch(format!("function on A^{n} needs {} values", m.pow(n as u32))));
    }
    fn rec(a: &FiniteAbelianGroup, n: usize, f: &[BigRational], stride: usize, offset: usize) -> BigRational {
        if n == 0 {
            return f[offset].clone();
        }
        let m = a.size();
        // Fixing the last coordinate a_n leaves a function on A^{n−1}
        // whose entries sit `m` apart.
        mean(a, |last| rec(a, n - 1, f, stride * m, offset + last * stride))
    }
    Ok(rec(a, n, f, 1, 0))
}

/// Pullback `π*g((x₁,a₁),…) = g(x₁,…)`.
pub fn pullback(e: &ExtensionQuandle, g: &Cochain) -> Result<Cochain> {
    if g.order() != e.base.size() {
        return Err(Error::Mismatch("cochain is not on the base quandle".into()));
    }
    let m = e.fiber_size();
    let order = e.quandle.size();
    Cochain::from_fn(order, g.degree(), |t| {
        let xs: Vec<usize> = t.iter().map(|&u| u / m).collect();
        g.at(&xs).clone()
    })
}

/// `κⁿf(x₁,…,xₙ) = m⁽ⁿ⁾((a₁,…,aₙ) ↦ f((x₁,a₁),…,(xₙ,aₙ)))`.
pub fn kappa(e: &ExtensionQuandle, f: &Cochain) -> Result<Cochain> {
    if f.order() != e.quandle.size() {
        return Err(Error::Mismatch("cochain is not on the extension".into()));
    }
    let (n, m, base) = (f.degree(), e.fiber_size(), e.base.size());
    let fibre_len = tuple_count(m, n)?;
    let values = (0..tuple_count(base, n)?)
        .into_par_iter()
        .map(|i| {
            let xs = decode(i, base, n);
            let fibre: Vec<BigRational> = (0..fibre_len)
                .map(|j| {
                    let ts: Vec<usize> = decode(j, m, n).iter().zip(&xs).map(|(&a, &x)| x * m + a).collect();
                    f.at(&ts).clone()
                })
                .collect();
            iterated_mean(&e.group, n, &fibre)
        })
        .collect::<Result<Vec<_>>>()?;
    Cochain::new(base, n, values)
}

/// Whether `π*: Hⁿ(X) → Hⁿ(E)` is injective in the chosen complex.
///
/// Takes the null space of `[π*Z(X) | B(E)]`; each null vector gives a
/// cocycle on `X` whose pullback is a coboundary, which must then be shown
/// to be a coboundary on `X` by an exact solve.
pub fn pullback_injective(e: &ExtensionQuandle, n: usize, kind: Kind) -> Result<bool> {
    let x = &e.base;
    let cocycles = cohomology(x, n, kind)?.cocycle_basis;
    let coords_e = coordinates(e.quandle.size(), n, kind)?;
    let restrict = |c: &Cochain| -> Vec<BigRational> { coords_e.iter().map(|&i| c.values()[i].clone()).collect() };

    let mut columns: Vec<Vec<BigRational>> =
        cocycles.iter().map(|z| Ok(restrict(&pullback(e, z)?))).collect::<Result<_>>()?;
    let z_count = columns.len();
    if n > 0 {
        let b_e = delta_matrix(&e.quandle, n - 1, kind)?;
        // Column j of δ^{n−1} is the coboundary of the j-th coordinate.
        let mut cols: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); b_e.rows.len()]; b_e.cols.len()];
        for (r, row) in b_e.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c][r] = v.clone();
            }
        }
        columns.extend(cols);
    }
    // Null space of the matrix whose columns are `columns`.
    let rows: Vec<SparseRow> =
        (0..coords_e.len()).map(|r| to_sparse(&columns.iter().map(|col| col[r].clone()).collect::<Vec<_>>())).collect();
    let null = Rref::from_rows(columns.len(), rows).kernel();
    let coords_x = coordinates(x.size(), n, kind)?;
    let prev = if n > 0 { Some(delta_matrix(x, n - 1, kind)?) } else { None };
    for v in null {
        let mut f = vec![BigRational::zero(); coords_x.len()];
        for (k, z) in cocycles.iter().enumerate().take(z_count) {
            if v[k].is_zero() {
                continue;
            }
            for (slot, &i) in f.iter_mut().zip(&coords_x) {
                *slot += &v[k] * &z.values()[i];
            }
        }
        if f.iter().all(Zero::is_zero) {
            continue;
        }
        let ok = match &prev {
            None => false,
            Some(d) => crate::linalg::solve(d.cols.len(), &d.rows, &f).is_some(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Uniform random rational in `[-bound, bound]` with denominator at most 4.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    let den = rng.gen_range(1..=4i64);
    let num = rng.gen_range(-bound * den..=bound * den);
    BigRational::new(num.into(), den.into())
}

pub fn random_cochain<R: Rng>(rng: &mut R, order: usize, degree: usize) -> Result<Cochain> {
    let len = tuple_count(order, degree)?;
    Cochain::new(order, degree, (0..len).map(|_| random_rational(rng, 5)).collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GmtDegree {
    pub degree: usize,
    pub trials: usize,
    pub chain_map_failures: usize,
    pub section_failures: usize,
    pub norm_failures: usize,
    pub injective_rack: bool,
    pub injective_sub: bool,
    pub injective_quotient: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GmtReport {
    pub extension_size: usize,
    pub is_quandle: bool,
    pub is_covering: bool,
    pub degrees: Vec<GmtDegree>,
}

impl GmtReport {
    /// Chain map, section and norm checks all pass, the extension is a
    /// covering quandle, and `π*` is injective in every complex.
    pub fn passed(&self) -> bool {
        self.is_quandle
            && self.is_covering
            && self.degrees.iter().all(|d| {
                d.chain_map_failures == 0
                    && d.section_failures == 0
                    && d.norm_failures == 0
                    && d.injective_rack
                    && d.injective_sub
                    && d.injective_quotient
            })
    }
}

/// Finite-scale checks of the averaging map for degrees `0..=n_max`.
pub fn verify_gmt<R: Rng>(c: &QuandleCocycle2, n_max: usize, trials: usize, rng: &mut R) -> Result<GmtReport> {
    let e = build_extension(c)?;
    let (x, ex) = (&e.base, &e.quandle);
    let mut degrees = Vec::new();
    for n in 0..=n_max {
        let mut d = GmtDegree { degree: n, trials, ..Default::default() };
        for _ in 0..trials {
            let f = random_cochain(rng, ex.size(), n)?;
            let kf = kappa(&e, &f)?;
            if kappa(&e, &coboundary(ex, &f)?)? != coboundary(x, &kf)? {
                d.chain_map_failures += 1;
            }
            if kf.sup_norm() > f.sup_norm() {
                d.norm_failures += 1;
            }
            let g = random_cochain(rng, x.size(), n)?;
            if kappa(&e, &pullback(&e, &g)?)? != g {
                d.section_failures += 1;
            }
        }
        d.injective_rack = pullback_injective(&e, n, Kind::Rack)?;
        d.injective_sub = pullback_injective(&e, n, Kind::Sub)?;
        d.injective_quotient = pullback_injective(&e, n, Kind::Quotient)?;
        degrees.push(d);
    }
    Ok(GmtReport {
        extension_size: ex.size(),
        is_quandle: verify_quandle(&ex.table())?.valid,
        is_covering: e.is_covering(),
        degrees,
    })
}

/// Checks `m⁽ⁿ⁾(g) = m⁽ⁿ⁻¹⁾(h)` for `g` independent of coordinate `i`
/// (`g(a) = h(a with aᵢ removed)`). Returns the number of failures.
pub fn lemma_independent_coordinate<R: Rng>(
    a: &FiniteAbelianGroup,
    n: usize,
    trials: usize,
    rng: &mut R,
) -> Result<usize> {
    if n == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let m = a.size();
    let mut failures = 0;
    for _ in 0..trials {
        let i = rng.gen_range(0..n);
        let h: Vec<BigRational> = (0..tuple_count(m, n - 1)?).map(|_| random_rational(rng, 5)).collect();
        let g: Vec<BigRational> = (0..tuple_count(m, n)?)
            .map(|k| {
                let mut t = decode(k, m, n);
                t.remove(i);
                h[encode(&t, m)].clone()
            })
            .collect();
        if iterated_mean(a, n, &g)? != iterated_mean(a, n - 1, &h)? {
            failures += 1;
        }
    }
    Ok(failures)
}

// JSON: {"quandle": {...}, "group": {"orders": [...]}, "phi": [[[..], ...], ...]}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CocycleFile {
    pub quandle: QuandleFile,
    pub group: FiniteAbelianGroup,
    pub phi: Vec<Vec<Vec<usize>>>,
}

impl CocycleFile {
    pub fn into_cocycle(self) -> Result<QuandleCocycle2> {
        let quandle = self.quandle.into_quandle()?;
        let group = FiniteAbelianGroup::new(self.group.orders)?;
        let phi = self
            .phi
            .iter()
            .map(|row| row.iter().map(|t| group.index(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let c = QuandleCocycle2 { quandle, group, phi };
        c.check_shape()?;
        Ok(c)
    }
}

impl From<&QuandleCocycle2> for CocycleFile {
    fn from(c: &QuandleCocycle2) -> Self {
        CocycleFile {
            quandle: (&c.quandle).into(),
            group: c.group.clone(),
            phi: c.phi.iter().map(|row| row.iter().map(|&v| c.group.tuple(v)).collect()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn group_arithmetic() {
        let a = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(a.size(), 6);
        assert_eq!(a.tuple(5), vec![1, 2]);
        assert_eq!(a.add(5, 5), a.index(&[0, 1]).unwrap());
        assert_eq!(a.add(4, a.neg(4)), 0);
        assert!(a.index(&[2, 0]).is_err());
    }

    #[test]
    fn zero_cocycle_gives_product() {
        let r3 = FiniteQuandle::dihedral(3);
        let c = QuandleCocycle2::zero(r3.clone(), FiniteAbelianGroup::cyclic(2));
        let e = build_extension(&c).unwrap();
        assert_eq!(e.quandle, r3.product(&FiniteQuandle::trivial(2)));
        assert!(e.is_covering());
        let t1 = QuandleCocycle2::zero(FiniteQuandle::trivial(1), FiniteAbelianGroup::cyclic(3));
        assert_eq!(build_extension(&t1).unwrap().quandle, FiniteQuandle::trivial(3));
    }

    #[test]
    fn invalid_cocycle_breaks_idempotency() {
        let mut c = QuandleCocycle2::zero(FiniteQuandle::dihedral(3), FiniteAbelianGroup::cyclic(2));
        c.phi[0][0] = 1;
        assert!(!is_cocycle2(&c).unwrap());
        assert!(matches!(build_extension(&c), Err(Error::InvalidCocycle(_))));
        let report = verify_quandle(&extension_table(&c).unwrap()).unwrap();
        assert!(!report.valid);
    }

    #[test]
    fn coboundaries_are_cocycles() {
        let r3 = FiniteQuandle::dihedral(3);
        let a = FiniteAbelianGroup::cyclic(3);
        let g = [0, 1, 1];
        let phi = (0..3).map(|x| (0..3).map(|y| a.sub(g[x], g[r3.op(x, y)])).collect()).collect();
        let c = QuandleCocycle2 { quandle: r3, group: a, phi };
        assert!(is_cocycle2(&c).unwrap());
        assert!(is_group_coboundary(&c, 1_000).unwrap());
    }

    #[test]
    fn nontrivial_cocycles_by_search() {
        let r3 = FiniteQuandle::dihedral(3);
        let c2 = find_nontrivial_cocycle(&r3, &FiniteAbelianGroup::cyclic(2), false, 1 << 10).unwrap().unwrap();
        let e = build_extension(&c2).unwrap();
        assert!(verify_quandle(&e.quandle.table()).unwrap().valid);
        // Every Z/2- or Z/3-valued cocycle on R₃ is a coboundary.
        for m in [2, 3] {
            let a = FiniteAbelianGroup::cyclic(m);
            assert!(find_nontrivial_cocycle(&r3, &a, true, 1 << 15).unwrap().is_none());
            assert_eq!(all_cocycles(&r3, &a, 1 << 15).unwrap().len(), m * m);
        }
        // R₄ and T₂ carry Z/2-cocycles that are not coboundaries.
        let z2 = FiniteAbelianGroup::cyclic(2);
        let r4 = FiniteQuandle::dihedral(4);
        let c = find_nontrivial_cocycle(&r4, &z2, true, 1 << 16).unwrap().unwrap();
        assert_eq!(all_cocycles(&r4, &z2, 1 << 16).unwrap().len(), 64);
        assert!(build_extension(&c).unwrap().is_covering());
        let t2 = FiniteQuandle::trivial(2);
        let c = find_nontrivial_cocycle(&t2, &z2, true, 16).unwrap().unwrap();
        assert_eq!(c.phi, vec![vec![0, 0], vec![1, 0]]);
    }

    #[test]
    fn means() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        assert_eq!(mean(&z2, |a| q(a as i64)), BigRational::new(1.into(), 2.into()));
        assert_eq!(iterated_mean(&z2, 3, &vec![q(7); 8]).unwrap(), q(7));
        // m⁽²⁾ of g(a₁, a₂) = h(a₁).
        let h = [q(2), q(-4)];
        let g: Vec<BigRational> = (0..4).map(|k| h[k / 2].clone()).collect();
        assert_eq!(iterated_mean(&z2, 2, &g).unwrap(), iterated_mean(&z2, 1, &h).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            assert_eq!(lemma_independent_coordinate(&FiniteAbelianGroup::cyclic(3), n, 20, &mut rng).unwrap(), 0);
        }
    }

    #[test]
    fn kappa_identities() {
        let c = QuandleCocycle2::zero(FiniteQuandle::dihedral(3), FiniteAbelianGroup::cyclic(2));
        let e = build_extension(&c).unwrap();
        let g = Cochain::from_fn(3, 2, |t| q((t[0] * 3 + t[1]) as i64)).unwrap();
        assert_eq!(kappa(&e, &pullback(&e, &g).unwrap()).unwrap(), g);
        let k = Cochain::from_fn(6, 2, |_| q(4)).unwrap();
        assert_eq!(kappa(&e, &k).unwrap(), Cochain::from_fn(3, 2, |_| q(4)).unwrap());
    }

    #[test]
    fn gmt_checks_pass_on_small_extensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let r3 = FiniteQuandle::dihedral(3);
        let c = find_nontrivial_cocycle(&r3, &FiniteAbelianGroup::cyclic(2), false, 1 << 10).unwrap().unwrap();
        let report = verify_gmt(&c, 2, 5, &mut rng).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn cocycle_json_round_trip() {
        let c = QuandleCocycle2::zero(FiniteQuandle::trivial(2), FiniteAbelianGroup::new(vec![2, 2]).unwrap());
        let s = serde_json::to_string(&CocycleFile::from(&c)).unwrap();
        assert!(s.contains(r#""group":{"orders":[2,2]}"#));
        let back: CocycleFile = serde_json::from_str(&s).unwrap();
        assert_eq!(back.into_cocycle().unwrap(), c);
    }
}
