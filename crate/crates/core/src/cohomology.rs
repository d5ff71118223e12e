//! Rack and quandle cochain complexes of a finite quandle over the rationals.
//!
//! A degree-`n` cochain is a function `Xⁿ → Q`, stored densely with tuples
//! in lexicographic order (`x₁` most significant). The coboundary is
//!
//! ```text
//! δf(x₁,…,xₙ) = Σ_{i=2}^{n} (−1)^i [ f(x₁,…,x̂ᵢ,…,xₙ)
//!                                   − f(x₁∗xᵢ,…,x_{i−1}∗xᵢ, x_{i+1},…,xₙ) ]
//! ```
//!
//! so `δ` vanishes on `C⁰` and `C¹ → C²` is `f ↦ f(x₁) − f(x₁∗x₂)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank_bareiss, to_dense, to_sparse, Rref, SparseRow};
use crate::quandle::{component_diameters, FiniteQuandle};

/// Largest matrix side the cohomology routines will build.
pub const MATRIX_CAP: usize = 10_000;

/// A rational-valued function on `Xⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    order: usize,
    degree: usize,
    values: Vec<BigRational>,
}

impl Cochain {
    pub fn new(order: usize, degree: usize, values: Vec<BigRational>) -> Result<Self> {
        let len = tuple_count(order, degree)?;
        if values.len() != len {
            return Err(Error::Mismatch(format!(
                "degree-{degree} cochain on {order} elements needs {len} values, got {}",
                values.len()
            )));
        }
        Ok(Cochain { order, degree, values })
    }

    pub fn zero(order: usize, degree: usize) -> Result<Self> {
        Ok(Cochain { order, degree, values: vec![BigRational::zero(); tuple_count(order, degree)?] })
    }

    pub fn from_fn(order: usize, degree: usize, f: impl Fn(&[usize]) -> BigRational) -> Result<Self> {
        let len = tuple_count(order, degree)?;
        let values = (0..len).map(|i| f(&decode(i, order, degree))).collect();
        Ok(Cochain { order, degree, values })
    }

    pub fn indicator(order: usize, degree: usize, tuple: &[usize]) -> Result<Self> {
        let mut c = Cochain::zero(order, degree)?;
        c.values[encode(tuple, order)] = BigRational::one();
        Ok(c)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigRational> {
        self.values
    }

    pub fn at(&self, tuple: &[usize]) -> &BigRational {
        &self.values[encode(tuple, self.order)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn sup_norm(&self) -> BigRational {
        crate::linalg::sup_norm(&self.values)
    }

    fn check_quandle(&self, q: &FiniteQuandle) -> Result<()> {
        if self.order != q.size() {
            return Err(Error::Mismatch(format!("cochain on {} elements, quandle has {}", self.order, q.size())));
        }
        Ok(())
    }
}

/// `|X|ⁿ`, refusing sizes above [`MATRIX_CAP`]² worth of entries.
pub fn tuple_count(order: usize, degree: usize) -> Result<usize> {
    order
        .checked_pow(degree as u32)
        .filter(|&n| n <= MATRIX_CAP * MATRIX_CAP)
        .ok_or_else(|| Error::cap("cochain length", MATRIX_CAP * MATRIX_CAP))
}

/// Lexicographic index of a tuple.
pub fn encode(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * order + x)
}

/// Tuple with the given lexicographic index.
pub fn decode(mut index: usize, order: usize, degree: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = index % order;
        index /= order;
    }
    t
}

/// Whether some adjacent pair of entries is equal.
pub fn is_degenerate(tuple: &[usize]) -> bool {
    tuple.windows(2).any(|w| w[0] == w[1])
}

/// The terms `(index into C^{n−1}, ±1)` of `δf` at an `n`-tuple, with like
/// terms collected.
fn delta_terms(q: &FiniteQuandle, tuple: &[usize]) -> Vec<(usize, i64)> {
    let n = q.size();
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    let mut face = Vec::with_capacity(tuple.len());
    for i in 1..tuple.len() {
        // i is 0-based here; the sign uses the 1-based position i + 1.
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        face.clear();
        face.extend(tuple.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x));
        *acc.entry(encode(&face, n)).or_default() += sign;
        face.clear();
        face.extend(tuple[..i].iter().map(|&x| q.op(x, tuple[i])));
        face.extend(&tuple[i + 1..]);
        *acc.entry(encode(&face, n)).or_default() -= sign;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// `δf`, a cochain of one degree higher.
pub fn coboundary(q: &FiniteQuandle, f: &Cochain) -> Result<Cochain> {
    f.check_quandle(q)?;
    let n = q.size();
    let len = tuple_count(n, f.degree + 1)?;
    let values = (0..len)
        .into_par_iter()
        .map(|i| {
            delta_terms(q, &decode(i, n, f.degree + 1)).into_iter().map(|(c, s)| &f.values[c] * BigInt::from(s)).sum()
        })
        .collect();
    Ok(Cochain { order: n, degree: f.degree + 1, values })
}

pub fn is_cocycle(q: &FiniteQuandle, f: &Cochain) -> Result<bool> {
    Ok(coboundary(q, f)?.is_zero())
}

/// A preimage `g` with `δg = f` in the rack complex, if one exists.
pub fn is_coboundary(q: &FiniteQuandle, f: &Cochain) -> Result<Option<Cochain>> {
    f.check_quandle(q)?;
    if f.degree == 0 {
        return Err(Error::Precondition("degree-0 cochains have no coboundary preimage".into()));
    }
    let m = delta_matrix(q, f.degree - 1, Kind::Rack)?;
    let x = crate::linalg::solve(m.cols.len(), &m.rows, &f.values);
    Ok(x.map(|values| Cochain { order: q.size(), degree: f.degree - 1, values }))
}

/// Basis of `Dⁿ`, the cochains vanishing on tuples with two equal adjacent
/// entries: the indicators of the nondegenerate tuples. Zero for `n < 2`.
pub fn degenerate_subspace(q: &FiniteQuandle, n: usize) -> Result<Vec<Cochain>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let order = q.size();
    (0..tuple_count(order, n)?)
        .map(|i| decode(i, order, n))
        .filter(|t| !is_degenerate(t))
        .map(|t| Cochain::indicator(order, n, &t))
        .collect()
}

/// Which cochain complex to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// All cochains.
    Rack,
    /// The subcomplex of cochains vanishing on degenerate tuples.
    #[serde(rename = "quandle_sub", alias = "sub")]
    Sub,
    /// The quotient of all cochains by that subcomplex.
    #[serde(rename = "quandle_quotient", alias = "quotient")]
    Quotient,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rack" => Ok(Kind::Rack),
            "sub" | "quandle_sub" => Ok(Kind::Sub),
            "quotient" | "quandle_quotient" => Ok(Kind::Quotient),
            _ => Err(Error::Parse(format!("unknown complex kind {s:?}"))),
        }
    }
}

/// Indices of `Xⁿ` that serve as coordinates of the chosen complex.
pub fn coordinates(order: usize, n: usize, kind: Kind) -> Result<Vec<usize>> {
    let all = 0..tuple_count(order, n)?;
    Ok(match kind {
        Kind::Rack => all.collect(),
        _ if n < 2 => all.collect(),
        Kind::Sub => all.filter(|&i| !is_degenerate(&decode(i, order, n))).collect(),
        Kind::Quotient => all.filter(|&i| is_degenerate(&decode(i, order, n))).collect(),
    })
}

/// The matrix of `δⁿ: Cⁿ → Cⁿ⁺¹` in the coordinates of a complex; each row
/// is one `(n+1)`-tuple, columns are renumbered `0..cols.len()`.
pub struct DeltaMatrix {
    pub rows: Vec<SparseRow>,
    /// Full tuple index of each column.
    pub cols: Vec<usize>,
    /// Full tuple index of each row.
    pub row_tuples: Vec<usize>,
}

pub fn delta_matrix(q: &FiniteQuandle, n: usize, kind: Kind) -> Result<DeltaMatrix> {
    let order = q.size();
    let cols = coordinates(order, n, kind)?;
    let row_tuples = coordinates(order, n + 1, kind)?;
    if cols.len() > MATRIX_CAP || row_tuples.len() > MATRIX_CAP {
        return Err(Error::cap("coboundary matrix side", MATRIX_CAP));
    }
    let mut col_of = vec![usize::MAX; tuple_count(order, n)?];
    for (k, &c) in cols.iter().enumerate() {
        col_of[c] = k;
    }
    let rows = row_tuples
        .par_iter()
        .map(|&r| {
            let mut row: SparseRow = delta_terms(q, &decode(r, order, n + 1))
                .into_iter()
                .filter(|&(c, _)| col_of[c] != usize::MAX)
                .map(|(c, s)| (col_of[c], BigRational::from_integer(s.into())))
                .collect();
            row.sort_by_key(|e| e.0);
            row
        })
        .collect();
    Ok(DeltaMatrix { rows, cols, row_tuples })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub degree: usize,
    pub kind: Kind,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    /// Cocycle representatives in reduced echelon form, as cochains on the
    /// full `Xⁿ` (zero outside the complex's coordinates).
    #[serde(skip)]
    pub cocycle_basis: Vec<Cochain>,
}

/// `Hⁿ` of the chosen complex by exact Gauss-Jordan ranks.
pub fn cohomology(q: &FiniteQuandle, n: usize, kind: Kind) -> Result<CohomologyResult> {
    let order = q.size();
    let dn = delta_matrix(q, n, kind)?;
    let ncols = dn.cols.len();
    let rowspace = Rref::from_rows(ncols, dn.rows.iter().cloned());
    let kernel_basis = Rref::from_rows(ncols, rowspace.kernel().iter().map(|v| to_sparse(v)));
    let dim_cocycles = kernel_basis.rank();
    let dim_coboundaries = if n == 0 {
        0
    } else {
        let prev = delta_matrix(q, n - 1, kind)?;
        Rref::from_rows(prev.cols.len(), prev.rows.iter().cloned()).rank()
    };
    let full = tuple_count(order, n)?;
    let cocycle_basis = kernel_basis
        .rows()
        .iter()
        .map(|row| {
            let mut values = vec![BigRational::zero(); full];
            for (c, v) in row {
                values[dn.cols[*c]] = v.clone();
            }
            Cochain { order, degree: n, values }
        })
        .collect();
    Ok(CohomologyResult {
        degree: n,
        kind,
        dim_cochains: ncols,
        dim_cocycles,
        dim_coboundaries,
        betti: dim_cocycles - dim_coboundaries,
        cocycle_basis,
    })
}

/// Dense integer matrix of `δⁿ` in a complex's coordinates.
pub fn delta_matrix_dense(q: &FiniteQuandle, n: usize, kind: Kind) -> Result<Vec<Vec<BigInt>>> {
    let m = delta_matrix(q, n, kind)?;
    let ncols = m.cols.len();
    Ok(m.rows.iter().map(|row| to_dense(row, ncols).into_iter().map(|v| v.to_integer()).collect()).collect())
}

/// `(dim cocycles, dim coboundaries, betti)` by Bareiss elimination, an
/// independent route to the numbers in [`cohomology`].
pub fn betti_bareiss(q: &FiniteQuandle, n: usize, kind: Kind) -> Result<(usize, usize, usize)> {
    let cols = coordinates(q.size(), n, kind)?.len();
    let rank_n = rank_bareiss(&delta_matrix_dense(q, n, kind)?);
    let rank_prev = if n == 0 { 0 } else { rank_bareiss(&delta_matrix_dense(q, n - 1, kind)?) };
    Ok((cols - rank_n, rank_prev, cols - rank_n - rank_prev))
}

/// Consistency report for the comparison map from bounded to ordinary
/// cohomology on a finite quandle, where every cochain is bounded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_bounded_cochains: usize,
    pub kernel_dim: usize,
    pub basis_sup_norms_one: bool,
    pub component_diameters: Vec<usize>,
    pub all_components_bounded: bool,
}

/// Since `C_bⁿ = Cⁿ` for finite `X`, the comparison map is the identity on
/// cohomology and its kernel is `(Bⁿ ∩ Z_bⁿ) / B_bⁿ = 0`. The report computes
/// both spaces rather than assuming it.
pub fn comparison_check(q: &FiniteQuandle, n: usize) -> Result<ComparisonReport> {
    let order = q.size();
    let len = tuple_count(order, n)?;
    let basis: Vec<Cochain> =
        (0..len).map(|i| Cochain::indicator(order, n, &decode(i, order, n))).collect::<Result<_>>()?;
    let bounded: Vec<&Cochain> = basis.iter().filter(|c| c.sup_norm() <= BigRational::one()).collect();
    let basis_sup_norms_one = basis.iter().all(|c| c.sup_norm().is_one());

    let kernel_dim = if n == 0 {
        0
    } else {
        // Coboundaries of all (n−1)-cochains, and of the bounded ones.
        let prev_len = tuple_count(order, n - 1)?;
        let images = |only_bounded: bool| -> Result<Rref> {
            let mut r = Rref::new(len);
            for i in 0..prev_len {
                let g = Cochain::indicator(order, n - 1, &decode(i, order, n - 1))?;
                if only_bounded && g.sup_norm().abs() > BigRational::one() {
                    continue;
                }
                r.insert(to_sparse(&coboundary(q, &g)?.values));
            }
            Ok(r)
        };
        let b = images(false)?;
        let bb = images(true)?;
        // Every coboundary is a cocycle and bounded, so B ∩ Z_b = B.
        b.rank() - bb.rank()
    };
    let diam = component_diameters(q);
    Ok(ComparisonReport {
        degree: n,
        dim_cochains: len,
        dim_bounded_cochains: bounded.len(),
        kernel_dim,
        basis_sup_norms_one,
        all_components_bounded: diam.iter().all(|&d| d < order.max(1)),
        component_diameters: diam,
    })
}

// JSON: {"degree": n, "values": ["a/b", ...]}, with an optional "order".

#[derive(Serialize, Deserialize)]
pub struct CochainFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub degree: usize,
    pub values: Vec<String>,
}

impl From<&Cochain> for CochainFile {
    fn from(c: &Cochain) -> Self {
        CochainFile { order: Some(c.order), degree: c.degree, values: c.values.iter().map(|v| v.to_string()).collect() }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match t.split_once('/') {
        Some((a, b)) => {
            let (a, b): (BigInt, BigInt) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

impl CochainFile {
    /// Builds the cochain for a quandle of the given order.
    pub fn into_cochain(self, order: usize) -> Result<Cochain> {
        if let Some(o) = self.order {
            if o != order {
                return Err(Error::Mismatch(format!("cochain order {o}, quandle order {order}")));
            }
        }
        let values = self.values.iter().map(|v| parse_rational(v)).collect::<Result<_>>()?;
        Cochain::new(order, self.degree, values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::small_fixtures;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Direct evaluation of the defining sum, independent of `delta_terms`.
    fn delta_direct(x: &FiniteQuandle, f: &Cochain, t: &[usize]) -> BigRational {
        let mut s = q(0);
        for i in 2..=t.len() {
            let sign = if i % 2 == 0 { q(1) } else { q(-1) };
            let mut a = t.to_vec();
            a.remove(i - 1);
            let mut b: Vec<usize> = (0..i - 1).map(|k| x.op(t[k], t[i - 1])).collect();
            b.extend_from_slice(&t[i..]);
            s += sign * (f.at(&a) - f.at(&b));
        }
        s
    }

    #[test]
    fn tuple_indexing_round_trips() {
        for i in 0..27 {
            assert_eq!(encode(&decode(i, 3, 3), 3), i);
        }
        assert_eq!(decode(5, 3, 2), vec![1, 2]);
    }

    #[test]
    fn degree_one_formula() {
        let r3 = FiniteQuandle::dihedral(3);
        let f = Cochain::indicator(3, 1, &[0]).unwrap();
        let d = coboundary(&r3, &f).unwrap();
        for x1 in 0..3 {
            for x2 in 0..3 {
                let expect = f.at(&[x1]) - f.at(&[r3.op(x1, x2)]);
                assert_eq!(d.at(&[x1, x2]), &expect);
                assert_eq!(d.at(&[x1, x2]), &delta_direct(&r3, &f, &[x1, x2]));
            }
        }
        // δ⁰ = 0.
        let c0 = Cochain::new(3, 0, vec![q(5)]).unwrap();
        assert!(coboundary(&r3, &c0).unwrap().is_zero());
    }

    #[test]
    fn coboundary_matches_direct_sum() {
        let r4 = FiniteQuandle::dihedral(4);
        let f = Cochain::from_fn(4, 2, |t| q((t[0] * 7 + t[1] * 3) as i64 % 5 - 2)).unwrap();
        let d = coboundary(&r4, &f).unwrap();
        for i in 0..64 {
            let t = decode(i, 4, 3);
            assert_eq!(d.values()[i], delta_direct(&r4, &f, &t));
        }
    }

    #[test]
    fn delta_squared_vanishes() {
        for (name, x) in small_fixtures() {
            for n in 0..=2 {
                for i in 0..x.size().pow(n as u32) {
                    let f = Cochain::indicator(x.size(), n, &decode(i, x.size(), n)).unwrap();
                    let dd = coboundary(&x, &coboundary(&x, &f).unwrap()).unwrap();
                    assert!(dd.is_zero(), "{name} degree {n}");
                }
            }
        }
    }

    #[test]
    fn trivial_quandle_betti() {
        for m in 1..=3 {
            let t = FiniteQuandle::trivial(m);
            for n in 0..=3 {
                let r = cohomology(&t, n, Kind::Rack).unwrap();
                assert_eq!(r.betti, m.pow(n as u32));
            }
        }
    }

    #[test]
    fn two_rank_routes_agree() {
        for (name, x) in small_fixtures() {
            for kind in [Kind::Rack, Kind::Sub, Kind::Quotient] {
                for n in 0..=2 {
                    let r = cohomology(&x, n, kind).unwrap();
                    let b = betti_bareiss(&x, n, kind).unwrap();
                    assert_eq!((r.dim_cocycles, r.dim_coboundaries, r.betti), b, "{name} {kind:?} {n}");
                }
            }
        }
    }

    #[test]
    fn cocycle_basis_is_closed() {
        let r3 = FiniteQuandle::dihedral(3);
        for kind in [Kind::Rack, Kind::Sub] {
            let r = cohomology(&r3, 2, kind).unwrap();
            assert_eq!(r.cocycle_basis.len(), r.dim_cocycles);
            for f in &r.cocycle_basis {
                assert!(is_cocycle(&r3, f).unwrap());
            }
        }
    }

    #[test]
    fn degenerate_subspace_dimensions() {
        assert_eq!(degenerate_subspace(&FiniteQuandle::dihedral(3), 2).unwrap().len(), 6);
        assert_eq!(degenerate_subspace(&FiniteQuandle::trivial(2), 3).unwrap().len(), 2);
        assert!(degenerate_subspace(&FiniteQuandle::trivial(2), 1).unwrap().is_empty());
        // δ(D²) ⊆ D³ on R₃.
        let r3 = FiniteQuandle::dihedral(3);
        for f in degenerate_subspace(&r3, 2).unwrap() {
            let d = coboundary(&r3, &f).unwrap();
            for i in 0..27 {
                let t = decode(i, 3, 3);
                if is_degenerate(&t) {
                    assert!(d.values()[i].is_zero());
                }
            }
        }
    }

    #[test]
    fn coboundary_preimages() {
        let r3 = FiniteQuandle::dihedral(3);
        let g = Cochain::from_fn(3, 1, |t| q(t[0] as i64 * 2 - 1)).unwrap();
        let f = coboundary(&r3, &g).unwrap();
        let pre = is_coboundary(&r3, &f).unwrap().unwrap();
        assert_eq!(coboundary(&r3, &pre).unwrap(), f);
        // A constant 2-cochain is a cocycle but not a coboundary on R₃.
        let c = Cochain::from_fn(3, 2, |_| q(1)).unwrap();
        assert!(is_cocycle(&r3, &c).unwrap());
        assert!(is_coboundary(&r3, &c).unwrap().is_none());
        let bad = Cochain::indicator(3, 2, &[0, 1]).unwrap();
        assert!(!is_cocycle(&r3, &bad).unwrap());
    }

    #[test]
    fn comparison_report() {
        let r = comparison_check(&FiniteQuandle::dihedral(3), 2).unwrap();
        assert_eq!(r.kernel_dim, 0);
        assert!(r.basis_sup_norms_one);
        assert_eq!(r.component_diameters, vec![1]);
        let t = comparison_check(&FiniteQuandle::trivial(4), 2).unwrap();
        assert_eq!(t.component_diameters, vec![0, 0, 0, 0]);
    }

    #[test]
    fn cochain_json() {
        let c = Cochain::new(2, 1, vec![BigRational::new(1.into(), 2.into()), q(-3)]).unwrap();
        let s = serde_json::to_string(&CochainFile::from(&c)).unwrap();
        assert_eq!(s, r#"{"order":2,"degree":1,"values":["1/2","-3"]}"#);
        let back: CochainFile = serde_json::from_str(r#"{"degree":1,"values":["1/2","-3/1"]}"#).unwrap();
        assert_eq!(back.into_cochain(2).unwrap(), c);
        assert!(parse_rational("1/0").is_err());
    }
}
