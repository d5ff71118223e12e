//! Finite quandles as operation tables.
//!
//! Elements are `0..n` and `table[x][y] = x ∗ y`. The three axioms are
//!
//! 1. `x ∗ x = x`,
//! 2. every right translation `x ↦ x ∗ y` is a bijection,
//! 3. `(x ∗ y) ∗ z = (x ∗ z) ∗ (y ∗ z)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupOps};
use crate::perm::{Perm, PermGroup};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<usize>,
    dual: Vec<usize>,
}

impl std::fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteQuandle").field("size", &self.size).field("table", &self.table()).finish()
    }
}

/// Which quandle axiom a witness violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Idempotency = 1,
    RightInvertibility = 2,
    SelfDistributivity = 3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Violation>,
}

/// Checks the quandle axioms on a raw table.
///
/// Axioms are checked in order; the reported witness is the
/// lexicographically least violating tuple for the first failing axiom:
/// `(x)` for idempotency, `(x, x', y)` with `x < x'` and `x ∗ y = x' ∗ y`
/// for right invertibility, and `(x, y, z)` for self-distributivity.
pub fn verify_quandle(table: &[Vec<usize>]) -> Result<AxiomReport> {
    let n = check_shape(table)?;
    let t = |x: usize, y: usize| table[x][y];
    let fail = |axiom, witness| Ok(AxiomReport { valid: false, first_violation: Some(Violation { axiom, witness }) });
    if let Some(x) = (0..n).find(|&x| t(x, x) != x) {
        return fail(Axiom::Idempotency, vec![x]);
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for y in 0..n {
        let mut first = vec![usize::MAX; n];
        for x in 0..n {
            let v = t(x, y);
            if first[v] != usize::MAX {
                let w = (first[v], x, y);
                if best.is_none_or(|b| w < b) {
                    best = Some(w);
                }
                break;
            }
            first[v] = x;
        }
    }
    if let Some((a, b, y)) = best {
        return fail(Axiom::RightInvertibility, vec![a, b, y]);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t(t(x, y), z) != t(t(x, z), t(y, z)) {
                    return fail(Axiom::SelfDistributivity, vec![x, y, z]);
                }
            }
        }
    }
    Ok(AxiomReport { valid: true, first_violation: None })
}

fn check_shape(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("empty table".into()));
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!("row {x} has length {} (expected {n})", row.len())));
        }
        if let Some((y, v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(Error::MalformedTable(format!("entry [{x}][{y}] = {v} out of range")));
        }
    }
    Ok(n)
}

impl FiniteQuandle {
    /// Validates `table` and builds the quandle.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let report = verify_quandle(&table)?;
        if let Some(v) = report.first_violation {
            return Err(Error::NotAQuandle { axiom: v.axiom as u8, witness: v.witness });
        }
        let n = table.len();
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mut dual = vec![0; n * n];
        for y in 0..n {
            for x in 0..n {
                // z ∗ y = x  ⇔  z = x ∗⁻¹ y
                dual[flat[x * n + y] * n + y] = x;
            }
        }
        Ok(FiniteQuandle { size: n, table: flat, dual })
    }

    pub fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::new((0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// The dual operation: the unique `z` with `z ∗ y = x`.
    #[inline]
    pub fn dual(&self, x: usize, y: usize) -> usize {
        self.dual[x * self.size + y]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// The symmetry `S_x : y ↦ y ∗ x`.
    pub fn symmetry(&self, x: usize) -> Perm {
        Perm::from_images((0..self.size).map(|y| self.op(y, x)).collect()).expect("axiom 2")
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.op(x, y) == x))
    }

    // Standard families.

    /// The trivial quandle `T_n` with `x ∗ y = x`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |x, _| x).expect("trivial quandle")
    }

    /// The dihedral quandle `R_n` with `x ∗ y = 2y − x mod n`.
    pub fn dihedral(n: usize) -> Self {
        Self::from_fn(n, |x, y| (2 * y + n - x) % n).expect("dihedral quandle")
    }

    /// The Alexander quandle on `Z/n` with `x ∗ y = t·x + (1 − t)·y`.
    /// Requires `t` to be a unit mod `n`.
    pub fn alexander(n: usize, t: usize) -> Result<Self> {
        if num_integer::gcd(t % n, n) != 1 {
            return Err(Error::Precondition(format!("{t} is not a unit mod {n}")));
        }
        let s = (1 + n - t % n) % n;
        Self::from_fn(n, |x, y| (t * x + s * y) % n)
    }

    /// Disjoint union with `x ∗ y = x` across the two parts.
    pub fn disjoint_union(&self, other: &FiniteQuandle) -> Self {
        let n = self.size;
        Self::from_fn(n + other.size, |x, y| match (x < n, y < n) {
            (true, true) => self.op(x, y),
            (false, false) => other.op(x - n, y - n) + n,
            _ => x,
        })
        .expect("disjoint union of quandles")
    }

    /// Product quandle with componentwise operation; `(a, b) ↦ a·|other| + b`.
    pub fn product(&self, other: &FiniteQuandle) -> Self {
        let m = other.size;
        Self::from_fn(self.size * m, |x, y| self.op(x / m, y / m) * m + other.op(x % m, y % m))
            .expect("product of quandles")
    }

    /// The isomorphic copy obtained by renaming `x` to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let p = Perm::from_images(perm.to_vec())?;
        if p.degree() != self.size {
            return Err(Error::Mismatch("relabelling degree".into()));
        }
        let inv = p.inverse();
        Self::from_fn(self.size, |x, y| p.apply(self.op(inv.apply(x), inv.apply(y))))
    }
}

/// `x ∗⁻¹ y`, the unique `z` with `z ∗ y = x`.
pub fn dual_op(q: &FiniteQuandle, x: usize, y: usize) -> usize {
    q.dual(x, y)
}

/// The inner automorphism group generated by the symmetries `S_x`.
pub fn inner_group(q: &FiniteQuandle, cap: usize) -> Result<PermGroup> {
    let gens = (0..q.size()).map(|x| q.symmetry(x)).collect();
    PermGroup::generate(q.size(), gens, cap)
}

/// Orbits of the inner automorphism group, each sorted, ordered by least
/// element.
pub fn components(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.size();
    let mut label = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start];
        label[start] = id;
        let mut i = 0;
        while i < orbit.len() {
            let y = orbit[i];
            i += 1;
            for x in 0..n {
                for z in [q.op(y, x), q.dual(y, x)] {
                    if label[z] == usize::MAX {
                        label[z] = id;
                        orbit.push(z);
                    }
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// Quandle distance from `source`: least `k` with
/// `y = (((source ∗^{±1} x₁) ∗^{±1} x₂) ⋯) ∗^{±1} x_k`.
/// Entries outside the component of `source` are `None`.
pub fn distances_from(q: &FiniteQuandle, source: usize) -> Vec<Option<usize>> {
    let n = q.size();
    let mut dist = vec![None; n];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(y) = queue.pop_front() {
        let d = dist[y].unwrap();
        for x in 0..n {
            for z in [q.op(y, x), q.dual(y, x)] {
                if dist[z].is_none() {
                    dist[z] = Some(d + 1);
                    queue.push_back(z);
                }
            }
        }
    }
    dist
}

/// Quandle distance between two elements of one component.
pub fn finite_distance(q: &FiniteQuandle, x: usize, y: usize) -> Result<usize> {
    distances_from(q, x)[y].ok_or_else(|| Error::Precondition(format!("{x} and {y} lie in different components")))
}

/// The diameter of every component with respect to the quandle metric,
/// in the order returned by [`components`].
pub fn component_diameters(q: &FiniteQuandle) -> Vec<usize> {
    components(q)
        .iter()
        .map(|comp| {
            comp.iter().map(|&x| distances_from(q, x).into_iter().flatten().max().unwrap_or(0)).max().unwrap_or(0)
        })
        .collect()
}

/// The conjugation quandle `x ∗ y = y x y⁻¹` on a subset of a group.
///
/// Returns the quandle together with the group element labelling each
/// quandle element (ascending). The subset must be closed under conjugation
/// by its own elements; the whole group is used when `subset` is `None`.
pub fn conj_quandle(g: &FiniteGroup, subset: Option<&[usize]>) -> Result<(FiniteQuandle, Vec<usize>)> {
    let elems: Vec<usize> = match subset {
        Some(s) => s.iter().copied().collect::<BTreeSet<_>>().into_iter().collect(),
        None => (0..g.order()).collect(),
    };
    if elems.is_empty() {
        return Err(Error::Precondition("empty subset".into()));
    }
    if let Some(&bad) = elems.iter().find(|&&e| e >= g.order()) {
        return Err(Error::Precondition(format!("element {bad} not in the group")));
    }
    let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut table = vec![vec![0; elems.len()]; elems.len()];
    for (i, &x) in elems.iter().enumerate() {
        for (j, &y) in elems.iter().enumerate() {
            let c = g.mul(g.mul(y, x), g.inv(y));
            table[i][j] =
                *pos.get(&c).ok_or_else(|| Error::NotClosed(format!("{y}·{x}·{y}⁻¹ = {c} leaves the subset")))?;
        }
    }
    Ok((FiniteQuandle::new(table)?, elems))
}

/// One summand `(G/H, z)` of a coset quandle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetPart {
    pub z: usize,
    pub subgroup: Vec<usize>,
}

/// Data for the quandle `⊔ᵢ (G/Hᵢ, zᵢ)` with
/// `Hᵢx ∗ Hⱼy = Hᵢ zᵢ x y⁻¹ zⱼ⁻¹ y` on right cosets.
#[derive(Clone, Debug)]
pub struct CosetQuandleSpec<G> {
    pub group: G,
    pub parts: Vec<CosetPart>,
}

impl<G: GroupOps> CosetQuandleSpec<G> {
    /// Eagerly checks that each `Hᵢ` is a subgroup centralizing `zᵢ`.
    pub fn validate(&self) -> Result<()> {
        if self.parts.is_empty() {
            return Err(Error::Precondition("coset quandle needs at least one part".into()));
        }
        for part in &self.parts {
            if part.z >= self.group.order() {
                return Err(Error::Precondition(format!("z = {} not in the group", part.z)));
            }
            self.group.check_subgroup(&part.subgroup)?;
            if part.subgroup.iter().any(|&h| !self.group.commutes(h, part.z)) {
                return Err(Error::NotInCentralizer { z: part.z });
            }
        }
        Ok(())
    }
}

/// A coset quandle with the coset behind each element.
#[derive(Clone, Debug)]
pub struct CosetQuandle {
    pub quandle: FiniteQuandle,
    /// `(part, least group element of the coset)` for each quandle element.
    pub cosets: Vec<(usize, usize)>,
    /// `coset_of[i][g]` is the quandle element `Hᵢ g`.
    pub coset_of: Vec<Vec<usize>>,
}

pub fn coset_quandle<G: GroupOps>(spec: &CosetQuandleSpec<G>) -> Result<CosetQuandle> {
    spec.validate()?;
    let g = &spec.group;
    let order = g.order();
    let mut cosets = Vec::new();
    let mut coset_of = Vec::with_capacity(spec.parts.len());
    for (i, part) in spec.parts.iter().enumerate() {
        let mut of = vec![usize::MAX; order];
        for x in 0..order {
            if of[x] != usize::MAX {
                continue;
            }
            // x is the least element of its coset since lower ones are assigned.
            let idx = cosets.len();
            cosets.push((i, x));
            for &h in &part.subgroup {
                of[g.mul(h, x)] = idx;
            }
        }
        coset_of.push(of);
    }
    let n = cosets.len();
    let mut table = vec![vec![0; n]; n];
    for (a, &(i, x)) in cosets.iter().enumerate() {
        let zx = g.mul(spec.parts[i].z, x);
        for (b, &(j, y)) in cosets.iter().enumerate() {
            let yi = g.inv(y);
            let zj = g.inv(spec.parts[j].z);
            let rep = g.mul(g.mul(g.mul(zx, yi), zj), y);
            table[a][b] = coset_of[i][rep];
        }
    }
    Ok(CosetQuandle { quandle: FiniteQuandle::new(table)?, cosets, coset_of })
}

/// A quandle written as a coset quandle over its inner automorphism group.
#[derive(Clone, Debug)]
pub struct CosetDecomposition {
    pub spec: CosetQuandleSpec<PermGroup>,
    /// One representative `xᵢ` per component, in component order.
    pub representatives: Vec<usize>,
    pub coset: CosetQuandle,
    /// `iso[c]` is the element of the original quandle matched with coset `c`.
    pub iso: Vec<usize>,
}

/// Writes `q` as `⊔ᵢ (Inn(q)/Stab(xᵢ), S_{xᵢ})` with one representative per
/// component, and verifies the map `Hᵢg ↦ g⁻¹(xᵢ)` is an isomorphism.
pub fn coset_decomposition(q: &FiniteQuandle, cap: usize) -> Result<CosetDecomposition> {
    let inn = inner_group(q, cap)?;
    let representatives: Vec<usize> = components(q).iter().map(|c| c[0]).collect();
    let parts = representatives
        .iter()
        .map(|&x| CosetPart {
            z: inn.index_of(&q.symmetry(x)).expect("generator is an element"),
            subgroup: inn.stabilizer(x),
        })
        .collect();
    let spec = CosetQuandleSpec { group: inn, parts };
    let coset = coset_quandle(&spec)?;
    let iso: Vec<usize> =
        coset.cosets.iter().map(|&(i, g)| spec.group.element(g).inverse().apply(representatives[i])).collect();
    if !is_isomorphism(&coset.quandle, q, &iso) {
        return Err(Error::Precondition("coset decomposition map is not an isomorphism".into()));
    }
    Ok(CosetDecomposition { spec, representatives, coset, iso })
}

/// Whether `map` (indexed by elements of `a`) is a quandle homomorphism `a → b`.
pub fn is_homomorphism(a: &FiniteQuandle, b: &FiniteQuandle, map: &[usize]) -> bool {
    map.len() == a.size()
        && map.iter().all(|&v| v < b.size())
        && (0..a.size()).all(|x| (0..a.size()).all(|y| map[a.op(x, y)] == b.op(map[x], map[y])))
}

pub fn is_isomorphism(a: &FiniteQuandle, b: &FiniteQuandle, map: &[usize]) -> bool {
    a.size() == b.size() && Perm::from_images(map.to_vec()).is_ok() && is_homomorphism(a, b, map)
}

/// Finds an isomorphism `a → b` by backtracking. Candidate images must lie
/// in a component of the same size and have a symmetry with the same
/// number of fixed points; every assignment is closed under the operation
/// before branching further.
pub fn find_isomorphism(a: &FiniteQuandle, b: &FiniteQuandle) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let profile = |q: &FiniteQuandle| -> Vec<(usize, usize)> {
        let comps = components(q);
        let mut size_of = vec![0; q.size()];
        for c in &comps {
            for &x in c {
                size_of[x] = c.len();
            }
        }
        (0..q.size()).map(|x| (size_of[x], (0..q.size()).filter(|&y| q.op(y, x) == y).count())).collect()
    };
    let pa = profile(a);
    let pb = profile(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    // Extends `map`/`used` with x ↦ y plus everything it forces.
    fn assign(a: &FiniteQuandle, b: &FiniteQuandle, map: &mut [usize], used: &mut [bool], x: usize, y: usize) -> bool {
        let n = a.size();
        let mut stack = vec![(x, y)];
        while let Some((x, y)) = stack.pop() {
            if map[x] != usize::MAX {
                if map[x] != y {
                    return false;
                }
                continue;
            }
            if used[y] {
                return false;
            }
            map[x] = y;
            used[y] = true;
            for u in 0..n {
                if map[u] == usize::MAX {
                    continue;
                }
                stack.push((a.op(x, u), b.op(y, map[u])));
                stack.push((a.op(u, x), b.op(map[u], y)));
                stack.push((a.dual(x, u), b.dual(y, map[u])));
                stack.push((a.dual(u, x), b.dual(map[u], y)));
            }
        }
        true
    }

    fn search(
        a: &FiniteQuandle,
        b: &FiniteQuandle,
        pa: &[(usize, usize)],
        pb: &[(usize, usize)],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some(x) = map.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        for y in 0..b.size() {
            if used[y] || pa[x] != pb[y] {
                continue;
            }
            let (saved_map, saved_used) = (map.clone(), used.clone());
            if assign(a, b, map, used, x, y) && search(a, b, pa, pb, map, used) {
                return true;
            }
            *map = saved_map;
            *used = saved_used;
        }
        false
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(a, b, &pa, &pb, &mut map, &mut used) && is_isomorphism(a, b, &map) {
        Some(map)
    } else {
        None
    }
}

/// Largest quandle accepted from a file.
pub const MAX_FILE_ORDER: usize = 64;

/// JSON form of a quandle table: `{"size": n, "table": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuandleFile {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl QuandleFile {
    pub fn into_quandle(self) -> Result<FiniteQuandle> {
        self.check_size()?;
        FiniteQuandle::new(self.table)
    }

    pub fn check_size(&self) -> Result<()> {
        if self.size > MAX_FILE_ORDER {
            return Err(Error::cap("quandle file order", MAX_FILE_ORDER));
        }
        if self.table.len() != self.size {
            return Err(Error::MalformedTable(format!(
                "declared size {} but table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        Ok(())
    }
}

impl From<&FiniteQuandle> for QuandleFile {
    fn from(q: &FiniteQuandle) -> Self {
        QuandleFile { size: q.size(), table: q.table() }
    }
}

impl Serialize for FiniteQuandle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuandleFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteQuandle {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        QuandleFile::deserialize(d)?.into_quandle().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::DEFAULT_ELEMENT_CAP;

    fn transpositions_of_s3() -> (FiniteQuandle, Vec<usize>) {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let transpositions: Vec<usize> = perms
            .iter()
            .enumerate()
            .filter(|(_, p)| (0..3).filter(|&i| p.apply(i) != i).count() == 2)
            .map(|(i, _)| i)
            .collect();
        conj_quandle(&s3, Some(&transpositions)).unwrap()
    }

    #[test]
    fn verify_trivial_and_dihedral() {
        let t3 = FiniteQuandle::trivial(3).table();
        assert!(verify_quandle(&t3).unwrap().valid);
        let r3: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (2 * y + 3 - x) % 3).collect()).collect();
        assert!(verify_quandle(&r3).unwrap().valid);
    }

    #[test]
    fn verify_reports_idempotency_witness() {
        let mut t = FiniteQuandle::trivial(3).table();
        t[0][0] = 1;
        let r = verify_quandle(&t).unwrap();
        assert!(!r.valid);
        assert_eq!(r.first_violation, Some(Violation { axiom: Axiom::Idempotency, witness: vec![0] }));
    }

    #[test]
    fn verify_reports_least_bijectivity_witness() {
        // x ∗ y = y except on the diagonal: column y is constant off x = y.
        let t: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| if x == y { x } else { y }).collect()).collect();
        let r = verify_quandle(&t).unwrap();
        let v = r.first_violation.unwrap();
        assert_eq!(v.axiom, Axiom::RightInvertibility);
        // column 0: 0∗0 = 0 and 1∗0 = 0
        assert_eq!(v.witness, vec![0, 1, 0]);
    }

    #[test]
    fn verify_reports_distributivity_witness() {
        // S₀ = (1 2), S₁ = (0 2), S₂ = id: columns bijective, idempotent,
        // but S₀S₁ ≠ S₂S₀.
        let t = vec![vec![0, 2, 0], vec![2, 1, 1], vec![1, 0, 2]];
        let r = verify_quandle(&t).unwrap();
        assert_eq!(r.first_violation.unwrap().axiom, Axiom::SelfDistributivity);
    }

    #[test]
    fn verify_rejects_malformed() {
        assert!(matches!(verify_quandle(&[vec![0, 2], vec![1, 1]]), Err(Error::MalformedTable(_))));
        assert!(matches!(verify_quandle(&[vec![0], vec![1, 1]]), Err(Error::MalformedTable(_))));
        assert!(verify_quandle(&[]).is_err());
    }

    #[test]
    fn dual_operation() {
        let t = FiniteQuandle::trivial(4);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(dual_op(&t, x, y), x);
            }
        }
        let r3 = FiniteQuandle::dihedral(3);
        assert_eq!(dual_op(&r3, 0, 1), 2);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(dual_op(&r3, r3.op(x, y), y), x);
                assert_eq!(r3.op(dual_op(&r3, x, y), y), x);
            }
        }
    }

    #[test]
    fn inner_groups_of_small_quandles() {
        assert_eq!(inner_group(&FiniteQuandle::trivial(3), DEFAULT_ELEMENT_CAP).unwrap().order(), 1);
        let inn = inner_group(&FiniteQuandle::dihedral(3), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(inn.order(), 6);
        let (conj, _) = transpositions_of_s3();
        assert_eq!(inner_group(&conj, DEFAULT_ELEMENT_CAP).unwrap().order(), 6);
    }

    #[test]
    fn inner_automorphisms_preserve_the_operation() {
        let q = FiniteQuandle::alexander(5, 2).unwrap();
        let inn = inner_group(&q, DEFAULT_ELEMENT_CAP).unwrap();
        for g in inn.elements() {
            for x in 0..5 {
                for y in 0..5 {
                    assert_eq!(g.apply(q.op(x, y)), q.op(g.apply(x), g.apply(y)));
                }
            }
        }
        for x in 0..5 {
            assert_eq!(q.symmetry(x).apply(x), x);
        }
    }

    #[test]
    fn components_of_small_quandles() {
        assert_eq!(components(&FiniteQuandle::trivial(3)), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(components(&FiniteQuandle::dihedral(3)), vec![vec![0, 1, 2]]);
        let u = FiniteQuandle::dihedral(3).disjoint_union(&FiniteQuandle::trivial(1));
        assert_eq!(components(&u), vec![vec![0, 1, 2], vec![3]]);
        // R₄ splits into evens and odds.
        assert_eq!(components(&FiniteQuandle::dihedral(4)), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn conjugation_quandles() {
        let z4 = FiniteGroup::cyclic(4);
        let (q, labels) = conj_quandle(&z4, None).unwrap();
        assert_eq!(q, FiniteQuandle::trivial(4));
        assert_eq!(labels, vec![0, 1, 2, 3]);

        let (t, _) = transpositions_of_s3();
        assert_eq!(components(&t).len(), 1);
        assert!(find_isomorphism(&t, &FiniteQuandle::dihedral(3)).is_some());

        let (s3, _) = FiniteGroup::symmetric(3);
        assert!(matches!(conj_quandle(&s3, Some(&[1, 2])), Err(Error::NotClosed(_))));
        let (whole, _) = conj_quandle(&s3, None).unwrap();
        // Conj(S₃): identity, transpositions, 3-cycles.
        assert_eq!(components(&whole).len(), 3);
    }

    #[test]
    fn coset_quandle_examples() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let swap01 = perms.iter().position(|p| p.images() == vec![1, 0, 2]).unwrap();
        let spec =
            CosetQuandleSpec { group: s3.clone(), parts: vec![CosetPart { z: swap01, subgroup: vec![0, swap01] }] };
        let cq = coset_quandle(&spec).unwrap();
        assert_eq!(cq.quandle.size(), 3);
        let (t, _) = transpositions_of_s3();
        assert!(find_isomorphism(&cq.quandle, &t).is_some());

        let whole = CosetQuandleSpec { group: s3.clone(), parts: vec![CosetPart { z: 0, subgroup: (0..6).collect() }] };
        assert_eq!(coset_quandle(&whole).unwrap().quandle.size(), 1);

        let z3 = CosetQuandleSpec { group: FiniteGroup::cyclic(3), parts: vec![CosetPart { z: 1, subgroup: vec![0] }] };
        assert_eq!(coset_quandle(&z3).unwrap().quandle, FiniteQuandle::trivial(3));
    }

    #[test]
    fn coset_quandle_rejects_bad_specs() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let swap01 = perms.iter().position(|p| p.images() == vec![1, 0, 2]).unwrap();
        let swap12 = perms.iter().position(|p| p.images() == vec![0, 2, 1]).unwrap();
        let not_central =
            CosetQuandleSpec { group: s3.clone(), parts: vec![CosetPart { z: swap01, subgroup: vec![0, swap12] }] };
        assert_eq!(coset_quandle(&not_central).unwrap_err(), Error::NotInCentralizer { z: swap01 });
        let not_subgroup = CosetQuandleSpec { group: s3, parts: vec![CosetPart { z: 0, subgroup: vec![swap01] }] };
        assert!(matches!(coset_quandle(&not_subgroup), Err(Error::NotASubgroup(_))));
    }

    #[test]
    fn coset_operation_is_independent_of_representatives() {
        let (s3, perms) = FiniteGroup::symmetric(3);
        let swap01 = perms.iter().position(|p| p.images() == vec![1, 0, 2]).unwrap();
        let spec = CosetQuandleSpec {
            group: s3.clone(),
            parts: vec![CosetPart { z: swap01, subgroup: vec![0, swap01] }, CosetPart { z: 0, subgroup: vec![0] }],
        };
        let cq = coset_quandle(&spec).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    let z = |k: usize| spec.parts[k].z;
                    let rep = s3.mul(s3.mul(s3.mul(s3.mul(z(i), x), s3.inv(y)), s3.inv(z(j))), y);
                    assert_eq!(cq.quandle.op(cq.coset_of[i][x], cq.coset_of[j][y]), cq.coset_of[i][rep]);
                }
            }
        }
    }

    #[test]
    fn decompositions_are_isomorphisms() {
        let t1 = coset_decomposition(&FiniteQuandle::trivial(1), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(t1.spec.group.order(), 1);
        assert_eq!(t1.iso, vec![0]);

        let r3 = coset_decomposition(&FiniteQuandle::dihedral(3), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(r3.spec.parts.len(), 1);
        assert_eq!(r3.spec.group.order(), 6);
        assert_eq!(r3.spec.parts[0].subgroup.len(), 2);

        let u = FiniteQuandle::dihedral(3).disjoint_union(&FiniteQuandle::trivial(1));
        let d = coset_decomposition(&u, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(d.spec.parts.len(), 2);
        assert!(is_isomorphism(&d.coset.quandle, &u, &d.iso));
    }

    #[test]
    fn distances_and_diameters() {
        let r3 = FiniteQuandle::dihedral(3);
        assert_eq!(finite_distance(&r3, 0, 0).unwrap(), 0);
        assert_eq!(finite_distance(&r3, 0, 1).unwrap(), 1);
        assert_eq!(component_diameters(&r3), vec![1]);
        assert_eq!(component_diameters(&FiniteQuandle::trivial(4)), vec![0; 4]);
        let u = r3.disjoint_union(&FiniteQuandle::trivial(1));
        assert!(finite_distance(&u, 0, 3).is_err());
    }

    #[test]
    fn isomorphism_search_respects_structure() {
        let r3 = FiniteQuandle::dihedral(3);
        assert!(find_isomorphism(&r3, &FiniteQuandle::trivial(3)).is_none());
        let q = FiniteQuandle::alexander(5, 2).unwrap().disjoint_union(&r3);
        let p = q.relabel(&[7, 3, 0, 5, 1, 6, 2, 4]).unwrap();
        let iso = find_isomorphism(&q, &p).unwrap();
        assert!(is_isomorphism(&q, &p, &iso));
    }

    #[test]
    fn json_round_trip() {
        let r3 = FiniteQuandle::dihedral(3);
        let s = serde_json::to_string(&r3).unwrap();
        assert_eq!(s, r#"{"size":3,"table":[[0,2,1],[2,1,0],[1,0,2]]}"#);
        let back: FiniteQuandle = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r3);
        assert!(serde_json::from_str::<FiniteQuandle>(r#"{"size":2,"table":[[1,0],[0,1]]}"#).is_err());
    }
}
