//! Finite groups given by multiplication tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Group operations on elements indexed `0..order`.
pub trait GroupOps {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Checks that `set` is a subgroup: non-empty, contains the identity and
    /// is closed under products (finite, so inverses follow).
    fn check_subgroup(&self, set: &[usize]) -> Result<()> {
        let n = self.order();
        let mut member = vec![false; n];
        for &h in set {
            if h >= n {
                return Err(Error::NotASubgroup(format!("element {h} out of range")));
            }
            member[h] = true;
        }
        if !member[self.identity()] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in set {
            for &b in set {
                if !member[self.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("{a}·{b} not in the set")));
                }
            }
        }
        Ok(())
    }
}

/// A finite group stored as a dense multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table `mul[a][b] = a·b`.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty group table".into()));
        }
        if mul.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable("group table is not square".into()));
        }
        if mul.iter().flatten().any(|&v| v >= n) {
            return Err(Error::MalformedTable("group table entry out of range".into()));
        }
        let flat: Vec<usize> = mul.into_iter().flatten().collect();
        let at = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or_else(|| Error::NotAGroup(format!("{a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(at(a, b), c) != at(a, at(b, c)) {
                        return Err(Error::NotAGroup(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { size: n, mul: flat, identity, inverse })
    }

    /// Tabulates any group implementing [`GroupOps`].
    pub fn from_ops<G: GroupOps>(g: &G) -> Self {
        let n = g.order();
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(g.mul(a, b));
            }
        }
        FiniteGroup { size: n, mul, identity: g.identity(), inverse: (0..n).map(|a| g.inv(a)).collect() }
    }

    /// The cyclic group `Z/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        FiniteGroup { size: n, mul, identity: 0, inverse: (0..n).map(|a| (n - a) % n).collect() }
    }

    /// The symmetric group on `degree` letters, elements listed in
    /// lexicographic order of their image lists (index 0 is the identity).
    /// Multiplication is composition: `(a·b)(i) = a(b(i))`.
    pub fn symmetric(degree: usize) -> (Self, Vec<Perm>) {
        let perms = all_permutations(degree);
        let index: std::collections::HashMap<&Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = perms.len();
        let mut mul = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                mul.push(index[&a.compose(b)]);
            }
        }
        let inverse = perms.iter().map(|p| index[&p.inverse()]).collect();
        (FiniteGroup { size: n, mul, identity: 0, inverse }, perms)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.commutes(a, b)))
    }
}

impl GroupOps for FiniteGroup {
    fn order(&self) -> usize {
        self.size
    }

    fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// JSON form of a group table: `{"size": n, "mul": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub size: usize,
    pub mul: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.mul.len() != self.size {
            return Err(Error::MalformedTable(format!(
                "declared size {} but table has {} rows",
                self.size,
                self.mul.len()
            )));
        }
        FiniteGroup::from_table(self.mul)
    }
}

impl From<&FiniteGroup> for GroupFile {
    fn from(g: &FiniteGroup) -> Self {
        GroupFile { size: g.size, mul: g.table() }
    }
}

fn all_permutations(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(Perm::from_images(prefix.clone()).expect("bijective"));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
