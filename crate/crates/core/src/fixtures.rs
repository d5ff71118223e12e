//! Named small quandles and a seeded generator of random valid tables.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::{FiniteGroup, GroupOps};
use crate::quandle::{conj_quandle, FiniteQuandle};

/// Conjugacy classes of a finite group, each sorted, ordered by least element.
pub fn conjugacy_classes<G: GroupOps>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|y| g.mul(g.mul(y, x), g.inv(y))).collect();
        class.sort_unstable();
        class.dedup();
        for &c in &class {
            seen[c] = true;
        }
        classes.push(class);
    }
    classes
}

/// The alternating group `A₄` as a table, with its elements listed in the
/// order they appear in the lexicographic listing of `S₄`.
pub fn alternating4() -> FiniteGroup {
    let (s4, perms) = FiniteGroup::symmetric(4);
    let even: Vec<usize> = (0..perms.len()).filter(|&i| is_even(&perms[i].images())).collect();
    let pos = |e: usize| even.iter().position(|&x| x == e).expect("closed");
    let table = even.iter().map(|&a| even.iter().map(|&b| pos(s4.mul(a, b))).collect()).collect();
    FiniteGroup::from_table(table).expect("A4 is a group")
}

fn is_even(images: &[usize]) -> bool {
    let inversions = (0..images.len())
        .flat_map(|i| (i + 1..images.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| images[i] > images[j])
        .count();
    inversions % 2 == 0
}

/// `Conj` restricted to the transpositions of `S₃`.
pub fn s3_transpositions() -> FiniteQuandle {
    let (s3, _) = FiniteGroup::symmetric(3);
    let class = conjugacy_classes(&s3).into_iter().find(|c| c.len() == 3).expect("S3 has three transpositions");
    conj_quandle(&s3, Some(&class)).expect("conjugacy class").0
}

/// Fixtures with at most five elements, by name.
pub fn small_fixtures() -> Vec<(String, FiniteQuandle)> {
    let mut out: Vec<(String, FiniteQuandle)> = (1..=5).map(|n| (format!("T{n}"), FiniteQuandle::trivial(n))).collect();
    for n in 3..=5 {
        out.push((format!("R{n}"), FiniteQuandle::dihedral(n)));
    }
    out.push(("Alex(5,2)".into(), FiniteQuandle::alexander(5, 2).expect("2 is a unit mod 5")));
    out.push(("S3-transpositions".into(), s3_transpositions()));
    let r3 = FiniteQuandle::dihedral(3);
    out.push(("R3+T1".into(), r3.disjoint_union(&FiniteQuandle::trivial(1))));
    out.push(("R3+T2".into(), r3.disjoint_union(&FiniteQuandle::trivial(2))));
    out
}

/// Looks up a fixture by name (`T3`, `R4`, `S3-transpositions`, ...).
pub fn by_name(name: &str) -> Option<FiniteQuandle> {
    small_fixtures().into_iter().find(|(n, _)| n == name).map(|(_, q)| q)
}

/// Quandles from the standard families of size at most `max_size`.
fn family_pool(max_size: usize) -> Vec<FiniteQuandle> {
    let mut pool = Vec::new();
    for n in 1..=max_size {
        pool.push(FiniteQuandle::trivial(n));
        pool.push(FiniteQuandle::dihedral(n));
        for t in 2..n {
            if let Ok(q) = FiniteQuandle::alexander(n, t) {
                pool.push(q);
            }
        }
    }
    let (s3, _) = FiniteGroup::symmetric(3);
    let (s4, _) = FiniteGroup::symmetric(4);
    let a4 = alternating4();
    let groups: [&FiniteGroup; 3] = [&s3, &s4, &a4];
    for g in groups {
        let classes = conjugacy_classes(g);
        for c in &classes {
            if c.len() <= max_size {
                pool.push(conj_quandle(g, Some(c)).expect("conjugacy class").0);
            }
        }
        // Unions of two classes are closed under conjugation too.
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                if a.len() + b.len() <= max_size {
                    let u: Vec<usize> = a.iter().chain(b).copied().collect();
                    pool.push(conj_quandle(g, Some(&u)).expect("union of classes").0);
                }
            }
        }
    }
    pool
}

/// A random valid quandle of size at most `max_size`: a family member or a
/// disjoint union of two, under a random relabelling.
pub fn random_quandle<R: Rng>(rng: &mut R, max_size: usize) -> FiniteQuandle {
    let pool = family_pool(max_size);
    let base = if rng.gen_bool(0.3) {
        let a = pool.choose(rng).expect("nonempty pool");
        let fits: Vec<&FiniteQuandle> = pool.iter().filter(|q| q.size() + a.size() <= max_size).collect();
        match fits.choose(rng) {
            Some(b) => a.disjoint_union(b),
            None => a.clone(),
        }
    } else {
        pool.choose(rng).expect("nonempty pool").clone()
    };
    let mut perm: Vec<usize> = (0..base.size()).collect();
    perm.shuffle(rng);
    base.relabel(&perm).expect("permutation of the right degree")
}
