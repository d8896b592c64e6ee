//! Permutations of at most eight points and the transitive subgroups of
//! `S_n` for `n <= 7`, up to their cycle-type statistics.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::OnceLock;

use super::CycleType;

pub const MAX_POINTS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm {
    n: u8,
    img: [u8; MAX_POINTS],
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        assert!(n <= MAX_POINTS);
        let mut img = [0u8; MAX_POINTS];
        for (i, v) in img.iter_mut().enumerate() {
            *v = i as u8;
        }
        Perm { n: n as u8, img }
    }

    /// Panics unless `images` is a permutation of `0..len`.
    pub fn from_images(images: &[usize]) -> Perm {
        let n = images.len();
        let mut p = Perm::identity(n);
        let mut seen = [false; MAX_POINTS];
        for (i, &v) in images.iter().enumerate() {
            assert!(v < n && !seen[v], "not a permutation: {images:?}");
            seen[v] = true;
            p.img[i] = v as u8;
        }
        p
    }

    /// The cycle `(0 1 ... k-1)` on `n` points.
    pub fn cycle(n: usize, k: usize) -> Perm {
        let mut p = Perm::identity(n);
        for i in 0..k {
            p.img[i] = ((i + 1) % k) as u8;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.n, other.n);
        let mut p = *self;
        for i in 0..self.n as usize {
            p.img[i] = self.img[other.img[i] as usize];
        }
        p
    }

    pub fn inverse(&self) -> Perm {
        let mut p = *self;
        for i in 0..self.n as usize {
            p.img[self.img[i] as usize] = i as u8;
        }
        p
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n as usize).all(|i| self.img[i] as usize == i)
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.n as usize;
        let mut seen = [false; MAX_POINTS];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                i = self.img[i] as usize;
                len += 1;
            }
            parts.push(len);
        }
        CycleType::new(parts)
    }

    /// Every permutation of `n` points, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm::from_images(&cur));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }
}

/// The group generated by `gens`, as a set.
pub fn closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut set = HashSet::new();
    let id = Perm::identity(n);
    set.insert(id);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.compose(g);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

fn is_transitive(n: usize, gens: &[Perm]) -> bool {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for g in gens {
            let j = g.apply(i);
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == n
}

/// A transitive group known through its order and its cycle-type counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitiveGroup {
    pub n: usize,
    pub name: String,
    pub order: usize,
    pub classes: BTreeMap<CycleType, usize>,
    pub generators: Vec<Perm>,
}

impl TransitiveGroup {
    pub fn type_set(&self) -> BTreeSet<CycleType> {
        self.classes.keys().cloned().collect()
    }
}

fn signature(elems: &HashSet<Perm>) -> (usize, BTreeMap<CycleType, usize>) {
    let mut classes = BTreeMap::new();
    for p in elems {
        *classes.entry(p.cycle_type()).or_insert(0) += 1;
    }
    (elems.len(), classes)
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn conjugacy_reps(n: usize) -> Vec<Perm> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for p in Perm::all(n) {
        if seen.insert(p.cycle_type()) {
            reps.push(p);
        }
    }
    reps
}

/// Representatives of the orbits of `cent` acting on `S_n` by conjugation.
fn orbit_reps(n: usize, cent: &[Perm]) -> Vec<Perm> {
    let mut done = HashSet::new();
    let mut reps = Vec::new();
    for b in Perm::all(n) {
        if done.contains(&b) {
            continue;
        }
        reps.push(b);
        for c in cent {
            done.insert(c.compose(&b).compose(&c.inverse()));
        }
    }
    reps
}

fn build_transitive(n: usize) -> Vec<TransitiveGroup> {
    let mut found: BTreeMap<(usize, Vec<(CycleType, usize)>), Vec<Perm>> = BTreeMap::new();
    if n == 1 {
        let g = closure(1, &[]);
        let (o, c) = signature(&g);
        found.insert((o, c.into_iter().collect()), vec![]);
    }
    // Every transitive group of degree <= 7 is generated by two elements.
    // Pairs are taken up to simultaneous conjugation.
    for a in conjugacy_reps(n) {
        let cent: Vec<Perm> = Perm::all(n)
            .into_iter()
            .filter(|c| c.compose(&a) == a.compose(c))
            .collect();
        for b in orbit_reps(n, &cent) {
            let gens = [a, b];
            if !is_transitive(n, &gens) {
                continue;
            }
            let g = closure(n, &gens);
            let (o, c) = signature(&g);
            found.entry((o, c.into_iter().collect())).or_insert(gens.to_vec());
        }
    }
    let mut groups: Vec<TransitiveGroup> = found
        .into_iter()
        .map(|((order, classes), generators)| TransitiveGroup {
            n,
            name: String::new(),
            order,
            classes: classes.into_iter().collect(),
            generators,
        })
        .collect();
    groups.sort_by(|a, b| a.order.cmp(&b.order).then(a.classes.cmp(&b.classes)));
    name_groups(&mut groups);
    groups
}

fn name_groups(groups: &mut [TransitiveGroup]) {
    for g in groups.iter_mut() {
        let n = g.n;
        let full = CycleType::new(vec![n]);
        let n_cycles = g.classes.get(&full).copied().unwrap_or(0);
        g.name = if g.order == factorial(n) {
            format!("S{n}")
        } else if g.order == n && n_cycles > 0 {
            format!("C{n}")
        } else if 2 * g.order == factorial(n) {
            format!("A{n}")
        } else if g.order == 2 * n && n_cycles == phi(n) {
            format!("D{n}")
        } else {
            String::new()
        };
    }
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for g in groups.iter().filter(|g| g.name.is_empty()) {
        *by_order.entry(g.order).or_insert(0) += 1;
    }
    let mut used: BTreeMap<usize, u8> = BTreeMap::new();
    for g in groups.iter_mut().filter(|g| g.name.is_empty()) {
        g.name = if by_order[&g.order] == 1 {
            format!("G{}_{}", g.order, g.n)
        } else {
            let k = used.entry(g.order).or_insert(0);
            *k += 1;
            format!("G{}_{}{}", g.order, g.n, (b'a' + *k - 1) as char)
        };
    }
}

fn phi(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Transitive subgroups of `S_n` up to cycle-type statistics, smallest first.
pub fn transitive_groups(n: usize) -> &'static [TransitiveGroup] {
    static TABLES: [OnceLock<Vec<TransitiveGroup>>; 8] = [const { OnceLock::new() }; 8];
    assert!((1..=7).contains(&n), "transitive census covers degrees 1..=7");
    TABLES[n].get_or_init(|| build_transitive(n))
}
