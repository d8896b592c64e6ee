//! Subgroups of `S_d x C_2` up to conjugacy, for `d <= 5`, with the
//! conjugacy classes of the ambient group that each one meets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::OnceLock;

use super::perm::Perm;
use super::CycleType;
use crate::error::{Error, Result};

pub const MAX_D: usize = 5;

type Bits = [u64; 4];

/// A conjugacy class of `S_d x C_2`: a cycle type and whether the `C_2`
/// component is the generator.
pub type Class = (CycleType, bool);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub order: usize,
    pub classes: BTreeSet<Class>,
    /// Whether the projection to `S_d` is transitive.
    pub transitive: bool,
    pub generators: Vec<(Perm, bool)>,
}

#[derive(Clone, Debug)]
pub struct SmallGroupTable {
    pub d: usize,
    pub order: usize,
    /// Sorted by order; the last entry is the whole group.
    pub subgroups: Vec<SubgroupClass>,
}

struct Ambient {
    elems: Vec<(Perm, bool)>,
    mul: Vec<u16>,
    inv: Vec<u16>,
    id: u16,
}

impl Ambient {
    fn new(d: usize) -> Ambient {
        let elems: Vec<(Perm, bool)> = Perm::all(d)
            .into_iter()
            .flat_map(|p| [(p, false), (p, true)])
            .collect();
        let index: HashMap<(Perm, bool), u16> =
            elems.iter().enumerate().map(|(i, &e)| (e, i as u16)).collect();
        let n = elems.len();
        let mut mul = vec![0u16; n * n];
        for (i, &(a, x)) in elems.iter().enumerate() {
            for (j, &(b, y)) in elems.iter().enumerate() {
                mul[i * n + j] = index[&(a.compose(&b), x ^ y)];
            }
        }
        let inv = elems.iter().map(|&(a, x)| index[&(a.inverse(), x)]).collect();
        let id = index[&(Perm::identity(d), false)];
        Ambient { elems, mul, inv, id }
    }

    fn n(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n() + b as usize]
    }

    fn closure(&self, gens: &[u16]) -> Bits {
        let mut bits = [0u64; 4];
        set(&mut bits, self.id);
        let mut queue = vec![self.id];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !get(&bits, y) {
                    set(&mut bits, y);
                    queue.push(y);
                }
            }
        }
        bits
    }

    fn conjugate(&self, bits: &Bits, x: u16) -> Bits {
        let xi = self.inv[x as usize];
        let mut out = [0u64; 4];
        for y in members(bits) {
            set(&mut out, self.mul(self.mul(x, y), xi));
        }
        out
    }

    fn canonical(&self, bits: &Bits) -> Bits {
        (0..self.n() as u16).map(|x| self.conjugate(bits, x)).min().unwrap()
    }
}

fn set(b: &mut Bits, i: u16) {
    b[i as usize / 64] |= 1 << (i % 64);
}

fn get(b: &Bits, i: u16) -> bool {
    b[i as usize / 64] >> (i % 64) & 1 == 1
}

fn members(b: &Bits) -> impl Iterator<Item = u16> + '_ {
    (0..256u16).filter(move |&i| get(b, i))
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn build(d: usize) -> SmallGroupTable {
    let g = Ambient::new(d);
    let mut cyclic: Vec<(Bits, u16)> = Vec::new();
    let mut seen_cyclic = HashSet::new();
    for x in 0..g.n() as u16 {
        let b = g.closure(&[x]);
        if seen_cyclic.insert(b) {
            cyclic.push((b, x));
        }
    }
    // Join class representatives with every cyclic subgroup until no new
    // class appears; every subgroup is a join of cyclic ones.
    let mut classes: HashMap<Bits, (Bits, Vec<u16>)> = HashMap::new();
    let mut frontier = Vec::new();
    let mut seen = HashSet::new();
    for &(b, x) in &cyclic {
        let c = g.canonical(&b);
        if !classes.contains_key(&c) {
            classes.insert(c, (b, vec![x]));
            frontier.push((b, vec![x]));
        }
        seen.insert(b);
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (h, gens) in &frontier {
            for &(c, x) in &cyclic {
                if subset(&c, h) {
                    continue;
                }
                let mut jg = gens.clone();
                jg.push(x);
                let j = g.closure(&jg);
                if !seen.insert(j) {
                    continue;
                }
                let key = g.canonical(&j);
                if !classes.contains_key(&key) {
                    classes.insert(key, (j, jg.clone()));
                    next.push((j, jg));
                }
            }
        }
        frontier = next;
    }
    let mut subgroups: Vec<SubgroupClass> = classes
        .into_values()
        .map(|(bits, gens)| {
            let elems: Vec<(Perm, bool)> = members(&bits).map(|i| g.elems[i as usize]).collect();
            let mut reach = vec![false; d];
            reach[0] = true;
            let mut stack = vec![0];
            while let Some(i) = stack.pop() {
                for (p, _) in &elems {
                    let j = p.apply(i);
                    if !reach[j] {
                        reach[j] = true;
                        stack.push(j);
                    }
                }
            }
            SubgroupClass {
                order: elems.len(),
                classes: elems.iter().map(|(p, f)| (p.cycle_type(), *f)).collect(),
                transitive: reach.iter().all(|&r| r),
                generators: gens.iter().map(|&i| g.elems[i as usize]).collect(),
            }
        })
        .collect();
    subgroups.sort_by(|a, b| {
        a.order
            .cmp(&b.order)
            .then_with(|| a.classes.cmp(&b.classes))
            .then_with(|| a.generators.cmp(&b.generators))
    });
    SmallGroupTable {
        d,
        order: g.n(),
        subgroups,
    }
}

impl SmallGroupTable {
    /// Built once per `d` and cached.
    pub fn get(d: usize) -> Result<&'static SmallGroupTable> {
        static TABLES: [OnceLock<SmallGroupTable>; MAX_D + 1] = [const { OnceLock::new() }; MAX_D + 1];
        if d == 0 || d > MAX_D {
            return Err(Error::Precondition(format!("subgroup table needs 1 <= d <= {MAX_D}, got {d}")));
        }
        Ok(TABLES[d].get_or_init(|| build(d)))
    }

    pub fn full(&self) -> &SubgroupClass {
        self.subgroups.last().unwrap()
    }

    /// Indices of subgroups meeting every observed class.
    pub fn compatible(&self, observed: &BTreeSet<Class>) -> Vec<usize> {
        self.subgroups
            .iter()
            .enumerate()
            .filter(|(_, s)| observed.is_subset(&s.classes))
            .map(|(i, _)| i)
            .collect()
    }

    /// Whether the observations rule out every proper subgroup.
    pub fn only_full(&self, observed: &BTreeSet<Class>) -> bool {
        self.compatible(observed) == vec![self.subgroups.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_lattice_sizes() {
        assert_eq!(SmallGroupTable::get(1).unwrap().subgroups.len(), 2);
        assert_eq!(SmallGroupTable::get(2).unwrap().subgroups.len(), 5);
        assert_eq!(SmallGroupTable::get(3).unwrap().subgroups.len(), 10);
        assert!(SmallGroupTable::get(6).is_err());
    }

    #[test]
    fn table_is_consistent() {
        for d in 1..=4 {
            let t = SmallGroupTable::get(d).unwrap();
            assert_eq!(t.subgroups[0].order, 1);
            assert_eq!(t.full().order, t.order);
            assert!(t.full().transitive);
            for s in &t.subgroups {
                assert_eq!(t.order % s.order, 0);
            }
        }
    }

    #[test]
    fn only_full_needs_generating_classes() {
        let t = SmallGroupTable::get(2).unwrap();
        let id = CycleType::new(vec![1, 1]);
        let tr = CycleType::new(vec![2]);
        let mut obs: BTreeSet<Class> = [(id.clone(), true)].into();
        assert!(!t.only_full(&obs));
        obs.insert((tr, false));
        assert!(t.only_full(&obs));
    }
}
