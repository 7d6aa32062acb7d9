//! Closure computations shared by ideals and submodules: a carrier with an
//! addition table and a scalar action table.

use std::collections::HashSet;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
pub(crate) struct Tables<'a> {
    pub size: usize,
    pub add: &'a [u32],
    /// Row `s` holds the action of scalar `s` on every carrier element.
    pub act: &'a [u32],
}

impl<'a> Tables<'a> {
    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn act(&self, s: u32, m: u32) -> u32 {
        self.act[s as usize * self.size + m as usize]
    }

    pub fn scalars(&self) -> u32 {
        (self.act.len() / self.size) as u32
    }

    /// `Rm`, which is already an additive subgroup because the action is unital.
    pub fn orbit(&self, m: u32) -> ElemSet {
        ElemSet::from_elems(self.size, (0..self.scalars()).map(|s| self.act(s, m)))
    }

    pub fn sum(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        ElemSet::from_elems(
            self.size,
            a.iter().flat_map(|x| b.iter().map(move |y| self.add(x, y))),
        )
    }

    pub fn span<I: IntoIterator<Item = u32>>(&self, gens: I) -> ElemSet {
        let mut acc = ElemSet::from_elems(self.size, [0]);
        for g in gens {
            if !acc.contains(g) {
                acc = self.sum(&acc, &self.orbit(g));
            }
        }
        acc
    }

    /// Irredundant generators picked greedily in element order.
    pub fn generators(&self, set: &ElemSet) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut acc = ElemSet::from_elems(self.size, [0]);
        for x in set.iter() {
            if !acc.contains(x) {
                acc = self.sum(&acc, &self.orbit(x));
                gens.push(x);
            }
            if acc.len() == set.len() {
                break;
            }
        }
        gens
    }

    pub fn is_closed(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
            && set
                .iter()
                .all(|m| (0..self.scalars()).all(|s| set.contains(self.act(s, m))))
    }

    /// Distinct cyclic subobjects, in canonical order.
    pub fn cyclics(&self) -> Vec<ElemSet> {
        let mut seen: HashSet<ElemSet> = HashSet::new();
        for m in 0..self.size as u32 {
            seen.insert(self.orbit(m));
        }
        let mut out: Vec<ElemSet> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Every subobject, by joining cyclic ones onto `{0}` until nothing new
    /// appears. Sorted canonically.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<ElemSet>> {
        let cyclics = self.cyclics();
        let zero = ElemSet::from_elems(self.size, [0]);
        let mut seen: HashSet<ElemSet> = HashSet::new();
        seen.insert(zero.clone());
        let mut queue = vec![zero];
        while let Some(s) = queue.pop() {
            for c in &cyclics {
                if c.is_subset(&s) {
                    continue;
                }
                let t = self.sum(&s, c);
                if !seen.contains(&t) {
                    seen.insert(t.clone());
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "subobject lattice",
                            size: seen.len() as u128,
                            cap,
                        });
                    }
                    queue.push(t);
                }
            }
        }
        let mut out: Vec<ElemSet> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }
}
