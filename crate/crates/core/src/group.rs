//! Finite permutation groups by full enumeration.
//!
//! Groups are small (the catalog tops out at S5), so everything here is
//! exhaustive: elements are stored sorted, conjugacy classes are orbits
//! under conjugation, and cosets are computed by direct multiplication.
//! Elements are addressed by their index in the sorted element list.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use crate::error::Error;
use crate::perm::Permutation;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Groups up to this order get a precomputed multiplication table.
const TABLE_LIMIT: usize = 1024;

/// Index of an element in its group's sorted element list.
pub type ElemIdx = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Smallest member in the sorted element order.
    pub representative: ElemIdx,
    /// Sorted member indices.
    pub members: Vec<ElemIdx>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    inverse: Vec<ElemIdx>,
    table: Option<Vec<u32>>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Closure of `gens` under composition, with its conjugacy classes.
    pub fn generate(gens: &[Permutation], cap: usize) -> Result<Self, Error> {
        let first = gens.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, bad.degree()));
        }

        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose_unchecked(&x);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();

        let mut group = FiniteGroup {
            degree,
            generators: gens.to_vec(),
            elements,
            inverse: Vec::new(),
            table: None,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.inverse = group
            .elements
            .iter()
            .map(|e| group.position(&e.inverse()).expect("closed under inverse"))
            .collect();
        let n = group.order();
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in &group.elements {
                for b in &group.elements {
                    table.push(group.position(&a.compose_unchecked(b)).unwrap() as u32);
                }
            }
            group.table = Some(table);
        }
        let gen_idx: Vec<ElemIdx> = gens.iter().map(|g| group.position(g).unwrap()).collect();
        let all: Vec<ElemIdx> = (0..n).collect();
        let (classes, class_of) = group.conjugation_orbits(&all, &gen_idx);
        group.classes = classes;
        group.class_of = class_of.into_iter().map(|c| c.unwrap()).collect();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: ElemIdx) -> &Permutation {
        &self.elements[i]
    }

    pub fn identity(&self) -> ElemIdx {
        0
    }

    fn position(&self, p: &Permutation) -> Option<ElemIdx> {
        self.elements.binary_search(p).ok()
    }

    pub fn index_of(&self, p: &Permutation) -> Result<ElemIdx, Error> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        self.position(p)
            .ok_or_else(|| Error::NotInGroup(p.to_string()))
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.position(p).is_some()
    }

    #[inline]
    pub fn mul(&self, a: ElemIdx, b: ElemIdx) -> ElemIdx {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self
                .position(&self.elements[a].compose_unchecked(&self.elements[b]))
                .unwrap(),
        }
    }

    #[inline]
    pub fn inv(&self, a: ElemIdx) -> ElemIdx {
        self.inverse[a]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: ElemIdx, g: ElemIdx) -> ElemIdx {
        self.mul(self.inv(g), self.mul(x, g))
    }

    pub fn pow(&self, x: ElemIdx, e: u64) -> ElemIdx {
        let mut acc = self.identity();
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: ElemIdx) -> u64 {
        let mut k = 1;
        let mut y = x;
        while y != self.identity() {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: ElemIdx) -> usize {
        self.class_of[x]
    }

    pub fn class(&self, c: usize) -> Result<&ConjugacyClass, Error> {
        self.classes.get(c).ok_or(Error::InvalidClass(c))
    }

    pub fn class_representative(&self, c: usize) -> &Permutation {
        &self.elements[self.classes[c].representative]
    }

    pub fn class_of_perm(&self, p: &Permutation) -> Result<usize, Error> {
        Ok(self.class_of(self.index_of(p)?))
    }

    pub fn cycle_type(&self, x: ElemIdx) -> Vec<usize> {
        self.elements[x].cycle_type()
    }

    /// `|{h ∈ G : hg = gh}|`.
    pub fn centralizer_order(&self, g: &Permutation) -> Result<usize, Error> {
        let gi = self.index_of(g)?;
        Ok((0..self.order())
            .filter(|&h| self.mul(h, gi) == self.mul(gi, h))
            .count())
    }

    /// Class of `rep(C)^e`.
    pub fn power_class(&self, c: usize, e: u64) -> Result<usize, Error> {
        let cls = self.class(c)?;
        Ok(self.class_of(self.pow(cls.representative, e)))
    }

    /// Orbits of `within` under conjugation by `by`. Classes are numbered
    /// in order of their smallest member.
    fn conjugation_orbits(
        &self,
        within: &[ElemIdx],
        by: &[ElemIdx],
    ) -> (Vec<ConjugacyClass>, Vec<Option<usize>>) {
        let mut class_of = vec![None; self.order()];
        let mut classes = Vec::new();
        for &start in within {
            if class_of[start].is_some() {
                continue;
            }
            let id = classes.len();
            class_of[start] = Some(id);
            let mut members = vec![start];
            let mut k = 0;
            while k < members.len() {
                let x = members[k];
                for &g in by {
                    let y = self.conj(x, g);
                    if class_of[y].is_none() {
                        class_of[y] = Some(id);
                        members.push(y);
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: members[0],
                members,
            });
        }
        (classes, class_of)
    }

    /// Closure of a set of element indices, returned sorted.
    fn closure(&self, gens: &[ElemIdx]) -> Vec<ElemIdx> {
        let mut inside = vec![false; self.order()];
        let mut members = vec![self.identity()];
        inside[self.identity()] = true;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in gens {
                let y = self.mul(g, x);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        members
    }
}

/// A subgroup `H ≤ G` with its own conjugacy classes and a fixed left
/// transversal `g_1 = id, g_2, .., g_r` of `G/H`.
#[derive(Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    generators: Vec<ElemIdx>,
    elements: Vec<ElemIdx>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<Option<usize>>,
    coset_of: Vec<usize>,
    transversal: Vec<ElemIdx>,
}

impl Subgroup {
    /// The whole group, sharing the parent's class numbering.
    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        let n = parent.order();
        Subgroup {
            generators: parent
                .generators
                .iter()
                .map(|g| parent.position(g).unwrap())
                .collect(),
            elements: (0..n).collect(),
            classes: parent.classes.clone(),
            class_of: parent.class_of.iter().map(|&c| Some(c)).collect(),
            coset_of: vec![0; n],
            transversal: vec![parent.identity()],
            parent: Arc::clone(parent),
        }
    }

    /// `⟨gens⟩ ≤ parent`. An empty generator list gives the trivial subgroup.
    pub fn generate(parent: &Arc<FiniteGroup>, gens: &[Permutation]) -> Result<Self, Error> {
        let idx = gens
            .iter()
            .map(|g| parent.index_of(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_generator_indices(parent, idx))
    }

    pub fn from_generator_indices(parent: &Arc<FiniteGroup>, gens: Vec<ElemIdx>) -> Self {
        let elements = parent.closure(&gens);
        Self::build(parent, gens, elements)
    }

    /// `⟨x⟩`.
    pub fn cyclic(parent: &Arc<FiniteGroup>, x: ElemIdx) -> Self {
        Self::from_generator_indices(parent, vec![x])
    }

    fn build(parent: &Arc<FiniteGroup>, generators: Vec<ElemIdx>, elements: Vec<ElemIdx>) -> Self {
        let (classes, class_of) = parent.conjugation_orbits(&elements, &generators);
        let n = parent.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut transversal = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let id = transversal.len();
            transversal.push(g);
            for &h in &elements {
                coset_of[parent.mul(g, h)] = id;
            }
        }
        Subgroup {
            parent: Arc::clone(parent),
            generators,
            elements,
            classes,
            class_of,
            coset_of,
            transversal,
        }
    }

    /// Replaces the transversal. `reps` must contain exactly one element of
    /// each left coset; coset numbering follows the order of `reps`.
    pub fn with_transversal(mut self, reps: &[Permutation]) -> Result<Self, Error> {
        let idx = reps
            .iter()
            .map(|g| self.parent.index_of(g))
            .collect::<Result<Vec<_>, _>>()?;
        let r = self.index();
        if idx.len() != r {
            return Err(Error::InvalidTransversal(format!(
                "expected {} representatives, got {}",
                r,
                idx.len()
            )));
        }
        let mut relabel = vec![usize::MAX; r];
        for (new, &g) in idx.iter().enumerate() {
            let old = self.coset_of[g];
            if relabel[old] != usize::MAX {
                return Err(Error::InvalidTransversal(format!(
                    "{} and {} lie in the same coset",
                    self.parent.element(idx[relabel[old]]),
                    self.parent.element(g)
                )));
            }
            relabel[old] = new;
        }
        for c in self.coset_of.iter_mut() {
            *c = relabel[*c];
        }
        self.transversal = idx;
        Ok(self)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `r = [G : H]`.
    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn elements(&self) -> &[ElemIdx] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[ElemIdx] {
        &self.generators
    }

    pub fn transversal(&self) -> &[ElemIdx] {
        &self.transversal
    }

    pub fn contains_idx(&self, x: ElemIdx) -> bool {
        self.class_of[x].is_some()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.parent
            .index_of(p)
            .map(|i| self.contains_idx(i))
            .unwrap_or(false)
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// H-class of a parent element, `None` outside H.
    pub fn class_of(&self, x: ElemIdx) -> Option<usize> {
        self.class_of[x]
    }

    pub fn coset_of(&self, x: ElemIdx) -> usize {
        self.coset_of[x]
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elements == other.elements
    }

    /// Permutation of coset indices induced by left multiplication by `s`.
    pub fn coset_action(&self, s: ElemIdx) -> Vec<usize> {
        self.transversal
            .iter()
            .map(|&g| self.coset_of[self.parent.mul(s, g)])
            .collect()
    }

    /// Sizes of the `⟨s⟩`-orbits on `G/H`, sorted. The orbit of `gH` has
    /// size `|⟨s⟩gH| / |H|`.
    pub fn orbit_sizes_on_cosets(&self, s: &Permutation) -> Result<Vec<usize>, Error> {
        let si = self.parent.index_of(s)?;
        Ok(self.orbit_sizes_idx(si))
    }

    pub fn orbit_sizes_idx(&self, s: ElemIdx) -> Vec<usize> {
        let action = self.coset_action(s);
        let mut seen = vec![false; action.len()];
        let mut sizes = Vec::new();
        for start in 0..action.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut c = start;
            while !seen[c] {
                seen[c] = true;
                len += 1;
                c = action[c];
            }
            sizes.push(len);
        }
        sizes.sort_unstable();
        sizes
    }

    /// `[g_i⁻¹ s g_i]` over the transversal elements with `g_i⁻¹ s g_i ∈ H`,
    /// i.e. the cosets `g_i H` fixed by `s`.
    pub fn fixed_coset_conjugates(&self, s: &Permutation) -> Result<Vec<Permutation>, Error> {
        let si = self.parent.index_of(s)?;
        Ok(self
            .fixed_coset_conjugates_idx(si)
            .into_iter()
            .map(|t| self.parent.element(t).clone())
            .collect())
    }

    pub fn fixed_coset_conjugates_idx(&self, s: ElemIdx) -> Vec<ElemIdx> {
        self.transversal
            .iter()
            .map(|&g| self.parent.conj(s, g))
            .filter(|&t| self.contains_idx(t))
            .collect()
    }
}

/// Every subgroup of `parent`, found by joining cyclic subgroups until no new
/// subgroup appears. Ordered by discovery, trivial subgroup first.
pub fn all_subgroups(parent: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let n = parent.order();
    let mut cyclic_gens: Vec<ElemIdx> = Vec::new();
    let mut cyclic_seen: HashSet<Vec<ElemIdx>> = HashSet::new();
    for x in 0..n {
        if cyclic_seen.insert(parent.closure(&[x])) {
            cyclic_gens.push(x);
        }
    }

    let mut found: Vec<(Vec<ElemIdx>, Vec<ElemIdx>)> = vec![(Vec::new(), vec![parent.identity()])];
    let mut seen: HashSet<Vec<ElemIdx>> = HashSet::new();
    seen.insert(vec![parent.identity()]);
    let mut k = 0;
    while k < found.len() {
        let (gens, elems) = found[k].clone();
        for &x in &cyclic_gens {
            if elems.binary_search(&x).is_ok() {
                continue;
            }
            let mut next = gens.clone();
            next.push(x);
            let closed = parent.closure(&next);
            if seen.insert(closed.clone()) {
                found.push((next, closed));
            }
        }
        k += 1;
    }
    found
        .into_iter()
        .map(|(gens, elems)| Subgroup::build(parent, gens, elems))
        .collect()
}
