//! The finite probability space, the generator system with its independent
//! index family, and the algebra generated by the sequence elements `G_b`.
//!
//! Elements of the generated algebra are stored as sets of atoms. Atoms are
//! indexed by the subsets `r` of generators whose events have a nonempty
//! common intersection (the empty subset included); atom `r` stands for
//! `W(r, G \ r)`. The sequence view ([`SeqElem`]) is kept as a derived
//! realization that can be computed componentwise and compared.

use std::collections::HashSet;
use std::fmt;

use num::Signed;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::genset::{GenSet, MAX_GENERATORS};
use crate::measures::MuCache;
use crate::rat::{fmt_rat, one, Rat};

/// Generator cap used when the caller does not pick one.
pub const DEFAULT_GENERATOR_CAP: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    names: Vec<String>,
    weights: Vec<Rat>,
}

impl Space {
    pub fn new(names: Vec<String>, weights: Vec<Rat>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::PointCountMismatch { names: names.len(), weights: weights.len() });
        }
        if names.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut seen = HashSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicatePoint(name.clone()));
            }
        }
        for (name, w) in names.iter().zip(&weights) {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight { point: name.clone(), weight: fmt_rat(w) });
            }
        }
        let sum: Rat = weights.iter().sum();
        if sum != one() {
            return Err(Error::WeightsNotNormalized { sum: fmt_rat(&sum) });
        }
        Ok(Self { names, weights })
    }

    /// Points named `w0, w1, ...` with the given weights.
    pub fn from_weights(weights: Vec<Rat>) -> Result<Self> {
        let names = (0..weights.len()).map(|i| format!("w{i}")).collect();
        Self::new(names, weights)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        let w = Rat::new(1.into(), (n.max(1) as i64).into());
        Self::from_weights(vec![w; n])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn empty_event(&self) -> Event {
        Event(BitSet::new(self.len()))
    }

    pub fn full_event(&self) -> Event {
        Event(BitSet::full(self.len()))
    }

    pub fn event(&self, points: impl IntoIterator<Item = usize>) -> Event {
        Event(BitSet::from_indices(self.len(), points))
    }

    pub fn measure(&self, event: &Event) -> Rat {
        assert_eq!(event.0.len(), self.len(), "event from another space");
        event.0.iter().map(|i| &self.weights[i]).sum()
    }

    /// The `k`-fold product space with product weights. Point `(i_1, .., i_k)`
    /// sits at mixed-radix position `i_1 + n*i_2 + ... `.
    pub fn power(&self, k: u32) -> Space {
        let n = self.len();
        let total = n.pow(k);
        let mut names = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        for idx in 0..total {
            let coords = Self::coords(idx, n, k);
            names.push(coords.iter().map(|c| self.names[*c].as_str()).collect::<Vec<_>>().join(","));
            weights.push(coords.iter().map(|c| self.weights[*c].clone()).product());
        }
        Space { names, weights }
    }

    fn coords(mut idx: usize, n: usize, k: u32) -> Vec<usize> {
        (0..k)
            .map(|_| {
                let c = idx % n;
                idx /= n;
                c
            })
            .collect()
    }

    /// The product event `e x e x ... x e` inside [`Space::power`].
    pub fn power_event(&self, event: &Event, k: u32) -> Event {
        let n = self.len();
        let total = n.pow(k);
        Event(BitSet::from_indices(
            total,
            (0..total).filter(|idx| Self::coords(*idx, n, k).iter().all(|c| event.contains(*c))),
        ))
    }
}

/// A set of points of a [`Space`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event(pub(crate) BitSet);

impl Event {
    pub fn members(&self) -> &BitSet {
        &self.0
    }

    pub fn contains(&self, point: usize) -> bool {
        self.0.contains(point)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event(self.0.intersection(&other.0))
    }

    pub fn union(&self, other: &Event) -> Event {
        Event(self.0.union(&other.0))
    }

    pub fn difference(&self, other: &Event) -> Event {
        Event(self.0.difference(&other.0))
    }

    pub fn complement(&self) -> Event {
        Event(self.0.complement())
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event{:?}", self.0)
    }
}

/// An element of the product algebra: one event per index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeqElem {
    entries: Vec<Event>,
}

impl SeqElem {
    pub fn new(entries: Vec<Event>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[Event] {
        &self.entries
    }

    pub fn entry(&self, n: usize) -> &Event {
        &self.entries[n]
    }

    fn zip(&self, other: &SeqElem, f: impl Fn(&Event, &Event) -> Event) -> SeqElem {
        assert_eq!(self.entries.len(), other.entries.len());
        SeqElem { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn meet(&self, other: &SeqElem) -> SeqElem {
        self.zip(other, Event::intersection)
    }

    pub fn join(&self, other: &SeqElem) -> SeqElem {
        self.zip(other, Event::union)
    }

    pub fn minus(&self, other: &SeqElem) -> SeqElem {
        self.zip(other, Event::difference)
    }

    pub fn complement(&self) -> SeqElem {
        SeqElem { entries: self.entries.iter().map(Event::complement).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Event::is_empty)
    }

    pub fn is_disjoint(&self, other: &SeqElem) -> bool {
        self.meet(other).is_zero()
    }
}

/// An atom of the generated algebra, identified by its generator set `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    r: GenSet,
}

impl Atom {
    pub fn set(self) -> GenSet {
        self.r
    }
}

/// An element of the generated algebra as a set of atom indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AElem {
    atoms: BitSet,
}

impl AElem {
    pub fn from_bits(atoms: BitSet) -> Self {
        Self { atoms }
    }

    pub fn bits(&self) -> &BitSet {
        &self.atoms
    }

    pub fn contains_atom(&self, index: usize) -> bool {
        self.atoms.contains(index)
    }

    pub fn atom_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.atoms.count()
    }

    pub fn union(&self, other: &AElem) -> AElem {
        AElem { atoms: self.atoms.union(&other.atoms) }
    }

    pub fn intersection(&self, other: &AElem) -> AElem {
        AElem { atoms: self.atoms.intersection(&other.atoms) }
    }

    pub fn difference(&self, other: &AElem) -> AElem {
        AElem { atoms: self.atoms.difference(&other.atoms) }
    }

    pub fn complement(&self) -> AElem {
        AElem { atoms: self.atoms.complement() }
    }

    pub fn is_subset(&self, other: &AElem) -> bool {
        self.atoms.is_subset(&other.atoms)
    }
}

impl fmt::Debug for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AElem{:?}", self.atoms)
    }
}

/// Generators over a finite space together with their canonical independent
/// index family.
///
/// The index universe is `0..2^m`. Generator `i` is active at index `n` when
/// bit `m-1-i` of `n` is set, so the first generator owns the most
/// significant bit.
#[derive(Clone, Debug)]
pub struct GenSystem {
    space: Space,
    gens: Vec<Event>,
    names: Vec<String>,
    atoms: Vec<Atom>,
    atom_lookup: Vec<Option<usize>>,
    /// Every subset of the generators in canonical order.
    canonical: Vec<GenSet>,
    pub(crate) mu_cache: MuCache,
}

pub fn build_gensystem(space: Space, gens: Vec<Event>) -> Result<GenSystem> {
    GenSystem::new(space, gens)
}

impl GenSystem {
    pub fn new(space: Space, gens: Vec<Event>) -> Result<Self> {
        let named = gens.into_iter().enumerate().map(|(i, e)| (format!("g{i}"), e)).collect();
        Self::with_names(space, named, DEFAULT_GENERATOR_CAP)
    }

    pub fn with_names(space: Space, gens: Vec<(String, Event)>, cap: usize) -> Result<Self> {
        let cap = cap.min(MAX_GENERATORS);
        if gens.len() > cap {
            return Err(Error::TooManyGenerators { count: gens.len(), cap });
        }
        for (index, (name, event)) in gens.iter().enumerate() {
            if event.0.len() != space.len() {
                return Err(Error::EventSizeMismatch { expected: space.len(), got: event.0.len() });
            }
            if event.is_empty() {
                return Err(Error::ZeroGenerator { index, name: name.clone() });
            }
            if let Some((first, _)) = gens[..index].iter().find(|(_, e)| e == event) {
                return Err(Error::DuplicateGenerator { first: first.clone(), second: name.clone() });
            }
        }
        let (names, gens): (Vec<_>, Vec<_>) = gens.into_iter().unzip();
        let m = gens.len();
        let mut system = GenSystem {
            space,
            gens,
            names,
            atoms: Vec::new(),
            atom_lookup: vec![None; 1 << m],
            canonical: GenSet::full(m).subsets_canonical(),
            mu_cache: MuCache::default(),
        };
        for bits in 0u32..1 << m {
            let r = GenSet(bits);
            if system.is_fip(r) {
                system.atom_lookup[bits as usize] = Some(system.atoms.len());
                system.atoms.push(Atom { r });
            }
        }
        Ok(system)
    }

    pub fn m(&self) -> usize {
        self.gens.len()
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn gen(&self, i: usize) -> &Event {
        &self.gens[i]
    }

    pub fn gens(&self) -> &[Event] {
        &self.gens
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn all_gens(&self) -> GenSet {
        GenSet::full(self.m())
    }

    pub fn set_by_names(&self, names: &[&str]) -> GenSet {
        GenSet::from_indices(
            names
                .iter()
                .map(|n| self.names.iter().position(|x| x == n).unwrap_or_else(|| panic!("unknown generator `{n}`"))),
        )
    }

    pub fn fmt_set(&self, s: GenSet) -> String {
        let inner: Vec<&str> = s.iter().map(|i| self.names[i].as_str()).collect();
        format!("{{{}}}", inner.join(","))
    }

    // --- the index family ------------------------------------------------

    pub fn index_len(&self) -> usize {
        1 << self.m()
    }

    /// Generators whose index set contains `n`.
    pub fn index_bits(&self, n: usize) -> GenSet {
        let m = self.m();
        GenSet::from_indices((0..m).filter(|i| n >> (m - 1 - i) & 1 == 1))
    }

    /// The unique index whose active generator set is exactly `active`.
    pub fn index_of(&self, active: GenSet) -> usize {
        let m = self.m();
        active.iter().map(|i| 1usize << (m - 1 - i)).sum()
    }

    pub fn in_index_set(&self, i: usize, n: usize) -> bool {
        self.index_bits(n).contains(i)
    }

    pub fn index_set(&self, i: usize) -> Vec<usize> {
        (0..self.index_len()).filter(|n| self.in_index_set(i, *n)).collect()
    }

    /// Checks `⋂_{s} N_b \ ⋃_{t} N_b ≠ ∅` for every disjoint pair, returning
    /// the first failing pair.
    pub fn check_independence(&self) -> std::result::Result<(), (GenSet, GenSet)> {
        let all = self.all_gens();
        for s in all.subsets() {
            for t in (all - s).subsets() {
                let hit = (0..self.index_len()).any(|n| {
                    let active = self.index_bits(n);
                    s.is_subset(active) && active.is_disjoint(t)
                });
                if !hit {
                    return Err((s, t));
                }
            }
        }
        Ok(())
    }

    // --- events -----------------------------------------------------------

    /// `⋂_{b ∈ r} b`, the full event when `r` is empty.
    pub fn meet(&self, r: GenSet) -> Event {
        r.iter().fold(self.space.full_event(), |acc, i| acc.intersection(&self.gens[i]))
    }

    /// `⋃_{b ∈ t} b`, the empty event when `t` is empty.
    pub fn join(&self, t: GenSet) -> Event {
        t.iter().fold(self.space.empty_event(), |acc, i| acc.union(&self.gens[i]))
    }

    pub fn meet_measure(&self, r: GenSet) -> Rat {
        self.space.measure(&self.meet(r))
    }

    /// Subsets of `within` in canonical order, without sorting.
    pub fn canonical_subsets(&self, within: GenSet) -> impl Iterator<Item = GenSet> + '_ {
        self.canonical.iter().copied().filter(move |s| s.is_subset(within))
    }

    pub fn is_fip(&self, r: GenSet) -> bool {
        !self.meet(r).is_empty()
    }

    // --- atoms and algebra elements ---------------------------------------

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom(&self, index: usize) -> Atom {
        self.atoms[index]
    }

    pub fn atom_index(&self, r: GenSet) -> Option<usize> {
        self.atom_lookup.get(r.bits() as usize).copied().flatten()
    }

    pub fn bottom(&self) -> AElem {
        AElem { atoms: BitSet::new(self.atom_count()) }
    }

    pub fn top(&self) -> AElem {
        AElem { atoms: BitSet::full(self.atom_count()) }
    }

    pub fn aelem_of(&self, atoms: impl IntoIterator<Item = GenSet>) -> AElem {
        let bits = BitSet::from_indices(
            self.atom_count(),
            atoms.into_iter().map(|r| self.atom_index(r).unwrap_or_else(|| panic!("{r:?} is not an atom"))),
        );
        AElem { atoms: bits }
    }

    pub fn aelem_where(&self, pred: impl Fn(GenSet) -> bool) -> AElem {
        AElem {
            atoms: BitSet::from_indices(
                self.atom_count(),
                self.atoms.iter().enumerate().filter(|(_, a)| pred(a.r)).map(|(i, _)| i),
            ),
        }
    }

    /// `W(s, t) = J(s) \ U(t)`: the atoms `r` with `s ⊆ r` and `r ∩ t = ∅`.
    pub fn w_element(&self, s: GenSet, t: GenSet) -> AElem {
        self.aelem_where(|r| s.is_subset(r) && r.is_disjoint(t))
    }

    pub fn j_element(&self, s: GenSet) -> AElem {
        self.w_element(s, GenSet::EMPTY)
    }

    pub fn u_element(&self, t: GenSet) -> AElem {
        self.w_element(GenSet::EMPTY, t).complement()
    }

    /// The generator element `G_b` for generator `i`.
    pub fn g_element(&self, i: usize) -> AElem {
        self.j_element(GenSet::singleton(i))
    }

    /// `W(s, t)` vanishes iff `s ∩ t ≠ ∅` or the events of `s` have empty
    /// intersection.
    pub fn is_zero_formula(&self, s: GenSet, t: GenSet) -> bool {
        !s.is_disjoint(t) || self.meet(s).is_empty()
    }

    // --- sequence realization --------------------------------------------

    pub fn seq_top(&self) -> SeqElem {
        SeqElem::new(vec![self.space.full_event(); self.index_len()])
    }

    pub fn seq_bottom(&self) -> SeqElem {
        SeqElem::new(vec![self.space.empty_event(); self.index_len()])
    }

    /// `G_b(n) = b` when `n ∈ N_b`, else `∅`.
    pub fn g_seq(&self, i: usize) -> SeqElem {
        SeqElem::new(
            (0..self.index_len())
                .map(|n| if self.in_index_set(i, n) { self.gens[i].clone() } else { self.space.empty_event() })
                .collect(),
        )
    }

    /// Componentwise `⋂_{s} G_b \ ⋃_{t} G_b`.
    pub fn w_seq(&self, s: GenSet, t: GenSet) -> SeqElem {
        let meet = s.iter().fold(self.seq_top(), |acc, i| acc.meet(&self.g_seq(i)));
        t.iter().fold(meet, |acc, i| acc.minus(&self.g_seq(i)))
    }

    pub fn atom_seq(&self, atom: Atom) -> SeqElem {
        self.w_seq(atom.r, self.all_gens() - atom.r)
    }

    /// The sequence element realized by an algebra element: the union of its
    /// atoms' realizations.
    pub fn realize(&self, a: &AElem) -> SeqElem {
        a.atom_indices().fold(self.seq_bottom(), |acc, i| acc.join(&self.atom_seq(self.atoms[i])))
    }
}

/// `λ(⋂_{r} b \ ⋃_{t} b)`.
pub fn w_measure(gs: &GenSystem, r: GenSet, t: GenSet) -> Rat {
    gs.space().measure(&gs.meet(r).difference(&gs.join(t)))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rat::rat;

    /// Two equally weighted points; `a = {ω0}`, `b = {ω1}`, `u = Ω`.
    pub fn m1() -> GenSystem {
        let space = Space::new(vec!["w0".into(), "w1".into()], vec![rat(1, 2), rat(1, 2)]).unwrap();
        let gens = vec![
            ("a".to_string(), space.event([0])),
            ("b".to_string(), space.event([1])),
            ("u".to_string(), space.event([0, 1])),
        ];
        GenSystem::with_names(space, gens, DEFAULT_GENERATOR_CAP).unwrap()
    }
}
